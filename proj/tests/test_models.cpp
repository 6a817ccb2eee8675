#include <catch2/catch_amalgamated.hpp>

#include "psm/error.hpp"
#include "psm/models.hpp"
#include "support/reference.hpp"

#include <cmath>
#include <map>
#include <numbers>

using namespace psm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

bool throws_code(ErrorCode code, const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code() == code;
  }
  return false;
}

constexpr double kPi = std::numbers::pi;

int nodes_of(const Eigenstate &s) {
  const Grid g = support_grid(s, 4001);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = s.wavefunction(g.at(i));
  return count_nodes(v);
}

} // namespace

TEST_CASE("parameter validation", "[models]") {
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { HarmonicOscillatorParams{-1, 1, 1}.validate(); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { HarmonicOscillatorParams{1, 0, 1}.validate(); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { RigidRotorParams{1, -2, 1}.validate(); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { HydrogenParams{1, 0.5}.validate(); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { HydrogenParams{0, -0.5}.validate(); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { MorseParams{1, 1, 0, 1}.validate(); }));
}

TEST_CASE("harmonic oscillator spectrum", "[models]") {
  const auto s = ho_spectrum({1, 1, 1}, 2);
  REQUIRE(s.size() == 3);
  CHECK_THAT(s[0].energy, WithinAbs(0.5, 1e-15));
  CHECK_THAT(s[1].energy, WithinAbs(1.5, 1e-15));
  CHECK_THAT(s[2].energy, WithinAbs(2.5, 1e-15));

  const HarmonicOscillatorParams p{2, 3, 1};
  CHECK_THAT(ho_energy(p, 0), WithinAbs(1.5, 1e-15));
  CHECK_THAT(p.length_scale(), WithinAbs(1 / std::sqrt(6.0), 1e-15));
  const auto s0 = ho_spectrum(p, 0);
  REQUIRE(s0.size() == 1);
  CHECK(nodes_of(s0[0]) == 0);
  const double xc = p.length_scale();
  for (double q : {-0.7, -0.1, 0.4, 1.0}) {
    CHECK_THAT(s0[0].wavefunction(q) / s0[0].wavefunction(0.0), WithinRel(std::exp(-q * q / (2 * xc * xc)), 1e-12));
  }
  // normalised: integral psi^2 = 1 and psi0(0) = (1/(pi xc^2))^{1/4}
  CHECK_THAT(s0[0].wavefunction(0.0), WithinRel(std::pow(kPi * xc * xc, -0.25), 1e-10));
}

TEST_CASE("rigid rotor spectrum", "[models]") {
  const RigidRotorParams p{1, 1, 1};
  const auto s = rotor_spectrum(p, 2);
  std::map<int, int> degeneracy;
  for (const auto &st : s) {
    CHECK_THAT(st.energy, WithinAbs(st.qn.l * (st.qn.l + 1) / 2.0, 1e-14));
    ++degeneracy[st.qn.l];
  }
  CHECK(degeneracy == std::map<int, int>{{0, 1}, {1, 3}, {2, 5}});

  const Eigenstate cosine = make_eigenstate(p, {0, 1, 0});
  for (double th : {0.3, 1.2, 2.5}) {
    CHECK_THAT(cosine.wavefunction(th) / cosine.wavefunction(0.3), WithinRel(std::cos(th) / std::cos(0.3), 1e-12));
  }
  CHECK(std::abs(cosine.wavefunction(kPi / 2)) < 1e-14);
  CHECK(nodes_of(cosine) == 1);
}

TEST_CASE("rotor full wavefunction", "[models]") {
  const RigidRotorParams p{1, 1, 1};
  for (int m = -2; m <= 2; ++m) {
    const Eigenstate theta = make_eigenstate(p, {0, 2, m});
    for (double th : {0.4, 1.9}) {
      for (double ph : {0.0, 1.1, 4.0}) {
        const ComplexValue y = rotor_wavefunction(p, 2, m, th, ph);
        const double amp = theta.wavefunction(th) / std::sqrt(2 * kPi);
        CHECK_THAT(y.re, WithinAbs(amp * std::cos(m * ph), 1e-14));
        CHECK_THAT(y.im, WithinAbs(amp * std::sin(m * ph), 1e-14));
      }
    }
  }
  // |Y_1^0|^2 = 3 cos^2 / (4 pi)
  const ComplexValue y10 = rotor_wavefunction(p, 1, 0, 0.5, 0.0);
  CHECK_THAT(y10.re * y10.re + y10.im * y10.im, WithinRel(3 * std::cos(0.5) * std::cos(0.5) / (4 * kPi), 1e-10));
}

TEST_CASE("hydrogen spectrum", "[models]") {
  const HydrogenParams ev{1.0, -13.6};
  CHECK_THAT(hydrogen_energy(ev, 1), WithinAbs(-13.6, 1e-12));
  CHECK_THAT(hydrogen_energy(ev, 2), WithinAbs(-3.4, 1e-12));
  CHECK_THAT(hydrogen_energy(ev, 3), WithinAbs(-1.5111111111, 1e-9));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { hydrogen_spectrum({}, 0); }));

  const MatchSolution s21 = match(HydrogenParams{}, {2, 1, 0});
  CHECK_THAT(s21.param("nu"), WithinAbs(3.0, 1e-15));
  CHECK_THAT(s21.param("lambda"), WithinAbs(0.0, 1e-15));
  CHECK(nodes_of(make_eigenstate(HydrogenParams{}, {2, 1, 0})) == 0);
  CHECK(nodes_of(make_eigenstate(HydrogenParams{}, {3, 0, 0})) == 2);
  CHECK_THAT(s21.scale.x_c, WithinAbs(1.0, 1e-15)); // a0 n / 2

  // radial function R_{n,l} proportional to rho^l exp(-rho/2) L^{2l+1}_{n-l-1}(rho), rho = 2r/(n a0)
  const HydrogenParams p{0.7, -0.5};
  const Eigenstate st = make_eigenstate(p, {3, 1, 0});
  auto expected = [&](double r) {
    const double rho = 2 * r / (3 * p.bohr_radius);
    return rho * std::exp(-rho / 2) * ref::laguerre(1, 3, rho);
  };
  const double k = st.wavefunction(1.0) / expected(1.0);
  for (double r : {0.2, 2.5, 6.0}) CHECK_THAT(st.wavefunction(r), WithinRel(k * expected(r), 1e-10));
}

TEST_CASE("Morse spectrum", "[models]") {
  const auto s = morse_spectrum(MorseParams::from_delta(1, 1, 2.5));
  REQUIRE(s.size() == 2);
  CHECK_THAT(s[0].energy, WithinAbs(-0.64, 1e-14));
  CHECK_THAT(s[1].energy, WithinAbs(-0.16, 1e-14));
  CHECK_THAT(morse_energy(MorseParams::from_delta(1, 4, 10), 0), WithinAbs(-3.61, 1e-13));
  CHECK(throws_code(ErrorCode::no_bound_states, [] { morse_spectrum(MorseParams::from_delta(1, 1, 0.4)); }));
  CHECK(throws_code(ErrorCode::invalid_parameter,
                    [] { make_eigenstate(MorseParams::from_delta(1, 1, 2.5), {2, 0, 0}); }));

  for (double delta : {0.6, 1.0, 1.5, 2.5, 5.0, 7.3, 10.0}) {
    int expected = 0;
    for (int n = 0; n + 0.5 < delta; ++n) ++expected;
    CHECK(morse_bound_count(MorseParams::from_delta(1, 1, delta)) == expected);
  }
  for (const auto &st : morse_spectrum(MorseParams::from_delta(1, 1, 5))) {
    CHECK(st.energy > -1.0);
    const MatchSolution m = match(MorseParams::from_delta(1, 1, 5), st.qn);
    CHECK_THAT(std::sqrt(-*m.tise.epsilon), WithinAbs(5 - st.qn.n - 0.5, 1e-12));
  }
}

TEST_CASE("dimensionless forms", "[models]") {
  const DimensionlessTISE ho = dimensionless_form(HarmonicOscillatorParams{2, 3, 1}, {1, 0, 0});
  for (double x : {-1.0, 0.5, 2.0}) {
    CHECK(ho.b(x) == 0.0);
    CHECK_THAT(ho.v(x), WithinAbs(x * x, 1e-14));
  }
  CHECK_THAT(*ho.epsilon, WithinAbs(3.0, 1e-14));

  const DimensionlessTISE rot = dimensionless_form(RigidRotorParams{}, {0, 3, 2});
  for (double th : {0.3, 1.0, 2.6}) {
    CHECK_THAT(rot.b(th), WithinAbs(-std::cos(th) / std::sin(th), 1e-14));
    const double s2 = std::sin(th) * std::sin(th);
    CHECK_THAT(rot.k_squared(th), WithinAbs((12.0 * s2 - 4.0) / s2, 1e-12));
  }

  const MorseParams mp = MorseParams::from_delta(1, 1, 5);
  const DimensionlessTISE mo = dimensionless_form(mp, {1, 0, 0});
  for (double y : {0.5, 3.0, 12.0}) {
    CHECK_THAT(mo.b(y), WithinAbs(-1 / y, 1e-15));
    CHECK_THAT(mo.v(y), WithinAbs(-5 / y + 0.25, 1e-14));
    CHECK_THAT(mo.k_squared(y), WithinAbs(*mo.epsilon / (y * y) - mo.v(y), 1e-14));
  }
}

TEST_CASE("energy equals the energy scale times epsilon", "[models]") {
  const std::vector<ModelSystem> models{HarmonicOscillatorParams{2, 3, 1.3}, RigidRotorParams{0.7, 1.4, 1.1},
                                        HydrogenParams{0.9, -2.0}, MorseParams{1.2, 3.0, 0.8, 0.9}};
  for (const auto &model : models) {
    for (const auto &qn : state_list(model, 3)) {
      const MatchSolution s = match(model, qn);
      INFO(to_string(kind_of(model)) << " n=" << qn.n << " l=" << qn.l);
      CHECK_THAT(s.energy(), WithinRel(s.scale.a_energy * *s.tise.epsilon, 1e-13));
    }
  }
}

TEST_CASE("every state passes the matching identity, the TISE residual and the node count", "[models][property]") {
  const std::vector<std::pair<ModelSystem, int>> models{{HarmonicOscillatorParams{}, 5},
                                                        {RigidRotorParams{}, 4},
                                                        {HydrogenParams{}, 4},
                                                        {MorseParams::from_delta(1, 1, 5), 0}};
  for (const auto &[model, n_max] : models) {
    for (const auto &st : spectrum(model, n_max)) {
      INFO(to_string(kind_of(model)) << " n=" << st.qn.n << " l=" << st.qn.l << " m=" << st.qn.m);
      const MatchSolution s = match(model, st.qn);
      const Grid grid = verification_grid(model, st.qn);
      CHECK(verify_match(s.tise, s.template_ode, grid) < 1e-9);
      CHECK(tise_residual_max(wavefunction_from_match(s, polynomial_spec(s)), s.tise, grid) < 1e-5);
      CHECK(nodes_of(st) == expected_nodes(model, st.qn));
      CHECK_THAT(quadrature([&](double q) { return st.wavefunction(q) * st.wavefunction(q); },
                            support_grid(st, 20001), st.measure),
                 WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("deep Morse well: identity, nodes and norm for all ten states", "[models]") {
  const MorseParams p = MorseParams::from_delta(1, 1, 10);
  const auto states = morse_spectrum(p);
  REQUIRE(states.size() == 10);
  for (const auto &st : states) {
    INFO("n=" << st.qn.n);
    const MatchSolution s = match(p, st.qn);
    CHECK(verify_match(s.tise, s.template_ode, verification_grid(p, st.qn)) < 1e-9);
    CHECK(nodes_of(st) == st.qn.n);
    CHECK_THAT(quadrature([&](double q) { return st.wavefunction(q) * st.wavefunction(q); }, support_grid(st, 20001)),
               WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("orthogonality within each family", "[models][property]") {
  auto check_family = [](const std::vector<Eigenstate> &states) {
    if (states.size() < 2) return;
    double lo = 1e300, hi = -1e300;
    std::vector<RealFunction> fns;
    for (const auto &s : states) {
      lo = std::min(lo, s.support.lower);
      hi = std::max(hi, s.support.upper);
      fns.push_back(s.wavefunction);
    }
    CHECK(max_off_diagonal(gram_matrix(fns, Grid(lo, hi, 20001), states.front().measure)) < 1e-6);
  };
  check_family(ho_spectrum({}, 5));
  check_family(morse_spectrum(MorseParams::from_delta(1, 1, 5)));
  for (int l = 0; l <= 3; ++l) {
    std::vector<Eigenstate> fixed_l;
    for (const auto &s : hydrogen_spectrum({}, 5))
      if (s.qn.l == l) fixed_l.push_back(s);
    check_family(fixed_l);
  }
  for (int m = -3; m <= 3; ++m) {
    std::vector<Eigenstate> fixed_m;
    for (const auto &s : rotor_spectrum({}, 5))
      if (s.qn.m == m) fixed_m.push_back(s);
    check_family(fixed_m);
  }
}

TEST_CASE("closed-form spectra agree with the finite-difference route", "[models]") {
  auto check_model = [](const ModelSystem &model, int n_max, double unit) {
    const auto states = state_list(model, n_max);
    const auto levels = oracle_levels(model, states);
    REQUIRE(levels.size() == states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double e = match(model, states[i]).energy();
      INFO(to_string(kind_of(model)) << " n=" << states[i].n << " l=" << states[i].l << " m=" << states[i].m);
      CHECK(std::abs(levels[i].energy - e) <= 1e-4 * std::max(std::abs(e), unit));
    }
  };
  check_model(HarmonicOscillatorParams{1.5, 2.0, 1.0}, 5, 2.0);
  check_model(RigidRotorParams{0.5, 2.0, 1.0}, 3, 0.25);
  check_model(HydrogenParams{2.0, -0.125}, 3, 0.125);
  check_model(MorseParams::from_delta(1, 1, 5), 0, 1.0);
}
