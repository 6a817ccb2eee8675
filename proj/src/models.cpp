#include "psm/models.hpp"

#include "psm/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace psm {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw Error(ErrorCode::invalid_parameter, os.str());
  }
}

[[noreturn]] void bad_state(std::string_view model, const QuantumNumbers &qn,
                            std::string_view why) {
  std::ostringstream os;
  os << model << " state (n=" << qn.n << ", l=" << qn.l << ", m=" << qn.m
     << "): " << why;
  throw Error(ErrorCode::invalid_parameter, os.str());
}

std::size_t odd(std::size_t n) { return n % 2 == 0 ? n + 1 : n; }

// sqrt(-eps) for Morse level n, i.e. delta - n - 1/2.
double morse_root(const MorseParams &p, int n) { return p.delta() - n - 0.5; }

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

// --- parameters -------------------------------------------------------------

void HarmonicOscillatorParams::validate() const {
  require_positive(mass, "harmonic oscillator mass m");
  require_positive(omega, "harmonic oscillator frequency omega");
  require_positive(hbar, "hbar");
}

double HarmonicOscillatorParams::length_scale() const {
  return std::sqrt(hbar / (mass * omega));
}

void RigidRotorParams::validate() const {
  require_positive(reduced_mass, "rotor reduced mass mu");
  require_positive(bond_length, "rotor bond length R");
  require_positive(hbar, "hbar");
}

void HydrogenParams::validate() const {
  require_positive(bohr_radius, "Bohr radius a0");
  if (!(ground_energy < 0.0) || !std::isfinite(ground_energy)) {
    std::ostringstream os;
    os << "hydrogen ground-state energy E_g must be negative, got " << ground_energy;
    throw Error(ErrorCode::invalid_parameter, os.str());
  }
}

void MorseParams::validate() const {
  require_positive(mass, "Morse mass m");
  require_positive(well_depth, "Morse well depth D_e");
  require_positive(range, "Morse range alpha");
  require_positive(hbar, "hbar");
}

double MorseParams::delta() const {
  return std::sqrt(2.0 * mass * well_depth) / (range * hbar);
}

MorseParams MorseParams::from_delta(double mass, double well_depth, double delta,
                                    double hbar) {
  require_positive(delta, "Morse delta");
  require_positive(mass, "Morse mass m");
  require_positive(well_depth, "Morse well depth D_e");
  require_positive(hbar, "hbar");
  return {mass, well_depth, std::sqrt(2.0 * mass * well_depth) / (delta * hbar), hbar};
}

ModelKind kind_of(const ModelSystem &model) {
  return static_cast<ModelKind>(model.index());
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
  case ModelKind::harmonic: return "harmonic";
  case ModelKind::rotor: return "rotor";
  case ModelKind::hydrogen: return "hydrogen";
  case ModelKind::morse: return "morse";
  }
  return "unknown";
}

// --- closed-form energies ---------------------------------------------------

double ho_energy(const HarmonicOscillatorParams &p, int n) {
  return p.hbar * p.omega * (n + 0.5);
}

double rotor_energy(const RigidRotorParams &p, int l) {
  return p.hbar * p.hbar / (2.0 * p.moment_of_inertia()) * l * (l + 1.0);
}

double hydrogen_energy(const HydrogenParams &p, int n) {
  return p.ground_energy / (static_cast<double>(n) * n);
}

double morse_energy(const MorseParams &p, int n) {
  const double f = 1.0 - (n + 0.5) / p.delta();
  return -p.well_depth * f * f;
}

int morse_bound_count(const MorseParams &p) {
  const double delta = p.delta();
  int count = 0;
  while (count + 0.5 < delta) ++count;
  return count;
}

void validate_quantum_numbers(const ModelSystem &model, const QuantumNumbers &qn) {
  std::visit(overloaded{
                 [&](const HarmonicOscillatorParams &p) {
                   p.validate();
                   if (qn.n < 0) bad_state("harmonic", qn, "requires n >= 0");
                 },
                 [&](const RigidRotorParams &p) {
                   p.validate();
                   if (qn.l < 0) bad_state("rotor", qn, "requires l >= 0");
                   if (std::abs(qn.m) > qn.l) bad_state("rotor", qn, "requires -l <= m <= l");
                 },
                 [&](const HydrogenParams &p) {
                   p.validate();
                   if (qn.n < 1) bad_state("hydrogen", qn, "requires n >= 1");
                   if (qn.l < 0 || qn.l > qn.n - 1) {
                     bad_state("hydrogen", qn, "requires 0 <= l <= n - 1");
                   }
                 },
                 [&](const MorseParams &p) {
                   p.validate();
                   const int bound = morse_bound_count(p);
                   if (bound == 0) {
                     std::ostringstream os;
                     os << "no bound states: δ ≤ 1/2 (delta = " << p.delta() << ")";
                     throw Error(ErrorCode::no_bound_states, os.str());
                   }
                   if (qn.n < 0 || qn.n >= bound) {
                     std::ostringstream os;
                     os << "requires 0 <= n < " << bound << " (bound states for delta = "
                        << p.delta() << ")";
                     bad_state("morse", qn, os.str());
                   }
                 },
             },
             model);
}

// --- dimensionless equations -------------------------------------------------

DimensionlessTISE dimensionless_form(const HarmonicOscillatorParams &p,
                                     const QuantumNumbers &qn) {
  // x = q / x_c with x_c = sqrt(hbar / m omega): v = x^2, eps = E / (hbar omega / 2).
  const double a = p.hbar * p.hbar / (2.0 * p.mass * std::pow(p.length_scale(), 2));
  DimensionlessTISE t;
  t.v = [](double x) { return x * x; };
  t.epsilon = ho_energy(p, qn.n) / a;
  return t;
}

DimensionlessTISE dimensionless_form(const RigidRotorParams &p, const QuantumNumbers &qn) {
  const double m2 = static_cast<double>(qn.m) * qn.m;
  DimensionlessTISE t;
  t.b = [](double th) { return -std::cos(th) / std::sin(th); };
  t.b_prime = [](double th) {
    const double s = std::sin(th);
    return 1.0 / (s * s);
  };
  t.v = [m2](double th) {
    const double s = std::sin(th);
    return m2 / (s * s);
  };
  t.domain = {0.0, kPi};
  // beta = 2 I E / hbar^2
  t.epsilon = 2.0 * p.moment_of_inertia() * rotor_energy(p, qn.l) / (p.hbar * p.hbar);
  return t;
}

DimensionlessTISE dimensionless_form(const HydrogenParams &p, const QuantumNumbers &qn) {
  // r = r_c rho with the quantised r_c = a0 n / 2.
  const double r_c = p.bohr_radius * qn.n / 2.0;
  const double coulomb = 2.0 * r_c / p.bohr_radius;
  const double centrifugal = static_cast<double>(qn.l) * (qn.l + 1.0);
  DimensionlessTISE t;
  t.b = [](double rho) { return -2.0 / rho; };
  t.b_prime = [](double rho) { return 2.0 / (rho * rho); };
  t.v = [=](double rho) { return -coulomb / rho + centrifugal / (rho * rho); };
  t.domain = {0.0, std::numeric_limits<double>::infinity()};
  t.epsilon = -r_c * r_c * hydrogen_energy(p, qn.n) /
              (p.bohr_radius * p.bohr_radius * p.ground_energy);
  return t;
}

DimensionlessTISE dimensionless_form(const MorseParams &p, const QuantumNumbers &qn) {
  // y = 2 delta exp(-alpha q); the energy enters as eps / y^2.
  const double delta = p.delta();
  DimensionlessTISE t;
  t.b = [](double y) { return -1.0 / y; };
  t.b_prime = [](double y) { return 1.0 / (y * y); };
  t.v = [delta](double y) { return -delta / y + 0.25; };
  t.epsilon_weight = [](double y) { return 1.0 / (y * y); };
  t.domain = {0.0, std::numeric_limits<double>::infinity()};
  t.epsilon = 2.0 * p.mass * morse_energy(p, qn.n) / std::pow(p.range * p.hbar, 2);
  return t;
}

DimensionlessTISE dimensionless_form(const ModelSystem &model, const QuantumNumbers &qn) {
  return std::visit([&](const auto &p) { return dimensionless_form(p, qn); }, model);
}

// --- matches -------------------------------------------------------------------

MatchSolution match(const HarmonicOscillatorParams &p, const QuantumNumbers &qn) {
  validate_quantum_numbers(p, qn);
  MatchSolution s;
  const double x_c = p.length_scale();
  s.scale = {x_c, p.hbar * p.hbar / (2.0 * p.mass * x_c * x_c)};
  s.template_ode = TemplateODE::hermite(qn.n);
  s.param_map = {{"lambda", static_cast<double>(qn.n)}, {"x_c", x_c}};
  s.tise = dimensionless_form(p, qn);
  s.state = qn;
  s.energy_of = [p](const QuantumNumbers &q) { return ho_energy(p, q.n); };
  s.g = [](double x) { return std::exp(-0.5 * x * x); };
  s.g_prime = [](double x) { return -x * std::exp(-0.5 * x * x); };
  s.x_ref = 0.0;
  return s;
}

MatchSolution match(const RigidRotorParams &p, const QuantumNumbers &qn) {
  validate_quantum_numbers(p, qn);
  MatchSolution s;
  s.scale = {p.bond_length, p.hbar * p.hbar / (2.0 * p.moment_of_inertia())};
  s.template_ode = TemplateODE::polar_assoc_legendre(qn.l, qn.m);
  s.tise = dimensionless_form(p, qn);
  s.param_map = {{"l", static_cast<double>(qn.l)},
                 {"m", static_cast<double>(qn.m)},
                 {"beta", *s.tise.epsilon}};
  s.state = qn;
  s.energy_of = [p](const QuantumNumbers &q) { return rotor_energy(p, q.l); };
  s.g = [](double) { return 1.0; };
  s.g_prime = [](double) { return 0.0; };
  s.x_ref = kPi / 2.0;
  return s;
}

MatchSolution match(const HydrogenParams &p, const QuantumNumbers &qn) {
  validate_quantum_numbers(p, qn);
  MatchSolution s;
  const double r_c = p.bohr_radius * qn.n / 2.0;
  s.scale = {r_c, -p.ground_energy * p.bohr_radius * p.bohr_radius / (r_c * r_c)};
  const int lambda = qn.n - qn.l - 1;
  const int nu = 2 * qn.l + 1;
  s.template_ode = TemplateODE::assoc_laguerre(lambda, nu);
  s.param_map = {{"lambda", static_cast<double>(lambda)},
                 {"nu", static_cast<double>(nu)},
                 {"r_c", r_c}};
  s.tise = dimensionless_form(p, qn);
  s.state = qn;
  s.energy_of = [p](const QuantumNumbers &q) { return hydrogen_energy(p, q.n); };
  const int l = qn.l;
  s.g = [l](double rho) { return std::pow(rho, l) * std::exp(-0.5 * rho); };
  s.g_prime = [l](double rho) {
    return (l / rho - 0.5) * std::pow(rho, l) * std::exp(-0.5 * rho);
  };
  s.x_ref = 1.0;
  return s;
}

MatchSolution match(const MorseParams &p, const QuantumNumbers &qn) {
  validate_quantum_numbers(p, qn);
  MatchSolution s;
  s.scale = {1.0 / p.range, std::pow(p.hbar * p.range, 2) / (2.0 * p.mass)};
  s.tise = dimensionless_form(p, qn);
  const double root = std::sqrt(-*s.tise.epsilon);
  if (std::abs(root - morse_root(p, qn.n)) > 1e-9 * std::max(1.0, p.delta())) {
    std::ostringstream os;
    os << "sqrt(-eps) = " << root << " disagrees with delta - n - 1/2 = "
       << morse_root(p, qn.n);
    throw Error(ErrorCode::invalid_parameter, os.str());
  }
  const MorseBranchAssessment branch =
      assess_morse_branch(p.delta(), *s.tise.epsilon, MorseBranch::retained);
  const double a = -static_cast<double>(qn.n);
  const double c = 1.0 + 2.0 * root;
  s.template_ode = TemplateODE::confluent_hypergeometric(a, c);
  s.param_map = {{"a", a},
                 {"c", c},
                 {"sqrt_neg_epsilon", root},
                 {"delta", p.delta()},
                 {"a_from_identity", branch.a}};
  s.state = qn;
  s.energy_of = [p](const QuantumNumbers &q) { return morse_energy(p, q.n); };
  s.g = [root](double y) { return std::exp(-0.5 * y) * std::pow(y, root); };
  s.g_prime = [root](double y) {
    return (root / y - 0.5) * std::exp(-0.5 * y) * std::pow(y, root);
  };
  s.x_ref = 1.0;
  return s;
}

MatchSolution match(const ModelSystem &model, const QuantumNumbers &qn) {
  return std::visit([&](const auto &p) { return match(p, qn); }, model);
}

PolynomialSpec polynomial_spec(const MatchSolution &solution) {
  const TemplateODE &t = solution.template_ode;
  return {t.family, static_cast<int>(std::lround(t.degree)), t.order};
}

// --- grids and coordinates ---------------------------------------------------------

Grid verification_grid(const ModelSystem &model, const QuantumNumbers &qn) {
  return std::visit(
      overloaded{
          [&](const HarmonicOscillatorParams &) {
            const double L = std::sqrt(2.0 * qn.n + 1.0) + 5.0;
            return Grid(-L, L, 1001);
          },
          [&](const RigidRotorParams &) { return Grid(0.05, kPi - 0.05, 1001); },
          [&](const HydrogenParams &) { return Grid(0.2, 4.0 * qn.n + 20.0, 1001); },
          [&](const MorseParams &p) { return Grid(1.0, 2.0 * p.delta() + 30.0, 1001); },
      },
      model);
}

double to_dimensionless(const ModelSystem &model, const QuantumNumbers &qn, double q) {
  return std::visit(
      overloaded{
          [&](const HarmonicOscillatorParams &p) { return q / p.length_scale(); },
          [&](const RigidRotorParams &) { return q; },
          [&](const HydrogenParams &p) { return 2.0 * q / (qn.n * p.bohr_radius); },
          [&](const MorseParams &p) {
            return 2.0 * p.delta() * std::exp(-p.range * q);
          },
      },
      model);
}

int expected_nodes(const ModelSystem &model, const QuantumNumbers &qn) {
  switch (kind_of(model)) {
  case ModelKind::harmonic:
  case ModelKind::morse: return qn.n;
  case ModelKind::hydrogen: return qn.n - qn.l - 1;
  case ModelKind::rotor: return qn.l - std::abs(qn.m);
  }
  return 0;
}

Grid support_grid(const Eigenstate &state, std::size_t n_points) {
  return Grid(state.support.lower, state.support.upper, odd(n_points));
}

// --- eigenstates -------------------------------------------------------------------

Eigenstate make_eigenstate(const ModelSystem &model, const QuantumNumbers &qn) {
  const MatchSolution sol = match(model, qn);
  const RealFunction phi = wavefunction_from_match(sol, polynomial_spec(sol));

  Eigenstate st;
  st.qn = qn;
  st.epsilon = *sol.tise.epsilon;
  st.energy = sol.energy();
  st.scale = sol.scale;
  st.unnormalized = [model, qn, phi](double q) {
    return phi(to_dimensionless(model, qn, q));
  };
  st.measure = [](double) { return 1.0; };
  st.measure_label = "dq";

  std::visit(overloaded{
                 [&](const HarmonicOscillatorParams &p) {
                   const double L = p.length_scale() * (std::sqrt(2.0 * qn.n + 1.0) + 10.0);
                   st.support = {-L, L};
                 },
                 [&](const RigidRotorParams &) {
                   st.support = {0.0, kPi};
                   st.measure = [](double th) { return std::sin(th); };
                   st.measure_label = "sin(theta) dtheta";
                 },
                 [&](const HydrogenParams &p) {
                   st.support = {0.0, 0.5 * qn.n * p.bohr_radius * (4.0 * qn.n + 60.0)};
                   st.measure = [](double r) { return r * r; };
                   st.measure_label = "r^2 dr";
                 },
                 [&](const MorseParams &p) {
                   const double delta = p.delta();
                   const double root = morse_root(p, qn.n);
                   // y from 4 delta + 60 (inner wall) down to where y^root
                   // has dropped by e^-40.
                   const double q_lo = -std::log((4.0 * delta + 60.0) / (2.0 * delta)) / p.range;
                   const double q_hi =
                       std::min((std::log(2.0 * delta) + 40.0 / root) / p.range,
                                q_lo + 4000.0 / p.range);
                   st.support = {q_lo, q_hi};
                 },
             },
             model);

  const Grid grid = support_grid(st, 20001);
  const RealFunction &u = st.unnormalized;
  st.norm = std::sqrt(quadrature([&](double q) { return u(q) * u(q); }, grid, st.measure));
  if (!(st.norm > 0.0) || !std::isfinite(st.norm)) {
    throw Error(ErrorCode::degenerate_state, "eigenfunction has zero or non-finite norm");
  }
  st.wavefunction = [u, norm = st.norm](double q) { return u(q) / norm; };
  return st;
}

std::vector<QuantumNumbers> state_list(const ModelSystem &model, int n_max) {
  std::vector<QuantumNumbers> out;
  switch (kind_of(model)) {
  case ModelKind::harmonic:
    if (n_max < 0) throw Error(ErrorCode::invalid_parameter, "requires n_max >= 0");
    for (int n = 0; n <= n_max; ++n) out.push_back({n, 0, 0});
    break;
  case ModelKind::rotor:
    if (n_max < 0) throw Error(ErrorCode::invalid_parameter, "requires l_max >= 0");
    for (int l = 0; l <= n_max; ++l)
      for (int m = -l; m <= l; ++m) out.push_back({0, l, m});
    break;
  case ModelKind::hydrogen:
    if (n_max < 1) throw Error(ErrorCode::invalid_parameter, "hydrogen requires n_max >= 1");
    for (int n = 1; n <= n_max; ++n)
      for (int l = 0; l < n; ++l) out.push_back({n, l, 0});
    break;
  case ModelKind::morse: {
    const auto &p = std::get<MorseParams>(model);
    p.validate();
    const int bound = morse_bound_count(p);
    if (bound == 0) {
      std::ostringstream os;
      os << "no bound states: δ ≤ 1/2 (delta = " << p.delta() << ")";
      throw Error(ErrorCode::no_bound_states, os.str());
    }
    for (int n = 0; n < bound; ++n) out.push_back({n, 0, 0});
    break;
  }
  }
  return out;
}

std::vector<Eigenstate> spectrum(const ModelSystem &model, int n_max) {
  std::vector<Eigenstate> out;
  for (const auto &qn : state_list(model, n_max)) out.push_back(make_eigenstate(model, qn));
  return out;
}

ComplexValue rotor_wavefunction(const RigidRotorParams &p, int l, int m, double theta,
                                double phi) {
  const Eigenstate st = make_eigenstate(p, QuantumNumbers{0, l, m});
  const double amp = st.wavefunction(theta) / std::sqrt(2.0 * kPi);
  return {amp * std::cos(m * phi), amp * std::sin(m * phi)};
}

std::vector<Eigenstate> ho_spectrum(const HarmonicOscillatorParams &p, int n_max) {
  return spectrum(p, n_max);
}

std::vector<Eigenstate> rotor_spectrum(const RigidRotorParams &p, int l_max) {
  return spectrum(p, l_max);
}

std::vector<Eigenstate> hydrogen_spectrum(const HydrogenParams &p, int n_max) {
  return spectrum(p, n_max);
}

std::vector<Eigenstate> morse_spectrum(const MorseParams &p) { return spectrum(p, 0); }

// --- finite-difference oracle --------------------------------------------------------

namespace {

// Energies of -hbar^2/(2m) psi'' + V psi = E psi in the length unit L0:
// v(x) = V(L0 x) / e0 with e0 = hbar^2 / (2 m L0^2).
struct PhysicalProblem {
  RealFunction potential;
  double e0 = 1.0;
  double length_unit = 1.0;
  Grid grid;
  std::optional<FirstDerivativeTerm> b;
};

NumericalSpectrumReport solve(const PhysicalProblem &pb, std::size_t count) {
  const RealFunction v = [&](double x) { return pb.potential(pb.length_unit * x) / pb.e0; };
  return fd_spectrum(v, pb.grid, count, pb.b);
}

std::size_t points_or(std::size_t requested, std::size_t fallback) {
  return odd(requested != 0 ? requested : fallback);
}

} // namespace

std::vector<OracleLevel> oracle_levels(const ModelSystem &model,
                                       std::span<const QuantumNumbers> states,
                                       const OracleSettings &settings) {
  for (const auto &qn : states) validate_quantum_numbers(model, qn);
  std::vector<OracleLevel> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i].qn = states[i];
  if (states.empty()) return out;
  const double scale = settings.domain_scale;

  std::visit(
      overloaded{
          [&](const HarmonicOscillatorParams &p) {
            const double L0 = p.length_scale();
            int top = 0;
            for (const auto &qn : states) top = std::max(top, qn.n);
            PhysicalProblem pb{
                [p](double q) { return 0.5 * p.mass * p.omega * p.omega * q * q; },
                p.hbar * p.hbar / (2.0 * p.mass * L0 * L0), L0,
                Grid(-12.0 * scale, 12.0 * scale, points_or(settings.n_points, 4001)),
                std::nullopt};
            const auto r = solve(pb, static_cast<std::size_t>(top) + 1);
            for (auto &lv : out) {
              lv.energy = pb.e0 * r.extrapolated[lv.qn.n];
              lv.raw_energy = pb.e0 * r.eigenvalues[lv.qn.n];
              lv.convergence = pb.e0 * r.convergence_estimate;
            }
          },
          [&](const RigidRotorParams &p) {
            const double e0 = p.hbar * p.hbar / (2.0 * p.moment_of_inertia());
            std::size_t cells = settings.n_points != 0 ? settings.n_points : 8000;
            cells += cells % 2;
            std::map<int, int> top; // |m| -> highest l
            for (const auto &qn : states) {
              auto &t = top[std::abs(qn.m)];
              t = std::max(t, qn.l);
            }
            for (const auto &[am, l_top] : top) {
              const std::size_t count = static_cast<std::size_t>(l_top - am) + 1;
              const auto fine = eigenvalues_sturm(build_legendre_operator(am, cells), count);
              const auto rough =
                  eigenvalues_sturm(build_legendre_operator(am, cells / 2), count);
              for (auto &lv : out) {
                if (std::abs(lv.qn.m) != am) continue;
                const std::size_t k = static_cast<std::size_t>(lv.qn.l - am);
                lv.raw_energy = e0 * fine[k];
                lv.energy = e0 * (4.0 * fine[k] - rough[k]) / 3.0;
                lv.convergence = e0 * std::abs(fine[k] - rough[k]);
              }
            }
          },
          [&](const HydrogenParams &p) {
            // Length unit a0; the Coulomb and centrifugal terms expressed
            // through a0 and E_g only.
            const double a0 = p.bohr_radius;
            const double eg = p.ground_energy;
            int n_top = 1;
            std::map<int, int> top; // l -> highest n
            for (const auto &qn : states) {
              n_top = std::max(n_top, qn.n);
              auto &t = top[qn.l];
              t = std::max(t, qn.n);
            }
            const double rho_max = 120.0 * n_top * scale;
            const std::size_t pts =
                points_or(settings.n_points, static_cast<std::size_t>(rho_max / 0.02) + 1);
            for (const auto &[l, n_hi] : top) {
              const double ll = static_cast<double>(l) * (l + 1.0);
              PhysicalProblem pb{
                  [=](double r) { return 2.0 * eg * a0 / r - eg * a0 * a0 * ll / (r * r); },
                  -eg, a0, Grid(0.0, rho_max, pts),
                  FirstDerivativeTerm{[](double rho) { return -2.0 / rho; },
                                      [](double rho) { return 2.0 / (rho * rho); }}};
              const auto r = solve(pb, static_cast<std::size_t>(n_hi - l));
              for (auto &lv : out) {
                if (lv.qn.l != l) continue;
                const std::size_t k = static_cast<std::size_t>(lv.qn.n - l - 1);
                lv.energy = pb.e0 * r.extrapolated[k];
                lv.raw_energy = pb.e0 * r.eigenvalues[k];
                lv.convergence = pb.e0 * r.convergence_estimate;
              }
            }
          },
          [&](const MorseParams &p) {
            const double L0 = 1.0 / p.range;
            int top = 0;
            for (const auto &qn : states) top = std::max(top, qn.n);
            PhysicalProblem pb{
                [p](double q) {
                  const double e = std::exp(-p.range * q);
                  return p.well_depth * (e * e - 2.0 * e);
                },
                p.hbar * p.hbar / (2.0 * p.mass * L0 * L0), L0,
                Grid(-2.0 * scale, 20.0 * scale, points_or(settings.n_points, 8001)),
                std::nullopt};
            const auto r = solve(pb, static_cast<std::size_t>(top) + 1);
            for (auto &lv : out) {
              lv.energy = pb.e0 * r.extrapolated[lv.qn.n];
              lv.raw_energy = pb.e0 * r.eigenvalues[lv.qn.n];
              lv.convergence = pb.e0 * r.convergence_estimate;
            }
          },
      },
      model);
  return out;
}

} // namespace psm
