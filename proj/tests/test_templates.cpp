#include <catch2/catch_amalgamated.hpp>

#include "psm/error.hpp"
#include "psm/templates.hpp"
#include "support/reference.hpp"

#include <cmath>
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

// Interior sample range used per family.
std::pair<double, double> sample_range(TemplateFamily f) {
  switch (f) {
  case TemplateFamily::hermite: return {-3.0, 3.0};
  case TemplateFamily::assoc_legendre: return {-0.95, 0.95};
  case TemplateFamily::polar_assoc_legendre: return {0.05, kPi - 0.05};
  case TemplateFamily::assoc_laguerre:
  case TemplateFamily::confluent_hypergeometric: return {0.05, 12.0};
  }
  return {0, 1};
}

// Valid (degree, order) pairs per family for degrees 0..8.
std::vector<PolynomialSpec> valid_specs(TemplateFamily f) {
  std::vector<PolynomialSpec> out;
  for (int d = 0; d <= 8; ++d) {
    switch (f) {
    case TemplateFamily::hermite: out.push_back({f, d, 0.0}); break;
    case TemplateFamily::assoc_legendre:
    case TemplateFamily::polar_assoc_legendre:
      for (int m = -d; m <= d; ++m) out.push_back({f, d, static_cast<double>(m)});
      break;
    case TemplateFamily::assoc_laguerre:
      for (int nu : {0, 1, 3, 5}) out.push_back({f, d, static_cast<double>(nu)});
      break;
    case TemplateFamily::confluent_hypergeometric:
      for (double c : {0.5, 1.0, 2.0, 4.5}) out.push_back({f, d, c});
      break;
    }
  }
  return out;
}

} // namespace

TEST_CASE("G closed forms at tabulated points", "[templates]") {
  CHECK_THAT(template_G(TemplateODE::hermite(0), 2.0), WithinAbs(-3.0, 1e-15));
  // -1/4 + (1+1+2)/(2*2) + (1-1)/(4*4) = -1/4 + 1 + 0
  CHECK_THAT(template_G(TemplateODE::assoc_laguerre(1, 1), 2.0), WithinAbs(0.75, 1e-15));
  CHECK_THAT(template_G(TemplateODE::polar_assoc_legendre(1, 0), kPi / 2), WithinAbs(2.5, 1e-14));
  CHECK_THAT(template_G_from_PQR(TemplateODE::assoc_legendre(2, 1), 0.5),
             WithinAbs(template_G(TemplateODE::assoc_legendre(2, 1), 0.5), 1e-12));
  for (double x : {-2.0, -0.3, 0.0, 1.7}) {
    CHECK_THAT(template_G_from_PQR(TemplateODE::hermite(0), x), WithinAbs(1 - x * x, 1e-14));
    CHECK_THAT(template_G(TemplateODE::hermite(0), x), WithinAbs(1 - x * x, 1e-14));
  }
}

TEST_CASE("G at singular points is an error", "[templates]") {
  CHECK(throws_code(ErrorCode::singular_point, [] { template_G(TemplateODE::assoc_legendre(2, 1), 1.0); }));
  CHECK(throws_code(ErrorCode::singular_point, [] { template_G(TemplateODE::assoc_legendre(2, 1), -1.0); }));
  CHECK(throws_code(ErrorCode::singular_point, [] { template_G(TemplateODE::assoc_laguerre(1, 1), 0.0); }));
  CHECK(throws_code(ErrorCode::singular_point, [] { template_G_from_PQR(TemplateODE::assoc_laguerre(1, 1), 0.0); }));
  CHECK(throws_code(ErrorCode::singular_point, [] { template_G(TemplateODE::polar_assoc_legendre(1, 0), 0.0); }));
  CHECK(throws_code(ErrorCode::singular_point, [] { template_coefficients(TemplateODE::confluent_hypergeometric(-1, 2), -0.5); }));
}

TEST_CASE("closed-form G equals G from P, Q, R", "[templates][property]") {
  auto gen = ref::rng(3);
  for (TemplateFamily f : kAllTemplateFamilies) {
    const auto [lo, hi] = sample_range(f);
    std::uniform_real_distribution<double> xs(lo, hi);
    for (const auto &spec : valid_specs(f)) {
      const TemplateODE t = spec.template_ode();
      for (int i = 0; i < 200; ++i) {
        const double x = xs(gen);
        const double a = template_G(t, x), b = template_G_from_PQR(t, x);
        INFO(to_string(f) << " degree " << spec.degree << " order " << spec.order << " x " << x);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("polynomial values at tabulated points", "[templates]") {
  CHECK_THAT(eval_polynomial({TemplateFamily::hermite, 2, 0}, 1.0), WithinAbs(2.0, 1e-14));
  CHECK_THAT(eval_polynomial({TemplateFamily::assoc_legendre, 1, 0}, 0.5), WithinAbs(0.5, 1e-15));
  CHECK_THAT(eval_polynomial({TemplateFamily::assoc_laguerre, 1, 2}, 3.0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(eval_confluent_hypergeometric(0, 2, 5), WithinAbs(1.0, 1e-15));
  CHECK_THAT(eval_confluent_hypergeometric(-1, 2, 3), WithinAbs(-0.5, 1e-15));
  CHECK_THAT(eval_confluent_hypergeometric(-2, 1, 1), WithinAbs(-0.5, 1e-15));
}

TEST_CASE("polynomial evaluation rejects invalid parameters", "[templates]") {
  CHECK(throws_code(ErrorCode::invalid_spec, [] { eval_polynomial({TemplateFamily::hermite, -1, 0}, 0.0); }));
  CHECK(throws_code(ErrorCode::invalid_spec, [] { eval_polynomial({TemplateFamily::assoc_legendre, 2, 3}, 0.1); }));
  CHECK(throws_code(ErrorCode::invalid_spec, [] { eval_polynomial({TemplateFamily::assoc_laguerre, 2, -1}, 0.1); }));
  CHECK(throws_code(ErrorCode::invalid_spec, [] { eval_polynomial({TemplateFamily::assoc_laguerre, 2, 1.5}, 0.1); }));
  CHECK(throws_code(ErrorCode::invalid_spec, [] { eval_polynomial({TemplateFamily::confluent_hypergeometric, 2, 0.0}, 0.1); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { eval_confluent_hypergeometric(-1, 0.0, 1.0); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { eval_confluent_hypergeometric(-1, -2.0, 1.0); }));
  CHECK(throws_code(ErrorCode::invalid_parameter, [] { eval_confluent_hypergeometric(1, 2.0, 1.0); }));
}

TEST_CASE("recurrences agree with explicit coefficient sums", "[templates]") {
  for (int n = 0; n <= 8; ++n) {
    for (double x : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
      const double h = ref::hermite(n, x);
      CHECK(std::abs(eval_polynomial({TemplateFamily::hermite, n, 0}, x) - h) <= 1e-12 * std::max(1.0, std::abs(h)));
    }
    for (int nu : {0, 1, 4}) {
      for (double x : {0.1, 1.3, 4.0, 9.5}) {
        const double l = ref::laguerre(n, nu, x);
        CHECK(std::abs(eval_polynomial({TemplateFamily::assoc_laguerre, n, double(nu)}, x) - l) <=
              1e-11 * std::max(1.0, std::abs(l)));
      }
    }
    for (int m = -n; m <= n; ++m) {
      for (double x : {-0.9, -0.2, 0.35, 0.8}) {
        const double p = ref::legendre(n, m, x);
        CHECK(std::abs(eval_polynomial({TemplateFamily::assoc_legendre, n, double(m)}, x) - p) <=
              1e-11 * std::max(1.0, std::abs(p)));
        const double th = std::acos(x);
        CHECK(std::abs(eval_polynomial({TemplateFamily::polar_assoc_legendre, n, double(m)}, th) - p) <=
              1e-11 * std::max(1.0, std::abs(p)));
      }
    }
    for (double c : {0.5, 2.0, 3.5}) {
      for (double x : {-1.0, 0.5, 3.0, 8.0}) {
        const double f = ref::hyp1f1(n, c, x);
        CHECK(std::abs(eval_confluent_hypergeometric(-n, c, x) - f) <= 1e-11 * std::max(1.0, std::abs(f)));
      }
    }
  }
}

TEST_CASE("derivative identities agree with finite differences", "[templates]") {
  for (TemplateFamily f : kAllTemplateFamilies) {
    const auto [lo, hi] = sample_range(f);
    for (const auto &spec : valid_specs(f)) {
      if (spec.degree > 5) continue;
      const RealFunction y = [&](double x) { return eval_polynomial(spec, x); };
      for (double s : {0.2, 0.5, 0.8}) {
        const double x = lo + s * (hi - lo);
        const PolynomialValue v = eval_polynomial_derivatives(spec, x);
        const double scale = std::max(1.0, std::abs(v.value) + std::abs(v.first) + std::abs(v.second));
        INFO(to_string(f) << " " << spec.degree << " " << spec.order << " x=" << x);
        CHECK(std::abs(v.value - y(x)) <= 1e-13 * scale);
        CHECK(std::abs(v.first - ref::d1(y, x)) <= 1e-6 * scale);
        CHECK(std::abs(v.second - ref::d2(y, x)) <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("polynomial solutions satisfy their template ODE", "[templates][property]") {
  CHECK(std::abs(template_residual(TemplateODE::hermite(3), {TemplateFamily::hermite, 3, 0}, 0.8)) < 1e-10);
  CHECK(std::abs(template_residual(TemplateODE::assoc_laguerre(2, 3), {TemplateFamily::assoc_laguerre, 2, 3}, 1.5)) <
        1e-10);

  for (TemplateFamily f : kAllTemplateFamilies) {
    const auto [lo, hi] = sample_range(f);
    for (const auto &spec : valid_specs(f)) {
      const TemplateODE t = spec.template_ode();
      REQUIRE(t.admits_polynomial());
      double max_y = 0.0, max_r = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double x = lo + (hi - lo) * i / 100.0;
        max_y = std::max(max_y, std::abs(eval_polynomial(spec, x)));
        max_r = std::max(max_r, std::abs(template_residual(t, spec, x)));
      }
      INFO(to_string(f) << " degree " << spec.degree << " order " << spec.order);
      CHECK(max_r / max_y < 1e-9);
    }
  }
}

TEST_CASE("a corrupted solution leaves a large residual", "[templates]") {
  const double x = 2.0;
  const PolynomialValue h3 = eval_polynomial_derivatives({TemplateFamily::hermite, 3, 0}, x);
  const PolynomialValue bad{h3.value + std::pow(x, 4), h3.first + 4 * std::pow(x, 3), h3.second + 12 * x * x};
  const double r = template_residual(TemplateODE::hermite(3), bad, x);
  // extra term 12x^2 - 8x^4 + 6x^4 = 12x^2 - 2x^4 at x = 2 gives 16
  CHECK_THAT(r, WithinAbs(12 * x * x - 8 * std::pow(x, 4) + 6 * std::pow(x, 4), 1e-10));
  CHECK(std::abs(r) > 1.0);
}

TEST_CASE("terminating 1F1 is proportional to the associated Laguerre polynomial", "[templates][property]") {
  for (int n = 0; n <= 6; ++n) {
    for (int nu : {0, 1, 3}) {
      double first = 0.0;
      for (int i = 0; i < 50; ++i) {
        const double x = 0.13 + 0.17 * i;
        const double lag = eval_polynomial({TemplateFamily::assoc_laguerre, n, double(nu)}, x);
        if (std::abs(lag) < 1e-6) continue; // skip near the roots
        const double ratio = eval_confluent_hypergeometric(-n, nu + 1.0, x) / lag;
        if (first == 0.0) first = ratio;
        CHECK_THAT(ratio, WithinRel(first, 1e-10));
      }
    }
  }
}

TEST_CASE("Hermite parity", "[templates][property]") {
  for (int n = 0; n <= 8; ++n) {
    for (double x : {0.1, 0.77, 1.5, 2.9}) {
      const double a = eval_polynomial({TemplateFamily::hermite, n, 0}, -x);
      const double b = eval_polynomial({TemplateFamily::hermite, n, 0}, x);
      CHECK(std::abs(a - (n % 2 ? -b : b)) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("polynomial admissibility", "[templates]") {
  CHECK(TemplateODE::hermite(2).admits_polynomial());
  CHECK_FALSE(TemplateODE::hermite(2.5).admits_polynomial());
  CHECK_FALSE(TemplateODE::assoc_legendre(1, 2).admits_polynomial());
  CHECK(TemplateODE::confluent_hypergeometric(-3, 0.5).admits_polynomial());
  CHECK_FALSE(TemplateODE::confluent_hypergeometric(1, 0.5).admits_polynomial());
  CHECK_FALSE(TemplateODE::confluent_hypergeometric(-1, 0.0).admits_polynomial());
  CHECK(TemplateODE::confluent_hypergeometric(-2, 3).a() == -2.0);
}
