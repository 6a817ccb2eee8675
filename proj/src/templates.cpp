#include "psm/templates.hpp"

#include "psm/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace psm {

std::string_view to_string(TemplateFamily family) {
  switch (family) {
  case TemplateFamily::hermite: return "hermite";
  case TemplateFamily::assoc_legendre: return "assoc_legendre";
  case TemplateFamily::polar_assoc_legendre: return "polar_assoc_legendre";
  case TemplateFamily::assoc_laguerre: return "assoc_laguerre";
  case TemplateFamily::confluent_hypergeometric: return "confluent_hypergeometric";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

[[noreturn]] void singular(const TemplateODE &t, double x) {
  std::ostringstream os;
  os << to_string(t.family) << " template evaluated at x = " << x
     << ", which is not an interior regular point";
  throw Error(ErrorCode::singular_point, os.str());
}

[[noreturn]] void invalid_spec(const PolynomialSpec &spec, std::string_view why) {
  std::ostringstream os;
  os << to_string(spec.family) << " polynomial (degree " << spec.degree
     << ", order " << spec.order << "): " << why;
  throw Error(ErrorCode::invalid_spec, os.str());
}

double hermite(int n, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre(int n, double nu, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + nu - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// P_l^m for m >= 0, Condon-Shortley phase.  Zero when l < m.
double legendre_nonneg(int l, int m, double x) {
  if (l < m) return 0.0;
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pmmp1;
}

// (-1)^m (l-m)!/(l+m)! for the m -> -m reflection.
double negative_order_factor(int l, int m) {
  double f = (m % 2 == 0) ? 1.0 : -1.0;
  for (int k = l - m + 1; k <= l + m; ++k) f /= k;
  return f;
}

double legendre(int l, int m, double x) {
  if (m >= 0) return legendre_nonneg(l, m, x);
  return negative_order_factor(l, -m) * legendre_nonneg(l, -m, x);
}

// Derivatives from (x^2 - 1) P_l^m' = l x P_l^m - (l + m) P_{l-1}^m and its
// x-derivative; valid for |x| < 1.
PolynomialValue legendre_derivatives(int l, int m, double x) {
  const int am = std::abs(m);
  const double p = legendre_nonneg(l, am, x);
  const double p1 = legendre_nonneg(l - 1, am, x);
  const double p2 = legendre_nonneg(l - 2, am, x);
  const double s = x * x - 1.0;
  const double dp = (l * x * p - (l + am) * p1) / s;
  const double dp1 = ((l - 1) * x * p1 - (l - 1 + am) * p2) / s;
  const double d2p = (l * p + (l - 2.0) * x * dp - (l + am) * dp1) / s;
  PolynomialValue out{p, dp, d2p};
  if (m < 0) {
    const double f = negative_order_factor(l, am);
    out.value *= f;
    out.first *= f;
    out.second *= f;
  }
  return out;
}

} // namespace

Interval TemplateODE::domain() const {
  switch (family) {
  case TemplateFamily::hermite: return {-kInf, kInf};
  case TemplateFamily::assoc_legendre: return {-1.0, 1.0};
  case TemplateFamily::polar_assoc_legendre: return {0.0, std::numbers::pi};
  case TemplateFamily::assoc_laguerre:
  case TemplateFamily::confluent_hypergeometric: return {0.0, kInf};
  }
  return {};
}

std::vector<double> TemplateODE::singular_points() const {
  switch (family) {
  case TemplateFamily::hermite: return {};
  case TemplateFamily::assoc_legendre: return {-1.0, 1.0};
  case TemplateFamily::polar_assoc_legendre: return {0.0, std::numbers::pi};
  case TemplateFamily::assoc_laguerre:
  case TemplateFamily::confluent_hypergeometric: return {0.0};
  }
  return {};
}

bool TemplateODE::admits_polynomial() const {
  switch (family) {
  case TemplateFamily::hermite: return is_integer(degree) && degree >= 0.0;
  case TemplateFamily::assoc_legendre:
  case TemplateFamily::polar_assoc_legendre:
    return is_integer(degree) && is_integer(order) && degree >= 0.0 &&
           std::abs(order) <= degree;
  case TemplateFamily::assoc_laguerre:
    return is_integer(degree) && is_integer(order) && degree >= 0.0 && order >= 0.0;
  case TemplateFamily::confluent_hypergeometric:
    return is_integer(degree) && degree >= 0.0 && order > 0.0;
  }
  return false;
}

TemplateCoefficients template_coefficients(const TemplateODE &t, double x) {
  if (!t.domain().interior(x)) singular(t, x);
  const double deg = t.degree;
  const double ord = t.order;
  switch (t.family) {
  case TemplateFamily::hermite: return {1.0, -2.0 * x, 2.0 * deg, 0.0, -2.0};
  case TemplateFamily::assoc_legendre: {
    const double one_m_x2 = 1.0 - x * x;
    return {one_m_x2, -2.0 * x, deg * (deg + 1.0) - ord * ord / one_m_x2, -2.0 * x,
            -2.0};
  }
  case TemplateFamily::polar_assoc_legendre: {
    const double s = std::sin(x);
    const double s2 = s * s;
    if (s2 == 0.0) singular(t, x);
    return {1.0, std::cos(x) / s, deg * (deg + 1.0) - ord * ord / s2, 0.0, -1.0 / s2};
  }
  case TemplateFamily::assoc_laguerre: return {x, ord + 1.0 - x, deg, 1.0, -1.0};
  case TemplateFamily::confluent_hypergeometric: return {x, ord - x, deg, 1.0, -1.0};
  }
  singular(t, x);
}

double template_G(const TemplateODE &t, double x) {
  if (!t.domain().interior(x)) singular(t, x);
  const double deg = t.degree;
  const double ord = t.order;
  switch (t.family) {
  case TemplateFamily::hermite: return 1.0 + 2.0 * deg - x * x;
  case TemplateFamily::assoc_legendre: {
    const double s = x * x - 1.0;
    return -(ord * ord - 1.0 + s * (deg + 1.0) * deg) / (s * s);
  }
  case TemplateFamily::polar_assoc_legendre: {
    const double s = std::sin(x);
    if (s == 0.0) singular(t, x);
    return 0.25 + deg * (deg + 1.0) + (0.25 - ord * ord) / (s * s);
  }
  case TemplateFamily::assoc_laguerre:
    return -0.25 + (1.0 + ord + 2.0 * deg) / (2.0 * x) + (1.0 - ord * ord) / (4.0 * x * x);
  case TemplateFamily::confluent_hypergeometric: {
    const double a = t.a();
    const double c = ord;
    return -0.25 + (c - 2.0 * a) / (2.0 * x) + c * (2.0 - c) / (4.0 * x * x);
  }
  }
  singular(t, x);
}

double template_G_from_PQR(const TemplateODE &t, double x) {
  const TemplateCoefficients k = template_coefficients(t, x);
  if (k.P == 0.0) singular(t, x);
  return -(k.Q * k.Q - 2.0 * k.Q * k.P_prime + 2.0 * k.P * (k.Q_prime - 2.0 * k.R)) /
         (4.0 * k.P * k.P);
}

void PolynomialSpec::validate() const {
  if (degree < 0) invalid_spec(*this, "degree must be non-negative");
  switch (family) {
  case TemplateFamily::hermite: return;
  case TemplateFamily::assoc_legendre:
  case TemplateFamily::polar_assoc_legendre:
    if (!is_integer(order)) invalid_spec(*this, "m must be an integer");
    if (std::abs(order) > degree) invalid_spec(*this, "requires -l <= m <= l");
    return;
  case TemplateFamily::assoc_laguerre:
    if (!is_integer(order) || order < 0.0) {
      invalid_spec(*this, "nu must be a non-negative integer");
    }
    return;
  case TemplateFamily::confluent_hypergeometric:
    if (!(order > 0.0) || !std::isfinite(order)) invalid_spec(*this, "requires c > 0");
    return;
  }
}

double eval_confluent_hypergeometric(int a, double c, double x) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream os;
    os << "1F1 requires c > 0, got c = " << c;
    throw Error(ErrorCode::invalid_parameter, os.str());
  }
  if (a > 0) {
    throw Error(ErrorCode::invalid_parameter,
                "1F1 with positive a does not terminate; only a <= 0 is supported");
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < -a; ++k) {
    term *= (a + k) / (c + k) * x / (k + 1.0);
    sum += term;
  }
  return sum;
}

double eval_polynomial(const PolynomialSpec &spec, double x) {
  spec.validate();
  const int n = spec.degree;
  switch (spec.family) {
  case TemplateFamily::hermite: return hermite(n, x);
  case TemplateFamily::assoc_legendre:
    return legendre(n, static_cast<int>(spec.order), x);
  case TemplateFamily::polar_assoc_legendre:
    return legendre(n, static_cast<int>(spec.order), std::cos(x));
  case TemplateFamily::assoc_laguerre: return laguerre(n, spec.order, x);
  case TemplateFamily::confluent_hypergeometric:
    return eval_confluent_hypergeometric(-n, spec.order, x);
  }
  return 0.0;
}

PolynomialValue eval_polynomial_derivatives(const PolynomialSpec &spec, double x) {
  spec.validate();
  const int n = spec.degree;
  switch (spec.family) {
  case TemplateFamily::hermite:
    return {hermite(n, x), n >= 1 ? 2.0 * n * hermite(n - 1, x) : 0.0,
            n >= 2 ? 4.0 * n * (n - 1.0) * hermite(n - 2, x) : 0.0};
  case TemplateFamily::assoc_legendre:
    if (!(std::abs(x) < 1.0)) {
      throw Error(ErrorCode::singular_point,
                  "Legendre derivatives need |x| < 1");
    }
    return legendre_derivatives(n, static_cast<int>(spec.order), x);
  case TemplateFamily::polar_assoc_legendre: {
    const double s = std::sin(x);
    const double c = std::cos(x);
    if (!(x > 0.0 && x < std::numbers::pi) || s == 0.0) {
      throw Error(ErrorCode::singular_point,
                  "polar Legendre derivatives need 0 < theta < pi");
    }
    const PolynomialValue p = legendre_derivatives(n, static_cast<int>(spec.order), c);
    return {p.value, -s * p.first, s * s * p.second - c * p.first};
  }
  case TemplateFamily::assoc_laguerre:
    return {laguerre(n, spec.order, x), -laguerre(n - 1, spec.order + 1.0, x),
            laguerre(n - 2, spec.order + 2.0, x)};
  case TemplateFamily::confluent_hypergeometric: {
    const int a = -n;
    const double c = spec.order;
    const double d1 = a != 0 ? a / c * eval_confluent_hypergeometric(a + 1, c + 1.0, x) : 0.0;
    const double d2 = (a != 0 && a + 1 != 0)
                          ? a * (a + 1.0) / (c * (c + 1.0)) *
                                eval_confluent_hypergeometric(a + 2, c + 2.0, x)
                          : 0.0;
    return {eval_confluent_hypergeometric(a, c, x), d1, d2};
  }
  }
  return {};
}

double template_residual(const TemplateODE &t, const PolynomialValue &y, double x) {
  const TemplateCoefficients k = template_coefficients(t, x);
  return k.P * y.second + k.Q * y.first + k.R * y.value;
}

double template_residual(const TemplateODE &t, const PolynomialSpec &spec, double x) {
  return template_residual(t, eval_polynomial_derivatives(spec, x), x);
}

} // namespace psm
