#pragma once

// The classical second-order ODEs with orthogonal-polynomial solutions that
// a Schrodinger equation gets matched against, together with their
// G-functions and evaluators for the polynomial families.

#include "psm/tise.hpp"

#include <string_view>
#include <vector>

namespace psm {

enum class TemplateFamily {
  hermite,
  assoc_legendre,
  polar_assoc_legendre,
  assoc_laguerre,
  confluent_hypergeometric,
};

std::string_view to_string(TemplateFamily family);

inline constexpr TemplateFamily kAllTemplateFamilies[] = {
    TemplateFamily::hermite, TemplateFamily::assoc_legendre,
    TemplateFamily::polar_assoc_legendre, TemplateFamily::assoc_laguerre,
    TemplateFamily::confluent_hypergeometric};

/// P, Q, R of  P y'' + Q y' + R y = 0  at one point, with P' and Q'.
struct TemplateCoefficients {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
  double P_prime = 0.0;
  double Q_prime = 0.0;
};

/// One template ODE with its two parameters bound.  Parameters are real here
/// so that a mismatched identification can still be evaluated; integrality
/// only matters for polynomial solutions (see admits_polynomial()).
///
///   family                    degree   order
///   hermite                   lambda   (unused)
///   assoc_legendre            l        m
///   polar_assoc_legendre      l        m        (independent variable theta)
///   assoc_laguerre            lambda   nu
///   confluent_hypergeometric  -a       c
struct TemplateODE {
  TemplateFamily family = TemplateFamily::hermite;
  double degree = 0.0;
  double order = 0.0;

  static TemplateODE hermite(double lambda) { return {TemplateFamily::hermite, lambda, 0.0}; }
  static TemplateODE assoc_legendre(double l, double m) {
    return {TemplateFamily::assoc_legendre, l, m};
  }
  static TemplateODE polar_assoc_legendre(double l, double m) {
    return {TemplateFamily::polar_assoc_legendre, l, m};
  }
  static TemplateODE assoc_laguerre(double lambda, double nu) {
    return {TemplateFamily::assoc_laguerre, lambda, nu};
  }
  static TemplateODE confluent_hypergeometric(double a, double c) {
    return {TemplateFamily::confluent_hypergeometric, -a, c};
  }

  /// Confluent hypergeometric `a` (only meaningful for that family).
  double a() const { return -degree; }

  Interval domain() const;
  std::vector<double> singular_points() const;
  /// Integer/sign constraints under which the ODE has a polynomial solution.
  bool admits_polynomial() const;
};

/// Throws Error(singular_point) unless x lies in the open domain and away
/// from the family's singular points.
TemplateCoefficients template_coefficients(const TemplateODE &t, double x);

/// Closed-form G from the table of templates.
double template_G(const TemplateODE &t, double x);

/// G = -(Q^2 - 2 Q P' + 2 P (Q' - 2 R)) / (4 P^2) from the coefficients.
double template_G_from_PQR(const TemplateODE &t, double x);

struct PolynomialSpec {
  TemplateFamily family = TemplateFamily::hermite;
  int degree = 0;     // lambda, l, or -a
  double order = 0.0; // nu, m, or c

  /// Throws Error(invalid_spec) when the family's constraints are violated.
  void validate() const;
  TemplateODE template_ode() const { return {family, static_cast<double>(degree), order}; }
};

struct PolynomialValue {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// Value of the family's polynomial solution.  Polar Legendre evaluates
/// P_l^m(cos theta).  Associated Legendre carries the Condon-Shortley phase.
double eval_polynomial(const PolynomialSpec &spec, double x);

/// Value with first and second derivatives from the families' derivative
/// identities.  Legendre derivatives need |x| < 1 (0 < theta < pi).
PolynomialValue eval_polynomial_derivatives(const PolynomialSpec &spec, double x);

/// Terminating 1F1(a; c; x) for integer a <= 0, c > 0.
double eval_confluent_hypergeometric(int a, double c, double x);

/// P y'' + Q y' + R y with y the polynomial described by `spec`.
double template_residual(const TemplateODE &t, const PolynomialSpec &spec, double x);

/// Same, for an arbitrary (y, y', y'') triple at x.
double template_residual(const TemplateODE &t, const PolynomialValue &y, double x);

} // namespace psm
