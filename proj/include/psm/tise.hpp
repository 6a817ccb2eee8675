#pragma once

#include "psm/phase_space.hpp"

#include <limits>
#include <optional>

namespace psm {

/// Open or closed real interval; either end may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lower && x <= upper; }
  bool interior(double x) const { return x > lower && x < upper; }
};

/// Dimensionless Schrodinger equation
///
///   -phi'' + b(x) phi' + v(x) phi = eps w(x) phi,   k^2(x) = eps w(x) - v(x).
///
/// The weight w defaults to 1.  It is only different from 1 after a change of
/// variable that moves the energy off the constant term, e.g. the Morse
/// y-coordinate where the energy enters as eps / y^2.
struct DimensionlessTISE {
  RealFunction b = [](double) { return 0.0; };
  RealFunction b_prime = [](double) { return 0.0; };
  RealFunction v = [](double) { return 0.0; };
  RealFunction epsilon_weight; // empty means w == 1
  Interval domain;
  std::optional<double> epsilon;

  double weight(double x) const { return epsilon_weight ? epsilon_weight(x) : 1.0; }

  /// Throws Error(unbound_parameter) if epsilon is not bound.
  double bound_epsilon() const;
  double k_squared(double x) const { return bound_epsilon() * weight(x) - v(x); }

  DimensionlessTISE with_epsilon(double eps) const {
    DimensionlessTISE copy = *this;
    copy.epsilon = eps;
    return copy;
  }
};

} // namespace psm
