#pragma once

// Phase-space (first-order, 2x2 matrix) form of linear second-order ODEs.
//
// A template ODE  P y'' + Q y' + R y = 0  and the dimensionless Schrodinger
// equation  -phi'' + b phi' + v phi = eps phi  are both written as
// y' = M(x) y  for the vector y = (y, y').  This header holds the matrix
// builders, a fixed-step RK4 integrator for such systems and a shooting
// eigenvalue finder built on top of it.

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace psm {

using RealFunction = std::function<double(double)>;

struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  static constexpr Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double determinant() const { return a11 * a22 - a12 * a21; }
  double max_abs() const;
  bool is_finite() const;

  friend Matrix2 operator+(const Matrix2 &l, const Matrix2 &r);
  friend Matrix2 operator-(const Matrix2 &l, const Matrix2 &r);
  friend Matrix2 operator*(const Matrix2 &l, const Matrix2 &r);
  friend bool operator==(const Matrix2 &, const Matrix2 &) = default;
};

struct PhaseVector {
  double value = 0.0;
  double slope = 0.0;

  double norm() const;
  bool is_finite() const;

  friend PhaseVector operator+(const PhaseVector &l, const PhaseVector &r) {
    return {l.value + r.value, l.slope + r.slope};
  }
  friend PhaseVector operator*(double s, const PhaseVector &p) {
    return {s * p.value, s * p.slope};
  }
  friend bool operator==(const PhaseVector &, const PhaseVector &) = default;
};

inline PhaseVector operator*(const Matrix2 &m, const PhaseVector &p) {
  return {m.a11 * p.value + m.a12 * p.slope, m.a21 * p.value + m.a22 * p.slope};
}

/// Uniform grid of n_points nodes on [x_min, x_max], endpoints included.
class Grid {
public:
  /// Throws Error(invalid_grid) unless x_min < x_max and n_points >= 3.
  Grid(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return h_; }
  double at(std::size_t i) const;
  std::vector<double> nodes() const;

  friend bool operator==(const Grid &, const Grid &) = default;

private:
  double x_min_;
  double x_max_;
  std::size_t n_points_;
  double h_;
};

struct PhaseTrajectory {
  Grid grid;
  std::vector<PhaseVector> samples;
};

/// Phase-space matrix of P y'' + Q y' + R y = 0 at one point:
/// [[0, 1], [-R/P, -Q/P]].  Throws Error(singular_coefficient) when P == 0.
Matrix2 build_template_matrix(double P, double Q, double R);

/// Matrix of the dimensionless TISE: [[0, 1], [-k^2, b]].
Matrix2 build_tise_matrix(double b, double k_squared);

/// Factor matrix of phi = g f, i.e. [[g, 0], [g', g]], and its x-derivative.
Matrix2 build_factor_matrix(double g, double g_prime);
Matrix2 build_factor_matrix_derivative(double g_prime, double g_double_prime);

/// Closed form of B^{-1}(A B - B') for the factor phi = g f.
/// Throws Error(zero_integrating_factor) when g == 0.
Matrix2 build_C_matrix(double g, double g_prime, double g_double_prime, double b,
                       double k_squared);

inline constexpr double kNearSingularDeterminant = 1e-14;

/// max |B^{-1}(A B - B') - C|, entrywise.  B^{-1} is formed explicitly; a
/// determinant below kNearSingularDeterminant raises Error(near_singular).
double c_matrix_identity_residual(const Matrix2 &A, const Matrix2 &B,
                                  const Matrix2 &B_prime, const Matrix2 &C);

/// Fixed-step classical RK4 for phi' = A(x) phi with A from (b, k^2).
/// samples[0] == initial.  A non-finite coefficient or state aborts with
/// Error(non_finite) naming the offending x.
PhaseTrajectory integrate_phase_space(const RealFunction &b,
                                      const RealFunction &k_squared,
                                      const PhaseVector &initial,
                                      const Grid &grid);

enum class Symmetry { even, odd, none };

/// k^2 as a function of (epsilon, x).
using EnergyDependentFunction = std::function<double(double, double)>;

struct ShootOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
  /// Phase vectors are rescaled once their norm exceeds this; legal because
  /// the system is linear and only the sign at x_max matters.
  double renormalize_above = 1e6;
  /// Replaces the symmetry-derived launch vector.  Receives epsilon so that
  /// regular series data at a singular left end can depend on the energy.
  std::function<PhaseVector(double)> initial;
};

/// Value at grid.x_max() of the trajectory launched from grid.x_min() with
/// the symmetry-appropriate data, after renormalisation.  Only its sign is
/// meaningful.
double boundary_functional(const RealFunction &b,
                           const EnergyDependentFunction &k_squared_of,
                           double epsilon, const Grid &grid, Symmetry symmetry,
                           const ShootOptions &options = {});

/// Bisection on epsilon over a bracket in which boundary_functional changes
/// sign.  Throws Error(bracket) when it does not, Error(convergence) when the
/// tolerance is not reached within options.max_iterations.
double shoot_eigenvalue(const RealFunction &b,
                        const EnergyDependentFunction &k_squared_of,
                        std::pair<double, double> bracket, const Grid &grid,
                        Symmetry symmetry, const ShootOptions &options = {});

} // namespace psm
