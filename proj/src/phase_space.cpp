#include "psm/phase_space.hpp"

#include "psm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psm {

double Matrix2::max_abs() const {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

bool Matrix2::is_finite() const {
  return std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a21) &&
         std::isfinite(a22);
}

Matrix2 operator+(const Matrix2 &l, const Matrix2 &r) {
  return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
}

Matrix2 operator-(const Matrix2 &l, const Matrix2 &r) {
  return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
}

Matrix2 operator*(const Matrix2 &l, const Matrix2 &r) {
  return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
          l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

double PhaseVector::norm() const { return std::hypot(value, slope); }

bool PhaseVector::is_finite() const {
  return std::isfinite(value) && std::isfinite(slope);
}

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), h_(0.0) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    std::ostringstream os;
    os << "grid requires finite x_min < x_max, got [" << x_min << ", " << x_max
       << "]";
    throw Error(ErrorCode::invalid_grid, os.str());
  }
  if (n_points < 3) {
    throw Error(ErrorCode::invalid_grid, "grid requires at least 3 points");
  }
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

double Grid::at(std::size_t i) const {
  // Pin the last node so that x_max is reproduced exactly.
  if (i + 1 == n_points_) return x_max_;
  return x_min_ + static_cast<double>(i) * h_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) xs[i] = at(i);
  return xs;
}

Matrix2 build_template_matrix(double P, double Q, double R) {
  if (P == 0.0) {
    throw Error(ErrorCode::singular_coefficient,
                "template ODE has a singular point: P = 0");
  }
  return {0.0, 1.0, -R / P, -Q / P};
}

Matrix2 build_tise_matrix(double b, double k_squared) {
  return {0.0, 1.0, -k_squared, b};
}

Matrix2 build_factor_matrix(double g, double g_prime) {
  return {g, 0.0, g_prime, g};
}

Matrix2 build_factor_matrix_derivative(double g_prime, double g_double_prime) {
  return {g_prime, 0.0, g_double_prime, g_prime};
}

Matrix2 build_C_matrix(double g, double g_prime, double g_double_prime, double b,
                       double k_squared) {
  if (g == 0.0) {
    throw Error(ErrorCode::zero_integrating_factor,
                "integrating factor g vanishes");
  }
  return {0.0, 1.0, -(g * k_squared - b * g_prime + g_double_prime) / g,
          b - 2.0 * g_prime / g};
}

double c_matrix_identity_residual(const Matrix2 &A, const Matrix2 &B,
                                  const Matrix2 &B_prime, const Matrix2 &C) {
  const double det = B.determinant();
  if (!(std::abs(det) >= kNearSingularDeterminant)) {
    std::ostringstream os;
    os << "factor matrix is near-singular: |det B| = " << std::abs(det);
    throw Error(ErrorCode::near_singular, os.str());
  }
  const Matrix2 inverse{B.a22 / det, -B.a12 / det, -B.a21 / det, B.a11 / det};
  return (inverse * (A * B - B_prime) - C).max_abs();
}

namespace {

Matrix2 tise_matrix_at(const RealFunction &b, const RealFunction &k_squared,
                       double x) {
  const Matrix2 m = build_tise_matrix(b(x), k_squared(x));
  if (!m.is_finite()) {
    std::ostringstream os;
    os << "coefficient evaluation is not finite at x = " << x;
    throw Error(ErrorCode::non_finite, os.str());
  }
  return m;
}

PhaseVector rk4_step(const RealFunction &b, const RealFunction &k_squared,
                     const PhaseVector &y, double x, double h) {
  const Matrix2 a0 = tise_matrix_at(b, k_squared, x);
  const Matrix2 a_half = tise_matrix_at(b, k_squared, x + 0.5 * h);
  const Matrix2 a1 = tise_matrix_at(b, k_squared, x + h);

  const PhaseVector k1 = a0 * y;
  const PhaseVector k2 = a_half * (y + (0.5 * h) * k1);
  const PhaseVector k3 = a_half * (y + (0.5 * h) * k2);
  const PhaseVector k4 = a1 * (y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_state(const PhaseVector &y, double x) {
  if (!y.is_finite()) {
    std::ostringstream os;
    os << "phase vector became non-finite at x = " << x;
    throw Error(ErrorCode::non_finite, os.str());
  }
}

PhaseVector launch_vector(Symmetry symmetry, double epsilon,
                          const ShootOptions &options) {
  if (options.initial) return options.initial(epsilon);
  switch (symmetry) {
  case Symmetry::even: return {1.0, 0.0};
  case Symmetry::odd: return {0.0, 1.0};
  case Symmetry::none: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

} // namespace

PhaseTrajectory integrate_phase_space(const RealFunction &b,
                                      const RealFunction &k_squared,
                                      const PhaseVector &initial,
                                      const Grid &grid) {
  check_state(initial, grid.x_min());
  PhaseTrajectory out{grid, {}};
  out.samples.reserve(grid.size());
  out.samples.push_back(initial);
  PhaseVector y = initial;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double x = grid.at(i);
    y = rk4_step(b, k_squared, y, x, grid.at(i + 1) - x);
    check_state(y, grid.at(i + 1));
    out.samples.push_back(y);
  }
  return out;
}

double boundary_functional(const RealFunction &b,
                           const EnergyDependentFunction &k_squared_of,
                           double epsilon, const Grid &grid, Symmetry symmetry,
                           const ShootOptions &options) {
  const RealFunction k_squared = [&](double x) { return k_squared_of(epsilon, x); };
  PhaseVector y = launch_vector(symmetry, epsilon, options);
  check_state(y, grid.x_min());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double x = grid.at(i);
    y = rk4_step(b, k_squared, y, x, grid.at(i + 1) - x);
    check_state(y, grid.at(i + 1));
    const double n = y.norm();
    if (n > options.renormalize_above) y = (1.0 / n) * y;
  }
  return y.value;
}

double shoot_eigenvalue(const RealFunction &b,
                        const EnergyDependentFunction &k_squared_of,
                        std::pair<double, double> bracket, const Grid &grid,
                        Symmetry symmetry, const ShootOptions &options) {
  auto [lo, hi] = bracket;
  if (lo > hi) std::swap(lo, hi);
  double f_lo = boundary_functional(b, k_squared_of, lo, grid, symmetry, options);
  const double f_hi =
      boundary_functional(b, k_squared_of, hi, grid, symmetry, options);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "boundary functional does not change sign over [" << lo << ", " << hi
       << "]";
    throw Error(ErrorCode::bracket, os.str());
  }
  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= options.tolerance) return mid;
    const double f_mid =
        boundary_functional(b, k_squared_of, mid, grid, symmetry, options);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo <= options.tolerance) return 0.5 * (lo + hi);
  std::ostringstream os;
  os << "bisection did not reach tolerance " << options.tolerance << " in "
     << options.max_iterations << " iterations";
  throw Error(ErrorCode::convergence, os.str());
}

} // namespace psm
