#include "psm/oracle.hpp"

#include "psm/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psm {

double DimensionlessTISE::bound_epsilon() const {
  if (!epsilon) {
    throw Error(ErrorCode::unbound_parameter,
                "dimensionless energy epsilon is not bound");
  }
  return *epsilon;
}

void TridiagonalSymmetric::validate() const {
  if (diagonal.empty()) {
    throw Error(ErrorCode::invalid_parameter, "tridiagonal matrix is empty");
  }
  if (off_diagonal.size() + 1 != diagonal.size()) {
    throw Error(ErrorCode::invalid_parameter,
                "off-diagonal length must be one less than the diagonal");
  }
  const auto finite = [](double d) { return std::isfinite(d); };
  if (!std::all_of(diagonal.begin(), diagonal.end(), finite) ||
      !std::all_of(off_diagonal.begin(), off_diagonal.end(), finite)) {
    throw Error(ErrorCode::invalid_parameter,
                "tridiagonal matrix has non-finite entries");
  }
}

TridiagonalSymmetric build_fd_hamiltonian(const RealFunction &v, const Grid &grid,
                                          const std::optional<FirstDerivativeTerm> &b) {
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t n = grid.size() - 2;
  TridiagonalSymmetric out;
  out.diagonal.resize(n);
  out.off_diagonal.assign(n - 1, -inv_h2);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.at(i + 1);
    double potential = v(x);
    if (b) {
      const double bx = b->b(x);
      potential += 0.25 * bx * bx - 0.5 * b->b_prime(x);
    }
    if (!std::isfinite(potential)) {
      std::ostringstream os;
      os << "potential is not finite at grid node x = " << x;
      throw Error(ErrorCode::grid, os.str());
    }
    out.diagonal[i] = 2.0 * inv_h2 + potential;
  }
  return out;
}

TridiagonalSymmetric build_legendre_operator(int m, std::size_t n_cells) {
  if (n_cells < 3) {
    throw Error(ErrorCode::invalid_grid, "Legendre operator needs at least 3 cells");
  }
  // With Theta = (1 - x^2)^{|m|/2} w the equation becomes
  //   -[(1 - x^2)^{|m|+1} w']' = (beta - |m|(|m|+1)) (1 - x^2)^{|m|} w,
  // a regular-weight problem whose eigenfunctions are polynomials.  The
  // weight is folded in by the symmetric scaling M^{-1/2} K M^{-1/2}.
  const int am = std::abs(m);
  const double h = 2.0 / static_cast<double>(n_cells);
  const double inv_h2 = 1.0 / (h * h);
  const double shift = static_cast<double>(am) * static_cast<double>(am + 1);
  const auto flux = [&](std::size_t face) {
    // face k sits at -1 + k h; the two outer faces carry zero flux.
    if (face == 0 || face == n_cells) return 0.0;
    const double x = -1.0 + static_cast<double>(face) * h;
    return std::pow(1.0 - x * x, am + 1);
  };
  std::vector<double> inv_sqrt_weight(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double x = -1.0 + (static_cast<double>(i) + 0.5) * h;
    inv_sqrt_weight[i] = 1.0 / std::sqrt(std::pow(1.0 - x * x, am));
  }
  TridiagonalSymmetric out;
  out.diagonal.resize(n_cells);
  out.off_diagonal.resize(n_cells - 1);
  for (std::size_t i = 0; i < n_cells; ++i) {
    const double s = inv_sqrt_weight[i];
    out.diagonal[i] = (flux(i) + flux(i + 1)) * inv_h2 * s * s + shift;
    if (i + 1 < n_cells) {
      out.off_diagonal[i] = -flux(i + 1) * inv_h2 * s * inv_sqrt_weight[i + 1];
    }
  }
  return out;
}

std::size_t sturm_count(const TridiagonalSymmetric &matrix, double shift) {
  constexpr double tiny = std::numeric_limits<double>::min();
  std::size_t negatives = 0;
  double q = matrix.diagonal[0] - shift;
  if (q == 0.0) q = -tiny;
  if (q < 0.0) ++negatives;
  for (std::size_t i = 1; i < matrix.size(); ++i) {
    const double e = matrix.off_diagonal[i - 1];
    q = matrix.diagonal[i] - shift - e * e / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

std::vector<double> eigenvalues_sturm(const TridiagonalSymmetric &matrix,
                                      std::size_t count) {
  matrix.validate();
  if (count < 1 || count > matrix.size()) {
    std::ostringstream os;
    os << "requested " << count << " eigenvalues of a " << matrix.size() << "x"
       << matrix.size() << " matrix";
    throw Error(ErrorCode::invalid_parameter, os.str());
  }

  // Gershgorin enclosure of the whole spectrum.
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(matrix.off_diagonal[i - 1]);
    if (i + 1 < matrix.size()) radius += std::abs(matrix.off_diagonal[i]);
    lower = std::min(lower, matrix.diagonal[i] - radius);
    upper = std::max(upper, matrix.diagonal[i] + radius);
  }
  const double pad = 1e-12 * std::max({1.0, std::abs(lower), std::abs(upper)});
  lower -= pad;
  upper += pad;

  std::vector<double> out(count);
  double floor = lower;
  for (std::size_t k = 0; k < count; ++k) {
    double lo = floor;
    double hi = upper;
    for (int it = 0; it < 400; ++it) {
      const double tol =
          0.5 * std::max(1e-10, 1e-12 * std::max(std::abs(lo), std::abs(hi)));
      if (hi - lo <= tol) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(matrix, mid) > k) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[k] = 0.5 * (lo + hi);
    floor = lo;
  }
  return out;
}

NumericalSpectrumReport fd_spectrum(const RealFunction &v, const Grid &grid,
                                    std::size_t count,
                                    const std::optional<FirstDerivativeTerm> &b) {
  if (grid.size() % 2 == 0) {
    throw Error(ErrorCode::invalid_grid,
                "fd_spectrum needs an odd number of grid points");
  }
  const Grid coarse(grid.x_min(), grid.x_max(), (grid.size() + 1) / 2);
  NumericalSpectrumReport report{
      eigenvalues_sturm(build_fd_hamiltonian(v, grid, b), count), {}, grid,
      BoundaryCondition::dirichlet_both, 0.0};
  const auto rough = eigenvalues_sturm(build_fd_hamiltonian(v, coarse, b), count);
  report.extrapolated.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    report.extrapolated[k] = (4.0 * report.eigenvalues[k] - rough[k]) / 3.0;
    report.convergence_estimate = std::max(
        report.convergence_estimate, std::abs(report.eigenvalues[k] - rough[k]));
  }
  return report;
}

double quadrature(const RealFunction &f, const Grid &grid,
                  const RealFunction &weight) {
  if (grid.size() % 2 == 0) {
    throw Error(ErrorCode::invalid_grid,
                "Simpson quadrature needs an odd number of grid points");
  }
  const std::size_t last = grid.size() - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    const double x = grid.at(i);
    double value = f(x);
    if (weight) value *= weight(x);
    const double c = (i == 0 || i == last) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += c * value;
  }
  return sum * grid.spacing() / 3.0;
}

std::vector<std::vector<double>> gram_matrix(std::span<const RealFunction> states,
                                             const Grid &grid,
                                             const RealFunction &weight) {
  const std::size_t n = states.size();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &psi = states[i];
    const double n2 = quadrature([&](double x) { return psi(x) * psi(x); }, grid, weight);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
      std::ostringstream os;
      os << "state " << i << " has zero or non-finite norm";
      throw Error(ErrorCode::degenerate_state, os.str());
    }
    norms[i] = std::sqrt(n2);
  }
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    out[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto &a = states[i];
      const auto &c = states[j];
      const double overlap =
          quadrature([&](double x) { return a(x) * c(x); }, grid, weight);
      out[i][j] = out[j][i] = overlap / (norms[i] * norms[j]);
    }
  }
  return out;
}

double max_off_diagonal(const std::vector<std::vector<double>> &m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      if (i != j) worst = std::max(worst, std::abs(m[i][j]));
  return worst;
}

double tise_residual_max(const RealFunction &psi, const DimensionlessTISE &tise,
                         const Grid &grid) {
  if (grid.size() < 5) {
    throw Error(ErrorCode::invalid_grid, "five-point stencil needs at least 5 nodes");
  }
  const double eps = tise.bound_epsilon();
  const double h = grid.spacing();
  const std::size_t n = grid.size();
  std::vector<double> phi(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = psi(grid.at(i));
    scale = std::max(scale, std::abs(phi[i]));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::degenerate_state, "wavefunction vanishes on the grid");
  }
  // Endpoints only feed the stencil, but a singular end still makes the
  // sampled psi meaningless there, so every node is checked.
  std::vector<double> bs(n), vs(n), ws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.at(i);
    bs[i] = tise.b(x);
    vs[i] = tise.v(x);
    ws[i] = tise.weight(x);
    if (!tise.domain.interior(x) || !std::isfinite(bs[i]) || !std::isfinite(vs[i]) ||
        !std::isfinite(ws[i])) {
      std::ostringstream os;
      os << "grid node x = " << x << " is a singular point of the equation";
      throw Error(ErrorCode::grid, os.str());
    }
  }
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double b = bs[i];
    const double v = vs[i];
    const double w = ws[i];
    const double d1 =
        (phi[i - 2] - 8.0 * phi[i - 1] + 8.0 * phi[i + 1] - phi[i + 2]) / (12.0 * h);
    const double d2 = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] +
                       16.0 * phi[i + 1] - phi[i + 2]) /
                      (12.0 * h * h);
    const double r = -d2 + b * d1 + v * phi[i] - eps * w * phi[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst / scale;
}

int count_nodes(std::span<const double> samples, double threshold) {
  double peak = 0.0;
  for (double s : samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::non_finite, "node counting got a non-finite sample");
    }
    peak = std::max(peak, std::abs(s));
  }
  if (!(peak > 0.0)) {
    throw Error(ErrorCode::degenerate_state, "all samples are zero");
  }
  const double cut = threshold * peak;
  int nodes = 0;
  int last_sign = 0;
  for (double s : samples) {
    if (std::abs(s) <= cut) continue;
    const int sign = s > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

} // namespace psm
