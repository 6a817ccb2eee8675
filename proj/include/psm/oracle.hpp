#pragma once

// Independent numerical checks.  Nothing in here knows about template ODEs or
// the matching identity: eigenvalues come from a finite-difference
// Hamiltonian diagonalised with Sturm bisection, norms from composite
// Simpson quadrature.

#include "psm/phase_space.hpp"
#include "psm/tise.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace psm {

struct TridiagonalSymmetric {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal; // diagonal.size() - 1 entries

  std::size_t size() const { return diagonal.size(); }
  /// Throws Error(invalid_parameter) on inconsistent lengths or non-finite entries.
  void validate() const;
};

enum class BoundaryCondition { dirichlet_both, dirichlet_left_decay_right };

struct NumericalSpectrumReport {
  std::vector<double> eigenvalues; // ascending, at the requested grid
  std::vector<double> extrapolated; // Richardson (h, 2h) estimate, same order
  Grid grid;
  BoundaryCondition boundary_condition = BoundaryCondition::dirichlet_both;
  double convergence_estimate = 0.0; // max |eig(h) - eig(2h)|
};

/// First-derivative term of -phi'' + b phi' + v phi.  The Hamiltonian builder
/// removes it with phi = exp(B/2) u, B' = b, which turns the potential into
/// v + b^2/4 - b'/2 and leaves the spectrum unchanged.
struct FirstDerivativeTerm {
  RealFunction b;
  RealFunction b_prime;
};

/// Three-point stencil on the interior nodes of `grid` with Dirichlet ends:
/// diagonal 2/h^2 + v(x_i), off-diagonal -1/h^2.
TridiagonalSymmetric
build_fd_hamiltonian(const RealFunction &v, const Grid &grid,
                     const std::optional<FirstDerivativeTerm> &b = std::nullopt);

/// Cell-centred discretisation of the associated Legendre operator
///   -d/dx[(1 - x^2) d/dx] + m^2/(1 - x^2)   on (-1, 1)
/// with bounded solutions at both ends, written for the regular factor
/// w = Theta (1 - x^2)^{-|m|/2}.  Its eigenvalues approximate l(l+1), l >= |m|.
TridiagonalSymmetric build_legendre_operator(int m, std::size_t n_cells);

/// Number of eigenvalues strictly below `shift` (Sturm sequence count).
std::size_t sturm_count(const TridiagonalSymmetric &matrix, double shift);

/// Lowest `count` eigenvalues by Sturm bisection, ascending.  Each is located
/// to 1e-10 absolute or 1e-12 relative, whichever is looser.
std::vector<double> eigenvalues_sturm(const TridiagonalSymmetric &matrix,
                                      std::size_t count);

/// Lowest `count` eigenvalues on `grid` and on the grid with half the
/// resolution, combined into a Richardson estimate.  grid.size() must be odd.
NumericalSpectrumReport
fd_spectrum(const RealFunction &v, const Grid &grid, std::size_t count,
            const std::optional<FirstDerivativeTerm> &b = std::nullopt);

/// Composite Simpson rule for the integral of f * weight.  grid.size() must
/// be odd.
double quadrature(const RealFunction &f, const Grid &grid,
                  const RealFunction &weight = {});

/// Normalised overlap matrix <psi_i|psi_j> / (|psi_i| |psi_j|).
std::vector<std::vector<double>> gram_matrix(std::span<const RealFunction> states,
                                             const Grid &grid,
                                             const RealFunction &weight = {});

/// Largest off-diagonal magnitude of a square matrix.
double max_off_diagonal(const std::vector<std::vector<double>> &m);

/// max |-phi'' + b phi' + v phi - eps w phi| / max|phi| over the interior
/// grid nodes, derivatives by five-point central differences.  Throws
/// Error(grid) if any node, ends included, is singular or off the domain.
double tise_residual_max(const RealFunction &psi, const DimensionlessTISE &tise,
                         const Grid &grid);

/// Strict sign changes among samples with |s| > threshold * max|s|.
int count_nodes(std::span<const double> samples, double threshold = 1e-9);

} // namespace psm
