#pragma once

// Matching a dimensionless Schrodinger equation to a template ODE.
//
// Writing phi = g f and requiring the phase-space matrix of f to coincide
// with the template's matrix gives two conditions.  Eliminating g between
// them leaves the algebraic identity
//
//     k^2 + b'/2 - b^2/4 = G(x)
//
// which fixes the energy and the length scale, while the remaining condition
// integrates to  g = exp( integral (Q + b P) / (2 P) dx ).

#include "psm/phase_space.hpp"
#include "psm/templates.hpp"
#include "psm/tise.hpp"

#include <functional>
#include <string>
#include <vector>

namespace psm {

struct QuantumNumbers {
  int n = 0;
  int l = 0;
  int m = 0;

  friend bool operator==(const QuantumNumbers &, const QuantumNumbers &) = default;
};

/// q = x_c x and E = a eps with a = hbar^2 / (2 m x_c^2).
struct NondimensionalizationMap {
  double x_c = 1.0;
  double a_energy = 1.0;
};

struct ParamBinding {
  std::string name;
  double value = 0.0;
};

/// A completed identification for one state: template and its parameters,
/// the bound dimensionless equation, the scale and the integrating factor.
struct MatchSolution {
  TemplateODE template_ode;
  std::vector<ParamBinding> param_map;
  NondimensionalizationMap scale;
  DimensionlessTISE tise; // epsilon bound
  QuantumNumbers state;
  std::function<double(const QuantumNumbers &)> energy_of;
  RealFunction g;       // integrating factor in the dimensionless coordinate
  RealFunction g_prime; // its derivative
  double x_ref = 0.0;   // reference point of g (g(x_ref) need not be 1)

  double energy() const { return energy_of(state); }
  /// Throws Error(invalid_parameter) if `name` is not bound.
  double param(const std::string &name) const;
};

/// (eps w(x) - v(x)) + b'(x)/2 - b(x)^2/4.
/// Throws Error(unbound_parameter) if eps is not bound.
double matching_lhs(const DimensionlessTISE &tise, double x);

struct IntegratingFactorOptions {
  double tolerance = 1e-12;
  int max_depth = 40;
};

/// g(x) = exp( integral_{x_ref}^{x} (Q + b P) / (2 P) ), so g(x_ref) = 1,
/// integrated by adaptive Simpson.  Throws Error(singular_path) if P vanishes
/// or changes sign between x_ref and x.
double integrating_factor(const RealFunction &template_P, const RealFunction &template_Q,
                          const RealFunction &b, double x, double x_ref,
                          const IntegratingFactorOptions &options = {});

/// Same with P and Q taken from a template.
double integrating_factor(const TemplateODE &t, const RealFunction &b, double x,
                          double x_ref, const IntegratingFactorOptions &options = {});

struct VerifyOptions {
  /// Grid nodes closer than this fraction of the grid width to a singular
  /// point of the template are rejected.
  double singular_margin = 1e-3;
};

/// max over the grid of |matching_lhs - template_G|.  Throws Error(grid) if a
/// node falls inside the singular margin or outside either domain.
double verify_match(const DimensionlessTISE &tise, const TemplateODE &t,
                    const Grid &grid, const VerifyOptions &options = {});

/// x -> g(x) p(x), unnormalised.  Throws Error(invalid_spec) unless `spec`
/// names the same family and parameters as the solution's template.
RealFunction wavefunction_from_match(const MatchSolution &solution,
                                     const PolynomialSpec &spec);

// Morse oscillator: the identity fixes 1 + 4 eps = c (2 - c) and
// delta = (c - 2a)/2, which has two branches in sqrt(-eps).

enum class MorseBranch { retained, rejected };

struct MorseBranchAssessment {
  double a = 0.0;
  double c = 0.0;
  bool admissible = false;
  std::string reason;
};

/// a = 1/2 - delta +- sqrt(-eps), c = 1 +- 2 sqrt(-eps) on the given branch,
/// with the reason it does or does not yield a polynomial solution.
MorseBranchAssessment assess_morse_branch(double delta, double epsilon,
                                          MorseBranch branch);

/// Number of integers n >= 0 for which a = -n is reachable on `branch` with
/// c > 0 and sqrt(-eps) >= 0.
int morse_admissible_count(double delta, MorseBranch branch);

} // namespace psm
