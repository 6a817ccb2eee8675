#pragma once

// The four model systems: harmonic oscillator, rigid rotor, hydrogen radial
// equation and Morse oscillator.  Each takes dimensional parameters and
// yields a verified match, closed-form energies and normalised
// eigenfunctions of the physical coordinate.

#include "psm/matching.hpp"
#include "psm/oracle.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace psm {

struct HarmonicOscillatorParams {
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  void validate() const;
  /// sqrt(hbar / (m omega))
  double length_scale() const;
};

struct RigidRotorParams {
  double reduced_mass = 1.0;
  double bond_length = 1.0;
  double hbar = 1.0;

  void validate() const;
  double moment_of_inertia() const { return reduced_mass * bond_length * bond_length; }
};

/// Hydrogen enters only through the Bohr radius and the (negative) ground
/// state energy E_g = -hbar^2 / (2 m_e a0^2).  Defaults are atomic units.
struct HydrogenParams {
  double bohr_radius = 1.0;
  double ground_energy = -0.5;

  void validate() const;
};

/// V(q) = D_e (exp(-2 alpha q) - 2 exp(-alpha q)), q measured from the minimum.
struct MorseParams {
  double mass = 1.0;
  double well_depth = 1.0;
  double range = 1.0; // alpha
  double hbar = 1.0;

  void validate() const;
  /// sqrt(2 m D_e) / (alpha hbar)
  double delta() const;
  /// Parameters with the given delta, solving for alpha.
  static MorseParams from_delta(double mass, double well_depth, double delta,
                                double hbar = 1.0);
};

using ModelSystem =
    std::variant<HarmonicOscillatorParams, RigidRotorParams, HydrogenParams, MorseParams>;

enum class ModelKind { harmonic, rotor, hydrogen, morse };

ModelKind kind_of(const ModelSystem &model);
std::string_view to_string(ModelKind kind);

struct Eigenstate {
  QuantumNumbers qn;
  double epsilon = 0.0; // dimensionless energy in the state's own scale
  double energy = 0.0;
  NondimensionalizationMap scale;
  RealFunction wavefunction; // normalised, physical coordinate
  RealFunction unnormalized; // g p, physical coordinate
  double norm = 0.0;         // L2 norm of `unnormalized` under `measure`
  Interval support;          // physical range used for quadrature
  RealFunction measure;      // weight of the inner product
  std::string measure_label;
};

// Closed-form energies.

double ho_energy(const HarmonicOscillatorParams &p, int n);
double rotor_energy(const RigidRotorParams &p, int l);
double hydrogen_energy(const HydrogenParams &p, int n);
double morse_energy(const MorseParams &p, int n);
/// |{n >= 0 : n + 1/2 < delta}|
int morse_bound_count(const MorseParams &p);

/// Throws Error(invalid_parameter) for quantum numbers the model does not
/// admit (including Morse n beyond the bound set).
void validate_quantum_numbers(const ModelSystem &model, const QuantumNumbers &qn);

// Dimensionless equations with epsilon bound to the closed-form value of the
// given state.  Hydrogen uses the post-quantisation scale r_c = a0 n / 2; the
// Morse equation is in y = 2 delta exp(-alpha q).

DimensionlessTISE dimensionless_form(const HarmonicOscillatorParams &p, const QuantumNumbers &qn);
DimensionlessTISE dimensionless_form(const RigidRotorParams &p, const QuantumNumbers &qn);
DimensionlessTISE dimensionless_form(const HydrogenParams &p, const QuantumNumbers &qn);
DimensionlessTISE dimensionless_form(const MorseParams &p, const QuantumNumbers &qn);
DimensionlessTISE dimensionless_form(const ModelSystem &model, const QuantumNumbers &qn);

MatchSolution match(const HarmonicOscillatorParams &p, const QuantumNumbers &qn);
MatchSolution match(const RigidRotorParams &p, const QuantumNumbers &qn);
MatchSolution match(const HydrogenParams &p, const QuantumNumbers &qn);
MatchSolution match(const MorseParams &p, const QuantumNumbers &qn);
MatchSolution match(const ModelSystem &model, const QuantumNumbers &qn);

/// Polynomial solution paired with the state's template.
PolynomialSpec polynomial_spec(const MatchSolution &solution);

/// 1001-point grid in the dimensionless coordinate on which matches and the
/// TISE residual of a state are checked; clear of singular points.  Sized for
/// the low-lying states: with the spacing fixed by the point count, the
/// five-point residual degrades for hydrogen n > 4 and for Morse states close
/// to dissociation when delta is large.
Grid verification_grid(const ModelSystem &model, const QuantumNumbers &qn);

/// Map from the physical coordinate to the dimensionless one of the match.
double to_dimensionless(const ModelSystem &model, const QuantumNumbers &qn, double q);

Eigenstate make_eigenstate(const ModelSystem &model, const QuantumNumbers &qn);

/// Full rotor state Theta_{l,m}(theta) e^{i m phi} / sqrt(2 pi) as real and
/// imaginary parts; normalised on the unit sphere.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
};
ComplexValue rotor_wavefunction(const RigidRotorParams &p, int l, int m, double theta,
                                double phi);

std::vector<Eigenstate> ho_spectrum(const HarmonicOscillatorParams &p, int n_max);
std::vector<Eigenstate> rotor_spectrum(const RigidRotorParams &p, int l_max);
std::vector<Eigenstate> hydrogen_spectrum(const HydrogenParams &p, int n_max);
std::vector<Eigenstate> morse_spectrum(const MorseParams &p);

/// Quantum numbers of the states each spectrum function returns, in order.
/// `n_max` is l_max for the rotor and ignored for Morse.
std::vector<QuantumNumbers> state_list(const ModelSystem &model, int n_max);
std::vector<Eigenstate> spectrum(const ModelSystem &model, int n_max);

/// Grid in the physical coordinate covering a state's support; odd size.
Grid support_grid(const Eigenstate &state, std::size_t n_points = 4001);

/// Index within the model's nodal family: n (HO, Morse), n - l - 1
/// (hydrogen), l - |m| (rotor).
int expected_nodes(const ModelSystem &model, const QuantumNumbers &qn);

// Independent finite-difference route.  Uses only the physical potential.

struct OracleLevel {
  QuantumNumbers qn;
  double energy = 0.0;     // Richardson-extrapolated, physical units
  double raw_energy = 0.0; // finest grid, physical units
  double convergence = 0.0;
};

struct OracleSettings {
  /// 0 selects the model default.
  std::size_t n_points = 0;
  /// Multiplies the default truncation of the domain.
  double domain_scale = 1.0;
};

std::vector<OracleLevel> oracle_levels(const ModelSystem &model,
                                       std::span<const QuantumNumbers> states,
                                       const OracleSettings &settings = {});

} // namespace psm
