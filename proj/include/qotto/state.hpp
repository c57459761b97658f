#pragma once

#include <complex>

namespace qotto {

// Working-medium state in the closed observable algebra.  All units follow
// the global convention hbar = kB = m = 1: energies, temperatures and
// frequencies share one unit, times are inverse frequencies.
struct OscillatorState {
  double energy = 0.0;       // <H>
  double lagrangian = 0.0;   // <L>
  double correlation = 0.0;  // <C>
  double frequency = 1.0;    // current omega, > 0
};

// Parameters of the generalized Gibbs product form
//   rho = Z^-1 exp(gamma a^2) exp(-beta H) exp(conj(gamma) a+^2).
struct GibbsParams {
  double beta = 0.0;
  std::complex<double> gamma{0.0, 0.0};
  double partition = 1.0;  // Z
};

struct Entropies {
  double s_energy = 0.0;       // S_E
  double s_vn = 0.0;           // S_VN
  double rel_coherence = 0.0;  // D = S_E - S_VN >= 0
};

struct DerivedObservables {
  double number = 0.0;  // N = <H>/omega (zero-point included)
  double casimir = 0.0;
  double coherence = 0.0;
  double internal_temperature = 0.0;
  double s_energy = 0.0;
  double s_vn = 0.0;
  double rel_coherence = 0.0;
};

// (omega/2) coth(omega/2T); the T = 0 limit is the zero-point energy omega/2.
double equilibrium_energy(double omega, double temperature);

// Thermal state of the oscillator: diagonal, <L> = <C> = 0.
OscillatorState equilibrium_state(double omega, double temperature);

// X = (E^2 - L^2 - C^2)/omega^2, invariant under the unitary strokes.
// Physical states satisfy X >= 1/4.
double casimir_companion(const OscillatorState& s);

// Co = sqrt(L^2 + C^2)/omega, zero iff the state is diagonal in energy.
double coherence_measure(const OscillatorState& s);

// Effective temperature from E = (omega/2) coth(omega/2T); returns 0 at the
// ground state, throws std::domain_error for E < omega/2.
double internal_temperature(const OscillatorState& s);

// Entropy of a thermal mode with mean occupation nbar:
// (nbar+1) ln(nbar+1) - nbar ln(nbar).
double bosonic_entropy(double nbar);

// S_E, S_VN (from nu = 2 sqrt(X)) and their difference.  States with
// X in [1/4 - 1e-9, 1/4) are clamped to the boundary; below that an
// std::domain_error is thrown.
Entropies entropies(const OscillatorState& s);

DerivedObservables derived_observables(const OscillatorState& s);

// Inversion (E, L, C) -> (beta, gamma, Z).  Throws std::domain_error for
// pure/degenerate states (beta -> infinity) and states outside the real-beta
// product family.
GibbsParams gibbs_parameters(const OscillatorState& s);

// Forward expectation map (beta, gamma) -> (E, L, C) at frequency omega.
OscillatorState gibbs_expectations(const GibbsParams& g, double omega);

// True iff X >= 1/4 - tol and E >= omega/2 - tol.
bool is_physical(const OscillatorState& s, double tol = 1e-9);

// S_VN as a function of the Casimir companion,
//   ln sqrt(X - 1/4) + sqrt(X) asinh(sqrt(X)/(X - 1/4)).
// Algebraically identical to the covariance form used by entropies()
// (the asinh collapses to ln((m+1)/m) with m = sqrt(X) - 1/2); kept as an
// independent cross-check route.
double s_vn_casimir_form(double casimir);

}  // namespace qotto
