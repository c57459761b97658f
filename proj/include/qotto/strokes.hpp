#pragma once

#include <Eigen/Dense>

#include "qotto/affine_map.hpp"
#include "qotto/protocols.hpp"
#include "qotto/state.hpp"

namespace qotto {

// Implicit bath description: temperature, heat conductance Gamma = k_down -
// k_up, and an optional squeezing parameter for non-equilibrium reservoirs.
// Detailed balance fixes k_down = Gamma/(1 - e^{-omega/T}) at the working
// frequency.
struct BathSpec {
  double temperature = 1.0;  // >= 0
  double conductance = 1.0;  // Gamma > 0
  double squeezing = 0.0;    // gamma >= 0

  double k_down(double omega) const;
  double k_up(double omega) const;
};

struct NoiseSpec {
  double gamma_a = 0.0;  // amplitude (frequency-fluctuation) noise strength
  double gamma_p = 0.0;  // phase (timing) noise strength
  bool any() const { return gamma_a > 0.0 || gamma_p > 0.0; }
};

// Stationary injection targets of the squeezed-bath thermalisation generator,
// derived from the Lindblad dissipator in s = a cosh(g) + a+ sinh(g):
//   <H>_sq = cosh(2g) (omega/2) coth(omega/2T)
//   <L>_sq = sinh(2g) (k_up + k_down) omega / (2 Gamma)
// (for real squeezing the coherent injection lands in the L row).
struct SqueezedTargets {
  double h_target = 0.0;
  double l_target = 0.0;
};
SqueezedTargets squeezed_targets(const BathSpec& bath, double omega);

// 4x4 generator of the isochore master equation on (H, L, C, 1); covers the
// squeezed bath when bath.squeezing > 0.
Eigen::Matrix4d isochore_generator(const BathSpec& bath, double omega);

// Exact exponential of the isochore generator over time tau.
AffineMap4 isochore_propagator(const BathSpec& bath, double omega, double tau);

// Same, requiring bath.squeezing > 0 (gamma = 0 reduces to the thermal map).
AffineMap4 squeezed_isochore_propagator(const BathSpec& bath, double omega,
                                        double tau);

// Analytic constant-mu adiabat from omega_i to omega_f; |mu| < 2 oscillatory,
// |mu| > 2 hyperbolic, |4 - mu^2| < 1e-6 evaluated by series around the
// exceptional point.
AffineMap4 adiabat_constmu_propagator(double omega_i, double omega_f, double mu);

// Instantaneous frequency jump (duration 0).
AffineMap4 sudden_propagator(double omega_i, double omega_f);

// Heisenberg generator of the adiabat at (omega, mu), plus the noise
// dissipators (both keep the quadratic algebra closed, no affine part):
//   amplitude: +gamma_a omega^2 (H - L) on the H and L rows
//   phase:     -4 gamma_p omega^2 on the L and C rows
Eigen::Matrix4d adiabat_generator(double omega, double mu,
                                  const NoiseSpec& noise = {});

// ODE-integrated propagator for an arbitrary protocol (instantaneous jumps
// compose sudden maps); affine column is identically zero.
AffineMap4 adiabat_numeric_propagator(const Protocol& p, double rel_tol = 1e-9);
AffineMap4 adiabat_numeric_propagator(const Protocol& p, const NoiseSpec& noise,
                                      double rel_tol = 1e-9);

// First-order Magnus reference for amplitude noise over l periods of the
// constant-mu propagator, and the second-order reference for phase noise, as
// printed in the source analysis.  Regression references only: their overall
// sign conventions are validated in magnitude against numeric propagation.
AffineMap4 magnus_amplitude_reference(double gamma_a, double mu, int l,
                                      double omega0);
AffineMap4 magnus_phase_reference(double gamma_p, double mu, int l,
                                  double omega0);

// delta_f = (wi/wf) (map[0,0] - wf/wi): fractional extra energy relative to
// ideal adiabatic scaling, >= 0 for noise-free maps.
double delta_f(const AffineMap4& map);

// Local adiabaticity measure from the classical parametric oscillator;
// satisfies Q* = 1 + delta_f.
double q_star(const Protocol& p, double rel_tol = 1e-10);

// Heat current Qdot = -Gamma (<H> - <H>_eq) at the state's frequency.
double heat_flux(const BathSpec& bath, const OscillatorState& s);

}  // namespace qotto
