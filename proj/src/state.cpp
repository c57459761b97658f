#include "qotto/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qotto {

namespace {
void check_frequency(double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("oscillator frequency must be positive");
}
}  // namespace

double equilibrium_energy(double omega, double temperature) {
  check_frequency(omega);
  if (temperature < 0.0)
    throw std::invalid_argument("bath temperature must be non-negative");
  if (temperature == 0.0) return 0.5 * omega;
  return 0.5 * omega / std::tanh(0.5 * omega / temperature);
}

OscillatorState equilibrium_state(double omega, double temperature) {
  return {equilibrium_energy(omega, temperature), 0.0, 0.0, omega};
}

double casimir_companion(const OscillatorState& s) {
  check_frequency(s.frequency);
  return (s.energy * s.energy - s.lagrangian * s.lagrangian -
          s.correlation * s.correlation) /
         (s.frequency * s.frequency);
}

double coherence_measure(const OscillatorState& s) {
  check_frequency(s.frequency);
  return std::hypot(s.lagrangian, s.correlation) / s.frequency;
}

double internal_temperature(const OscillatorState& s) {
  check_frequency(s.frequency);
  const double x = 0.5 * s.frequency / s.energy;  // omega/(2E) in (0, 1]
  if (x > 1.0)
    throw std::domain_error("internal_temperature: energy below ground state");
  if (x == 1.0) return 0.0;
  return 0.5 * s.frequency / std::atanh(x);
}

double bosonic_entropy(double nbar) {
  if (nbar <= 0.0) return 0.0;
  return (nbar + 1.0) * std::log1p(nbar) - nbar * std::log(nbar);
}

Entropies entropies(const OscillatorState& s) {
  double casimir = casimir_companion(s);
  if (casimir < 0.25) {
    if (casimir < 0.25 - 1e-9)
      throw std::domain_error(
          "entropies: unphysical state, Casimir companion below 1/4");
    casimir = 0.25;  // roundoff grazing the boundary
  }
  Entropies out;
  out.s_energy = bosonic_entropy(s.energy / s.frequency - 0.5);
  out.s_vn = bosonic_entropy(std::sqrt(casimir) - 0.5);
  out.rel_coherence = std::max(0.0, out.s_energy - out.s_vn);
  return out;
}

DerivedObservables derived_observables(const OscillatorState& s) {
  DerivedObservables d;
  d.number = s.energy / s.frequency;
  d.casimir = casimir_companion(s);
  d.coherence = coherence_measure(s);
  d.internal_temperature = internal_temperature(s);
  const Entropies e = entropies(s);
  d.s_energy = e.s_energy;
  d.s_vn = e.s_vn;
  d.rel_coherence = e.rel_coherence;
  return d;
}

GibbsParams gibbs_parameters(const OscillatorState& s) {
  check_frequency(s.frequency);
  const double w = s.frequency;
  const double lc2 = s.lagrangian * s.lagrangian + s.correlation * s.correlation;
  const double denom = lc2 - (0.5 * w - s.energy) * (0.5 * w - s.energy);
  if (denom == 0.0 || std::abs(denom) < 1e-300)
    throw std::domain_error(
        "gibbs_parameters: degenerate denominator (pure state, beta -> inf)");
  const double ebw =
      (lc2 - s.energy * s.energy + 0.25 * w * w) / denom;  // e^{beta omega}
  if (!(ebw > 1.0))
    throw std::domain_error(
        "gibbs_parameters: state outside the real-beta product family");
  GibbsParams g;
  g.beta = std::log(ebw) / w;
  g.gamma = 0.5 * w * std::complex<double>(s.lagrangian, s.correlation) / denom;
  const double g2 = std::norm(g.gamma);
  const double em1 = ebw - 1.0;
  const double under = 1.0 - 4.0 * g2 / (em1 * em1);
  if (!(under > 0.0))
    throw std::domain_error("gibbs_parameters: squeezing bound violated");
  g.partition = std::sqrt(ebw) / (em1 * std::sqrt(under));
  return g;
}

OscillatorState gibbs_expectations(const GibbsParams& g, double omega) {
  check_frequency(omega);
  if (!(g.beta > 0.0)) throw std::invalid_argument("beta must be positive");
  const double ebw = std::exp(g.beta * omega);
  const double g2 = std::norm(g.gamma);
  const double em1 = ebw - 1.0;
  if (!(4.0 * g2 < em1 * em1))
    throw std::domain_error("gibbs_expectations: 4|gamma|^2 < (e^{bw}-1)^2 required");
  const double D = em1 * em1 - 4.0 * g2;
  OscillatorState s;
  s.frequency = omega;
  s.energy = omega * (ebw * ebw - 4.0 * g2 - 1.0) / (2.0 * D);
  // <a^2> = 2 conj(gamma)/D, with <L> = -omega Re<a^2>, <C> = omega Im<a^2>
  const std::complex<double> a2 = 2.0 * std::conj(g.gamma) / D;
  s.lagrangian = -omega * a2.real();
  s.correlation = omega * a2.imag();
  return s;
}

bool is_physical(const OscillatorState& s, double tol) {
  if (!(s.frequency > 0.0)) return false;
  if (s.energy < 0.5 * s.frequency - tol) return false;
  return casimir_companion(s) >= 0.25 - tol;
}

double s_vn_casimir_form(double casimir) {
  const double g = casimir;
  if (g <= 0.25) return 0.0;
  return std::log(std::sqrt(g - 0.25)) +
         std::sqrt(g) * std::asinh(std::sqrt(g) / (g - 0.25));
}

}  // namespace qotto
