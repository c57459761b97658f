#pragma once

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qotto {

// A frequency-protocol duration that a real-frequency schedule cannot
// realize, or a root solve that found no schedule.
class InfeasibleProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frequency schedule omega(t) over one adiabatic stroke.
struct Protocol {
  enum class Kind { constant_mu, linear, ermakov, bang_bang, tabulated };

  struct Hold {
    double omega;
    double time;
  };

  struct Sample {
    double omega;
    double mu;  // omega_dot / omega^2; +-infinity at bang-bang jumps
  };

  Kind kind = Kind::constant_mu;
  double omega_start = 1.0;
  double omega_end = 1.0;
  double duration = 0.0;

  double mu = 0.0;                      // constant_mu
  double rate = 0.0;                    // linear: omega(t) = omega_start + rate*t
  std::array<double, 6> ermakov_b{};    // b(s) = sum_k b[k] s^k, s = t/duration
  std::vector<Hold> holds;              // bang_bang
  std::vector<std::pair<double, double>> table;  // tabulated (t, omega)

  // omega(t) and mu(t); at an instantaneous jump returns the post-jump
  // frequency with mu = +-infinity.
  Sample sample(double t) const;
};

Protocol constant_mu_protocol(double omega_i, double omega_f, double mu);
Protocol linear_protocol(double omega_i, double omega_f, double duration);
Protocol tabulated_protocol(std::vector<std::pair<double, double>> table);

// Shortest-time constant-mu protocol that closes the coherence loop after l
// full periods: |mu*| = 2|ln(wf/wi)| / sqrt(4 pi^2 l^2 + ln^2(wf/wi)), with
// duration tau = (1 - wi/wf)/(mu* wi).
Protocol frictionless_constmu(double omega_i, double omega_f, int l);

// Ermakov shortcut: b(t) is the unique quintic with b(0)=1, b'(0)=b''(0)=0,
// b(tau)=sqrt(wi/wf), b'(tau)=b''(tau)=0, and omega^2 = wi^2/b^4 - b''/b.
// Throws InfeasibleProtocolError when omega^2 <= 0 somewhere (tau too short
// under the real-frequency constraint).
Protocol ermakov_sta(double omega_i, double omega_f, double tau);

// Minimal-time three-jump schedule between frequency bounds: the hold times
// are solved so that the final state is diagonal with E_f = target_E_ratio *
// E_i.  The Casimir companion restricts diagonal-to-diagonal schedules to
// target_E_ratio = omega_f/omega_i; anything else is infeasible.
Protocol bang_bang(double omega_i, double omega_f, double omega_min,
                   double omega_max, double target_E_ratio);

enum class TimeScheme { constant_mu, optimal };

// Shortest frictionless expansion time omega_h -> omega_c: the exact l=1
// constant-mu time, or the measured bang-bang time.
double minimal_time_estimate(double omega_c, double omega_h, TimeScheme scheme);

// Plain-text two-column (t, omega) table with a header carrying the kind and
// endpoints.  Jumps serialize as repeated t values; parsing yields a
// tabulated protocol.
std::string to_table(const Protocol& p, int samples_per_segment = 200);
Protocol from_table(std::istream& in);
Protocol from_table(const std::string& text);

}  // namespace qotto
