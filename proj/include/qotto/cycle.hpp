#pragma once

#include <stdexcept>
#include <string>

#include "qotto/affine_map.hpp"
#include "qotto/protocols.hpp"
#include "qotto/state.hpp"
#include "qotto/strokes.hpp"

namespace qotto {

class NoLimitCycleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corner labelling convention: engines follow the engine figure (A = end of
// hot isochore), refrigerators the refrigerator figure (A = end of
// compression).  Stroke order is identical in both cases:
// hot isochore -> expansion -> cold isochore -> compression.
enum class CycleOrder { engine, refrigerator };

enum class CycleMode { engine, refrigerator, dissipator };

struct CycleSpec {
  BathSpec hot_bath;
  BathSpec cold_bath;
  double omega_h = 2.0;  // > omega_c
  double omega_c = 1.0;
  double tau_h = 1.0;
  double tau_c = 1.0;
  Protocol expansion;    // omega_h -> omega_c
  Protocol compression;  // omega_c -> omega_h
  NoiseSpec noise;
  CycleOrder order = CycleOrder::engine;
  double adiabat_tol = 1e-10;  // numeric propagator tolerance

  double cycle_time() const {
    return tau_h + tau_c + expansion.duration + compression.duration;
  }
  void validate() const;
};

struct StrokeMaps {
  AffineMap4 hot;          // isochore at omega_h
  AffineMap4 expansion;    // omega_h -> omega_c
  AffineMap4 cold;         // isochore at omega_c
  AffineMap4 compression;  // omega_c -> omega_h
};

struct LimitCycle {
  OscillatorState after_hot;          // engine label A, refrigerator label D
  OscillatorState after_expansion;    // engine B, refrigerator C
  OscillatorState after_cold;         // engine C, refrigerator B
  OscillatorState after_compression;  // engine D, refrigerator A
  AffineMap4 monodromy;               // full-cycle map based at corner A
  double convergence_rate = 0.0;      // second-largest eigenvalue modulus
  CycleOrder labels = CycleOrder::engine;

  const OscillatorState& corner(char label) const;
};

struct CycleReport {
  CycleMode mode = CycleMode::dissipator;
  double work = 0.0;   // on the medium over both adiabats; negative for engines
  double q_hot = 0.0;  // heat into the medium on the hot isochore
  double q_cold = 0.0;
  double entropy_production = 0.0;  // -Q_h/T_h - Q_c/T_c
  double efficiency = 0.0;          // -W/Q_h, engines only (else NaN)
  double cop = 0.0;                 // Q_c/W, refrigerators only (else NaN)
  double power = 0.0;               // -W/tau_cyc
  double cooling_rate = 0.0;        // Q_c/tau_cyc
  double work_variance = 0.0;       // NaN when corners carry coherence
  double cycle_time = 0.0;
  bool third_law_flag = false;  // T_c = 0 made Q_c/T_c ill-defined
  LimitCycle cycle;

  const char* mode_name() const;
};

StrokeMaps stroke_maps(const CycleSpec& spec);

// U_cyc = U_ch * U_c * U_hc * U_h (rightmost factor applied first).
AffineMap4 compose(const CycleSpec& spec);

// Fixed point of the cycle map solved from (I - M) v = b; throws
// NoLimitCycleError when the homogeneous block is not a strict contraction.
LimitCycle limit_cycle(const CycleSpec& spec);

CycleReport report(const CycleSpec& spec);

// Var(W) = T_int(hot)^2 (1 + C^-2) + T_int(cold)^2 (1 + C^2) at the ends of
// the two thermalisations; refuses cycles with coherent corners.
double work_variance(const LimitCycle& lc);

// Efficiency charged with the mean extra energy parked in the working medium
// during constant-mu frictionless adiabats:
//   eta = -W / (Q_h + <H_ch> + <H_hc>),  <H_ch> = (wh/wc) E_C mu^2/(4 - mu^2).
double superadiabatic_efficiency_energy(const CycleReport& rep, double mu_hc,
                                        double mu_ch);

// Efficiency charged with the noise-generated extra energy:
//   eta = -W / (Q_h + E_C delta_ch + E_A delta_hc)  <=  1 - wc/wh.
double superadiabatic_efficiency_noise(const CycleReport& rep, double delta_hc,
                                       double delta_ch);

// Largest eigenvalue modulus of the homogeneous 3x3 block.
double convergence_rate(const AffineMap4& map);

}  // namespace qotto
