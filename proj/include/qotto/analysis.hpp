#pragma once

#include <vector>

#include "qotto/affine_map.hpp"
#include "qotto/cycle.hpp"
#include "qotto/protocols.hpp"

namespace qotto {

// Heat-transport factor F(x_c, x_h) = (e^xc - 1)(e^xh - 1)/(e^{xc+xh} - 1),
// bounded in [0, 1]; x = Gamma tau are scaled isochore times.
double f_function(double x_c, double x_h);

// G_W = (1/2)(wh - wc)(coth(wh/2Th) - coth(wc/2Tc)); the limit-cycle work for
// frictionless engines factorizes as W = -G_W F.  Non-negative exactly on
// 1 <= C <= Th/Tc.
double g_work(double t_c, double omega_c, double t_h, double omega_h);
double g_work_high_temperature(double t_c, double t_h, double compression);

// G_S: entropy production factor, Delta S_u = G_S F in the frictionless limit
// cycle, plus its high-temperature simplification.
double g_entropy(double t_c, double omega_c, double t_h, double omega_h);
double g_entropy_high_temperature(double t_c, double t_h, double compression);

struct TimeAllocation {
  double tau_h = 0.0;
  double tau_c = 0.0;
};

// Maximum-power partition of the isochore times at fixed adiabat time:
// Gamma_h (cosh(Gamma_c tau_c) - 1) = Gamma_c (cosh(Gamma_h tau_h) - 1)
// jointly with the cycle-time stationarity condition.  For equal rates it
// reduces to 2x + Gamma tau_adi = 2 sinh(x).
TimeAllocation optimal_time_allocation(double gamma_h, double gamma_c,
                                       double tau_adiabats);

struct MaxPowerDesign {
  double compression = 1.0;  // C* = sqrt(Th/Tc) at high temperature
  double efficiency = 0.0;   // 1 - sqrt(Tc/Th)
};
MaxPowerDesign max_power_design(double t_c, double t_h);

struct SuddenForms {
  double work = 0.0;                 // W_s at the given frequencies
  double optimal_compression = 1.0;  // (Th/Tc)^{1/4}, high-T optimum
  double efficiency = 0.0;           // -W_s/Q_h, full thermalization
  double friction_work = 0.0;        // W_f = W_s - W_q (sudden minus frictionless)
  // the efficiency formula as printed in the source; its temperature ratio is
  // inverted (the Tc -> 0 limit contradicts the stated value 1/2), kept only
  // as a flagged regression reference
  double printed_efficiency_flagged = 0.0;
};
SuddenForms sudden_closed_forms(double t_c, double t_h, double omega_c,
                                double omega_h);

struct CompleteSudden {
  AffineMap4 propagator;  // cycle map at corner A, rotation-free sudden model
  double work = 0.0;      // per cycle, negative when extracting
  double power = 0.0;     // -work/tau_cyc with tau_cyc = 2 g / Gamma
  double entropy_production = 0.0;
  double efficiency = 0.0;  // -W/Q_h from the model heats
  double q_hot = 0.0;
  double q_cold = 0.0;
};
// Vanishing-cycle-time engine: thermalisation degree g = Gamma tau << 1 on
// both isochores, sudden jumps in between.  Work matches the closed form
// W_S = -wh g/(2-g) (C^2-1)/(2C^2) (N_h - C N_c) exactly.
CompleteSudden complete_sudden_cycle(double t_c, double t_h, double omega_c,
                                     double omega_h, double g,
                                     double conductance = 1.0);

struct RefrigeratorPerformance {
  double cop = 0.0;                  // omega_c/(omega_h - omega_c)
  double cooling_rate = 0.0;         // from the full limit cycle
  double optimal_cooling_rate = 0.0; // e^z/(1+e^z)^2 Gamma wc (N_c - N_h)
  double optimal_z = 0.0;            // 2z + Gamma(tau_hc + tau_ch) = 2 sinh z
  double sudden_cooling_rate = 0.0;  // 0 when below the validity cutoff
  bool sudden_valid = false;         // N_c > (1 + C^2) N_h / (2C)
};
RefrigeratorPerformance refrigerator_performance(const CycleSpec& spec);

struct ThirdLawPoint {
  double t_c = 0.0;
  double omega_c = 0.0;
  double tau_adiabats = 0.0;
  double z = 0.0;
  double cooling_rate = 0.0;
};

struct ThirdLawFit {
  double alpha = 0.0;  // R_c ~ T_c^{1+alpha}
  double zeta = 0.0;   // 1 + alpha - eta_cv
  std::vector<ThirdLawPoint> points;
};

// Optimized cooling power along a geometric T_c grid (>= 2 decades) with
// omega_c tied to T_c; log-log fit of R_c vs T_c gives 1 + alpha.
ThirdLawFit thirdlaw_scan(TimeScheme scheme, const std::vector<double>& tc_grid,
                          double omega_h, double t_h, double conductance,
                          double eta_cv);

}  // namespace qotto
