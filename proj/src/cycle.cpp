#include "qotto/cycle.hpp"

#include <cmath>
#include <limits>

namespace qotto {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kDeadBand = 1e-12;

bool corners_diagonal(const LimitCycle& lc, double rel = 1e-8) {
  for (const OscillatorState* s :
       {&lc.after_hot, &lc.after_expansion, &lc.after_cold,
        &lc.after_compression}) {
    const double bound = rel * std::abs(s->energy);
    if (std::abs(s->lagrangian) > bound || std::abs(s->correlation) > bound)
      return false;
  }
  return true;
}
}  // namespace

void CycleSpec::validate() const {
  if (!(omega_h > omega_c) || !(omega_c > 0.0))
    throw std::invalid_argument("cycle requires omega_h > omega_c > 0");
  if (tau_h < 0.0 || tau_c < 0.0)
    throw std::invalid_argument("isochore durations must be >= 0");
  auto check_protocol = [](const Protocol& p, double wi, double wf,
                           const char* name) {
    if (std::abs(p.omega_start - wi) > 1e-9 * wi ||
        std::abs(p.omega_end - wf) > 1e-9 * wf)
      throw std::invalid_argument(std::string(name) +
                                  " protocol endpoints do not match the cycle "
                                  "frequencies");
  };
  check_protocol(expansion, omega_h, omega_c, "expansion");
  check_protocol(compression, omega_c, omega_h, "compression");
}

const OscillatorState& LimitCycle::corner(char label) const {
  const bool eng = labels == CycleOrder::engine;
  switch (label) {
    case 'A': return eng ? after_hot : after_compression;
    case 'B': return eng ? after_expansion : after_cold;
    case 'C': return eng ? after_cold : after_expansion;
    case 'D': return eng ? after_compression : after_hot;
  }
  throw std::invalid_argument("corner label must be one of A, B, C, D");
}

const char* CycleReport::mode_name() const {
  switch (mode) {
    case CycleMode::engine: return "engine";
    case CycleMode::refrigerator: return "refrigerator";
    case CycleMode::dissipator: return "dissipator";
  }
  return "unknown";
}

namespace {

AffineMap4 adiabat_map(const Protocol& p, const NoiseSpec& noise, double tol) {
  if (!noise.any() && p.kind == Protocol::Kind::constant_mu) {
    if (p.duration == 0.0 && p.omega_start == p.omega_end)
      return AffineMap4::identity(p.omega_start);
    return adiabat_constmu_propagator(p.omega_start, p.omega_end, p.mu);
  }
  return adiabat_numeric_propagator(p, noise, tol);
}

}  // namespace

StrokeMaps stroke_maps(const CycleSpec& spec) {
  spec.validate();
  StrokeMaps m;
  m.hot = isochore_propagator(spec.hot_bath, spec.omega_h, spec.tau_h);
  m.expansion = adiabat_map(spec.expansion, spec.noise, spec.adiabat_tol);
  m.cold = isochore_propagator(spec.cold_bath, spec.omega_c, spec.tau_c);
  m.compression = adiabat_map(spec.compression, spec.noise, spec.adiabat_tol);
  return m;
}

AffineMap4 compose(const CycleSpec& spec) {
  const StrokeMaps m = stroke_maps(spec);
  return compose(m.compression, compose(m.cold, compose(m.expansion, m.hot)));
}

LimitCycle limit_cycle(const CycleSpec& spec) {
  const StrokeMaps maps = stroke_maps(spec);
  const AffineMap4 u_cyc =
      compose(maps.compression,
              compose(maps.cold, compose(maps.expansion, maps.hot)));
  const Eigen::Matrix3d m = u_cyc.homogeneous();
  const double radius = spectral_radius(m);
  if (!(radius < 1.0 - 1e-12))
    throw NoLimitCycleError(
        "no limit cycle: cycle map spectral radius " + std::to_string(radius) +
        " is not a strict contraction");
  const Eigen::Vector3d fixed =
      (Eigen::Matrix3d::Identity() - m).fullPivLu().solve(u_cyc.offset());

  LimitCycle lc;
  lc.labels = spec.order;
  lc.convergence_rate = radius;
  lc.after_compression = {fixed[0], fixed[1], fixed[2], spec.omega_h};
  lc.after_hot = maps.hot.apply(lc.after_compression);
  lc.after_expansion = maps.expansion.apply(lc.after_hot);
  lc.after_cold = maps.cold.apply(lc.after_expansion);
  if (spec.order == CycleOrder::engine) {
    // monodromy based at corner A = end of the hot isochore
    lc.monodromy = compose(
        maps.hot,
        compose(maps.compression, compose(maps.cold, maps.expansion)));
  } else {
    // corner A = end of the compression adiabat
    lc.monodromy = u_cyc;
  }
  return lc;
}

CycleReport report(const CycleSpec& spec) {
  CycleReport rep;
  rep.cycle = limit_cycle(spec);
  const LimitCycle& lc = rep.cycle;

  rep.q_hot = lc.after_hot.energy - lc.after_compression.energy;
  const double w_exp = lc.after_expansion.energy - lc.after_hot.energy;
  rep.q_cold = lc.after_cold.energy - lc.after_expansion.energy;
  const double w_comp = lc.after_compression.energy - lc.after_cold.energy;
  rep.work = w_exp + w_comp;
  rep.cycle_time = spec.cycle_time();

  const double t_h = spec.hot_bath.temperature;
  const double t_c = spec.cold_bath.temperature;
  double ds = 0.0;
  if (t_h > 0.0) {
    ds -= rep.q_hot / t_h;
  } else if (rep.q_hot != 0.0) {
    rep.third_law_flag = true;
    ds = std::numeric_limits<double>::infinity();
  }
  if (t_c > 0.0) {
    ds -= rep.q_cold / t_c;
  } else if (rep.q_cold != 0.0) {
    rep.third_law_flag = true;
    ds = rep.q_cold < 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
  }
  rep.entropy_production = ds;

  if (rep.work < -kDeadBand && rep.q_hot > kDeadBand)
    rep.mode = CycleMode::engine;
  else if (rep.q_cold > kDeadBand && rep.work > kDeadBand)
    rep.mode = CycleMode::refrigerator;
  else
    rep.mode = CycleMode::dissipator;

  rep.efficiency =
      rep.mode == CycleMode::engine ? -rep.work / rep.q_hot : kNan;
  rep.cop = rep.mode == CycleMode::refrigerator ? rep.q_cold / rep.work : kNan;
  rep.power = rep.cycle_time > 0.0 ? -rep.work / rep.cycle_time : kNan;
  rep.cooling_rate =
      rep.cycle_time > 0.0 ? rep.q_cold / rep.cycle_time : kNan;
  rep.work_variance = corners_diagonal(lc) ? work_variance(lc) : kNan;
  return rep;
}

double work_variance(const LimitCycle& lc) {
  if (!corners_diagonal(lc))
    throw std::domain_error(
        "work_variance: corners carry coherence; the frictionless formula "
        "does not apply");
  const double t_hot = internal_temperature(lc.after_hot);
  const double t_cold = internal_temperature(lc.after_cold);
  const double c = lc.after_hot.frequency / lc.after_cold.frequency;
  return t_hot * t_hot * (1.0 + 1.0 / (c * c)) +
         t_cold * t_cold * (1.0 + c * c);
}

double superadiabatic_efficiency_energy(const CycleReport& rep, double mu_hc,
                                        double mu_ch) {
  if (rep.mode != CycleMode::engine)
    throw std::domain_error("superadiabatic efficiency requires engine mode");
  const double wh = rep.cycle.after_hot.frequency;
  const double wc = rep.cycle.after_cold.frequency;
  const double e_c = rep.cycle.after_cold.energy;
  const double e_a = rep.cycle.after_hot.energy;
  const double h_ch = (wh / wc) * e_c * mu_ch * mu_ch / (4.0 - mu_ch * mu_ch);
  const double h_hc = (wc / wh) * e_a * mu_hc * mu_hc / (4.0 - mu_hc * mu_hc);
  return -rep.work / (rep.q_hot + h_ch + h_hc);
}

double superadiabatic_efficiency_noise(const CycleReport& rep, double delta_hc,
                                       double delta_ch) {
  if (rep.mode != CycleMode::engine)
    throw std::domain_error("superadiabatic efficiency requires engine mode");
  const double e_c = rep.cycle.after_cold.energy;
  const double e_a = rep.cycle.after_hot.energy;
  return -rep.work / (rep.q_hot + e_c * delta_ch + e_a * delta_hc);
}

double convergence_rate(const AffineMap4& map) {
  return spectral_radius(map.homogeneous());
}

}  // namespace qotto
