#include "qotto/analysis.hpp"

#include <cmath>

#include "qotto/numerics/rootfind.hpp"

namespace qotto {

namespace {

// coth(omega/2T), with the T = 0 limit equal to 1
double coth_half(double omega, double temperature) {
  if (temperature == 0.0) return 1.0;
  return 1.0 / std::tanh(0.5 * omega / temperature);
}

double occupation(double omega, double temperature) {  // zero-point excluded
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double linear_fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-14 * n * sxx)
    throw std::invalid_argument("degenerate fit: no spread in abscissa");
  return (n * sxy - sx * sy) / det;
}

}  // namespace

double f_function(double x_c, double x_h) {
  if (x_c < 0.0 || x_h < 0.0)
    throw std::invalid_argument("f_function: scaled times must be >= 0");
  if (x_c == 0.0 || x_h == 0.0) return 0.0;
  return std::expm1(-x_c) * std::expm1(-x_h) / -std::expm1(-x_c - x_h);
}

double g_work(double t_c, double omega_c, double t_h, double omega_h) {
  return 0.5 * (omega_h - omega_c) *
         (coth_half(omega_h, t_h) - coth_half(omega_c, t_c));
}

double g_work_high_temperature(double t_c, double t_h, double compression) {
  return t_c * (1.0 - compression) + t_h * (1.0 - 1.0 / compression);
}

double g_entropy(double t_c, double omega_c, double t_h, double omega_h) {
  if (!(t_c > 0.0) || !(t_h > 0.0))
    throw std::invalid_argument("g_entropy: positive temperatures required");
  return 0.5 * (omega_h / t_h - omega_c / t_c) *
         (coth_half(omega_c, t_c) - coth_half(omega_h, t_h));
}

double g_entropy_high_temperature(double t_c, double t_h, double compression) {
  return compression * t_c / t_h + t_h / (compression * t_c) - 2.0;
}

TimeAllocation optimal_time_allocation(double gamma_h, double gamma_c,
                                       double tau_adiabats) {
  if (!(gamma_h > 0.0) || !(gamma_c > 0.0))
    throw std::invalid_argument("optimal_time_allocation: rates must be > 0");
  if (tau_adiabats < 0.0)
    throw std::invalid_argument("optimal_time_allocation: tau_adiabats >= 0");

  // Given x_h = Gamma_h tau_h, the work-balance condition fixes x_c.
  auto xc_of = [&](double x_h) {
    const double arg = 1.0 + (gamma_c / gamma_h) * (std::cosh(x_h) - 1.0);
    return std::acosh(arg);
  };
  auto residual = [&](double x_h) {
    const double x_c = xc_of(x_h);
    const double tau_cyc = x_h / gamma_h + x_c / gamma_c + tau_adiabats;
    return gamma_c * tau_cyc * (std::cosh(x_h) - 1.0) -
           (std::sinh(x_h + x_c) - std::sinh(x_c) - std::sinh(x_h));
  };
  const auto root = scan_and_solve(residual, 1e-6, 40.0, 4000);
  if (!root)
    throw std::runtime_error(
        "optimal_time_allocation: no stationary point bracketed in x_h in "
        "(1e-6, 40)");
  TimeAllocation t;
  t.tau_h = *root / gamma_h;
  t.tau_c = xc_of(*root) / gamma_c;
  return t;
}

MaxPowerDesign max_power_design(double t_c, double t_h) {
  if (!(t_h > t_c) || !(t_c > 0.0))
    throw std::invalid_argument("max_power_design: T_h > T_c > 0 required");
  return {std::sqrt(t_h / t_c), 1.0 - std::sqrt(t_c / t_h)};
}

SuddenForms sudden_closed_forms(double t_c, double t_h, double omega_c,
                                double omega_h) {
  if (!(omega_h > omega_c) || !(omega_c > 0.0))
    throw std::invalid_argument("sudden_closed_forms: omega_h > omega_c > 0");
  SuddenForms out;
  const double c = omega_h / omega_c;
  out.work = ((omega_c - omega_h) * (omega_c + omega_h) /
              (4.0 * omega_c * omega_h)) *
             (omega_c * coth_half(omega_h, t_h) -
              omega_h * coth_half(omega_c, t_c));
  out.optimal_compression = std::pow(t_h / t_c, 0.25);

  // full-thermalization corner energies; work and heat from the sudden maps
  const double e_a = equilibrium_energy(omega_h, t_h);
  const double e_c = equilibrium_energy(omega_c, t_c);
  const double e_b = 0.5 * (1.0 + 1.0 / (c * c)) * e_a;
  const double e_d = 0.5 * (1.0 + c * c) * e_c;
  const double work = (e_b - e_a) + (e_d - e_c);
  const double q_hot = e_a - e_d;
  out.efficiency = -work / q_hot;

  const double nb_h = occupation(omega_h, t_h);
  const double nb_c = occupation(omega_c, t_c);
  out.friction_work = omega_h * (c - 1.0) * (c - 1.0) *
                      (1.0 + c + 2.0 * c * nb_c + 2.0 * nb_h) / (4.0 * c * c);
  const double s = std::sqrt(t_h / t_c);
  out.printed_efficiency_flagged = (1.0 - s) / (2.0 + s);
  return out;
}

CompleteSudden complete_sudden_cycle(double t_c, double t_h, double omega_c,
                                     double omega_h, double g,
                                     double conductance) {
  if (!(g > 0.0) || !(g < 1.0))
    throw std::invalid_argument("complete_sudden_cycle: need 0 < g < 1");
  if (!(omega_h > omega_c) || !(omega_c > 0.0))
    throw std::invalid_argument("complete_sudden_cycle: omega_h > omega_c > 0");
  const double c = omega_h / omega_c;
  const double c2 = c * c;
  const double h_c = equilibrium_energy(omega_c, t_c);  // omega_c N_c^eq
  const double h_h = equilibrium_energy(omega_h, t_h);

  CompleteSudden out;
  AffineMap4& u = out.propagator;
  u.omega_in = u.omega_out = omega_h;
  u.duration = 2.0 * g / conductance;
  const double r = 1.0 - g;
  u.matrix.setIdentity();
  u.matrix(0, 0) = u.matrix(1, 1) = u.matrix(2, 2) = r * r;
  u.matrix(0, 3) = g * r * 0.5 * (1.0 + c2) * h_c + g * h_h;
  u.matrix(1, 3) = r * g * 0.5 * (1.0 - c2) * h_c;

  // fixed point at corner A (end of hot isochore) and the model heats
  const double e_a = (r * 0.5 * (1.0 + c2) * h_c + h_h) / (2.0 - g);
  const double l_a = r * 0.5 * (1.0 - c2) * h_c / (2.0 - g);
  const double alpha = 1.0 / c2;
  const double e_b = 0.5 * ((1.0 + alpha) * e_a + (1.0 - alpha) * l_a);
  out.q_hot = g * (h_h - e_a) / r;
  out.q_cold = g * (h_c - e_b);
  out.work = -(out.q_hot + out.q_cold);
  out.power = -out.work / u.duration;
  out.efficiency = -out.work / out.q_hot;
  out.entropy_production = -out.q_hot / t_h - out.q_cold / t_c;
  return out;
}

RefrigeratorPerformance refrigerator_performance(const CycleSpec& spec) {
  spec.validate();
  RefrigeratorPerformance out;
  out.cop = spec.omega_c / (spec.omega_h - spec.omega_c);

  const CycleReport rep = report(spec);
  out.cooling_rate = rep.cooling_rate;

  const double gamma = spec.cold_bath.conductance;
  const double tau_adi =
      spec.expansion.duration + spec.compression.duration;
  auto zres = [&](double z) {
    return 2.0 * std::sinh(z) - 2.0 * z - gamma * tau_adi;
  };
  const auto z = scan_and_solve(zres, 1e-8, 60.0, 6000);
  if (!z)
    throw std::runtime_error("refrigerator_performance: z solve failed");
  out.optimal_z = *z;
  const double nb_c = occupation(spec.omega_c, spec.cold_bath.temperature);
  const double nb_h = occupation(spec.omega_h, spec.hot_bath.temperature);
  const double ez = std::exp(-*z);  // e^z/(1+e^z)^2 = e^-z/(1+e^-z)^2
  out.optimal_cooling_rate =
      ez / ((1.0 + ez) * (1.0 + ez)) * gamma * spec.omega_c * (nb_c - nb_h);

  // sudden-limit cooling rate; zero-point inclusive populations here
  const double c = spec.omega_h / spec.omega_c;
  const double n_c = nb_c + 0.5, n_h = nb_h + 0.5;
  const double margin = n_c - 0.5 * (1.0 + c * c) * n_h / c;
  out.sudden_valid = margin > 0.0;
  out.sudden_cooling_rate =
      out.sudden_valid ? 0.25 * gamma * spec.omega_c * margin : 0.0;
  return out;
}

ThirdLawFit thirdlaw_scan(TimeScheme scheme, const std::vector<double>& tc_grid,
                          double omega_h, double t_h, double conductance,
                          double eta_cv) {
  if (tc_grid.size() < 2)
    throw std::invalid_argument("thirdlaw_scan: need at least two T_c points");
  double lo = tc_grid.front(), hi = tc_grid.front();
  for (double t : tc_grid) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (hi / lo < 99.0)
    throw std::invalid_argument(
        "thirdlaw_scan: T_c grid must span at least two decades");

  ThirdLawFit fit;
  std::vector<double> lx, ly;
  for (const double t_c : tc_grid) {
    ThirdLawPoint pt;
    pt.t_c = t_c;
    pt.omega_c = t_c;  // hbar omega_c = kB T_c ties the expansion target
    const double tau_one =
        minimal_time_estimate(pt.omega_c, omega_h, scheme);
    pt.tau_adiabats = 2.0 * tau_one;  // expansion + compression
    auto zres = [&](double z) {
      return 2.0 * std::sinh(z) - 2.0 * z - conductance * pt.tau_adiabats;
    };
    const auto z = scan_and_solve(zres, 1e-8, 60.0, 6000);
    if (!z) throw std::runtime_error("thirdlaw_scan: z solve failed");
    pt.z = *z;
    const double nb_c = occupation(pt.omega_c, t_c);
    const double nb_h = occupation(omega_h, t_h);
    if (!(nb_c > nb_h))
      throw std::invalid_argument(
          "thirdlaw_scan: no net cooling (N_c^eq <= N_h^eq); raise omega_h/T_h");
    const double ez = std::exp(-pt.z);
    pt.cooling_rate = ez / ((1.0 + ez) * (1.0 + ez)) * conductance *
                      pt.omega_c * (nb_c - nb_h);
    fit.points.push_back(pt);
    lx.push_back(std::log(t_c));
    ly.push_back(std::log(pt.cooling_rate));
  }
  fit.alpha = linear_fit_slope(lx, ly) - 1.0;
  fit.zeta = 1.0 + fit.alpha - eta_cv;
  return fit;
}

}  // namespace qotto
