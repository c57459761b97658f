#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qotto {

// Raised when the adaptive integrator cannot make progress (step underflow
// or step budget exhausted).  Carries the time at which integration stalled.
class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double t)
      : std::runtime_error(what + " at t=" + std::to_string(t)), time(t) {}
  double time;
};

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 -> automatic
  long max_steps = 4000000;
};

namespace detail {
template <class Vec>
double error_ratio(const Vec& err, const Vec& y0, const Vec& y1, double atol,
                   double rtol) {
  const auto scale =
      (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
  return err.cwiseAbs().cwiseQuotient(scale).maxCoeff();
}
}  // namespace detail

// Dormand-Prince 5(4) with PI step control.  `rhs(t, y, dydt)` fills the
// derivative; Vec is any Eigen-like dense type.
template <class Vec, class Rhs>
Vec integrate_adaptive(Rhs&& rhs, Vec y, double t0, double t1,
                       const OdeOptions& opt = {}) {
  if (t1 == t0) return y;
  if (t1 < t0) throw std::invalid_argument("integrate_adaptive: t1 < t0");

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  Vec k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y,
      ynew = y, yerr = y;

  double t = t0;
  rhs(t, y, k1);

  double h = opt.initial_step;
  if (h <= 0.0) {
    const double dy = y.cwiseAbs().maxCoeff();
    const double df = k1.cwiseAbs().maxCoeff();
    h = (df > 1e-30) ? 0.01 * (dy + opt.abs_tol) / df : (t1 - t0) * 1e-3;
    h = std::min(h, t1 - t0);
    h = std::max(h, (t1 - t0) * 1e-12);
  }

  bool fsal_valid = true;
  double prev_err = 1.0;
  for (long step = 0; step < opt.max_steps; ++step) {
    if (t >= t1) return y;
    h = std::min(h, t1 - t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw IntegratorError("integrator step underflow", t);
    if (!fsal_valid) rhs(t, y, k1);

    ytmp = y + h * (a21 * k1);
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);
    yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err =
        detail::error_ratio(yerr, y, ynew, opt.abs_tol, opt.rel_tol);
    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      fsal_valid = true;
      const double fac =
          0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
          std::pow(std::max(prev_err, 1e-10), 0.4 / 5.0);
      h *= std::clamp(fac, 0.2, 5.0);
      prev_err = std::max(err, 1e-10);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      fsal_valid = true;  // k1 still matches y
    }
  }
  throw IntegratorError("integrator exceeded max step count", t);
}

}  // namespace qotto
