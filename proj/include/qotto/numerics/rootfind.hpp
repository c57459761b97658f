#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace qotto {

struct RootOptions {
  double abs_tol = 1e-10;
  int max_iter = 200;
};

// Bracketed root finder: bisection refined by secant steps that are accepted
// only while they stay inside the current bracket.
template <class F>
double find_root_bracketed(F&& f, double a, double b,
                           const RootOptions& opt = {}) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::invalid_argument("find_root_bracketed: root not bracketed in [" +
                                std::to_string(a) + ", " + std::to_string(b) +
                                "]");
  for (int it = 0; it < opt.max_iter; ++it) {
    double x;
    if (fb != fa) {
      x = b - fb * (b - a) / (fb - fa);  // secant
      if (!(x > std::min(a, b) && x < std::max(a, b)))
        x = 0.5 * (a + b);
    } else {
      x = 0.5 * (a + b);
    }
    // keep at least bisection-rate bracket shrinkage
    if (std::abs(x - 0.5 * (a + b)) > 0.4 * std::abs(b - a))
      x = 0.5 * (a + b);
    const double fx = f(x);
    if (fx == 0.0 || std::abs(b - a) < opt.abs_tol) return x;
    if (fa * fx < 0.0) {
      b = x;
      fb = fx;
    } else {
      a = x;
      fa = fx;
    }
  }
  return 0.5 * (a + b);
}

// Scans [lo, hi] on a uniform grid for a sign change, then polishes it.
template <class F>
std::optional<double> scan_and_solve(F&& f, double lo, double hi, int n,
                                     const RootOptions& opt = {}) {
  double xp = lo, fp = f(lo);
  if (fp == 0.0) return lo;
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fp * fx < 0.0) return find_root_bracketed(f, xp, x, opt);
    xp = x;
    fp = fx;
  }
  return std::nullopt;
}

}  // namespace qotto
