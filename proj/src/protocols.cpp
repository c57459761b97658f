#include "qotto/protocols.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qotto/numerics/rootfind.hpp"

namespace qotto {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_positive(double omega, const char* what) {
  if (!(omega > 0.0))
    throw std::invalid_argument(std::string(what) + " must be positive");
}

// b(s) and derivatives for the ermakov polynomial, s in [0, 1].
struct PolyEval {
  double b, db, d2b, d3b;  // derivatives with respect to s
};

PolyEval eval_poly(const std::array<double, 6>& c, double s) {
  PolyEval r{0, 0, 0, 0};
  r.b = ((((c[5] * s + c[4]) * s + c[3]) * s + c[2]) * s + c[1]) * s + c[0];
  r.db = (((5 * c[5] * s + 4 * c[4]) * s + 3 * c[3]) * s + 2 * c[2]) * s + c[1];
  r.d2b = ((20 * c[5] * s + 12 * c[4]) * s + 6 * c[3]) * s + 2 * c[2];
  r.d3b = (60 * c[5] * s + 24 * c[4]) * s + 6 * c[3];
  return r;
}

struct ErmakovSample {
  double omega2, domega2_dt, omega;
};

ErmakovSample ermakov_at(const Protocol& p, double t) {
  const double tau = p.duration;
  const double s = std::clamp(t / tau, 0.0, 1.0);
  const PolyEval e = eval_poly(p.ermakov_b, s);
  const double b = e.b;
  const double db = e.db / tau;
  const double d2b = e.d2b / (tau * tau);
  const double d3b = e.d3b / (tau * tau * tau);
  const double wi2 = p.omega_start * p.omega_start;
  ErmakovSample r;
  r.omega2 = wi2 / (b * b * b * b) - d2b / b;
  r.domega2_dt = -4.0 * wi2 * db / std::pow(b, 5) - (d3b / b - d2b * db / (b * b));
  r.omega = r.omega2 > 0.0 ? std::sqrt(r.omega2) : 0.0;
  return r;
}

}  // namespace

Protocol::Sample Protocol::sample(double t) const {
  if (t < -1e-12 || t > duration * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("Protocol::sample: t outside [0, duration]");
  t = std::clamp(t, 0.0, duration);
  switch (kind) {
    case Kind::constant_mu: {
      const double w = omega_start / (1.0 - mu * omega_start * t);
      return {w, mu};
    }
    case Kind::linear: {
      const double w = omega_start + rate * t;
      return {w, rate / (w * w)};
    }
    case Kind::ermakov: {
      const ErmakovSample e = ermakov_at(*this, t);
      const double mu_t = e.domega2_dt / (2.0 * e.omega2 * e.omega);
      return {e.omega, mu_t};
    }
    case Kind::bang_bang: {
      if (duration == 0.0)
        return {omega_end, omega_end == omega_start ? 0.0 : kInf};
      double acc = 0.0;
      for (const Hold& h : holds) {
        if (t == acc) return {h.omega, kInf};  // post-jump convention
        if (t < acc + h.time) return {h.omega, 0.0};
        acc += h.time;
      }
      return {omega_end, kInf};
    }
    case Kind::tabulated: {
      for (size_t i = 0; i + 1 < table.size(); ++i) {
        const auto [t0, w0] = table[i];
        const auto [t1, w1] = table[i + 1];
        if (t1 == t0) {
          if (t == t0 && w1 != w0) return {w1, kInf};
          continue;
        }
        if (t >= t0 && t <= t1) {
          const double slope = (w1 - w0) / (t1 - t0);
          const double w = w0 + slope * (t - t0);
          return {w, slope / (w * w)};
        }
      }
      return {omega_end, 0.0};
    }
  }
  throw std::logic_error("unreachable");
}

Protocol constant_mu_protocol(double omega_i, double omega_f, double mu) {
  check_positive(omega_i, "omega_i");
  check_positive(omega_f, "omega_f");
  Protocol p;
  p.kind = Protocol::Kind::constant_mu;
  p.omega_start = omega_i;
  p.omega_end = omega_f;
  p.mu = mu;
  if (omega_i == omega_f) {
    p.duration = 0.0;
    p.mu = 0.0;
    return p;
  }
  if (mu == 0.0 || (omega_f > omega_i) != (mu > 0.0))
    throw std::invalid_argument(
        "constant_mu_protocol: sign(mu) must match sign(omega_f - omega_i)");
  p.duration = (1.0 - omega_i / omega_f) / (mu * omega_i);
  return p;
}

Protocol linear_protocol(double omega_i, double omega_f, double duration) {
  check_positive(omega_i, "omega_i");
  check_positive(omega_f, "omega_f");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  Protocol p;
  p.kind = Protocol::Kind::linear;
  p.omega_start = omega_i;
  p.omega_end = omega_f;
  p.duration = duration;
  p.rate = (omega_f - omega_i) / duration;
  return p;
}

Protocol tabulated_protocol(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2)
    throw std::invalid_argument("tabulated protocol needs at least two rows");
  for (size_t i = 0; i + 1 < table.size(); ++i)
    if (table[i + 1].first < table[i].first)
      throw std::invalid_argument("tabulated protocol times must be sorted");
  Protocol p;
  p.kind = Protocol::Kind::tabulated;
  p.omega_start = table.front().second;
  p.omega_end = table.back().second;
  p.duration = table.back().first - table.front().first;
  if (table.front().first != 0.0)
    for (auto& [t, w] : table) t -= table.front().first;
  p.table = std::move(table);
  return p;
}

Protocol frictionless_constmu(double omega_i, double omega_f, int l) {
  check_positive(omega_i, "omega_i");
  check_positive(omega_f, "omega_f");
  if (omega_i == omega_f)
    throw std::invalid_argument("frictionless_constmu: omega_i == omega_f");
  if (l < 1) throw std::invalid_argument("quantization number l must be >= 1");
  const double lr = std::log(omega_f / omega_i);
  const double mu =
      std::copysign(2.0 * std::abs(lr) /
                        std::sqrt(4.0 * M_PI * M_PI * l * l + lr * lr),
                    omega_f - omega_i);
  return constant_mu_protocol(omega_i, omega_f, mu);
}

Protocol ermakov_sta(double omega_i, double omega_f, double tau) {
  check_positive(omega_i, "omega_i");
  check_positive(omega_f, "omega_f");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  Protocol p;
  p.kind = Protocol::Kind::ermakov;
  p.omega_start = omega_i;
  p.omega_end = omega_f;
  p.duration = tau;
  // quintic through b(0)=1, b'(0)=b''(0)=0, b(1)=bf, b'(1)=b''(1)=0 (in s)
  const double bf = std::sqrt(omega_i / omega_f);
  const double d = bf - 1.0;
  p.ermakov_b = {1.0, 0.0, 0.0, 10.0 * d, -15.0 * d, 6.0 * d};
  // real-frequency feasibility
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double t = tau * i / n;
    if (ermakov_at(p, t).omega2 <= 0.0)
      throw InfeasibleProtocolError(
          "ermakov_sta: omega^2 <= 0 at t = " + std::to_string(t) +
          "; duration too short for a real-frequency shortcut");
  }
  return p;
}

namespace {

// Closed-form (H, L, C) chain for the bang-bang schedule, used by the hold
// time root solve.  Phases are phi = 2 omega t at the respective holds.
struct BangChain {
  double om_i, b1, b2, om_f;

  Eigen::Vector3d final_state(double phi1, double phi2) const {
    Eigen::Vector3d v(1.0, 0.0, 0.0);  // scale-free: E_i = 1
    v = jump(v, om_i, b1);
    v = rot(v, phi1);
    v = jump(v, b1, b2);
    v = rot(v, phi2);
    v = jump(v, b2, om_f);
    return v;
  }

  static Eigen::Vector3d jump(const Eigen::Vector3d& v, double wa, double wb) {
    const double r = wb / wa, a = r * r;
    return {0.5 * ((1 + a) * v[0] + (1 - a) * v[1]),
            0.5 * ((1 - a) * v[0] + (1 + a) * v[1]), r * v[2]};
  }
  static Eigen::Vector3d rot(const Eigen::Vector3d& v, double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    return {v[0], c * v[1] - s * v[2], s * v[1] + c * v[2]};
  }
};

}  // namespace

Protocol bang_bang(double omega_i, double omega_f, double omega_min,
                   double omega_max, double target_E_ratio) {
  check_positive(omega_i, "omega_i");
  check_positive(omega_f, "omega_f");
  if (!(omega_min <= std::min(omega_i, omega_f)) ||
      !(omega_max >= std::max(omega_i, omega_f)))
    throw std::invalid_argument("bang_bang: bounds must enclose the endpoints");

  Protocol p;
  p.kind = Protocol::Kind::bang_bang;
  p.omega_start = omega_i;
  p.omega_end = omega_f;

  if (omega_i == omega_f && target_E_ratio == 1.0) {
    p.duration = 0.0;
    return p;
  }
  // Casimir conservation pins diagonal-to-diagonal schedules to the
  // adiabatic energy ratio.
  const double adiabatic_ratio = omega_f / omega_i;
  if (std::abs(target_E_ratio - adiabatic_ratio) > 1e-9 * adiabatic_ratio)
    throw InfeasibleProtocolError(
        "bang_bang: a diagonal final state forces E_f/E_i = omega_f/omega_i "
        "(Casimir invariant); requested ratio is unreachable");

  BangChain chain;
  chain.om_i = omega_i;
  chain.om_f = omega_f;
  chain.b1 = omega_f < omega_i ? omega_min : omega_max;
  chain.b2 = omega_f < omega_i ? omega_max : omega_min;

  auto residual = [&](double phi1, double phi2) {
    const Eigen::Vector3d v = chain.final_state(phi1, phi2);
    return Eigen::Vector2d(v[1], v[2]);
  };

  // coarse grid (log-spaced low-phi1 tail for high compression ratios),
  // then damped Newton with a numeric Jacobian
  std::vector<double> grid1;
  for (int i = 0; i <= 48; ++i)
    grid1.push_back(1e-4 * std::pow(0.3 / 1e-4, i / 48.0));
  for (int i = 1; i <= 160; ++i) grid1.push_back(0.3 + (2.0 * M_PI - 0.3) * i / 160.0);
  std::vector<double> grid2;
  for (int i = 1; i <= 200; ++i) grid2.push_back(2.0 * M_PI * i / 200.0);

  struct Candidate {
    double phi1, phi2, res;
  };
  std::vector<Candidate> seeds;
  for (const double f1 : grid1)
    for (const double f2 : grid2) {
      const double r = residual(f1, f2).norm();
      seeds.push_back({f1, f2, r});
    }
  std::sort(seeds.begin(), seeds.end(),
            [](const Candidate& a, const Candidate& b) { return a.res < b.res; });
  seeds.resize(std::min<size_t>(seeds.size(), 24));

  double best_time = kInf, best_p1 = 0, best_p2 = 0;
  bool found = false;
  for (const Candidate& s0 : seeds) {
    Eigen::Vector2d x(s0.phi1, s0.phi2);
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const Eigen::Vector2d g = residual(x[0], x[1]);
      if (g.norm() < 1e-12) {
        ok = true;
        break;
      }
      Eigen::Matrix2d J;
      const double h1 = std::max(1e-8, 1e-7 * std::abs(x[0]));
      const double h2 = std::max(1e-8, 1e-7 * std::abs(x[1]));
      J.col(0) = (residual(x[0] + h1, x[1]) - residual(x[0] - h1, x[1])) / (2 * h1);
      J.col(1) = (residual(x[0], x[1] + h2) - residual(x[0], x[1] - h2)) / (2 * h2);
      Eigen::Vector2d step = J.fullPivLu().solve(-g);
      if (!step.allFinite()) break;
      double lambda = 1.0;
      Eigen::Vector2d xn = x + step;
      for (int back = 0; back < 40; ++back) {
        xn = x + lambda * step;
        if (xn[0] > 0 && xn[1] > 0 && residual(xn[0], xn[1]).norm() < g.norm())
          break;
        lambda *= 0.5;
      }
      x = xn;
    }
    if (!ok) continue;
    const double t1 = x[0] / (2.0 * chain.b1);
    const double t2 = x[1] / (2.0 * chain.b2);
    if (t1 <= 0 || t2 <= 0) continue;
    found = true;
    if (t1 + t2 < best_time) {
      best_time = t1 + t2;
      best_p1 = x[0];
      best_p2 = x[1];
    }
  }
  if (!found)
    throw InfeasibleProtocolError(
        "bang_bang: hold-time root solve failed to bracket a diagonal final "
        "state for the given bounds");

  p.holds = {{chain.b1, best_p1 / (2.0 * chain.b1)},
             {chain.b2, best_p2 / (2.0 * chain.b2)}};
  p.duration = best_time;
  return p;
}

double minimal_time_estimate(double omega_c, double omega_h, TimeScheme scheme) {
  check_positive(omega_c, "omega_c");
  check_positive(omega_h, "omega_h");
  if (!(omega_c < omega_h))
    throw std::invalid_argument("minimal_time_estimate: omega_c < omega_h required");
  if (scheme == TimeScheme::constant_mu)
    return frictionless_constmu(omega_h, omega_c, 1).duration;
  return bang_bang(omega_h, omega_c, omega_c, omega_h, omega_c / omega_h).duration;
}

std::string to_table(const Protocol& p, int samples_per_segment) {
  std::ostringstream os;
  os.precision(17);
  const char* kind = "tabulated";
  switch (p.kind) {
    case Protocol::Kind::constant_mu: kind = "constmu"; break;
    case Protocol::Kind::linear: kind = "linear"; break;
    case Protocol::Kind::ermakov: kind = "ermakov"; break;
    case Protocol::Kind::bang_bang: kind = "bangbang"; break;
    case Protocol::Kind::tabulated: kind = "tabulated"; break;
  }
  os << "# qotto protocol table (units: hbar = kB = m = 1)\n";
  os << "# kind = " << kind << "\n";
  os << "# omega_start = " << p.omega_start << "\n";
  os << "# omega_end = " << p.omega_end << "\n";
  os << "# duration = " << p.duration << "\n";
  os << "# columns: t omega\n";
  if (p.kind == Protocol::Kind::bang_bang) {
    double t = 0.0, om = p.omega_start;
    os << t << " " << om << "\n";
    for (const auto& h : p.holds) {
      os << t << " " << h.omega << "\n";
      t += h.time;
      os << t << " " << h.omega << "\n";
    }
    os << t << " " << p.omega_end << "\n";
    return os.str();
  }
  if (p.kind == Protocol::Kind::tabulated) {
    for (const auto& [t, w] : p.table) os << t << " " << w << "\n";
    return os.str();
  }
  const int n = std::max(2, samples_per_segment);
  for (int i = 0; i <= n; ++i) {
    const double t = p.duration * i / n;
    os << t << " " << p.sample(t).omega << "\n";
  }
  return os.str();
}

Protocol from_table(std::istream& in) {
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double t, w;
    if (!(ls >> t >> w))
      throw std::invalid_argument("protocol table: malformed row: " + line);
    rows.emplace_back(t, w);
  }
  return tabulated_protocol(std::move(rows));
}

Protocol from_table(const std::string& text) {
  std::istringstream is(text);
  return from_table(is);
}

}  // namespace qotto
