#include "qotto/strokes.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qotto/numerics/ode.hpp"

namespace qotto {

double BathSpec::k_down(double omega) const {
  if (!(conductance > 0.0))
    throw std::invalid_argument("bath conductance must be positive");
  if (temperature == 0.0) return conductance;
  return conductance / (1.0 - std::exp(-omega / temperature));
}

double BathSpec::k_up(double omega) const {
  if (temperature == 0.0) return 0.0;
  return k_down(omega) * std::exp(-omega / temperature);
}

SqueezedTargets squeezed_targets(const BathSpec& bath, double omega) {
  const double heq = equilibrium_energy(omega, bath.temperature);
  const double g = bath.squeezing;
  SqueezedTargets t;
  t.h_target = std::cosh(2.0 * g) * heq;
  t.l_target = std::sinh(2.0 * g) * (bath.k_up(omega) + bath.k_down(omega)) *
               omega / (2.0 * bath.conductance);
  return t;
}

Eigen::Matrix4d isochore_generator(const BathSpec& bath, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const double G = bath.conductance;
  const SqueezedTargets t = squeezed_targets(bath, omega);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = -G;
  m(0, 3) = G * t.h_target;
  m(1, 1) = -G;
  m(1, 2) = -2.0 * omega;
  m(1, 3) = G * t.l_target;
  m(2, 1) = 2.0 * omega;
  m(2, 2) = -G;
  return m;
}

AffineMap4 isochore_propagator(const BathSpec& bath, double omega, double tau) {
  if (tau < 0.0) throw std::invalid_argument("isochore duration must be >= 0");
  const double G = bath.conductance;
  const SqueezedTargets t = squeezed_targets(bath, omega);
  const double R = std::exp(-G * tau);
  const double c = std::cos(2.0 * omega * tau);
  const double s = std::sin(2.0 * omega * tau);

  AffineMap4 u;
  u.omega_in = u.omega_out = omega;
  u.duration = tau;
  Eigen::Matrix4d& m = u.matrix;
  m.setZero();
  m(0, 0) = R;
  m(1, 1) = R * c;
  m(1, 2) = -R * s;
  m(2, 1) = R * s;
  m(2, 2) = R * c;
  m(3, 3) = 1.0;
  m(0, 3) = t.h_target * (1.0 - R);
  // stationary point of the (L, C) block, then offset = (I - R Rot) v*
  const double denom = G * G + 4.0 * omega * omega;
  const double l_ss = G * G * t.l_target / denom;
  const double c_ss = 2.0 * omega * l_ss / G;
  m(1, 3) = l_ss - R * (c * l_ss - s * c_ss);
  m(2, 3) = c_ss - R * (s * l_ss + c * c_ss);
  return u;
}

AffineMap4 squeezed_isochore_propagator(const BathSpec& bath, double omega,
                                        double tau) {
  return isochore_propagator(bath, omega, tau);
}

namespace {

// cos(sqrt(x) th) and sin(sqrt(x) th)/sqrt(x), continued through x <= 0 and
// evaluated by series near the exceptional point x = 4 - mu^2 = 0.
struct TrigPair {
  double c;
  double s_over;       // sin(sqrt(x) th)/sqrt(x)
  double one_mc_over;  // (1 - c)/x
};

TrigPair ep_trig(double x, double th) {
  TrigPair r{};
  const double t2 = th * th;
  if (std::abs(x) * t2 < 1e-6) {
    // cos(sqrt(x) th), sin(sqrt(x) th)/sqrt(x) and (1-cos)/x are entire in
    // x = Omega^2; 4th-order series removes the 0/0 at the exceptional point.
    double c = 0.0, s = 0.0, omc = 0.0;
    double num = 1.0;     // (-x)^k th^{2k}
    double fact = 1.0;    // (2k)!
    for (int k = 0; k <= 4; ++k) {
      if (k > 0) {
        num *= -x * t2;
        fact *= (2 * k - 1) * (2 * k);
      }
      c += num / fact;
      s += th * num / (fact * (2 * k + 1));
      omc += -num * t2 / (fact * (2 * k + 1) * (2 * k + 2));
    }
    r.c = c;
    r.s_over = s;
    r.one_mc_over = -omc;
    return r;
  }
  if (x > 0.0) {
    const double om = std::sqrt(x);
    r.c = std::cos(om * th);
    r.s_over = std::sin(om * th) / om;
  } else {
    const double om = std::sqrt(-x);
    r.c = std::cosh(om * th);
    r.s_over = std::sinh(om * th) / om;
  }
  r.one_mc_over = (1.0 - r.c) / x;
  return r;
}

}  // namespace

AffineMap4 adiabat_constmu_propagator(double omega_i, double omega_f,
                                      double mu) {
  if (!(omega_i > 0.0) || !(omega_f > 0.0))
    throw std::invalid_argument("frequencies must be positive");
  AffineMap4 u;
  u.omega_in = omega_i;
  u.omega_out = omega_f;
  if (omega_i == omega_f) {
    u.duration = 0.0;
    return u;
  }
  if (mu == 0.0)
    throw std::invalid_argument(
        "adiabat_constmu_propagator: mu = 0 cannot reach a different omega");
  const double r = omega_f / omega_i;
  if ((omega_f > omega_i) != (mu > 0.0))
    throw std::invalid_argument(
        "adiabat_constmu_propagator: sign(mu) must match sign(omega_f - omega_i)");
  const double theta = std::log(r) / mu;  // = integral of omega dt > 0
  u.duration = (1.0 - omega_i / omega_f) / (mu * omega_i);

  const double x = 4.0 - mu * mu;
  const TrigPair t = ep_trig(x, theta);

  Eigen::Matrix3d K;
  K << 0.0, -mu, 0.0, -mu, 0.0, -2.0, 0.0, 2.0, 0.0;
  const Eigen::Matrix3d block =
      r * (Eigen::Matrix3d::Identity() + t.s_over * K + t.one_mc_over * K * K);
  u.matrix.setIdentity();
  u.matrix.topLeftCorner<3, 3>() = block;
  return u;
}

AffineMap4 sudden_propagator(double omega_i, double omega_f) {
  if (!(omega_i > 0.0) || !(omega_f > 0.0))
    throw std::invalid_argument("frequencies must be positive");
  const double r = omega_f / omega_i;
  const double alpha = r * r;
  AffineMap4 u;
  u.omega_in = omega_i;
  u.omega_out = omega_f;
  u.duration = 0.0;
  u.matrix.setIdentity();
  u.matrix(0, 0) = 0.5 * (1.0 + alpha);
  u.matrix(0, 1) = 0.5 * (1.0 - alpha);
  u.matrix(1, 0) = 0.5 * (1.0 - alpha);
  u.matrix(1, 1) = 0.5 * (1.0 + alpha);
  u.matrix(2, 2) = r;  // C = omega D rescales with the jump
  return u;
}

Eigen::Matrix4d adiabat_generator(double omega, double mu,
                                  const NoiseSpec& noise) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = omega * mu;
  g(0, 1) = -omega * mu;
  g(1, 0) = -omega * mu;
  g(1, 1) = omega * mu;
  g(1, 2) = -2.0 * omega;
  g(2, 1) = 2.0 * omega;
  g(2, 2) = omega * mu;
  const double w2 = omega * omega;
  if (noise.gamma_a > 0.0) {
    const double na = noise.gamma_a * w2;
    g(0, 0) += na;
    g(0, 1) -= na;
    g(1, 0) += na;
    g(1, 1) -= na;
  }
  if (noise.gamma_p > 0.0) {
    const double np = 4.0 * noise.gamma_p * w2;
    g(1, 1) -= np;
    g(2, 2) -= np;
  }
  return g;
}

namespace {

struct Segment {
  double t0, t1;      // smooth piece of the protocol
  bool jump = false;  // instantaneous frequency change at t0
  // when `local_linear`, omega interpolates (t0, omega_from) -> (t1, omega_to)
  // inside the segment instead of going through Protocol::sample (which
  // reports the jump sentinel at segment boundaries)
  bool local_linear = false;
  double omega_from = 0.0, omega_to = 0.0;

  Protocol::Sample at(const Protocol& p, double t) const {
    if (!local_linear) return p.sample(t);
    if (t1 == t0) return {omega_to, 0.0};
    const double slope = (omega_to - omega_from) / (t1 - t0);
    const double w = omega_from + slope * (t - t0);
    return {w, slope / (w * w)};
  }
};

// Splits a protocol into smooth segments separated by instantaneous jumps.
std::vector<Segment> segments_of(const Protocol& p) {
  std::vector<Segment> segs;
  switch (p.kind) {
    case Protocol::Kind::bang_bang: {
      double t = 0.0;
      double om = p.omega_start;
      for (const auto& h : p.holds) {
        segs.push_back({t, t, true, false, om, h.omega});
        if (h.time > 0.0)
          segs.push_back({t, t + h.time, false, true, h.omega, h.omega});
        t += h.time;
        om = h.omega;
      }
      segs.push_back({t, t, true, false, om, p.omega_end});
      break;
    }
    case Protocol::Kind::tabulated: {
      for (size_t i = 0; i + 1 < p.table.size(); ++i) {
        const auto [t0, w0] = p.table[i];
        const auto [t1, w1] = p.table[i + 1];
        if (t1 == t0) {
          if (w1 != w0) segs.push_back({t0, t0, true, false, w0, w1});
        } else {
          segs.push_back({t0, t1, false, true, w0, w1});
        }
      }
      break;
    }
    default:
      segs.push_back({0.0, p.duration, false, false, p.omega_start, p.omega_end});
  }
  return segs;
}

}  // namespace

AffineMap4 adiabat_numeric_propagator(const Protocol& p, const NoiseSpec& noise,
                                      double rel_tol) {
  AffineMap4 u = AffineMap4::identity(p.omega_start);
  u.duration = 0.0;
  for (const Segment& seg : segments_of(p)) {
    if (seg.jump) {
      u = compose(sudden_propagator(seg.omega_from, seg.omega_to), u);
      continue;
    }
    if (seg.t1 <= seg.t0) continue;
    Eigen::Matrix3d v = Eigen::Matrix3d::Identity();
    auto rhs = [&](double t, const Eigen::Matrix3d& y, Eigen::Matrix3d& dy) {
      const Protocol::Sample s = seg.at(p, t);
      const Eigen::Matrix4d g = adiabat_generator(s.omega, s.mu, noise);
      dy.noalias() = g.topLeftCorner<3, 3>() * y;
    };
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = rel_tol * 1e-2;
    v = integrate_adaptive(std::move(rhs), v, seg.t0, seg.t1, opt);
    AffineMap4 piece;
    piece.omega_in = seg.omega_from;
    piece.omega_out = seg.omega_to;
    piece.duration = seg.t1 - seg.t0;
    piece.matrix.setIdentity();
    piece.matrix.topLeftCorner<3, 3>() = v;
    u = compose(piece, u);
  }
  if (std::abs(u.omega_out - p.omega_end) > 1e-9 * p.omega_end)
    throw std::invalid_argument("protocol does not end at omega_end");
  return u;
}

AffineMap4 adiabat_numeric_propagator(const Protocol& p, double rel_tol) {
  return adiabat_numeric_propagator(p, NoiseSpec{}, rel_tol);
}

AffineMap4 magnus_amplitude_reference(double gamma_a, double mu, int l,
                                      double omega0) {
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  const double Om = std::sqrt(std::max(0.0, 4.0 - mu * mu));
  const double F = (16.0 * omega0 / (-16.0 + 3.0 * mu * mu)) *
                   (std::exp(2.0 * M_PI * l * mu * Om) - 1.0);
  AffineMap4 u;
  u.omega_in = u.omega_out = omega0;
  u.matrix.setIdentity();
  u.matrix(0, 0) = std::exp(gamma_a * F / mu);
  u.matrix(1, 1) = std::exp(-gamma_a * F / (2.0 * mu));
  u.matrix(2, 2) = std::exp(-gamma_a * F / (2.0 * mu));
  return u;
}

AffineMap4 magnus_phase_reference(double gamma_p, double mu, int l,
                                  double omega0) {
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  const double Om = std::sqrt(std::max(0.0, 4.0 - mu * mu));
  const double beta = (16.0 * omega0 * omega0 * gamma_p * gamma_p /
                       (4.0 + 3.0 * mu * mu)) *
                      (std::exp(2.0 * M_PI * l * mu * Om) - 1.0);
  AffineMap4 u;
  u.omega_in = u.omega_out = omega0;
  u.matrix.setIdentity();
  u.matrix(0, 0) = std::cosh(beta);
  u.matrix(0, 1) = -std::sinh(beta);
  u.matrix(1, 0) = -std::sinh(beta);
  u.matrix(1, 1) = std::cosh(beta);
  return u;
}

double delta_f(const AffineMap4& map) {
  const double r = map.omega_out / map.omega_in;
  return (map.matrix(0, 0) - r) / r;
}

double q_star(const Protocol& p, double rel_tol) {
  const double wi = p.omega_start, wf = p.omega_end;
  Eigen::Vector4d y(0.0, 1.0, 1.0, 0.0);  // (X, Xdot, Y, Ydot)
  for (const Segment& seg : segments_of(p)) {
    if (seg.jump || seg.t1 <= seg.t0) continue;
    auto rhs = [&](double t, const Eigen::Vector4d& v, Eigen::Vector4d& dv) {
      const double w = seg.at(p, t).omega;
      dv << v[1], -w * w * v[0], v[3], -w * w * v[2];
    };
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = rel_tol * 1e-2;
    y = integrate_adaptive(std::move(rhs), y, seg.t0, seg.t1, opt);
  }
  return (wi * wi * (wf * wf * y[0] * y[0] + y[1] * y[1]) +
          (wf * wf * y[2] * y[2] + y[3] * y[3])) /
         (2.0 * wi * wf);
}

double heat_flux(const BathSpec& bath, const OscillatorState& s) {
  return -bath.conductance *
         (s.energy - equilibrium_energy(s.frequency, bath.temperature));
}

}  // namespace qotto
