#include "qotto/oracle.hpp"

#include <cmath>

#include "qotto/numerics/ode.hpp"

namespace qotto {

namespace {
using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
constexpr Cplx kI{0.0, 1.0};
}  // namespace

FockSpace::FockSpace(int dim, double omega_ref)
    : dim_(dim), omega_ref_(omega_ref) {
  if (dim < 8) throw std::invalid_argument("FockSpace: dim must be >= 8");
  if (!(omega_ref > 0.0))
    throw std::invalid_argument("FockSpace: omega_ref must be positive");
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  const Mat ad = a.adjoint();
  q_ = (a + ad) / std::sqrt(2.0 * omega_ref);
  p_ = kI * std::sqrt(0.5 * omega_ref) * (ad - a);
  q2_ = q_ * q_;
  p2_ = p_ * p_;
  d_ = 0.5 * (q_ * p_ + p_ * q_);
}

Mat FockSpace::hamiltonian(double omega) const {
  return 0.5 * p2_ + 0.5 * omega * omega * q2_;
}

Mat FockSpace::lagrangian(double omega) const {
  return 0.5 * p2_ - 0.5 * omega * omega * q2_;
}

Mat FockSpace::correlation(double omega) const { return omega * d_; }

Mat FockSpace::lowering(double omega) const {
  return std::sqrt(0.5 * omega) * q_ + kI / std::sqrt(2.0 * omega) * p_;
}

double DensityMatrix::trace_error() const {
  return std::abs(rho.trace() - Cplx(1.0));
}

double DensityMatrix::hermiticity_error() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::tail_population() const {
  const int n = int(rho.rows());
  const int start = n - std::max(1, n / 10);
  double tail = 0.0;
  for (int k = start; k < n; ++k) tail += rho(k, k).real();
  return tail;
}

void DensityMatrix::check_valid() const {
  if (hermiticity_error() > 1e-10)
    throw TruncationError("density matrix lost hermiticity");
  if (trace_error() > 1e-8)
    throw TruncationError("density matrix trace drifted from 1");
  if (min_eigenvalue() < -1e-8)
    throw TruncationError(
        "density matrix positivity violated beyond 1e-8; Fock truncation too "
        "small");
}

DensityMatrix thermal_state(const FockSpace& space, double omega, double T) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (T < 0.0) throw std::invalid_argument("temperature must be >= 0");
  Eigen::SelfAdjointEigenSolver<Mat> es(space.hamiltonian(omega));
  const Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(ev.size());
  if (T == 0.0) {
    int imin;
    ev.minCoeff(&imin);
    w[imin] = 1.0;
  } else {
    const double e0 = ev.minCoeff();
    for (int i = 0; i < ev.size(); ++i) w[i] = std::exp(-(ev[i] - e0) / T);
    w /= w.sum();
  }
  DensityMatrix out;
  out.rho = es.eigenvectors() * w.asDiagonal().toDenseMatrix().cast<Cplx>() *
            es.eigenvectors().adjoint();
  return out;
}

OscillatorState expectations(const FockSpace& space, const DensityMatrix& rho,
                             double omega) {
  OscillatorState s;
  s.frequency = omega;
  s.energy = (rho.rho * space.hamiltonian(omega)).trace().real();
  s.lagrangian = (rho.rho * space.lagrangian(omega)).trace().real();
  s.correlation = (rho.rho * space.correlation(omega)).trace().real();
  return s;
}

double energy_variance(const FockSpace& space, const DensityMatrix& rho,
                       double omega) {
  const Mat h = space.hamiltonian(omega);
  const double e1 = (rho.rho * h).trace().real();
  const double e2 = (rho.rho * h * h).trace().real();
  return e2 - e1 * e1;
}

double purity(const DensityMatrix& rho) {
  return (rho.rho * rho.rho).trace().real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a.rho - b.rho, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double vn_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double p : es.eigenvalues())
    if (p > 1e-14) s -= p * std::log(p);
  return s;
}

namespace {

// Shared Lindblad right-hand side pieces.  Jump contribution for operator J:
// J rho J+ - (J+J rho + rho J+J)/2, accumulated into `out`.
void add_dissipator(const Mat& j, const Mat& jd, const Mat& jdj, double rate,
                    const Mat& rho, Mat& out, Mat& tmp) {
  tmp.noalias() = j * rho;
  out.noalias() += rate * (tmp * jd);
  tmp.noalias() = jdj * rho;
  out.noalias() -= 0.5 * rate * tmp;
  tmp.noalias() = rho * jdj;
  out.noalias() -= 0.5 * rate * tmp;
}

// -g [A, [A, rho]] = -g (A A rho - 2 A rho A + rho A A)
void add_double_commutator(const Mat& a, const Mat& a2, double g, const Mat& rho,
                           Mat& out, Mat& tmp) {
  tmp.noalias() = a2 * rho;
  out.noalias() -= g * tmp;
  tmp.noalias() = rho * a2;
  out.noalias() -= g * tmp;
  tmp.noalias() = a * rho;
  out.noalias() += 2.0 * g * (tmp * a);
}

}  // namespace

DensityMatrix evolve_lindblad(const FockSpace& space, const DensityMatrix& rho0,
                              double omega, const BathSpec& bath,
                              const NoiseSpec& noise, double tau,
                              double rel_tol) {
  if (tau < 0.0) throw std::invalid_argument("tau must be >= 0");
  if (tau == 0.0) return rho0;
  const Mat h = space.hamiltonian(omega);
  const double ch = std::cosh(bath.squeezing), sh = std::sinh(bath.squeezing);
  const Mat a = space.lowering(omega);
  const Mat s = ch * a + sh * a.adjoint();
  const Mat sd = s.adjoint();
  const Mat sds = sd * s;
  const Mat ssd = s * sd;
  const double kdn = bath.k_down(omega), kup = bath.k_up(omega);
  const Mat b = omega * space.q2() / 2.0;
  const Mat b2 = b * b;
  const Mat h2 = h * h;
  const double ga = noise.gamma_a * omega * omega;
  const double gp = noise.gamma_p;

  Mat tmp(space.dim(), space.dim());
  auto rhs = [&](double, const Mat& rho, Mat& drho) {
    drho.noalias() = -kI * (h * rho);
    drho.noalias() += kI * (rho * h);
    add_dissipator(s, sd, sds, kdn, rho, drho, tmp);
    if (kup > 0.0) add_dissipator(sd, s, ssd, kup, rho, drho, tmp);
    if (ga > 0.0) add_double_commutator(b, b2, ga, rho, drho, tmp);
    if (gp > 0.0) add_double_commutator(h, h2, gp, rho, drho, tmp);
  };

  OdeOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-3;
  DensityMatrix out;
  out.rho = integrate_adaptive(rhs, Mat(rho0.rho), 0.0, tau, opt);
  out.check_valid();
  return out;
}

DensityMatrix evolve_protocol(const FockSpace& space, const DensityMatrix& rho0,
                              const Protocol& protocol, const NoiseSpec& noise,
                              double rel_tol) {
  OdeOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = rel_tol * 1e-3;

  DensityMatrix state = rho0;
  // Instantaneous jumps leave rho unchanged; only smooth pieces propagate.
  struct Piece {
    double t0, t1;
  };
  std::vector<Piece> pieces;
  if (protocol.kind == Protocol::Kind::bang_bang) {
    double t = 0.0;
    for (const auto& hseg : protocol.holds) {
      if (hseg.time > 0.0) pieces.push_back({t, t + hseg.time});
      t += hseg.time;
    }
  } else if (protocol.kind == Protocol::Kind::tabulated) {
    for (size_t i = 0; i + 1 < protocol.table.size(); ++i)
      if (protocol.table[i + 1].first > protocol.table[i].first)
        pieces.push_back(
            {protocol.table[i].first, protocol.table[i + 1].first});
  } else if (protocol.duration > 0.0) {
    pieces.push_back({0.0, protocol.duration});
  }

  const bool noisy = noise.any();
  Mat tmp(space.dim(), space.dim());
  for (const Piece& pc : pieces) {
    if (!noisy) {
      // propagate the unitary instead of rho: dU/dt = -i H(t) U
      auto rhs = [&](double t, const Mat& u, Mat& du) {
        const double w = protocol.sample(t).omega;
        du.noalias() = -kI * (space.hamiltonian(w) * u);
      };
      Mat u = integrate_adaptive(
          rhs, Mat(Mat::Identity(space.dim(), space.dim())), pc.t0, pc.t1, opt);
      state.rho = u * state.rho * u.adjoint();
    } else {
      auto rhs = [&](double t, const Mat& rho, Mat& drho) {
        const double w = protocol.sample(t).omega;
        const Mat h = space.hamiltonian(w);
        drho.noalias() = -kI * (h * rho);
        drho.noalias() += kI * (rho * h);
        if (noise.gamma_a > 0.0) {
          const Mat b = w * space.q2() / 2.0;
          add_double_commutator(b, Mat(b * b), noise.gamma_a * w * w, rho, drho,
                                tmp);
        }
        if (noise.gamma_p > 0.0)
          add_double_commutator(h, Mat(h * h), noise.gamma_p, rho, drho, tmp);
      };
      state.rho = integrate_adaptive(rhs, Mat(state.rho), pc.t0, pc.t1, opt);
    }
  }
  state.check_valid();
  return state;
}

}  // namespace qotto
