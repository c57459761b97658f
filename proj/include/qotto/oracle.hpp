#pragma once

#include <Eigen/Dense>

#include "qotto/protocols.hpp"
#include "qotto/state.hpp"
#include "qotto/strokes.hpp"

namespace qotto {

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated Fock space with fixed quadrature matrices.  Frequency changes
// re-express H(omega), L(omega), C(omega) through the same Q and P, so no
// basis-change bookkeeping is needed along a protocol.
class FockSpace {
 public:
  explicit FockSpace(int dim = 64, double omega_ref = 1.0);

  int dim() const { return dim_; }
  double omega_ref() const { return omega_ref_; }

  const Eigen::MatrixXcd& q() const { return q_; }
  const Eigen::MatrixXcd& p() const { return p_; }
  const Eigen::MatrixXcd& q2() const { return q2_; }
  const Eigen::MatrixXcd& p2() const { return p2_; }
  const Eigen::MatrixXcd& qp_sym() const { return d_; }  // (QP + PQ)/2

  Eigen::MatrixXcd hamiltonian(double omega) const;
  Eigen::MatrixXcd lagrangian(double omega) const;
  Eigen::MatrixXcd correlation(double omega) const;
  Eigen::MatrixXcd lowering(double omega) const;  // a_omega

 private:
  int dim_;
  double omega_ref_;
  Eigen::MatrixXcd q_, p_, q2_, p2_, d_;
};

struct DensityMatrix {
  Eigen::MatrixXcd rho;

  double trace_error() const;       // |tr rho - 1|
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // population of the top 10% Fock levels; > 1e-8 marks a comparison
  // non-authoritative
  double tail_population() const;
  void check_valid() const;  // throws TruncationError on gross violations
};

DensityMatrix thermal_state(const FockSpace& space, double omega, double T);

OscillatorState expectations(const FockSpace& space, const DensityMatrix& rho,
                             double omega);
double energy_variance(const FockSpace& space, const DensityMatrix& rho,
                       double omega);
double purity(const DensityMatrix& rho);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double vn_entropy(const DensityMatrix& rho);

// Lindblad thermalisation at fixed omega, with optional squeezing (from the
// bath spec) and control-noise dissipators.
DensityMatrix evolve_lindblad(const FockSpace& space, const DensityMatrix& rho0,
                              double omega, const BathSpec& bath,
                              const NoiseSpec& noise, double tau,
                              double rel_tol = 1e-10);

// Unitary (or noise-augmented) propagation under a frequency protocol.
DensityMatrix evolve_protocol(const FockSpace& space, const DensityMatrix& rho0,
                              const Protocol& protocol, const NoiseSpec& noise,
                              double rel_tol = 1e-10);

}  // namespace qotto
