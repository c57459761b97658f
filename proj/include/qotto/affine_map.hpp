#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "qotto/state.hpp"

namespace qotto {

// Affine map on (<H>, <L>, <C>, 1): the representation of every stroke and
// cycle propagator.  The last matrix row is pinned to (0, 0, 0, 1).
struct AffineMap4 {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();
  double omega_in = 1.0;
  double omega_out = 1.0;
  double duration = 0.0;

  static AffineMap4 identity(double omega) {
    return {Eigen::Matrix4d::Identity(), omega, omega, 0.0};
  }

  Eigen::Matrix3d homogeneous() const { return matrix.topLeftCorner<3, 3>(); }
  Eigen::Vector3d offset() const { return matrix.topRightCorner<3, 1>(); }

  OscillatorState apply(const OscillatorState& s) const {
    if (std::abs(s.frequency - omega_in) > 1e-9 * omega_in)
      throw std::invalid_argument(
          "AffineMap4::apply: state frequency does not match map input");
    const Eigen::Vector4d v =
        matrix * Eigen::Vector4d(s.energy, s.lagrangian, s.correlation, 1.0);
    return {v[0], v[1], v[2], omega_out};
  }
};

// later ∘ first (apply `first`, then `later`).
inline AffineMap4 compose(const AffineMap4& later, const AffineMap4& first) {
  if (std::abs(later.omega_in - first.omega_out) >
      1e-9 * std::max(later.omega_in, first.omega_out))
    throw std::invalid_argument("compose: frequency chain mismatch");
  AffineMap4 r;
  r.matrix = later.matrix * first.matrix;
  r.matrix.row(3) << 0, 0, 0, 1;
  r.omega_in = first.omega_in;
  r.omega_out = later.omega_out;
  r.duration = first.duration + later.duration;
  return r;
}

inline double spectral_radius(const Eigen::Matrix3d& m) {
  return Eigen::EigenSolver<Eigen::Matrix3d>(m, false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace qotto
