#pragma once

#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

#include "smaxwell/selftest.hpp"
#include "smaxwell/smaxwell.hpp"

namespace testing {

using namespace smaxwell;

inline double rel_diff(const FieldState& a, const FieldState& b) {
  return (a.values() - b.values()).norm() / std::max(1e-300, b.values().norm());
}

// Dense matrix exponential through the spectral decomposition of the Hermitian matrix i A,
// for A real skew-symmetric: exp(t A) = V diag(exp(-i t lambda)) V^*.
inline Eigen::MatrixXd skew_expm(const Eigen::MatrixXd& a, double t) {
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd phase =
      (std::complex<double>(0.0, -t) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  return (es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint()).real();
}

// exp(delta (M - sigma I)) from the symmetrized generator W^{1/2} M W^{-1/2}.
inline Eigen::MatrixXd semigroup_oracle(const DiscreteMaxwellOperator& op, double delta) {
  const Eigen::VectorXd w = energy_weights(op.coeffs(), op.grid()).cwiseSqrt();
  const Eigen::MatrixXd a = w.asDiagonal() * op.matrix() * w.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd e = skew_expm(0.5 * (a - a.transpose()), delta);
  return std::exp(-op.coeffs().sigma * delta) * w.cwiseInverse().asDiagonal() * e * w.asDiagonal();
}

}  // namespace testing
