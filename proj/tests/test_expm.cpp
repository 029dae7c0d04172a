#include "support.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace smaxwell;
using Eigen::MatrixXd;

namespace {

double rel(const MatrixXd& a, const MatrixXd& b) { return (a - b).norm() / b.norm(); }

MatrixXd random_matrix(int n, std::uint32_t tag) {
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = counter_normal(99, RandomStream::test, std::uint32_t(i), std::uint32_t(j), tag, 0u);
  return a;
}

}  // namespace

TEST_CASE("exponential of zero and of a diagonal") {
  CHECK(expm(MatrixXd::Zero(5, 5)) == MatrixXd::Identity(5, 5));
  const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(4, -3.0, 2.0);
  const MatrixXd e = expm(MatrixXd(d.asDiagonal()));
  for (int i = 0; i < 4; ++i) CHECK(e(i, i) == Catch::Approx(std::exp(d(i))).epsilon(1e-14));
  CHECK(e.norm() - e.diagonal().norm() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("plane rotations, including large angles that need squaring") {
  for (double theta : {0.1, 1.0, 7.5, 50.0}) {
    MatrixXd a(2, 2);
    a << 0.0, theta, -theta, 0.0;
    MatrixXd r(2, 2);
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    CHECK(rel(expm(a), r) < 1e-13);
  }
}

TEST_CASE("nilpotent Jordan block") {
  MatrixXd a = MatrixXd::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  MatrixXd e = MatrixXd::Identity(3, 3) + a;
  e(0, 2) = 0.5;
  CHECK(rel(expm(a), e) < 1e-15);
}

TEST_CASE("agrees with an eigendecomposition for skew-symmetric matrices of all scales") {
  const MatrixXd b = random_matrix(30, 1);
  const MatrixXd a = b - b.transpose();
  for (double t : {1e-3, 0.1, 1.0, 10.0}) CHECK(rel(expm(t * a), testing::skew_expm(a, t)) < 1e-11);
}

TEST_CASE("agrees with Eigen's MatrixFunctions module for general matrices") {
  for (double scale : {1e-4, 0.05, 0.5, 3.0, 40.0}) {
    const MatrixXd a = scale * random_matrix(12, 2) / 12.0;
    const MatrixXd expected = a.exp();
    CHECK(rel(expm(a), expected) < 1e-12);
  }
}

TEST_CASE("rejects non-square and non-finite input") {
  CHECK_THROWS_AS(expm(MatrixXd::Zero(2, 3)), ValidationError);
  MatrixXd a = MatrixXd::Zero(2, 2);
  a(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(expm(a), ValidationError);
}
