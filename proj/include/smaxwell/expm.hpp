#pragma once

// Dense matrix exponential by scaling and squaring with diagonal Pade
// approximants of degree 3, 5, 7, 9 or 13 (Higham, SIAM J. Matrix Anal. Appl. 26, 2005).

#include <Eigen/Dense>

#include <array>
#include <cmath>

#include "smaxwell/error.hpp"

namespace smaxwell {

namespace detail {

inline double one_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

// U and V of the degree-m Pade approximant r_m(A) = (V - U)^{-1} (V + U), m in {3, 5, 7, 9}.
template <std::size_t N>
void pade_low(const Eigen::MatrixXd& a, const Eigen::MatrixXd& a2, const std::array<double, N>& b,
              Eigen::MatrixXd& u, Eigen::MatrixXd& v) {
  const auto n = a.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd odd = b[1] * id;
  Eigen::MatrixXd even = b[0] * id;
  Eigen::MatrixXd power = id;
  for (std::size_t k = 2; k + 1 < N + 1; k += 2) {
    power = power * a2;
    even.noalias() += b[k] * power;
    if (k + 1 < N) odd.noalias() += b[k + 1] * power;
  }
  u.noalias() = a * odd;
  v = even;
}

}  // namespace detail

/// exp(A) for a dense square matrix.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  detail::require(a.rows() == a.cols(), "expm: matrix must be square");
  detail::require(a.allFinite(), "expm: matrix has non-finite entries");
  const auto n = a.rows();
  if (n == 0) return a;

  static constexpr std::array<double, 4> b3{120., 60., 12., 1.};
  static constexpr std::array<double, 6> b5{30240., 15120., 3360., 420., 30., 1.};
  static constexpr std::array<double, 8> b7{17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
  static constexpr std::array<double, 10> b9{17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                             2162160.,     110880.,      3960.,        90.,        1.};
  static constexpr std::array<double, 14> b13{64764752532480000., 32382376266240000., 7771770303897600.,
                                              1187353796428800.,  129060195264000.,   10559470521600.,
                                              670442572800.,      33522128640.,       1323241920.,
                                              40840800.,          960960.,            16380.,
                                              182.,               1.};
  static constexpr std::array<double, 4> theta{1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                                               2.097847961257068e0};
  constexpr double theta13 = 5.371920351148152;

  const double norm = detail::one_norm(a);
  Eigen::MatrixXd u, v;
  int squarings = 0;

  if (norm <= theta[3]) {
    const Eigen::MatrixXd a2 = a * a;
    if (norm <= theta[0]) detail::pade_low(a, a2, b3, u, v);
    else if (norm <= theta[1]) detail::pade_low(a, a2, b5, u, v);
    else if (norm <= theta[2]) detail::pade_low(a, a2, b7, u, v);
    else detail::pade_low(a, a2, b9, u, v);
  } else {
    squarings = std::max(0, int(std::ceil(std::log2(norm / theta13))));
    const Eigen::MatrixXd as = a * std::ldexp(1.0, -squarings);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd a2 = as * as;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a4 * a2;
    Eigen::MatrixXd inner = b13[13] * a6 + b13[11] * a4 + b13[9] * a2;
    Eigen::MatrixXd odd = a6 * inner;
    odd += b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * id;
    u.noalias() = as * odd;
    inner = b13[12] * a6 + b13[10] * a4 + b13[8] * a2;
    v.noalias() = a6 * inner;
    v += b13[6] * a6 + b13[4] * a4 + b13[2] * a2 + b13[0] * id;
  }

  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace smaxwell
