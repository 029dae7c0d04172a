#pragma once

// Staggered 2D TM grid on the unit square and the field state living on it.
//
// Layout of the flattened state (fixed, relied upon for reproducibility):
//   ez  interior nodes (i, j),        1 <= i, j <= nx-1,  offset (i-1)*(nx-1) + (j-1)
//   hx  edge midpoints (i, j+1/2),    0 <= i <= nx, 0 <= j <= nx-1,  offset n_ez + i*nx + j
//   hy  edge midpoints (i+1/2, j),    0 <= i <= nx-1, 0 <= j <= nx,  offset n_ez + n_hx + i*(nx+1) + j
// Boundary values of ez are identically zero (perfect conductor) and are not stored.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstring>
#include <string>
#include <utility>

#include "smaxwell/error.hpp"

namespace smaxwell {

enum class Component { ez, hx, hy };

inline const char* to_string(Component c) {
  switch (c) {
    case Component::ez: return "ez";
    case Component::hx: return "hx";
    case Component::hy: return "hy";
  }
  return "?";
}

class GridSpec {
 public:
  explicit GridSpec(int nx) : nx_(nx) {
    detail::require(nx >= 2, "grid: nx must be >= 2 (got " + std::to_string(nx) + ")");
  }

  int nx() const { return nx_; }
  /// Spacing is derived from nx and never stored independently.
  double dx() const { return 1.0 / nx_; }

  std::ptrdiff_t n_ez() const { return std::ptrdiff_t(nx_ - 1) * (nx_ - 1); }
  std::ptrdiff_t n_hx() const { return std::ptrdiff_t(nx_ + 1) * nx_; }
  std::ptrdiff_t n_hy() const { return std::ptrdiff_t(nx_) * (nx_ + 1); }
  std::ptrdiff_t dof() const { return n_ez() + n_hx() + n_hy(); }

  std::ptrdiff_t offset(Component c) const {
    switch (c) {
      case Component::ez: return 0;
      case Component::hx: return n_ez();
      case Component::hy: return n_ez() + n_hx();
    }
    return 0;
  }
  std::ptrdiff_t size(Component c) const {
    switch (c) {
      case Component::ez: return n_ez();
      case Component::hx: return n_hx();
      case Component::hy: return n_hy();
    }
    return 0;
  }

  std::ptrdiff_t ez_index(int i, int j) const { return std::ptrdiff_t(i - 1) * (nx_ - 1) + (j - 1); }
  std::ptrdiff_t hx_index(int i, int j) const { return n_ez() + std::ptrdiff_t(i) * nx_ + j; }
  std::ptrdiff_t hy_index(int i, int j) const { return n_ez() + n_hx() + std::ptrdiff_t(i) * (nx_ + 1) + j; }

  /// Physical coordinates of every stored degree of freedom, in flattened order.
  Eigen::Matrix<double, Eigen::Dynamic, 2> node_positions() const {
    Eigen::Matrix<double, Eigen::Dynamic, 2> pos(dof(), 2);
    const double h = dx();
    for (int i = 1; i < nx_; ++i)
      for (int j = 1; j < nx_; ++j) pos.row(ez_index(i, j)) << i * h, j * h;
    for (int i = 0; i <= nx_; ++i)
      for (int j = 0; j < nx_; ++j) pos.row(hx_index(i, j)) << i * h, (j + 0.5) * h;
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j <= nx_; ++j) pos.row(hy_index(i, j)) << (i + 0.5) * h, j * h;
    return pos;
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int nx_;
};

struct MaxwellCoefficients {
  double eps = 1.0;
  double mu = 1.0;
  double sigma = 0.0;

  void validate() const {
    detail::require(std::isfinite(eps) && eps > 0.0, "coefficients: eps > 0");
    detail::require(std::isfinite(mu) && mu > 0.0, "coefficients: mu > 0");
    detail::require(std::isfinite(sigma) && sigma >= 0.0, "coefficients: sigma >= 0");
  }
};

/// The discrete unknown u = (Ez, Hx, Hy) as one flat vector tied to its grid.
class FieldState {
 public:
  explicit FieldState(const GridSpec& grid) : grid_(grid), values_(Eigen::VectorXd::Zero(grid.dof())) {}
  FieldState(const GridSpec& grid, Eigen::VectorXd values) : grid_(grid), values_(std::move(values)) {
    detail::require(values_.size() == grid_.dof(), "field state: expected " + std::to_string(grid_.dof()) +
                                                       " values, got " + std::to_string(values_.size()));
  }

  const GridSpec& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  std::ptrdiff_t size() const { return values_.size(); }

  auto component(Component c) const { return values_.segment(grid_.offset(c), grid_.size(c)); }
  auto component(Component c) { return values_.segment(grid_.offset(c), grid_.size(c)); }
  auto ez() const { return component(Component::ez); }
  auto hx() const { return component(Component::hx); }
  auto hy() const { return component(Component::hy); }
  auto ez() { return component(Component::ez); }
  auto hx() { return component(Component::hx); }
  auto hy() { return component(Component::hy); }

  bool all_finite() const { return values_.allFinite(); }

  void check_conforms(const GridSpec& grid) const {
    detail::require(grid_ == grid && values_.size() == grid.dof(),
                    "field state: grid mismatch (state nx=" + std::to_string(grid_.nx()) +
                        ", expected nx=" + std::to_string(grid.nx()) + ")");
  }

  FieldState& operator+=(const FieldState& o) {
    o.check_conforms(grid_);
    values_ += o.values_;
    return *this;
  }
  FieldState& operator-=(const FieldState& o) {
    o.check_conforms(grid_);
    values_ -= o.values_;
    return *this;
  }
  FieldState& operator*=(double a) {
    values_ *= a;
    return *this;
  }
  friend FieldState operator+(FieldState a, const FieldState& b) { return a += b; }
  friend FieldState operator-(FieldState a, const FieldState& b) { return a -= b; }
  friend FieldState operator*(double a, FieldState b) { return b *= a; }

  /// Bitwise equality of the stored values.
  friend bool operator==(const FieldState& a, const FieldState& b) {
    return a.grid_ == b.grid_ && a.values_.size() == b.values_.size() &&
           (a.values_.size() == 0 || std::memcmp(a.values_.data(), b.values_.data(),
                                                 sizeof(double) * std::size_t(a.values_.size())) == 0);
  }

 private:
  GridSpec grid_;
  Eigen::VectorXd values_;
};

/// Per-dof quadrature weights of the energy inner product: eps*dx^2 on ez nodes, mu*dx^2 on h nodes.
inline Eigen::VectorXd energy_weights(const MaxwellCoefficients& coeffs, const GridSpec& grid) {
  const double area = grid.dx() * grid.dx();
  Eigen::VectorXd w(grid.dof());
  w.segment(0, grid.n_ez()).setConstant(coeffs.eps * area);
  w.segment(grid.n_ez(), grid.n_hx() + grid.n_hy()).setConstant(coeffs.mu * area);
  return w;
}

/// Discrete energy inner product  int eps E.E' + mu H.H' dx, rectangle rule on each staggered set.
inline double inner_product(const MaxwellCoefficients& coeffs, const GridSpec& grid, const FieldState& u,
                            const FieldState& v) {
  u.check_conforms(grid);
  v.check_conforms(grid);
  const double area = grid.dx() * grid.dx();
  const double e = u.ez().dot(v.ez());
  const double h = u.hx().dot(v.hx()) + u.hy().dot(v.hy());
  return area * (coeffs.eps * e + coeffs.mu * h);
}

inline double h_norm(const MaxwellCoefficients& coeffs, const GridSpec& grid, const FieldState& u) {
  return std::sqrt(inner_product(coeffs, grid, u, u));
}

}  // namespace smaxwell
