#pragma once

// Yee-staggered discretization of the damped Maxwell operator
//
//   M (E, H) = ( eps^{-1} curl H, -mu^{-1} curl E )
//
// restricted to TM polarization, E = (0, 0, Ez), H = (Hx, Hy, 0):
//
//   eps dEz/dt =  dHy/dx - dHx/dy
//   mu  dHx/dt = -dEz/dy
//   mu  dHy/dt =  dEz/dx
//
// Centered differences on the staggered grid make M skew-adjoint with respect to
// the diagonal energy weights of energy_weights().

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "smaxwell/error.hpp"
#include "smaxwell/expm.hpp"
#include "smaxwell/grid.hpp"

namespace smaxwell {

namespace detail {

inline Eigen::MatrixXd assemble_maxwell(const GridSpec& grid, const MaxwellCoefficients& c) {
  const int nx = grid.nx();
  const double ie = 1.0 / (c.eps * grid.dx());
  const double im = 1.0 / (c.mu * grid.dx());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(grid.dof(), grid.dof());
  auto interior = [nx](int i, int j) { return i >= 1 && i <= nx - 1 && j >= 1 && j <= nx - 1; };

  for (int i = 1; i < nx; ++i) {
    for (int j = 1; j < nx; ++j) {
      const auto r = grid.ez_index(i, j);
      m(r, grid.hy_index(i, j)) += ie;
      m(r, grid.hy_index(i - 1, j)) -= ie;
      m(r, grid.hx_index(i, j)) -= ie;
      m(r, grid.hx_index(i, j - 1)) += ie;
    }
  }
  // Hx at (i, j+1/2): -(Ez(i, j+1) - Ez(i, j)) / dx, boundary Ez = 0.
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j < nx; ++j) {
      const auto r = grid.hx_index(i, j);
      if (interior(i, j + 1)) m(r, grid.ez_index(i, j + 1)) -= im;
      if (interior(i, j)) m(r, grid.ez_index(i, j)) += im;
    }
  }
  // Hy at (i+1/2, j): (Ez(i+1, j) - Ez(i, j)) / dx.
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j <= nx; ++j) {
      const auto r = grid.hy_index(i, j);
      if (interior(i + 1, j)) m(r, grid.ez_index(i + 1, j)) += im;
      if (interior(i, j)) m(r, grid.ez_index(i, j)) -= im;
    }
  }
  return m;
}

}  // namespace detail

/// Discrete M with its damping coefficient and a cache of semigroup matrices
/// exp(delta (M - sigma I)), one per step size.
///
/// Immutable after construction apart from the cache. Cache lookups take a shared
/// lock; a miss computes the exponential outside any lock and inserts it if no
/// other thread got there first. The computation is deterministic, so racing
/// threads produce identical matrices.
class DiscreteMaxwellOperator {
 public:
  using Matrix = Eigen::MatrixXd;

  DiscreteMaxwellOperator(const GridSpec& grid, const MaxwellCoefficients& coeffs)
      : grid_(grid), coeffs_((coeffs.validate(), coeffs)), m_(detail::assemble_maxwell(grid, coeffs)) {}

  DiscreteMaxwellOperator(const DiscreteMaxwellOperator&) = delete;
  DiscreteMaxwellOperator& operator=(const DiscreteMaxwellOperator&) = delete;

  const GridSpec& grid() const { return grid_; }
  const MaxwellCoefficients& coeffs() const { return coeffs_; }
  const Matrix& matrix() const { return m_; }

  /// M u (no damping).
  FieldState apply_maxwell(const FieldState& u) const {
    u.check_conforms(grid_);
    Eigen::VectorXd out(grid_.dof());
    out.noalias() = m_ * u.values();
    return FieldState(grid_, std::move(out));
  }

  /// (M - sigma I) u, evaluated as matrix() * u - sigma * u.
  FieldState apply_curl_damped(const FieldState& u) const {
    u.check_conforms(grid_);
    Eigen::VectorXd out(grid_.dof());
    out.noalias() = m_ * u.values();
    out -= coeffs_.sigma * u.values();
    return FieldState(grid_, std::move(out));
  }

  /// exp(delta (M - sigma I)), computed as exp(-sigma delta) exp(delta M) and cached by delta.
  std::shared_ptr<const Matrix> semigroup(double delta) const {
    detail::require(std::isfinite(delta) && delta >= 0.0, "semigroup: step must be finite and >= 0");
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = cache_.find(delta); it != cache_.end()) return it->second;
    }
    auto computed = std::make_shared<const Matrix>(std::exp(-coeffs_.sigma * delta) * expm(delta * m_));
    std::unique_lock lock(cache_mutex_);
    return cache_.try_emplace(delta, std::move(computed)).first->second;
  }

  FieldState semigroup_apply(double delta, const FieldState& u) const {
    u.check_conforms(grid_);
    detail::require(u.all_finite(), "semigroup_apply: non-finite input state");
    if (delta == 0.0) return u;
    const auto s = semigroup(delta);
    Eigen::VectorXd out(grid_.dof());
    out.noalias() = *s * u.values();
    return FieldState(grid_, std::move(out));
  }

  /// Columnwise S(delta) on a dof x panel_width block, in place. Each column's result depends
  /// only on that column, not on its position or on the other columns.
  void semigroup_apply_panel(double delta, Eigen::MatrixXd& panel) const {
    detail::require(panel.rows() == grid_.dof() && panel.cols() == panel_width,
                    "semigroup_apply_panel: panel must be dof x " + std::to_string(panel_width));
    if (!panel.allFinite()) throw ComputationError("semigroup_apply_panel: non-finite input");
    if (delta == 0.0) return;
    const auto s = semigroup(delta);
    Eigen::MatrixXd out(panel.rows(), panel.cols());
    out.noalias() = *s * panel;
    panel = std::move(out);
  }

  static constexpr std::ptrdiff_t panel_width = 16;

  std::size_t cached_steps() const {
    std::shared_lock lock(cache_mutex_);
    return cache_.size();
  }

 private:
  GridSpec grid_;
  MaxwellCoefficients coeffs_;
  Matrix m_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<const Matrix>> cache_;
};

inline std::unique_ptr<DiscreteMaxwellOperator> build_operator(const GridSpec& grid,
                                                               const MaxwellCoefficients& coeffs) {
  return std::make_unique<DiscreteMaxwellOperator>(grid, coeffs);
}

}  // namespace smaxwell
