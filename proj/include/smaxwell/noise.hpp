#pragma once

// Truncated Q-Wiener process W(t) = sum_n sqrt(lambda_n) beta_n(t) e_n on the unit square with
//   e_{m,n}(x, y) = 2 sin(m pi x) sin(n pi y),   lambda_{m,n} = (m^2 + n^2)^{-r},   1 <= m, n <= n_modes.
//
// Brownian increments live on a uniform lattice of finest steps delta_ref. Each increment is a
// pure function of (seed, sample_index, mode, step), so paths are reproducible independent of
// evaluation order. Increments over longer windows are always formed by summing the finest
// increments left to right, which makes every propagator see the same W regardless of its step.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "smaxwell/error.hpp"
#include "smaxwell/grid.hpp"
#include "smaxwell/philox.hpp"

namespace smaxwell {

struct NoiseMode {
  int m;
  int n;
  double lambda;
};

class NoiseBasis {
 public:
  using Table = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  NoiseBasis(const GridSpec& grid, int n_modes, double decay_r) : grid_(grid), decay_r_(decay_r) {
    detail::require(n_modes >= 0, "noise: n_modes must be >= 0");
    detail::require(std::isfinite(decay_r) && decay_r > 1.0, "noise: decay_r must be > 1 (trace-class Q)");
    for (int m = 1; m <= n_modes; ++m)
      for (int n = 1; n <= n_modes; ++n) modes_.push_back({m, n, std::pow(double(m * m + n * n), -decay_r)});
    std::stable_sort(modes_.begin(), modes_.end(),
                     [](const NoiseMode& a, const NoiseMode& b) { return a.lambda > b.lambda; });

    const auto pos = grid.node_positions();
    table_.resize(grid.dof(), std::ptrdiff_t(modes_.size()));
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      const auto& md = modes_[k];
      const double sl = std::sqrt(md.lambda);
      sqrt_lambda_.push_back(sl);
      for (std::ptrdiff_t p = 0; p < grid.dof(); ++p)
        table_(p, std::ptrdiff_t(k)) = 2.0 * std::sin(md.m * std::numbers::pi * pos(p, 0)) *
                                       std::sin(md.n * std::numbers::pi * pos(p, 1));
    }
  }

  const GridSpec& grid() const { return grid_; }
  double decay_r() const { return decay_r_; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<NoiseMode>& modes() const { return modes_; }
  const std::vector<double>& sqrt_lambda() const { return sqrt_lambda_; }
  /// e_k evaluated at every degree of freedom's own node, one column per mode.
  const Table& table() const { return table_; }

  /// Tr(Q) of the truncated covariance.
  double trace() const {
    double t = 0.0;
    for (const auto& md : modes_) t += md.lambda;
    return t;
  }

 private:
  GridSpec grid_;
  double decay_r_;
  std::vector<NoiseMode> modes_;
  std::vector<double> sqrt_lambda_;
  Table table_;
};

inline NoiseBasis build_basis(const GridSpec& grid, int n_modes, double decay_r) {
  return NoiseBasis(grid, n_modes, decay_r);
}

/// Integer count of `step` in `span`, or a ValidationError when `span` is not a whole multiple.
inline std::int64_t lattice_count(double span, double step, const std::string& what) {
  detail::require(std::isfinite(span) && std::isfinite(step) && step > 0.0, what + ": invalid step");
  const double ratio = span / step;
  const double rounded = std::round(ratio);
  detail::require(std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, std::abs(ratio)),
                  what + ": " + std::to_string(span) + " is not aligned to the step " + std::to_string(step));
  return std::int64_t(rounded);
}

/// Half-open window [begin, end) of finest lattice steps.
struct LatticeWindow {
  std::int64_t begin;
  std::int64_t end;
  std::int64_t length() const { return end - begin; }
};

/// Brownian increments of every mode over every finest step of [0, t_end].
class WienerPath {
 public:
  WienerPath(const NoiseBasis& basis, std::uint64_t seed, std::uint32_t sample_index, double t_end,
             double delta_ref)
      : seed_(seed), sample_index_(sample_index), t_end_(t_end), delta_ref_(delta_ref), n_modes_(basis.size()) {
    detail::require(std::isfinite(t_end) && t_end > 0.0, "wiener path: t_end must be > 0");
    detail::require(std::isfinite(delta_ref) && delta_ref > 0.0, "wiener path: delta_ref must be > 0");
    steps_ = lattice_count(t_end, delta_ref, "wiener path: t_end / delta_ref");
    detail::require(steps_ >= 1 && steps_ < (std::int64_t(1) << 48), "wiener path: step count out of range");
    increments_.resize(std::size_t(steps_) * n_modes_);
    const double scale = std::sqrt(delta_ref);
    for (std::int64_t s = 0; s < steps_; ++s)
      for (std::size_t k = 0; k < n_modes_; ++k)
        increments_[std::size_t(s) * n_modes_ + k] =
            scale * counter_normal(seed, RandomStream::wiener, std::uint32_t(s), std::uint32_t(s >> 32),
                                   std::uint32_t(k), sample_index);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint32_t sample_index() const { return sample_index_; }
  double t_end() const { return t_end_; }
  double delta_ref() const { return delta_ref_; }
  std::int64_t steps() const { return steps_; }
  std::size_t n_modes() const { return n_modes_; }

  /// Increment of beta_mode over finest step `step`.
  double increment(std::size_t mode, std::int64_t step) const {
    return increments_[std::size_t(step) * n_modes_ + mode];
  }
  const double* step_increments(std::int64_t step) const { return increments_.data() + std::size_t(step) * n_modes_; }

  /// beta_mode(window end) - beta_mode(window begin), summed left to right over finest steps.
  double window_increment(std::size_t mode, LatticeWindow w) const {
    check_window(w);
    double sum = 0.0;
    for (std::int64_t s = w.begin; s < w.end; ++s) sum += increment(mode, s);
    return sum;
  }

  std::int64_t index_of(double t) const {
    const auto i = lattice_count(t, delta_ref_, "wiener path: time");
    detail::require(i >= 0 && i <= steps_, "wiener path: time outside [0, t_end]");
    return i;
  }
  LatticeWindow window(double t0, double t1) const {
    LatticeWindow w{index_of(t0), index_of(t1)};
    check_window(w);
    return w;
  }

  /// Memo of assembled window fields. Entries are the exact left-to-right sums, so a hit is
  /// bitwise what a fresh assembly would give. Copies of a path share the memo.
  struct FieldCache {
    using Key = std::tuple<int, std::size_t, double, std::int64_t, std::int64_t>;
    std::shared_mutex mutex;
    std::map<Key, std::shared_ptr<const Eigen::VectorXd>> fields;
    std::size_t doubles = 0;
  };
  static constexpr std::size_t field_cache_budget = std::size_t(1) << 24;

  FieldCache& field_cache() const { return *cache_; }
  void clear_field_cache() const {
    std::unique_lock lock(cache_->mutex);
    cache_->fields.clear();
    cache_->doubles = 0;
  }

  void check_window(LatticeWindow w) const {
    detail::require(w.begin >= 0 && w.end <= steps_ && w.begin < w.end,
                    "wiener path: window [" + std::to_string(w.begin) + ", " + std::to_string(w.end) +
                        ") outside lattice of " + std::to_string(steps_) + " steps");
  }

 private:
  std::uint64_t seed_;
  std::uint32_t sample_index_;
  double t_end_;
  double delta_ref_;
  std::size_t n_modes_;
  std::int64_t steps_ = 0;
  std::vector<double> increments_;
  std::shared_ptr<FieldCache> cache_ = std::make_shared<FieldCache>();
};

inline WienerPath sample_path(const NoiseBasis& basis, std::uint64_t seed, std::uint32_t sample_index, double t_end,
                              double delta_ref) {
  return WienerPath(basis, seed, sample_index, t_end, delta_ref);
}

/// dW(x) = sum_k sqrt(lambda_k) dbeta_k e_k(x) over a single finest step, at every dof.
inline void add_step_field(const NoiseBasis& basis, const WienerPath& path, std::int64_t step, Eigen::VectorXd& out) {
  const std::size_t nm = basis.size();
  if (nm == 0) return;
  Eigen::VectorXd coef(std::ptrdiff_t(nm), 1);
  const double* db = path.step_increments(step);
  for (std::size_t k = 0; k < nm; ++k) coef(std::ptrdiff_t(k)) = basis.sqrt_lambda()[k] * db[k];
  out.noalias() += basis.table() * coef;
}

/// Increment field over a lattice window for all three components, as the left-to-right
/// sum of the single-step fields.
inline FieldState increment_state(const NoiseBasis& basis, const WienerPath& path, LatticeWindow w) {
  path.check_window(w);
  detail::require(path.n_modes() == basis.size(), "increment field: path and basis mode counts differ");
  const GridSpec& grid = basis.grid();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(grid.dof());
  if (basis.size() == 0) return FieldState(grid, std::move(acc));
  auto& cache = path.field_cache();
  const WienerPath::FieldCache::Key key{grid.nx(), basis.size(), basis.decay_r(), w.begin, w.end};
  {
    std::shared_lock lock(cache.mutex);
    if (const auto it = cache.fields.find(key); it != cache.fields.end()) return FieldState(grid, *it->second);
  }
  Eigen::VectorXd step_field(grid.dof());
  for (std::int64_t s = w.begin; s < w.end; ++s) {
    step_field.setZero();
    add_step_field(basis, path, s, step_field);
    if (s == w.begin) acc = step_field;
    else acc += step_field;
  }
  {
    std::unique_lock lock(cache.mutex);
    if (cache.doubles + std::size_t(acc.size()) <= WienerPath::field_cache_budget &&
        cache.fields.emplace(key, std::make_shared<const Eigen::VectorXd>(acc)).second)
      cache.doubles += std::size_t(acc.size());
  }
  return FieldState(grid, std::move(acc));
}

inline FieldState increment_state(const NoiseBasis& basis, const WienerPath& path, double t0, double t1) {
  return increment_state(basis, path, path.window(t0, t1));
}

/// Increment field of a single component on that component's staggered nodes.
inline Eigen::VectorXd increment_field(const NoiseBasis& basis, const WienerPath& path, double t0, double t1,
                                       Component component) {
  const auto full = increment_state(basis, path, t0, t1);
  return full.component(component);
}

}  // namespace smaxwell
