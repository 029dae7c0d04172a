#pragma once

// Parareal iteration
//
//   u_n^(0)   = G(u_{n-1}^(0))
//   u_n^(k+1) = G(u_{n-1}^(k+1)) + F(u_{n-1}^(k)) - G(u_{n-1}^(k)),    u_0^(k) = u_0,
//
// with the fine evaluations F(u_{n-1}^(k)) of a sweep computed in parallel over n and the
// prediction-correction pass run sequentially. G(u_{n-1}^(k)) is kept from the previous
// sweep instead of being recomputed.
//
// Errors are measured against the reference u_n^ref = F(u_{n-1}^ref), the sequential
// fine solution driven by the same noise path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smaxwell/error.hpp"
#include "smaxwell/parallel.hpp"
#include "smaxwell/propagators.hpp"

namespace smaxwell {

struct PararealConfig {
  TimeGridSpec time;
  int k_max = 5;
  /// Early stop once sup_n ||u_n^(k) - u_n^(k-1)||_H <= tol; 0 disables.
  double tol = 0.0;
  FineKind fine_kind = FineKind::exponential;
  int threads = 1;
  /// Keep every iterate in PararealRun::iterates (memory ~ (k_max+1) (N+1) dof doubles).
  bool store_iterates = true;

  void validate() const {
    time.validate();
    detail::require(k_max >= 0, "parareal: k_max >= 0");
    detail::require(tol >= 0.0, "parareal: tol >= 0");
    detail::require(threads >= 1, "parareal: threads >= 1");
  }
};

/// One parareal iterate together with the coarse values G(states[n-1]), n = 1..N, that the
/// next sweep subtracts. For k >= 1, fine[n-1] is the F(u_{n-1}^(k-1)) the iterate was built from.
struct Iterate {
  std::vector<FieldState> states;
  std::vector<FieldState> coarse;
  std::vector<FieldState> fine;
};

struct SweepTimings {
  double fine_seconds = 0.0;
  double correction_seconds = 0.0;
  std::vector<double> fine_interval_seconds;
};

struct PararealTimings {
  double reference_seconds = 0.0;
  double init_seconds = 0.0;
  std::vector<SweepTimings> sweeps;

  double parareal_seconds() const {
    double t = init_seconds;
    for (const auto& s : sweeps) t += s.fine_seconds + s.correction_seconds;
    return t;
  }

  /// Wall-clock a machine with `n_proc` workers would need: sequential coarse work plus, per
  /// sweep, the slowest of n_proc contiguous blocks of measured fine-interval times.
  double critical_path_seconds(int n_proc) const {
    double t = init_seconds;
    for (const auto& s : sweeps) {
      const std::size_t n = s.fine_interval_seconds.size();
      const std::size_t p = std::size_t(std::max(n_proc, 1));
      const std::size_t block = (n + p - 1) / p;
      double slowest = 0.0;
      for (std::size_t b = 0; b * block < n; ++b) {
        double sum = 0.0;
        for (std::size_t i = b * block; i < std::min(n, (b + 1) * block); ++i) sum += s.fine_interval_seconds[i];
        slowest = std::max(slowest, sum);
      }
      t += slowest + s.correction_seconds;
    }
    return t;
  }
};

struct PararealRun {
  /// iterates[k][n] = u_n^(k); empty unless PararealConfig::store_iterates.
  std::vector<std::vector<FieldState>> iterates;
  std::vector<FieldState> final_iterate;
  std::vector<FieldState> reference;
  /// errors[k][n] = ||u_n^(k) - u_n^ref||_H^2.
  std::vector<std::vector<double>> errors;
  /// increments[k] = sup_n ||u_n^(k) - u_n^(k-1)||_H for k >= 1; increments[0] = +inf.
  std::vector<double> increments;
  int k_stop = 0;
  PararealTimings timings;

  double sup_error(int k) const {
    const auto& e = errors.at(std::size_t(k));
    return std::sqrt(*std::max_element(e.begin(), e.end()));
  }
};

namespace detail {

using Clock = std::chrono::steady_clock;
inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::size_t interval_count(const PararealConfig& cfg) { return std::size_t(cfg.time.n_coarse()); }

template <class Step>
auto with_interval(std::int64_t n, Step&& step) {
  try {
    return step();
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ComputationError("interval " + std::to_string(n) + ": " + e.what());
  }
}

}  // namespace detail

/// Sequential coarse sweep u_n^(0) = G(u_{n-1}^(0)).
inline Iterate initialize(const Model& model, const PararealConfig& cfg, const WienerPath& path,
                          const FieldState& u0) {
  const std::size_t big_n = detail::interval_count(cfg);
  Iterate it;
  it.states.reserve(big_n + 1);
  it.states.push_back(u0);
  for (std::size_t n = 1; n <= big_n; ++n)
    it.states.push_back(detail::with_interval(std::int64_t(n), [&] {
      return coarse_G(model, cfg.time, path, it.states[n - 1], std::int64_t(n));
    }));
  it.coarse.assign(it.states.begin() + 1, it.states.end());
  return it;
}

/// R(u) = F(u) - G(u) on interval n.
inline FieldState residual(const Model& model, const PararealConfig& cfg, const WienerPath& path,
                           const FieldState& u, std::int64_t n) {
  FieldState r = fine_F(model, cfg.time, cfg.fine_kind, path, u, n);
  r -= coarse_G(model, cfg.time, path, u, n);
  return r;
}

/// One parareal iteration: parallel fine evaluations, then the sequential correction.
///
/// Fine evaluations are grouped into fixed panels of consecutive intervals (see fine_F_panel);
/// panels are distributed over threads, so the grouping and hence every bit of the result is
/// independent of the thread count.
inline Iterate sweep(const Model& model, const PararealConfig& cfg, const WienerPath& path, const Iterate& prev,
                     SweepTimings* timings = nullptr) {
  const std::size_t big_n = detail::interval_count(cfg);
  detail::require(prev.states.size() == big_n + 1 && prev.coarse.size() == big_n,
                  "parareal sweep: previous iterate is incomplete");

  auto t0 = detail::Clock::now();
  const auto width = std::size_t(DiscreteMaxwellOperator::panel_width);
  std::vector<FieldState> fine(big_n, FieldState(model.op.grid()));
  std::vector<double> interval_seconds(big_n, 0.0);
  parallel_for((big_n + width - 1) / width, cfg.threads, [&](std::size_t p) {
    const auto ti = detail::Clock::now();
    const std::size_t first = p * width;
    const std::size_t count = std::min(width, big_n - first);
    const auto n = std::int64_t(first + 1);
    auto f = detail::with_interval(n, [&] {
      return fine_F_panel(model, cfg.time, cfg.fine_kind, path,
                          std::span<const FieldState>(prev.states.data() + first, count), n);
    });
    const double per_interval = detail::seconds_since(ti) / double(count);
    for (std::size_t c = 0; c < count; ++c) {
      fine[first + c] = std::move(f[c]);
      interval_seconds[first + c] = per_interval;
    }
  });
  const double fine_seconds = detail::seconds_since(t0);

  t0 = detail::Clock::now();
  Iterate next;
  next.states.reserve(big_n + 1);
  next.coarse.reserve(big_n);
  next.states.push_back(prev.states.front());
  for (std::size_t n = 1; n <= big_n; ++n) {
    FieldState g = detail::with_interval(std::int64_t(n), [&] {
      return coarse_G(model, cfg.time, path, next.states[n - 1], std::int64_t(n));
    });
    next.states.push_back(g + (fine[n - 1] - prev.coarse[n - 1]));
    next.coarse.push_back(std::move(g));
  }
  next.fine = std::move(fine);
  if (timings) {
    timings->fine_seconds = fine_seconds;
    timings->correction_seconds = detail::seconds_since(t0);
    timings->fine_interval_seconds = std::move(interval_seconds);
  }
  return next;
}

/// Sequential fine solution u_n^ref = F(u_{n-1}^ref).
inline std::vector<FieldState> reference_solution(const Model& model, const PararealConfig& cfg,
                                                  const WienerPath& path, const FieldState& u0) {
  const std::size_t big_n = detail::interval_count(cfg);
  std::vector<FieldState> ref;
  ref.reserve(big_n + 1);
  ref.push_back(u0);
  for (std::size_t n = 1; n <= big_n; ++n)
    ref.push_back(detail::with_interval(std::int64_t(n), [&] {
      return fine_F(model, cfg.time, cfg.fine_kind, path, ref[n - 1], std::int64_t(n));
    }));
  return ref;
}

namespace detail {

inline std::vector<double> squared_errors(const Model& model, const std::vector<FieldState>& states,
                                          const std::vector<FieldState>& ref) {
  std::vector<double> e(states.size());
  for (std::size_t n = 0; n < states.size(); ++n) {
    const FieldState d = states[n] - ref[n];
    e[n] = inner_product(model.op.coeffs(), model.op.grid(), d, d);
  }
  return e;
}

inline double sup_distance(const Model& model, const std::vector<FieldState>& a, const std::vector<FieldState>& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s = std::max(s, h_norm(model.op.coeffs(), model.op.grid(), a[n] - b[n]));
  return s;
}

}  // namespace detail

/// Full parareal run with error tracking against the sequential fine reference.
inline PararealRun run(const Model& model, const PararealConfig& cfg, const WienerPath& path, const FieldState& u0) {
  cfg.validate();
  u0.check_conforms(model.op.grid());
  detail::require(u0.all_finite(), "parareal: non-finite initial state");
  detail::require(std::abs(path.t_end() - cfg.time.t_end) <= 1e-12 * cfg.time.t_end,
                  "parareal: noise path horizon differs from t_end");

  PararealRun out;
  auto t0 = detail::Clock::now();
  out.reference = reference_solution(model, cfg, path, u0);
  out.timings.reference_seconds = detail::seconds_since(t0);
  // The timed iteration assembles its own noise fields rather than reusing the reference's.
  path.clear_field_cache();

  t0 = detail::Clock::now();
  Iterate current = initialize(model, cfg, path, u0);
  out.timings.init_seconds = detail::seconds_since(t0);

  out.errors.push_back(detail::squared_errors(model, current.states, out.reference));
  out.increments.push_back(std::numeric_limits<double>::infinity());
  if (cfg.store_iterates) out.iterates.push_back(current.states);

  int k = 0;
  while (k < cfg.k_max) {
    SweepTimings st;
    Iterate next = sweep(model, cfg, path, current, &st);
    out.timings.sweeps.push_back(std::move(st));
    ++k;
    out.errors.push_back(detail::squared_errors(model, next.states, out.reference));
    out.increments.push_back(detail::sup_distance(model, next.states, current.states));
    current = std::move(next);
    if (cfg.store_iterates) out.iterates.push_back(current.states);
    if (cfg.tol > 0.0 && out.increments.back() <= cfg.tol) break;
  }
  out.k_stop = k;
  out.final_iterate = std::move(current.states);
  return out;
}

}  // namespace smaxwell
