#pragma once

// Stochastic exponential integrator
//
//   u' = S(d) [ u + F(u) d + B(u) dW ],   S(d) = exp(d (M - sigma I)),
//
// used as the coarse propagator (one step of size delta_T), as the fine propagator
// (j_sub steps of size delta_t = delta_T / j_sub) and as the oversampled reference
// propagator (j_sub * rho_ref steps) standing in for the exact flow.
//
// All windows are expressed on the lattice of the supplied WienerPath; a step whose
// endpoints do not fall on that lattice is rejected.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smaxwell/error.hpp"
#include "smaxwell/grid.hpp"
#include "smaxwell/maxwell_operator.hpp"
#include "smaxwell/noise.hpp"
#include "smaxwell/nonlinearity.hpp"

namespace smaxwell {

inline bool is_power_of_two(std::int64_t v) { return v >= 1 && (v & (v - 1)) == 0; }

/// True when x = 2^e for some integer e.
inline bool is_dyadic_step(double x) {
  if (!(std::isfinite(x) && x > 0.0)) return false;
  int e = 0;
  return std::frexp(x, &e) == 0.5;
}

struct TimeGridSpec {
  double t_end = 1.0;
  double delta_T = 0x1.0p-6;
  int j_sub = 4;
  int rho_ref = 16;

  std::int64_t n_coarse() const { return lattice_count(t_end, delta_T, "time grid: t_end / delta_T"); }
  double delta_t() const { return delta_T / j_sub; }
  double delta_ref() const { return delta_t() / rho_ref; }

  void validate() const {
    detail::require(std::isfinite(t_end) && t_end > 0.0, "time: t_end > 0");
    detail::require(is_dyadic_step(delta_T), "time: delta_T must be a power of two so noise windows align (got " +
                                                 detail::format_param(delta_T) + ")");
    detail::require(delta_T <= t_end, "time: delta_T <= t_end");
    detail::require(n_coarse() >= 1, "time: t_end / delta_T must be a positive integer");
    detail::require(is_power_of_two(j_sub), "time: j_sub must be a power of two >= 1");
    detail::require(is_power_of_two(rho_ref), "time: rho_ref must be a power of two >= 1");
  }
};

enum class FineKind { exponential, reference };

inline const char* to_string(FineKind k) { return k == FineKind::exponential ? "exponential" : "reference"; }

inline FineKind parse_fine_kind(const std::string& s) {
  if (s == "exponential") return FineKind::exponential;
  if (s == "reference") return FineKind::reference;
  throw ValidationError("fine_kind must be 'exponential' or 'reference' (got '" + s + "')");
}

/// Everything a propagator needs besides the time grid and the noise path.
struct Model {
  const DiscreteMaxwellOperator& op;
  const NoiseBasis& basis;
  NonlinearitySpec nonlinearity;
};

/// One exponential step over a lattice window.
inline FieldState exponential_step(const Model& model, const WienerPath& path, const FieldState& u,
                                   LatticeWindow w) {
  path.check_window(w);
  u.check_conforms(model.op.grid());
  if (!u.all_finite())
    throw ComputationError("exponential step: non-finite state at lattice step " + std::to_string(w.begin));
  const double delta = double(w.length()) * path.delta_ref();

  FieldState v = u;
  if (!model.nonlinearity.drift_is_zero()) v.values() += delta * apply_drift(model.nonlinearity, u).values();
  if (!model.nonlinearity.deterministic() && model.basis.size() > 0) {
    const FieldState dw = increment_state(model.basis, path, w);
    v.values() += apply_diffusion(model.nonlinearity, u, dw).values();
  }
  if (!v.all_finite())
    throw ComputationError("exponential step: drift or noise term overflowed at lattice step " +
                           std::to_string(w.begin));
  return model.op.semigroup_apply(delta, v);
}

inline FieldState exponential_step(const Model& model, const WienerPath& path, const FieldState& u, double t0,
                                   double t1) {
  detail::require(t1 > t0, "exponential step: t1 must exceed t0");
  return exponential_step(model, path, u, path.window(t0, t1));
}

/// `substeps` equal exponential steps across the window.
inline FieldState exponential_sweep(const Model& model, const WienerPath& path, const FieldState& u,
                                    LatticeWindow w, std::int64_t substeps) {
  detail::require(substeps >= 1 && w.length() % substeps == 0,
                  "exponential sweep: window of " + std::to_string(w.length()) + " lattice steps cannot be split into " +
                      std::to_string(substeps) + " substeps (path resolution too coarse)");
  const std::int64_t len = w.length() / substeps;
  FieldState state = u;
  for (std::int64_t j = 0; j < substeps; ++j)
    state = exponential_step(model, path, state, LatticeWindow{w.begin + j * len, w.begin + (j + 1) * len});
  return state;
}

/// Lattice window of coarse interval n in 1..N, i.e. [t_{n-1}, t_n].
inline LatticeWindow coarse_window(const TimeGridSpec& time, const WienerPath& path, std::int64_t n) {
  const std::int64_t big_n = time.n_coarse();
  detail::require(n >= 1 && n <= big_n,
                  "coarse interval index " + std::to_string(n) + " outside 1.." + std::to_string(big_n));
  const std::int64_t len = lattice_count(time.delta_T, path.delta_ref(), "delta_T on the noise lattice");
  detail::require(path.steps() >= big_n * len, "noise path shorter than the time horizon");
  return {(n - 1) * len, n * len};
}

inline FieldState coarse_G(const Model& model, const TimeGridSpec& time, const WienerPath& path,
                           const FieldState& u, std::int64_t n) {
  return exponential_step(model, path, u, coarse_window(time, path, n));
}

inline FieldState fine_F_exponential(const Model& model, const TimeGridSpec& time, const WienerPath& path,
                                     const FieldState& u, std::int64_t n) {
  return exponential_sweep(model, path, u, coarse_window(time, path, n), time.j_sub);
}

inline FieldState fine_F_reference(const Model& model, const TimeGridSpec& time, const WienerPath& path,
                                   const FieldState& u, std::int64_t n) {
  return exponential_sweep(model, path, u, coarse_window(time, path, n), std::int64_t(time.j_sub) * time.rho_ref);
}

inline FieldState fine_F(const Model& model, const TimeGridSpec& time, FineKind kind, const WienerPath& path,
                         const FieldState& u, std::int64_t n) {
  return kind == FineKind::exponential ? fine_F_exponential(model, time, path, u, n)
                                       : fine_F_reference(model, time, path, u, n);
}

/// Fine propagator on the consecutive intervals first_n, first_n + 1, ... for up to
/// DiscreteMaxwellOperator::panel_width inputs at once, with every substep's semigroup applied
/// to all of them in a single matrix product. Agrees with fine_F to rounding; the result for
/// one interval does not depend on which other intervals share its panel.
inline std::vector<FieldState> fine_F_panel(const Model& model, const TimeGridSpec& time, FineKind kind,
                                            const WienerPath& path, std::span<const FieldState> inputs,
                                            std::int64_t first_n) {
  const auto width = DiscreteMaxwellOperator::panel_width;
  const auto count = std::ptrdiff_t(inputs.size());
  detail::require(count >= 1 && count <= width, "fine panel: between 1 and " + std::to_string(width) + " inputs");
  const GridSpec& grid = model.op.grid();
  const std::int64_t substeps = kind == FineKind::exponential ? time.j_sub : std::int64_t(time.j_sub) * time.rho_ref;

  std::vector<LatticeWindow> windows;
  Eigen::MatrixXd panel = Eigen::MatrixXd::Zero(grid.dof(), width);
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    inputs[std::size_t(c)].check_conforms(grid);
    windows.push_back(coarse_window(time, path, first_n + c));
    panel.col(c) = inputs[std::size_t(c)].values();
  }
  const std::int64_t len = windows.front().length() / substeps;
  detail::require(windows.front().length() % substeps == 0,
                  "fine panel: window of " + std::to_string(windows.front().length()) +
                      " lattice steps cannot be split into " + std::to_string(substeps) + " substeps");
  const double delta = double(len) * path.delta_ref();
  const auto& nl = model.nonlinearity;
  const bool noisy = !nl.deterministic() && model.basis.size() > 0;

  Eigen::VectorXd v(grid.dof());
  for (std::int64_t j = 0; j < substeps; ++j) {
    for (std::ptrdiff_t c = 0; c < count; ++c) {
      auto u = panel.col(c);
      v = u;
      if (!nl.drift_is_zero()) v += delta * u.unaryExpr([&nl](double x) { return nl.drift_value(x); });
      if (noisy) {
        const auto b = windows[std::size_t(c)].begin + j * len;
        const FieldState dw = increment_state(model.basis, path, LatticeWindow{b, b + len});
        v += u.unaryExpr([&nl](double x) { return nl.diffusion_value(x); }).cwiseProduct(dw.values());
      }
      u = v;
    }
    model.op.semigroup_apply_panel(delta, panel);
  }

  std::vector<FieldState> out;
  out.reserve(std::size_t(count));
  for (std::ptrdiff_t c = 0; c < count; ++c) out.emplace_back(grid, Eigen::VectorXd(panel.col(c)));
  return out;
}

/// Finest lattice step a run with this time grid and fine propagator needs.
inline double required_delta_ref(const TimeGridSpec& time, FineKind kind) {
  return kind == FineKind::exponential ? time.delta_t() : time.delta_ref();
}

}  // namespace smaxwell
