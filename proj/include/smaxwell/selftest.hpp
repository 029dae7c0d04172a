#pragma once

// Quick invariant checks on a configured problem: skew-adjointness of M, exact damping of the
// semigroup norm, bitwise aggregation of noise increments, parareal exactness and thread-count
// independence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "smaxwell/csv.hpp"
#include "smaxwell/initial_data.hpp"
#include "smaxwell/maxwell_operator.hpp"
#include "smaxwell/noise.hpp"
#include "smaxwell/parareal.hpp"
#include "smaxwell/philox.hpp"
#include "smaxwell/studies.hpp"

namespace smaxwell {

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Standard normal field with entries keyed by (seed, tag, index).
inline FieldState random_state(const GridSpec& grid, std::uint64_t seed, std::uint32_t tag) {
  FieldState u(grid);
  for (std::ptrdiff_t i = 0; i < grid.dof(); ++i)
    u.values()(i) = counter_normal(seed, RandomStream::test, std::uint32_t(i), tag, 0u, 0u);
  return u;
}

inline std::vector<PropertyResult> run_selftest(const ProblemSpec& problem, std::uint64_t seed, int threads) {
  problem.validate();
  std::vector<PropertyResult> out;
  const GridSpec& grid = problem.grid;
  const auto& c = problem.coeffs;
  const DiscreteMaxwellOperator op(grid, c);

  {
    double worst = 0.0;
    for (std::uint32_t p = 0; p < 20; ++p) {
      const FieldState u = random_state(grid, seed, 2 * p), v = random_state(grid, seed, 2 * p + 1);
      const double lhs = inner_product(c, grid, op.apply_maxwell(u), v) + inner_product(c, grid, u, op.apply_maxwell(v));
      worst = std::max(worst, std::abs(lhs) / (h_norm(c, grid, u) * h_norm(c, grid, v)));
    }
    out.push_back({"skew_adjoint", worst <= 1e-12, "max relative residual " + format_double(worst)});
  }
  {
    double worst = 0.0;
    const FieldState u = random_state(grid, seed, 100);
    for (double delta : {0x1.0p-8, 0x1.0p-4, 1.0}) {
      const double expect = std::exp(-c.sigma * delta) * h_norm(c, grid, u);
      const double got = h_norm(c, grid, op.semigroup_apply(delta, u));
      worst = std::max(worst, std::abs(got - expect) / expect);
    }
    out.push_back({"contraction", worst <= 1e-10, "max relative norm defect " + format_double(worst)});
  }
  {
    const NoiseBasis basis(grid, problem.n_modes, problem.decay_r);
    const WienerPath path(basis, seed, 0, 1.0, 0x1.0p-8);
    bool same = true;
    for (std::uint32_t w = 0; w < 50 && same; ++w) {
      const auto a = std::int64_t(counter_uniform(seed, RandomStream::test, w, 7u, 0u, 0u) * 255.0);
      const auto len = 1 + std::int64_t(counter_uniform(seed, RandomStream::test, w, 8u, 0u, 0u) * double(256 - a));
      const FieldState whole = increment_state(basis, path, LatticeWindow{a, a + len});
      FieldState sum = increment_state(basis, path, LatticeWindow{a, a + 1});
      for (std::int64_t s = a + 1; s < a + len; ++s) sum += increment_state(basis, path, LatticeWindow{s, s + 1});
      same = whole == sum;
    }
    out.push_back({"aggregation", same, same ? "50 windows bitwise equal" : "window sum mismatch"});
  }
  {
    const NoiseBasis basis(grid, problem.n_modes, problem.decay_r);
    const Model model{op, basis, problem.nonlinearity};
    PararealConfig cfg;
    cfg.time = problem.time;
    cfg.time.t_end = 8.0 * problem.time.delta_T;
    cfg.k_max = 8;
    cfg.fine_kind = problem.fine_kind;
    cfg.store_iterates = true;
    const WienerPath path(basis, seed, 0, cfg.time.t_end, required_delta_ref(cfg.time, cfg.fine_kind));
    const FieldState u0 = experiment_initial_state(grid, seed, problem.h_amplitude);
    const PararealRun r = run(model, cfg, path, u0);
    double worst = 0.0;
    for (std::size_t k = 0; k < r.iterates.size(); ++k)
      for (std::size_t n = 0; n <= std::min(k, r.reference.size() - 1); ++n)
        worst = std::max(worst, std::sqrt(r.errors[k][n]) / (1.0 + h_norm(c, grid, r.reference[n])));
    out.push_back({"exactness", worst <= 1e-12, "max scaled error for n <= k: " + format_double(worst)});

    cfg.threads = std::max(2, threads);
    const PararealRun r2 = run(model, cfg, path, u0);
    bool same = r2.iterates.size() == r.iterates.size();
    for (std::size_t k = 0; same && k < r.iterates.size(); ++k)
      for (std::size_t n = 0; same && n < r.iterates[k].size(); ++n) same = r.iterates[k][n] == r2.iterates[k][n];
    out.push_back({"thread_determinism", same,
                   same ? "1 and " + std::to_string(cfg.threads) + " threads bitwise equal" : "iterates differ"});
  }
  return out;
}

}  // namespace smaxwell
