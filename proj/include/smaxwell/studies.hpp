#pragma once

// Monte Carlo experiment drivers: convergence order in the coarse step, damping, long horizons
// and measured efficiency against a sequential exponential run.
//
// Every sample s uses the noise path (base_seed, s) and the initial state drawn from base_seed.
// Samples run concurrently; per-sample results land in slots indexed by s and are reduced in
// index order, so outputs do not depend on the thread count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "smaxwell/cost_model.hpp"
#include "smaxwell/csv.hpp"
#include "smaxwell/error.hpp"
#include "smaxwell/initial_data.hpp"
#include "smaxwell/maxwell_operator.hpp"
#include "smaxwell/noise.hpp"
#include "smaxwell/parallel.hpp"
#include "smaxwell/parareal.hpp"
#include "smaxwell/statistics.hpp"

namespace smaxwell {

using Logger = std::function<void(const std::string&)>;

/// F(u) = u + cos u, B(u) = sin u.
inline NonlinearitySpec pair_a() { return parse_nonlinearity("u_plus_cos", "sin"); }
/// F(u) = cos u, B(u) = u.
inline NonlinearitySpec pair_b() { return parse_nonlinearity("cos", "identity"); }

inline std::string pair_id(const NonlinearitySpec& s) { return drift_name(s) + ":" + diffusion_name(s); }

/// Everything that defines one stochastic Maxwell problem and its parareal solver.
struct ProblemSpec {
  GridSpec grid{16};
  MaxwellCoefficients coeffs;
  int n_modes = 8;
  double decay_r = 2.0;
  NonlinearitySpec nonlinearity = pair_a();
  TimeGridSpec time;
  int k_max = 5;
  double tol = 0.0;
  FineKind fine_kind = FineKind::exponential;
  /// Scale of the random magnetic initial data.
  double h_amplitude = 1.0;

  void validate() const {
    coeffs.validate();
    detail::require(n_modes >= 0, "noise: n_modes >= 0");
    detail::require(std::isfinite(decay_r) && decay_r > 1.0, "noise: decay_r > 1");
    time.validate();
    detail::require(k_max >= 0, "parareal: k_max >= 0");
    detail::require(tol >= 0.0, "parareal: tol >= 0");
    detail::require(std::isfinite(h_amplitude), "initial data: h_amplitude must be finite");
  }

  PararealConfig parareal(int threads = 1) const {
    PararealConfig c;
    c.time = time;
    c.k_max = k_max;
    c.tol = tol;
    c.fine_kind = fine_kind;
    c.threads = threads;
    c.store_iterates = false;
    return c;
  }
};

struct StudySpec {
  int samples = 50;
  std::uint64_t base_seed = 20240607;
  std::vector<double> sigmas{0.0, 2.0, 8.0, 32.0};
  std::vector<int> k_list{2, 3, 4};
  std::vector<double> coarse_steps{0x1.0p-6, 0x1.0p-7, 0x1.0p-8, 0x1.0p-9};
  std::vector<double> t_end_list{1.0, 10.0, 20.0};
  int threads = 1;

  void validate() const {
    detail::require(samples >= 1, "study: samples >= 1");
    detail::require(threads >= 1, "study: threads >= 1");
    for (double s : sigmas) detail::require(std::isfinite(s) && s >= 0.0, "study: sigmas must be >= 0");
    for (int k : k_list) detail::require(k >= 0, "study: k_list entries must be >= 0");
    for (double h : coarse_steps)
      detail::require(is_dyadic_step(h), "study: coarse_steps must be powers of two (got " + format_double(h) + ")");
    for (std::size_t i = 0; i < coarse_steps.size(); ++i)
      for (std::size_t j = i + 1; j < coarse_steps.size(); ++j)
        detail::require(coarse_steps[i] != coarse_steps[j], "study: coarse_steps must be distinct");
    for (double t : t_end_list) detail::require(std::isfinite(t) && t > 0.0, "study: t_end_list entries must be > 0");
  }
};

namespace detail {

// Samples in parallel when there are enough of them, otherwise intervals in parallel.
inline std::pair<int, int> split_threads(int threads, int samples) {
  const int outer = std::max(1, std::min(threads, samples));
  return {outer, std::max(1, threads / outer)};
}

inline void log(const Logger& logger, const std::string& msg) {
  if (logger) logger(msg);
}

// Squared errors [k][n] of one sample for each time grid in `times`, on one shared noise path
// fine enough for all of them.
inline std::vector<std::vector<std::vector<double>>> sample_errors(const Model& model, const ProblemSpec& problem,
                                                                   const std::vector<TimeGridSpec>& times,
                                                                   std::uint64_t seed, std::uint32_t sample,
                                                                   const FieldState& u0, int inner_threads) {
  double lattice = std::numeric_limits<double>::infinity();
  for (const auto& t : times) lattice = std::min(lattice, required_delta_ref(t, problem.fine_kind));
  const WienerPath path = sample_path(model.basis, seed, sample, times.front().t_end, lattice);
  std::vector<std::vector<std::vector<double>>> out;
  for (const auto& t : times) {
    PararealConfig cfg = problem.parareal(inner_threads);
    cfg.time = t;
    out.push_back(run(model, cfg, path, u0).errors);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Convergence in the coarse step

struct ConvergenceRow {
  std::string study_id;
  std::string drift_kind;
  std::string diffusion_kind;
  double sigma;
  int k;
  double delta_T;
  double mse;
  double mse_halfwidth;
  int samples;
};

struct OrderRow {
  std::string study_id;
  int k;
  double slope;
  double slope_residual;
  double expected_slope;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Slopes of mse(k) / mse(0) against delta_T, the quantity bounded by C delta_T^{k/2}.
  std::vector<OrderRow> orders;
  /// Slopes of mse(k) itself.
  std::vector<OrderRow> orders_absolute;

  double mse(const std::string& study_id, int k, double delta_T) const {
    for (const auto& r : rows)
      if (r.study_id == study_id && r.k == k && r.delta_T == delta_T) return r.mse;
    throw ValidationError("convergence report: no row for " + study_id);
  }
  const OrderRow& order(const std::string& study_id, int k) const {
    for (const auto& r : orders)
      if (r.study_id == study_id && r.k == k) return r;
    throw ValidationError("convergence report: no order for " + study_id + " k=" + std::to_string(k));
  }
};

namespace detail {

inline OrderRow fit_row(const std::string& id, int k, const std::vector<std::pair<double, double>>& pts) {
  OrderRow row{id, k, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), 0.5 * k};
  const bool usable = pts.size() >= 3 && std::all_of(pts.begin(), pts.end(), [](const auto& p) {
                        return p.second > 0.0 && std::isfinite(p.second);
                      });
  if (usable) {
    const OrderFit fit = estimate_order(pts);
    row.slope = fit.slope;
    row.slope_residual = fit.residual;
  }
  return row;
}

}  // namespace detail

/// For each nonlinearity pair and each coarse step: M samples of parareal up to max(k_list)
/// iterations, errors against the sequential fine reference, and fitted orders per k.
inline ConvergenceReport convergence_study(const ProblemSpec& problem, const std::vector<NonlinearitySpec>& pairs,
                                           const StudySpec& study, const Logger& logger = {}) {
  problem.validate();
  study.validate();
  detail::require(!pairs.empty(), "convergence study: no nonlinearity pairs");
  detail::require(!study.coarse_steps.empty() && !study.k_list.empty(),
                  "convergence study: coarse_steps and k_list must be non-empty");

  std::vector<TimeGridSpec> times;
  for (double h : study.coarse_steps) {
    TimeGridSpec t = problem.time;
    t.delta_T = h;
    t.validate();
    times.push_back(t);
  }
  ProblemSpec prob = problem;
  prob.k_max = *std::max_element(study.k_list.begin(), study.k_list.end());
  prob.tol = 0.0;

  const DiscreteMaxwellOperator op(problem.grid, problem.coeffs);
  const NoiseBasis basis(problem.grid, problem.n_modes, problem.decay_r);
  const FieldState u0 = experiment_initial_state(problem.grid, study.base_seed, problem.h_amplitude);
  const auto [outer, inner] = detail::split_threads(study.threads, study.samples);
  const auto m = std::size_t(study.samples);

  ConvergenceReport report;
  for (const auto& pair : pairs) {
    const std::string id = pair_id(pair);
    detail::log(logger, "converge " + id + ": " + std::to_string(study.samples) + " samples");
    const Model model{op, basis, pair};
    std::vector<std::vector<std::vector<std::vector<double>>>> per_sample(m);  // [s][d][k][n]
    parallel_for(m, outer, [&, inner = inner](std::size_t s) {
      per_sample[s] = detail::sample_errors(model, prob, times, study.base_seed, std::uint32_t(s), u0, inner);
    });

    std::vector<std::vector<double>> mse(times.size(), std::vector<double>(std::size_t(prob.k_max) + 1));
    for (std::size_t d = 0; d < times.size(); ++d) {
      for (int k = 0; k <= prob.k_max; ++k) {
        std::vector<const std::vector<double>*> eps;
        for (std::size_t s = 0; s < m; ++s) eps.push_back(&per_sample[s][d][std::size_t(k)]);
        const auto e = mean_square_error(eps);
        mse[d][std::size_t(k)] = e.value;
        report.rows.push_back({id, drift_name(pair), diffusion_name(pair), problem.coeffs.sigma, k,
                               times[d].delta_T, e.value, e.halfwidth, study.samples});
      }
    }
    for (int k = 0; k <= prob.k_max; ++k) {
      std::vector<std::pair<double, double>> abs_pts, rel_pts;
      for (std::size_t d = 0; d < times.size(); ++d) {
        abs_pts.emplace_back(times[d].delta_T, mse[d][std::size_t(k)]);
        rel_pts.emplace_back(times[d].delta_T, mse[d][std::size_t(k)] / mse[d][0]);
      }
      report.orders_absolute.push_back(detail::fit_row(id, k, abs_pts));
      if (k >= 1) report.orders.push_back(detail::fit_row(id, k, rel_pts));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Damping

struct DampingRow {
  double sigma;
  int k;
  double sup_error;
  double halfwidth;
};

struct DampingReport {
  std::vector<DampingRow> rows;

  const DampingRow& at(double sigma, int k) const {
    for (const auto& r : rows)
      if (r.sigma == sigma && r.k == k) return r;
    throw ValidationError("damping report: no row for sigma " + format_double(sigma));
  }
};

/// Error against iteration count for each damping coefficient, on common noise paths.
inline DampingReport damping_study(const ProblemSpec& problem, const StudySpec& study, const Logger& logger = {}) {
  problem.validate();
  study.validate();
  detail::require(!study.sigmas.empty(), "damping study: empty sigma list");
  const NoiseBasis basis(problem.grid, problem.n_modes, problem.decay_r);
  const FieldState u0 = experiment_initial_state(problem.grid, study.base_seed, problem.h_amplitude);
  const auto [outer, inner] = detail::split_threads(study.threads, study.samples);
  const auto m = std::size_t(study.samples);

  DampingReport report;
  for (double sigma : study.sigmas) {
    detail::log(logger, "damping sigma=" + format_double(sigma));
    MaxwellCoefficients c = problem.coeffs;
    c.sigma = sigma;
    const DiscreteMaxwellOperator op(problem.grid, c);
    const Model model{op, basis, problem.nonlinearity};
    std::vector<std::vector<std::vector<double>>> per_sample(m);  // [s][k][n]
    parallel_for(m, outer, [&, inner = inner](std::size_t s) {
      per_sample[s] =
          detail::sample_errors(model, problem, {problem.time}, study.base_seed, std::uint32_t(s), u0, inner).front();
    });
    for (int k = 0; k <= problem.k_max; ++k) {
      std::vector<const std::vector<double>*> eps;
      for (std::size_t s = 0; s < m; ++s) {
        detail::require(std::size_t(k) < per_sample[s].size(), "damping study: early stop is not supported");
        eps.push_back(&per_sample[s][std::size_t(k)]);
      }
      const auto e = mean_square_error(eps);
      report.rows.push_back({sigma, k, e.value, e.halfwidth});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Long horizons

struct LongtimeRow {
  double t_end;
  int k;
  double sup_error;
  /// Largest per-sample sup_n ||u_n^(k) - u_n^ref||_H.
  double worst_sample_error;
};

struct LongtimeReport {
  std::vector<LongtimeRow> rows;

  const LongtimeRow& at(double t_end, int k) const {
    for (const auto& r : rows)
      if (r.t_end == t_end && r.k == k) return r;
    throw ValidationError("longtime report: no row for t_end " + format_double(t_end));
  }
};

inline LongtimeReport longtime_study(const ProblemSpec& problem, const StudySpec& study, const Logger& logger = {}) {
  problem.validate();
  study.validate();
  const DiscreteMaxwellOperator op(problem.grid, problem.coeffs);
  const NoiseBasis basis(problem.grid, problem.n_modes, problem.decay_r);
  const Model model{op, basis, problem.nonlinearity};
  const FieldState u0 = experiment_initial_state(problem.grid, study.base_seed, problem.h_amplitude);
  const auto [outer, inner] = detail::split_threads(study.threads, study.samples);
  const auto m = std::size_t(study.samples);

  LongtimeReport report;
  for (double t_end : study.t_end_list) {
    detail::log(logger, "longtime T=" + format_double(t_end));
    TimeGridSpec time = problem.time;
    time.t_end = t_end;
    time.validate();
    std::vector<std::vector<std::vector<double>>> per_sample(m);
    parallel_for(m, outer, [&, inner = inner](std::size_t s) {
      per_sample[s] = detail::sample_errors(model, problem, {time}, study.base_seed, std::uint32_t(s), u0, inner).front();
    });
    for (int k = 0; k <= problem.k_max; ++k) {
      std::vector<const std::vector<double>*> eps;
      double worst = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        detail::require(std::size_t(k) < per_sample[s].size(), "longtime study: early stop is not supported");
        const auto& e = per_sample[s][std::size_t(k)];
        eps.push_back(&e);
        worst = std::max(worst, std::sqrt(*std::max_element(e.begin(), e.end())));
      }
      report.rows.push_back({t_end, k, mean_square_error(eps).value, worst});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// Efficiency

struct EfficiencySpec {
  std::vector<double> t_end_list{1.0, 10.0, 50.0, 100.0};
  std::vector<int> k_list{2, 3};
  double delta_T = 0x1.0p-3;
  int j_sub = 8;
  /// The sequential exponential run uses delta_T' = delta_T / exp_ratio.
  int exp_ratio = 10;
  int samples = 2;
  /// Worker count for the projected parareal wall-clock.
  int n_proc = 4;
  /// Calls per micro-benchmark (median taken).
  int bench_calls = 101;
  std::uint64_t base_seed = 20240607;
  int threads = 1;

  void validate() const {
    detail::require(!t_end_list.empty() && !k_list.empty(), "efficiency: t_end_list and k_list must be non-empty");
    for (double t : t_end_list) detail::require(std::isfinite(t) && t > 0.0, "efficiency: t_end > 0");
    for (int k : k_list) detail::require(k >= 0, "efficiency: k >= 0");
    detail::require(std::isfinite(delta_T) && delta_T > 0.0, "efficiency: delta_T > 0");
    detail::require(is_power_of_two(j_sub), "efficiency: j_sub must be a power of two");
    detail::require(exp_ratio >= 1, "efficiency: exp_ratio >= 1");
    detail::require(samples >= 1, "efficiency: samples >= 1");
    detail::require(n_proc >= 1, "efficiency: n_proc >= 1");
    detail::require(bench_calls >= 100, "efficiency: bench_calls >= 100");
    detail::require(threads >= 1, "efficiency: threads >= 1");
  }

  /// Noise lattice on which the coarse, fine and delta_T' steps all align.
  double lattice() const { return delta_T / double(std::lcm(j_sub, exp_ratio)); }
};

struct EfficiencyRow {
  std::string method;
  double delta_T;
  double t_end;
  double error_l2;
  double cpu_seconds;
};

struct CostModelRow {
  CostModelParams params;
  CostPrediction prediction;
};

struct EfficiencyReport {
  std::vector<EfficiencyRow> rows;
  std::vector<CostModelRow> cost_rows;
  double tau_G = 0.0;
  double tau_F_aux = 0.0;
  double tau_exp = 0.0;

  const EfficiencyRow& at(const std::string& method, double t_end) const {
    for (const auto& r : rows)
      if (r.method == method && r.t_end == t_end) return r;
    throw ValidationError("efficiency report: no row " + method + " at T=" + format_double(t_end));
  }
};

inline std::string parareal_method(int k) { return "parareal_k" + std::to_string(k); }
inline std::string projected_method(int k, int n_proc) {
  return parareal_method(k) + "_projected_p" + std::to_string(n_proc);
}

namespace detail {

template <class Fn>
double median_seconds(int calls, Fn&& fn) {
  fn();
  std::vector<double> t(std::size_t(calls), 0.0);
  for (auto& ti : t) {
    const auto t0 = Clock::now();
    fn();
    ti = seconds_since(t0);
  }
  std::nth_element(t.begin(), t.begin() + std::ptrdiff_t(t.size() / 2), t.end());
  return t[t.size() / 2];
}

}  // namespace detail

/// Wall-clock and error of parareal (coarse delta_T, fine delta_T / j_sub) against a sequential
/// exponential run at delta_T' = delta_T / exp_ratio and at delta_T itself. Errors of all
/// methods are measured at the coarse times against the sequential fine reference. Samples run
/// one after another so timings are not disturbed by each other.
inline EfficiencyReport efficiency_study(const ProblemSpec& problem, const EfficiencySpec& spec,
                                         const Logger& logger = {}) {
  problem.coeffs.validate();
  spec.validate();
  const DiscreteMaxwellOperator op(problem.grid, problem.coeffs);
  const NoiseBasis basis(problem.grid, problem.n_modes, problem.decay_r);
  const Model model{op, basis, problem.nonlinearity};
  const FieldState u0 = experiment_initial_state(problem.grid, spec.base_seed, problem.h_amplitude);
  const double lattice = spec.lattice();
  const std::int64_t coarse_len = lattice_count(spec.delta_T, lattice, "efficiency: delta_T on the lattice");
  const std::int64_t exp_len = coarse_len / spec.exp_ratio;
  const double delta_T_prime = double(exp_len) * lattice;
  const int k_max = *std::max_element(spec.k_list.begin(), spec.k_list.end());

  EfficiencyReport report;
  {
    // Micro-benchmarks on the first interval of a short path; also warms the semigroup cache.
    const WienerPath path = sample_path(basis, spec.base_seed, 0, spec.delta_T, lattice);
    const std::int64_t fine_len = coarse_len / spec.j_sub;
    report.tau_G = detail::median_seconds(spec.bench_calls, [&] {
      path.clear_field_cache();
      return exponential_step(model, path, u0, LatticeWindow{0, coarse_len});
    });
    report.tau_F_aux = detail::median_seconds(spec.bench_calls, [&] {
      path.clear_field_cache();
      return exponential_step(model, path, u0, LatticeWindow{0, fine_len});
    });
    report.tau_exp = detail::median_seconds(spec.bench_calls, [&] {
      path.clear_field_cache();
      return exponential_step(model, path, u0, LatticeWindow{0, exp_len});
    });
  }

  for (double t_end : spec.t_end_list) {
    detail::log(logger, "efficiency T=" + format_double(t_end));
    TimeGridSpec time{t_end, spec.delta_T, spec.j_sub, 1};
    const std::int64_t big_n = lattice_count(t_end, spec.delta_T, "efficiency: t_end / delta_T");
    PararealConfig cfg;
    cfg.time = time;
    cfg.k_max = k_max;
    cfg.threads = spec.threads;
    cfg.store_iterates = false;

    const std::size_t nk = spec.k_list.size();
    std::vector<std::vector<std::vector<double>>> par_err(nk);  // [ik][s][n]
    std::vector<double> par_sec(nk, 0.0), proj_sec(nk, 0.0);
    std::vector<std::vector<double>> exp_err, coarse_err;
    double exp_sec = 0.0, coarse_sec = 0.0;

    for (int s = 0; s < spec.samples; ++s) {
      const WienerPath path = sample_path(basis, spec.base_seed, std::uint32_t(s), t_end, lattice);
      for (std::size_t ik = 0; ik < nk; ++ik) {
        cfg.k_max = spec.k_list[ik];
        path.clear_field_cache();
        const PararealRun r = run(model, cfg, path, u0);
        par_err[ik].push_back(r.errors.back());
        par_sec[ik] += r.timings.parareal_seconds();
        proj_sec[ik] += r.timings.critical_path_seconds(spec.n_proc);
        if (ik + 1 < nk) continue;

        // Sequential exponential runs, timed without the error evaluation.
        std::vector<FieldState> exp_states{u0}, coarse_states{u0};
        path.clear_field_cache();
        auto t0 = detail::Clock::now();
        FieldState u = u0;
        for (std::int64_t n = 1; n <= big_n; ++n) {
          for (std::int64_t j = 0; j < spec.exp_ratio; ++j) {
            const std::int64_t b = (n - 1) * coarse_len + j * exp_len;
            u = exponential_step(model, path, u, LatticeWindow{b, b + exp_len});
          }
          exp_states.push_back(u);
        }
        exp_sec += detail::seconds_since(t0);
        path.clear_field_cache();
        t0 = detail::Clock::now();
        for (std::int64_t n = 1; n <= big_n; ++n)
          coarse_states.push_back(coarse_G(model, time, path, coarse_states.back(), n));
        coarse_sec += detail::seconds_since(t0);
        exp_err.push_back(detail::squared_errors(model, exp_states, r.reference));
        coarse_err.push_back(detail::squared_errors(model, coarse_states, r.reference));
      }
    }

    const double m = double(spec.samples);
    for (std::size_t ik = 0; ik < nk; ++ik) {
      const int k = spec.k_list[ik];
      const double e = mean_square_error(par_err[ik]).value;
      report.rows.push_back({parareal_method(k), spec.delta_T, t_end, e, par_sec[ik] / m});
      report.rows.push_back({projected_method(k, spec.n_proc), spec.delta_T, t_end, e, proj_sec[ik] / m});
    }
    report.rows.push_back({"exponential", delta_T_prime, t_end, mean_square_error(exp_err).value, exp_sec / m});
    report.rows.push_back(
        {"exponential_coarse", spec.delta_T, t_end, mean_square_error(coarse_err).value, coarse_sec / m});

    for (int k : spec.k_list) {
      CostModelParams p;
      p.K = k;
      p.T = t_end;
      p.delta_T = spec.delta_T;
      p.delta_t_fine = time.delta_t();
      p.tau_G = report.tau_G;
      p.tau_F_aux = report.tau_F_aux;
      p.n_proc = spec.n_proc;
      p.tau_exp = report.tau_exp;
      p.delta_T_prime = delta_T_prime;
      report.cost_rows.push_back({p, predict_cost(p)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------------------------
// CSV output

inline CsvTable convergence_table(const ConvergenceReport& r) {
  CsvTable t({"study_id", "drift_kind", "diffusion_kind", "sigma", "k", "delta_T", "mse", "mse_halfwidth", "samples"});
  for (const auto& x : r.rows)
    t.add({x.study_id, x.drift_kind, x.diffusion_kind, x.sigma, (long long)x.k, x.delta_T, x.mse, x.mse_halfwidth,
           (long long)x.samples});
  return t;
}

inline CsvTable orders_table(const std::vector<OrderRow>& rows) {
  CsvTable t({"study_id", "k", "slope", "slope_residual", "expected_slope"});
  for (const auto& x : rows) t.add({x.study_id, (long long)x.k, x.slope, x.slope_residual, x.expected_slope});
  return t;
}

inline CsvTable damping_table(const DampingReport& r) {
  CsvTable t({"sigma", "k", "sup_error"});
  for (const auto& x : r.rows) t.add({x.sigma, (long long)x.k, x.sup_error});
  return t;
}

inline CsvTable longtime_table(const LongtimeReport& r) {
  CsvTable t({"t_end", "k", "sup_error"});
  for (const auto& x : r.rows) t.add({x.t_end, (long long)x.k, x.sup_error});
  return t;
}

inline CsvTable efficiency_table(const EfficiencyReport& r) {
  CsvTable t({"method", "delta_T", "t_end", "error_l2", "cpu_seconds"});
  for (const auto& x : r.rows) t.add({x.method, x.delta_T, x.t_end, x.error_l2, x.cpu_seconds});
  return t;
}

inline CsvTable costmodel_table(const std::vector<CostModelRow>& rows) {
  CsvTable t({"K", "T", "delta_T", "delta_t_fine", "tau_G", "tau_F_aux", "n_proc", "tau_exp", "delta_T_prime",
              "cost_parareal", "cost_exp", "efficiency"});
  for (const auto& x : rows) {
    const auto& p = x.params;
    t.add({(long long)p.K, p.T, p.delta_T, p.delta_t_fine, p.tau_G, p.tau_F_aux, (long long)p.n_proc, p.tau_exp,
           p.delta_T_prime, x.prediction.cost_parareal, x.prediction.cost_exp, x.prediction.efficiency});
  }
  return t;
}

}  // namespace smaxwell
