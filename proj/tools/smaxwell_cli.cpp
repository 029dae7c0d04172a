// Command-line driver: single runs, the Monte Carlo studies, the cost model and a self-test.
//
// Exit codes: 0 success, 1 invalid configuration or usage, 2 failure during computation,
// 3 self-test property failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "smaxwell/selftest.hpp"
#include "smaxwell/smaxwell.hpp"

namespace fs = std::filesystem;
using namespace smaxwell;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> threads;
  std::vector<std::string> overrides;
  bool quiet = false;
};

RunConfig load(const std::string& subcommand, const Options& o) {
  std::vector<std::string> overrides = o.overrides;
  if (!o.out.empty()) overrides.push_back("run.output_dir=" + o.out);
  if (o.seed) overrides.push_back("study.seed=" + std::to_string(*o.seed));
  if (o.samples) overrides.push_back("study.samples=" + std::to_string(*o.samples));
  if (o.threads) overrides.push_back("run.threads=" + std::to_string(*o.threads));
  RunConfig c = parse_config(o.config, overrides, subcommand);
  c.study.threads = c.threads;
  c.efficiency.samples = c.study.samples;
  c.efficiency.base_seed = c.study.base_seed;
  c.efficiency.threads = c.threads;
  return c;
}

fs::path prepare_output(const RunConfig& c) {
  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ComputationError("cannot create output directory " + dir.string() + ": " + ec.message());
  std::ofstream echo(dir / "config.ini", std::ios::binary);
  echo << effective_config(c);
  if (!echo) throw ComputationError("cannot write " + (dir / "config.ini").string());
  return dir;
}

Logger logger(const Options& o) {
  if (o.quiet) return {};
  return [](const std::string& msg) { std::cerr << msg << '\n'; };
}

int single_run(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  const auto& p = c.problem;
  const DiscreteMaxwellOperator op(p.grid, p.coeffs);
  const NoiseBasis basis(p.grid, p.n_modes, p.decay_r);
  const Model model{op, basis, p.nonlinearity};
  const WienerPath path(basis, c.study.base_seed, 0, p.time.t_end, required_delta_ref(p.time, p.fine_kind));
  const FieldState u0 = experiment_initial_state(p.grid, c.study.base_seed, p.h_amplitude);
  PararealConfig cfg = p.parareal(c.threads);
  const PararealRun r = run(model, cfg, path, u0);

  CsvTable t({"k", "n", "t", "error", "increment"});
  for (std::size_t k = 0; k < r.errors.size(); ++k)
    for (std::size_t n = 0; n < r.errors[k].size(); ++n)
      t.add({(long long)k, (long long)n, double(n) * p.time.delta_T, std::sqrt(r.errors[k][n]), r.increments[k]});
  t.write(dir / "single_run.csv");
  if (!o.quiet)
    for (std::size_t k = 0; k < r.errors.size(); ++k)
      std::printf("k=%zu  sup_n error %.6e\n", k, r.sup_error(int(k)));
  return 0;
}

int converge(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  const auto report = convergence_study(c.problem, c.pairs, c.study, logger(o));
  convergence_table(report).write(dir / "convergence.csv");
  orders_table(report.orders).write(dir / "orders.csv");
  orders_table(report.orders_absolute).write(dir / "orders_absolute.csv");
  if (!o.quiet)
    for (const auto& r : report.orders)
      std::printf("%-24s k=%d  slope %.3f (expected %.1f)\n", r.study_id.c_str(), r.k, r.slope, r.expected_slope);
  return 0;
}

int damping(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  damping_table(damping_study(c.problem, c.study, logger(o))).write(dir / "damping.csv");
  return 0;
}

int longtime(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  longtime_table(longtime_study(c.problem, c.study, logger(o))).write(dir / "longtime.csv");
  return 0;
}

int efficiency(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  const auto report = efficiency_study(c.problem, c.efficiency, logger(o));
  efficiency_table(report).write(dir / "efficiency.csv");
  costmodel_table(report.cost_rows).write(dir / "costmodel.csv");
  return 0;
}

int costmodel(const RunConfig& c, const Options& o) {
  const fs::path dir = prepare_output(c);
  const CostModelRow row{c.costmodel, predict_cost(c.costmodel)};
  costmodel_table({row}).write(dir / "costmodel.csv");
  if (!o.quiet)
    std::printf("cost_parareal %.17g  cost_exp %.17g  efficiency %.17g\n", row.prediction.cost_parareal,
                row.prediction.cost_exp, row.prediction.efficiency);
  return 0;
}

int selftest(const RunConfig& c, const Options&) {
  bool ok = true;
  for (const auto& r : run_selftest(c.problem, c.study.base_seed, c.threads)) {
    std::printf("%s %-20s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parareal solver and verification lab for stochastic Maxwell equations with damping"};
  app.require_subcommand(1);
  Options opt;

  using Handler = int (*)(const RunConfig&, const Options&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"single-run", "one parareal run; writes single_run.csv", single_run},
      {"converge", "mean-square order in delta_T; writes convergence.csv, orders.csv", converge},
      {"damping", "error against k for each sigma; writes damping.csv", damping},
      {"longtime", "error against k for each horizon; writes longtime.csv", longtime},
      {"efficiency", "wall-clock against a sequential exponential run; writes efficiency.csv, costmodel.csv",
       efficiency},
      {"costmodel", "evaluate the cost model for [costmodel]; writes costmodel.csv", costmodel},
      {"selftest", "check operator, noise and parareal invariants", selftest},
  };
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (run.output_dir)");
    sub->add_option("--seed", opt.seed, "base seed (study.seed)");
    sub->add_option("--samples", opt.samples, "Monte Carlo samples (study.samples)");
    sub->add_option("--threads", opt.threads, "worker threads (run.threads)");
    sub->add_option("--set", opt.overrides, "override, section.key=value (repeatable)")->take_all();
    sub->add_flag("--quiet", opt.quiet, "suppress progress output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  for (const auto& [name, help, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    try {
      return fn(load(name, opt), opt);
    } catch (const ValidationError& e) {
      std::cerr << "invalid configuration: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 1;
}
