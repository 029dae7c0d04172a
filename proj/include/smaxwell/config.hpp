#pragma once

// Run configuration: INI text with sections and `key = value` lines, parsed with
// Boost.PropertyTree. Comments start with ';' or '#'. Numbers accept the form `2^-6`;
// lists are comma separated. Unknown sections or keys are rejected.
//
//   [grid]          nx
//   [coefficients]  eps, mu, sigma
//   [noise]         n_modes, decay_r
//   [nonlinearity]  drift, diffusion
//   [initial]       h_amplitude
//   [time]          t_end, delta_T, j_sub, rho_ref
//   [parareal]      k_max, tol, fine_kind
//   [study]         samples, seed, sigmas, k_list, coarse_steps, t_end_list, pairs
//   [efficiency]    t_end_list, k_list, delta_T, j_sub, exp_ratio, n_proc, bench_calls
//   [costmodel]     K, T, delta_T, delta_t_fine, tau_G, tau_F_aux, n_proc, tau_exp, delta_T_prime
//   [run]           threads, output_dir
//
// `pairs` lists drift/diffusion pairs, e.g. `u_plus_cos/sin, cos/identity`.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smaxwell/cost_model.hpp"
#include "smaxwell/csv.hpp"
#include "smaxwell/error.hpp"
#include "smaxwell/studies.hpp"

namespace smaxwell {

struct RunConfig {
  ProblemSpec problem;
  StudySpec study;
  std::vector<NonlinearitySpec> pairs{pair_a(), pair_b()};
  EfficiencySpec efficiency;
  CostModelParams costmodel;
  int threads = 1;
  std::string output_dir = "out";

  void validate() const {
    problem.validate();
    study.validate();
    detail::require(!pairs.empty(), "study: pairs must be non-empty");
    efficiency.validate();
    costmodel.validate();
    detail::require(threads >= 1, "run: threads >= 1");
    detail::require(!output_dir.empty(), "run: output_dir must be non-empty");
  }
};

/// Defaults of each subcommand before the configuration file is applied.
inline RunConfig preset(const std::string& subcommand) {
  RunConfig c;
  if (subcommand == "converge") {
    c.problem.coeffs.sigma = 8.0;
  } else if (subcommand == "damping") {
    c.problem.k_max = 8;
  } else if (subcommand == "longtime") {
    c.problem.coeffs.sigma = 2.0;
    c.problem.k_max = 20;
    c.study.samples = 4;
  } else if (subcommand == "efficiency") {
    c.problem.coeffs.sigma = 2.0;
    c.problem.nonlinearity = pair_b();
    c.study.samples = 2;
  }
  return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Accepts plain floating-point text or base^exponent, e.g. 2^-6.
inline double parse_number(const std::string& text) {
  const std::string t = trim(text);
  auto plain = [](const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    errno = 0;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && errno == 0;
  };
  double v = 0.0;
  if (const auto caret = t.find('^'); caret != std::string::npos) {
    double base = 0.0, exponent = 0.0;
    if (plain(trim(t.substr(0, caret)), base) && plain(trim(t.substr(caret + 1)), exponent)) {
      v = std::pow(base, exponent);
      if (std::isfinite(v)) return v;
    }
  } else if (plain(t, v) && std::isfinite(v)) {
    return v;
  }
  throw ValidationError("expected a number, got '" + t + "'");
}

inline long long parse_integer(const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ValidationError("expected an integer, got '" + t + "'");
  return v;
}

inline int parse_int(const std::string& text) {
  const long long v = parse_integer(text);
  if (v < INT32_MIN || v > INT32_MAX) throw ValidationError("integer out of range: '" + trim(text) + "'");
  return int(v);
}

inline std::uint64_t parse_u64(const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw ValidationError("expected an unsigned 64-bit integer, got '" + t + "'");
  return v;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw ValidationError("expected a non-empty comma-separated list");
  return out;
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(parse_number(s));
  return out;
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) out.push_back(parse_int(s));
  return out;
}

inline std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

template <class T, class F>
std::string join_with(const std::vector<T>& items, F fmt) {
  std::vector<std::string> s;
  for (const auto& x : items) s.push_back(fmt(x));
  return join(s);
}

struct Field {
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline std::string fmt_int(long long v) { return std::to_string(v); }

// Ordered (section, key) -> accessor table; also drives the effective-config echo.
inline const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> t;
    auto num = [&t](std::string key, auto member) {
      t.push_back({std::move(key), Field{[member](RunConfig& c, const std::string& v) { member(c) = parse_number(v); },
                                         [member](const RunConfig& c) {
                                           return format_double(member(const_cast<RunConfig&>(c)));
                                         }}});
    };
    auto integer = [&t](std::string key, auto member) {
      t.push_back({std::move(key), Field{[member](RunConfig& c, const std::string& v) { member(c) = parse_int(v); },
                                         [member](const RunConfig& c) {
                                           return fmt_int(member(const_cast<RunConfig&>(c)));
                                         }}});
    };
    auto custom = [&t](std::string key, std::function<void(RunConfig&, const std::string&)> set,
                       std::function<std::string(const RunConfig&)> get) {
      t.push_back({std::move(key), Field{std::move(set), std::move(get)}});
    };

    custom(
        "grid.nx", [](RunConfig& c, const std::string& v) { c.problem.grid = GridSpec(parse_int(v)); },
        [](const RunConfig& c) { return fmt_int(c.problem.grid.nx()); });
    num("coefficients.eps", [](RunConfig& c) -> double& { return c.problem.coeffs.eps; });
    num("coefficients.mu", [](RunConfig& c) -> double& { return c.problem.coeffs.mu; });
    num("coefficients.sigma", [](RunConfig& c) -> double& { return c.problem.coeffs.sigma; });
    integer("noise.n_modes", [](RunConfig& c) -> int& { return c.problem.n_modes; });
    num("noise.decay_r", [](RunConfig& c) -> double& { return c.problem.decay_r; });
    custom(
        "nonlinearity.drift",
        [](RunConfig& c, const std::string& v) { c.problem.nonlinearity.drift = parse_drift(trim(v), c.problem.nonlinearity.drift_param); },
        [](const RunConfig& c) { return drift_name(c.problem.nonlinearity); });
    custom(
        "nonlinearity.diffusion",
        [](RunConfig& c, const std::string& v) {
          c.problem.nonlinearity.diffusion = parse_diffusion(trim(v), c.problem.nonlinearity.diffusion_param);
        },
        [](const RunConfig& c) { return diffusion_name(c.problem.nonlinearity); });
    num("initial.h_amplitude", [](RunConfig& c) -> double& { return c.problem.h_amplitude; });
    num("time.t_end", [](RunConfig& c) -> double& { return c.problem.time.t_end; });
    num("time.delta_T", [](RunConfig& c) -> double& { return c.problem.time.delta_T; });
    integer("time.j_sub", [](RunConfig& c) -> int& { return c.problem.time.j_sub; });
    integer("time.rho_ref", [](RunConfig& c) -> int& { return c.problem.time.rho_ref; });
    integer("parareal.k_max", [](RunConfig& c) -> int& { return c.problem.k_max; });
    num("parareal.tol", [](RunConfig& c) -> double& { return c.problem.tol; });
    custom(
        "parareal.fine_kind", [](RunConfig& c, const std::string& v) { c.problem.fine_kind = parse_fine_kind(trim(v)); },
        [](const RunConfig& c) { return std::string(to_string(c.problem.fine_kind)); });
    integer("study.samples", [](RunConfig& c) -> int& { return c.study.samples; });
    custom(
        "study.seed", [](RunConfig& c, const std::string& v) { c.study.base_seed = parse_u64(v); },
        [](const RunConfig& c) { return std::to_string(c.study.base_seed); });
    custom(
        "study.sigmas", [](RunConfig& c, const std::string& v) { c.study.sigmas = parse_number_list(v); },
        [](const RunConfig& c) { return join_with(c.study.sigmas, format_double); });
    custom(
        "study.k_list", [](RunConfig& c, const std::string& v) { c.study.k_list = parse_int_list(v); },
        [](const RunConfig& c) { return join_with(c.study.k_list, [](int k) { return fmt_int(k); }); });
    custom(
        "study.coarse_steps", [](RunConfig& c, const std::string& v) { c.study.coarse_steps = parse_number_list(v); },
        [](const RunConfig& c) { return join_with(c.study.coarse_steps, format_double); });
    custom(
        "study.t_end_list", [](RunConfig& c, const std::string& v) { c.study.t_end_list = parse_number_list(v); },
        [](const RunConfig& c) { return join_with(c.study.t_end_list, format_double); });
    custom(
        "study.pairs",
        [](RunConfig& c, const std::string& v) {
          c.pairs.clear();
          for (const auto& item : split_list(v)) {
            const auto slash = item.find('/');
            if (slash == std::string::npos) throw ValidationError("pair '" + item + "' must be drift/diffusion");
            c.pairs.push_back(parse_nonlinearity(trim(item.substr(0, slash)), trim(item.substr(slash + 1))));
          }
        },
        [](const RunConfig& c) {
          return join_with(c.pairs, [](const NonlinearitySpec& s) { return drift_name(s) + "/" + diffusion_name(s); });
        });
    custom(
        "efficiency.t_end_list", [](RunConfig& c, const std::string& v) { c.efficiency.t_end_list = parse_number_list(v); },
        [](const RunConfig& c) { return join_with(c.efficiency.t_end_list, format_double); });
    custom(
        "efficiency.k_list", [](RunConfig& c, const std::string& v) { c.efficiency.k_list = parse_int_list(v); },
        [](const RunConfig& c) { return join_with(c.efficiency.k_list, [](int k) { return fmt_int(k); }); });
    num("efficiency.delta_T", [](RunConfig& c) -> double& { return c.efficiency.delta_T; });
    integer("efficiency.j_sub", [](RunConfig& c) -> int& { return c.efficiency.j_sub; });
    integer("efficiency.exp_ratio", [](RunConfig& c) -> int& { return c.efficiency.exp_ratio; });
    integer("efficiency.n_proc", [](RunConfig& c) -> int& { return c.efficiency.n_proc; });
    integer("efficiency.bench_calls", [](RunConfig& c) -> int& { return c.efficiency.bench_calls; });
    integer("costmodel.K", [](RunConfig& c) -> int& { return c.costmodel.K; });
    num("costmodel.T", [](RunConfig& c) -> double& { return c.costmodel.T; });
    num("costmodel.delta_T", [](RunConfig& c) -> double& { return c.costmodel.delta_T; });
    num("costmodel.delta_t_fine", [](RunConfig& c) -> double& { return c.costmodel.delta_t_fine; });
    num("costmodel.tau_G", [](RunConfig& c) -> double& { return c.costmodel.tau_G; });
    num("costmodel.tau_F_aux", [](RunConfig& c) -> double& { return c.costmodel.tau_F_aux; });
    integer("costmodel.n_proc", [](RunConfig& c) -> int& { return c.costmodel.n_proc; });
    num("costmodel.tau_exp", [](RunConfig& c) -> double& { return c.costmodel.tau_exp; });
    num("costmodel.delta_T_prime", [](RunConfig& c) -> double& { return c.costmodel.delta_T_prime; });
    integer("run.threads", [](RunConfig& c) -> int& { return c.threads; });
    custom(
        "run.output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); },
        [](const RunConfig& c) { return c.output_dir; });
    return t;
  }();
  return table;
}

inline const Field* find_field(const std::string& dotted) {
  for (const auto& [k, f] : fields())
    if (k == dotted) return &f;
  return nullptr;
}

// Line of each `key =` in the text, keyed by section.key, for error messages.
inline std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream in(text);
  std::string line, section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
    } else if (const auto eq = t.find('='); eq != std::string::npos) {
      lines.emplace(section + "." + trim(t.substr(0, eq)), number);
    }
  }
  return lines;
}

}  // namespace detail

/// Applies one `section.key = value` override.
inline void apply_setting(RunConfig& config, const std::string& dotted, const std::string& value) {
  const auto* field = detail::find_field(dotted);
  if (!field) throw ValidationError("unknown configuration key '" + dotted + "'");
  try {
    field->set(config, value);
  } catch (const ValidationError& e) {
    throw ValidationError(dotted + ": " + e.what());
  }
}

/// Parses `key=value` with key of the form section.key.
inline void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ValidationError("override '" + assignment + "' must look like section.key=value");
  apply_setting(config, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

/// Applies INI text on top of `config`. `source` names the text in messages.
inline void apply_config_text(RunConfig& config, const std::string& text, const std::string& source = "<config>") {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(source + ":" + std::to_string(e.line()) + ": parse error: " + e.message());
  }
  const auto lines = detail::key_lines(text);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ValidationError(source + ": key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      const std::string dotted = section + "." + key;
      const auto it = lines.find(dotted);
      const std::string where = source + ":" + (it == lines.end() ? std::string("?") : std::to_string(it->second));
      try {
        apply_setting(config, dotted, value.data());
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
  }
}

inline RunConfig parse_config_text(const std::string& text, const std::string& subcommand = "single-run",
                                   const std::string& source = "<config>") {
  RunConfig c = preset(subcommand);
  apply_config_text(c, text, source);
  c.validate();
  return c;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read configuration file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// Preset for `subcommand`, then the file (if any), then the overrides in order; validated.
inline RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {},
                              const std::string& subcommand = "single-run") {
  RunConfig c = preset(subcommand);
  if (!path.empty()) apply_config_text(c, read_text_file(path), path);
  for (const auto& o : overrides) apply_override(c, o);
  c.validate();
  return c;
}

/// Every key with its effective value; parsing this text under the same subcommand reproduces
/// the configuration.
inline std::string effective_config(const RunConfig& config) {
  std::string out, section;
  for (const auto& [dotted, field] : detail::fields()) {
    const auto dot = dotted.find('.');
    const std::string s = dotted.substr(0, dot);
    if (s != section) {
      out += (section.empty() ? "" : "\n") + std::string("[") + s + "]\n";
      section = s;
    }
    out += dotted.substr(dot + 1) + " = " + field.get(config) + "\n";
  }
  return out;
}

}  // namespace smaxwell
