#pragma once

// Drift F and diffusion B as pointwise (Nemytskii) maps applied to every stored value.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "smaxwell/error.hpp"
#include "smaxwell/grid.hpp"

namespace smaxwell {

enum class DriftKind { u_plus_cos, cos, zero, linear, constant };
enum class DiffusionKind { sin, identity, zero, constant };

struct NonlinearitySpec {
  DriftKind drift = DriftKind::cos;
  double drift_param = 0.0;  // slope for linear, value for constant
  DiffusionKind diffusion = DiffusionKind::identity;
  double diffusion_param = 0.0;  // value for constant

  double drift_value(double v) const {
    switch (drift) {
      case DriftKind::u_plus_cos: return v + std::cos(v);
      case DriftKind::cos: return std::cos(v);
      case DriftKind::zero: return 0.0;
      case DriftKind::linear: return drift_param * v;
      case DriftKind::constant: return drift_param;
    }
    return 0.0;
  }
  double diffusion_value(double v) const {
    switch (diffusion) {
      case DiffusionKind::sin: return std::sin(v);
      case DiffusionKind::identity: return v;
      case DiffusionKind::zero: return 0.0;
      case DiffusionKind::constant: return diffusion_param;
    }
    return 0.0;
  }

  double drift_lipschitz() const {
    switch (drift) {
      case DriftKind::u_plus_cos: return 2.0;
      case DriftKind::cos: return 1.0;
      case DriftKind::zero: return 0.0;
      case DriftKind::linear: return std::abs(drift_param);
      case DriftKind::constant: return 0.0;
    }
    return 0.0;
  }
  double diffusion_lipschitz() const {
    switch (diffusion) {
      case DiffusionKind::sin: return 1.0;
      case DiffusionKind::identity: return 1.0;
      case DiffusionKind::zero: return 0.0;
      case DiffusionKind::constant: return 0.0;
    }
    return 0.0;
  }

  bool deterministic() const { return diffusion == DiffusionKind::zero; }
  bool drift_is_zero() const { return drift == DriftKind::zero || (drift == DriftKind::constant && drift_param == 0.0); }
};

namespace detail {

inline std::string format_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Parses "name" or "name(value)".
inline void split_kind(const std::string& text, std::string& name, double& param, bool& has_param) {
  const auto open = text.find('(');
  has_param = open != std::string::npos;
  name = text.substr(0, open);
  param = 0.0;
  if (!has_param) return;
  require(text.back() == ')', "nonlinearity: malformed '" + text + "'");
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  char* end = nullptr;
  param = std::strtod(inner.c_str(), &end);
  require(!inner.empty() && end && *end == '\0' && std::isfinite(param),
          "nonlinearity: bad parameter in '" + text + "'");
}

}  // namespace detail

inline DriftKind parse_drift(const std::string& text, double& param) {
  std::string name;
  bool has_param = false;
  detail::split_kind(text, name, param, has_param);
  auto plain = [&](DriftKind k) {
    detail::require(!has_param, "drift '" + name + "' takes no parameter");
    return k;
  };
  if (name == "u_plus_cos") return plain(DriftKind::u_plus_cos);
  if (name == "cos") return plain(DriftKind::cos);
  if (name == "zero") return plain(DriftKind::zero);
  if (name == "linear" && has_param) return DriftKind::linear;
  if (name == "constant" && has_param) return DriftKind::constant;
  throw ValidationError("unknown drift kind '" + text +
                        "' (expected u_plus_cos, cos, zero, linear(a) or constant(c))");
}

inline DiffusionKind parse_diffusion(const std::string& text, double& param) {
  std::string name;
  bool has_param = false;
  detail::split_kind(text, name, param, has_param);
  auto plain = [&](DiffusionKind k) {
    detail::require(!has_param, "diffusion '" + name + "' takes no parameter");
    return k;
  };
  if (name == "sin") return plain(DiffusionKind::sin);
  if (name == "identity") return plain(DiffusionKind::identity);
  if (name == "zero") return plain(DiffusionKind::zero);
  if (name == "constant" && has_param) return DiffusionKind::constant;
  throw ValidationError("unknown diffusion kind '" + text + "' (expected sin, identity, zero or constant(c))");
}

inline std::string drift_name(const NonlinearitySpec& s) {
  switch (s.drift) {
    case DriftKind::u_plus_cos: return "u_plus_cos";
    case DriftKind::cos: return "cos";
    case DriftKind::zero: return "zero";
    case DriftKind::linear: return "linear(" + detail::format_param(s.drift_param) + ")";
    case DriftKind::constant: return "constant(" + detail::format_param(s.drift_param) + ")";
  }
  return "?";
}

inline std::string diffusion_name(const NonlinearitySpec& s) {
  switch (s.diffusion) {
    case DiffusionKind::sin: return "sin";
    case DiffusionKind::identity: return "identity";
    case DiffusionKind::zero: return "zero";
    case DiffusionKind::constant: return "constant(" + detail::format_param(s.diffusion_param) + ")";
  }
  return "?";
}

inline NonlinearitySpec parse_nonlinearity(const std::string& drift, const std::string& diffusion) {
  NonlinearitySpec s;
  s.drift = parse_drift(drift, s.drift_param);
  s.diffusion = parse_diffusion(diffusion, s.diffusion_param);
  return s;
}

/// F(u): f applied to every stored value.
inline FieldState apply_drift(const NonlinearitySpec& spec, const FieldState& u) {
  detail::require(u.all_finite(), "apply_drift: non-finite input state");
  FieldState out(u.grid());
  out.values() = u.values().unaryExpr([&spec](double v) { return spec.drift_value(v); });
  return out;
}

/// B(u) dW: g(u) times the noise increment, pointwise per component.
inline FieldState apply_diffusion(const NonlinearitySpec& spec, const FieldState& u, const FieldState& dw) {
  dw.check_conforms(u.grid());
  detail::require(u.all_finite(), "apply_diffusion: non-finite input state");
  FieldState out(u.grid());
  out.values() = u.values().unaryExpr([&spec](double v) { return spec.diffusion_value(v); }).cwiseProduct(dw.values());
  return out;
}

}  // namespace smaxwell
