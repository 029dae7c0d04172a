#pragma once

// Monte Carlo mean-square errors and least-squares order fits.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "smaxwell/error.hpp"
#include "smaxwell/parareal.hpp"

namespace smaxwell {

struct MeanSquareError {
  /// sup_n sqrt(mean over samples of eps_n).
  double value = 0.0;
  /// 95% half-width of `value`: 1.96 std(eps_{n*}) / sqrt(M), carried to the square-root
  /// scale by the delta method. Zero when M = 1 or value = 0.
  double halfwidth = 0.0;
  /// Time index n* attaining the supremum.
  std::size_t n_star = 0;
  std::size_t samples = 0;
};

/// eps[s][n] = ||u_n - u_n^ref||_H^2 of sample s. Samples are summed in index order.
inline MeanSquareError mean_square_error(const std::vector<const std::vector<double>*>& eps) {
  detail::require(!eps.empty(), "mean_square_error: no samples");
  const std::size_t len = eps.front()->size();
  detail::require(len >= 1, "mean_square_error: empty error sequence");
  for (const auto* e : eps) detail::require(e->size() == len, "mean_square_error: samples of different length");

  const double m = double(eps.size());
  MeanSquareError out;
  out.samples = eps.size();
  double best = -1.0;
  for (std::size_t n = 0; n < len; ++n) {
    double sum = 0.0;
    for (const auto* e : eps) {
      detail::require((*e)[n] >= 0.0 && std::isfinite((*e)[n]), "mean_square_error: invalid squared error");
      sum += (*e)[n];
    }
    if (sum / m > best) {
      best = sum / m;
      out.n_star = n;
    }
  }
  out.value = std::sqrt(best);
  if (eps.size() > 1 && best > 0.0) {
    double ss = 0.0;
    for (const auto* e : eps) ss += ((*e)[out.n_star] - best) * ((*e)[out.n_star] - best);
    const double sd = std::sqrt(ss / (m - 1.0));
    out.halfwidth = 1.96 * sd / std::sqrt(m) / (2.0 * out.value);
  }
  return out;
}

inline MeanSquareError mean_square_error(const std::vector<std::vector<double>>& eps) {
  std::vector<const std::vector<double>*> ptrs;
  for (const auto& e : eps) ptrs.push_back(&e);
  return mean_square_error(ptrs);
}

/// Mean-square error of iterate k over a set of runs of one configuration.
inline MeanSquareError mean_square_error(const std::vector<PararealRun>& runs, int k) {
  detail::require(!runs.empty(), "mean_square_error: no runs");
  std::vector<const std::vector<double>*> ptrs;
  for (const auto& r : runs) {
    detail::require(k >= 0 && std::size_t(k) < r.errors.size(), "mean_square_error: iterate " + std::to_string(k) +
                                                                      " not available in every run");
    detail::require(r.errors[std::size_t(k)].size() == runs.front().errors[std::size_t(k)].size(),
                    "mean_square_error: runs have mismatched configurations");
    ptrs.push_back(&r.errors[std::size_t(k)]);
  }
  return mean_square_error(ptrs);
}

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit in log2 units.
  double residual = 0.0;
};

/// Least-squares fit of log2 e = intercept + slope log2 h over the points (h, e).
inline OrderFit estimate_order(const std::vector<std::pair<double, double>>& points) {
  detail::require(points.size() >= 3, "estimate_order: at least 3 points are required");
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (const auto& [h, e] : points) {
    detail::require(h > 0.0 && e > 0.0 && std::isfinite(h) && std::isfinite(e),
                    "estimate_order: step sizes and errors must be positive and finite");
    xs.push_back(std::log2(h));
    ys.push_back(std::log2(e));
    sx += xs.back();
    sy += ys.back();
  }
  const double n = double(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      detail::require(xs[i] != xs[j], "estimate_order: step sizes must be distinct");

  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace smaxwell
