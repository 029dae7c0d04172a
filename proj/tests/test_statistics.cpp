#include "support.hpp"

using namespace smaxwell;

TEST_CASE("mean-square error takes the supremum of the root mean over time indices") {
  const std::vector<std::vector<double>> eps{{0.0, 4.0, 1.0}, {0.0, 0.0, 9.0}, {0.0, 2.0, 2.0}};
  const MeanSquareError e = mean_square_error(eps);
  // Means 0, 2, 4: the supremum sits at n = 2.
  CHECK(e.n_star == 2);
  CHECK(e.value == 2.0);
  CHECK(e.samples == 3);
  // std of {1, 9, 2} is sqrt(19), carried through d sqrt(x) = dx / (2 sqrt(x)).
  CHECK(e.halfwidth == Catch::Approx(1.96 * std::sqrt(19.0) / std::sqrt(3.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("single samples and zero errors have no half-width") {
  CHECK(mean_square_error(std::vector<std::vector<double>>{{0.0, 0.25}}).halfwidth == 0.0);
  const auto z = mean_square_error(std::vector<std::vector<double>>{{0.0, 0.0}, {0.0, 0.0}});
  CHECK(z.value == 0.0);
  CHECK(z.halfwidth == 0.0);
}

TEST_CASE("malformed error sets are rejected") {
  CHECK_THROWS_AS(mean_square_error(std::vector<std::vector<double>>{}), ValidationError);
  CHECK_THROWS_AS(mean_square_error(std::vector<std::vector<double>>{{}}), ValidationError);
  CHECK_THROWS_AS(mean_square_error(std::vector<std::vector<double>>{{1.0}, {1.0, 2.0}}), ValidationError);
  CHECK_THROWS_AS(mean_square_error(std::vector<std::vector<double>>{{-1.0}}), ValidationError);
  CHECK_THROWS_AS(mean_square_error(std::vector<std::vector<double>>{{std::nan("")}}), ValidationError);
  std::vector<PararealRun> runs(2);
  runs[0].errors = {{0.0, 1.0}};
  runs[1].errors = {{0.0, 1.0, 2.0}};
  CHECK_THROWS_AS(mean_square_error(runs, 0), ValidationError);
  CHECK_THROWS_AS(mean_square_error(runs, 1), ValidationError);
  runs[1].errors = {{0.0, 3.0}};
  CHECK(mean_square_error(runs, 0).value == std::sqrt(2.0));
}

TEST_CASE("order fit recovers exact power laws") {
  std::vector<std::pair<double, double>> pts;
  for (int e = 6; e <= 9; ++e) {
    const double h = std::ldexp(1.0, -e);
    pts.emplace_back(h, 3.0 * std::pow(h, 1.5));
  }
  const OrderFit f = estimate_order(pts);
  CHECK(f.slope == Catch::Approx(1.5).epsilon(1e-13));
  CHECK(f.intercept == Catch::Approx(std::log2(3.0)).epsilon(1e-13));
  CHECK(f.residual < 1e-13);
}

TEST_CASE("order fit matches hand-computed least squares on inexact data") {
  // log2 h = -1, -2, -3 and log2 e = -1, -3, -4: slope 3/2, intercept 1/3, residuals 1/6, -1/3, 1/6.
  const OrderFit f = estimate_order({{0.5, 0.5}, {0.25, 0.125}, {0.125, 0.0625}});
  CHECK(f.slope == Catch::Approx(1.5).epsilon(1e-14));
  CHECK(f.intercept == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(f.residual == Catch::Approx(std::sqrt((1.0 / 36 + 1.0 / 9 + 1.0 / 36) / 3.0)).epsilon(1e-13));
}

TEST_CASE("order fit preconditions") {
  CHECK_THROWS_AS(estimate_order({{0.5, 1.0}, {0.25, 1.0}}), ValidationError);
  CHECK_THROWS_AS(estimate_order({{0.5, 1.0}, {0.25, 0.0}, {0.125, 1.0}}), ValidationError);
  CHECK_THROWS_AS(estimate_order({{0.5, 1.0}, {0.5, 2.0}, {0.125, 1.0}}), ValidationError);
  CHECK_THROWS_AS(estimate_order({{-0.5, 1.0}, {0.25, 2.0}, {0.125, 1.0}}), ValidationError);
}
