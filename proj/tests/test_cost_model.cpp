#include "support.hpp"

using namespace smaxwell;

TEST_CASE("worked example: K=1, T=1, dT=0.1, dt=0.01, N_proc=10, dT'=0.01, unit costs") {
  const CostPrediction c = predict_cost(CostModelParams{});
  CHECK(c.cost_parareal == 30.0);
  CHECK(c.cost_exp == 100.0);
  CHECK(c.efficiency == 100.0 / 30.0);
}

TEST_CASE("each term scales as the formula says") {
  CostModelParams p;
  p.K = 3;
  p.T = 2.0;
  p.delta_T = 0.25;
  p.delta_t_fine = 0.0625;
  p.tau_G = 2.0;
  p.tau_F_aux = 0.5;
  p.n_proc = 4;
  p.tau_exp = 3.0;
  p.delta_T_prime = 0.125;
  const CostPrediction c = predict_cost(p);
  // 4 * 8 * 2 + 3 * 32 * 0.5 / 4 = 64 + 12.
  CHECK(c.cost_parareal == 76.0);
  CHECK(c.cost_exp == 48.0);
  CHECK(c.efficiency == 48.0 / 76.0);
  p.K = 0;
  CHECK(predict_cost(p).cost_parareal == 8.0 * 2.0);
}

TEST_CASE("cost is linear in the horizon") {
  CostModelParams p;
  const double c1 = predict_cost(p).cost_parareal;
  p.T = 10.0;
  CHECK(predict_cost(p).cost_parareal == Catch::Approx(10.0 * c1).epsilon(1e-14));
  CHECK(predict_cost(p).efficiency == Catch::Approx(100.0 / 30.0).epsilon(1e-14));
}

TEST_CASE("parameters are validated") {
  for (auto mutate : std::vector<void (*)(CostModelParams&)>{
           [](CostModelParams& p) { p.K = -1; }, [](CostModelParams& p) { p.T = 0.0; },
           [](CostModelParams& p) { p.delta_T = -1.0; }, [](CostModelParams& p) { p.delta_t_fine = 0.0; },
           [](CostModelParams& p) { p.tau_G = std::nan(""); }, [](CostModelParams& p) { p.tau_F_aux = 0.0; },
           [](CostModelParams& p) { p.n_proc = 0; }, [](CostModelParams& p) { p.tau_exp = -2.0; },
           [](CostModelParams& p) { p.delta_T_prime = 0.0; }}) {
    CostModelParams p;
    mutate(p);
    CHECK_THROWS_AS(predict_cost(p), ValidationError);
  }
}
