#pragma once

// Cost of parareal against a sequential exponential run:
//
//   Cost_parareal = (K + 1) (T / dT) tau_G + K (T / dt) tau_F_aux / N_proc
//   Cost_exp      = (T / dT') tau_exp
//   E             = Cost_exp / Cost_parareal

#include <cmath>
#include <string>

#include "smaxwell/error.hpp"

namespace smaxwell {

struct CostModelParams {
  int K = 1;
  double T = 1.0;
  double delta_T = 0.1;
  double delta_t_fine = 0.01;
  double tau_G = 1.0;
  double tau_F_aux = 1.0;
  int n_proc = 10;
  double tau_exp = 1.0;
  double delta_T_prime = 0.01;

  void validate() const {
    auto positive = [](double v, const char* name) {
      detail::require(std::isfinite(v) && v > 0.0, std::string("costmodel: ") + name + " > 0");
    };
    detail::require(K >= 0, "costmodel: K >= 0");
    positive(T, "T");
    positive(delta_T, "delta_T");
    positive(delta_t_fine, "delta_t_fine");
    positive(tau_G, "tau_G");
    positive(tau_F_aux, "tau_F_aux");
    detail::require(n_proc >= 1, "costmodel: n_proc >= 1");
    positive(tau_exp, "tau_exp");
    positive(delta_T_prime, "delta_T_prime");
  }
};

struct CostPrediction {
  double cost_parareal = 0.0;
  double cost_exp = 0.0;
  double efficiency = 0.0;
};

inline CostPrediction predict_cost(const CostModelParams& p) {
  p.validate();
  CostPrediction c;
  c.cost_parareal = double(p.K + 1) * (p.T / p.delta_T) * p.tau_G +
                    double(p.K) * (p.T / p.delta_t_fine) * p.tau_F_aux / double(p.n_proc);
  c.cost_exp = (p.T / p.delta_T_prime) * p.tau_exp;
  c.efficiency = c.cost_exp / c.cost_parareal;
  return c;
}

}  // namespace smaxwell
