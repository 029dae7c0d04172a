#pragma once

// Initial state of the numerical experiments:
//   Ez(x, y, 0) = 0.1 exp(-50 ((x - 0.5)^2 + (y - 0.5)^2)),
//   Hx(x, y, 0) = r(y),  Hy(x, y, 0) = s(x),
// with r, s uniform random values that vary along one direction only.

#include <cmath>
#include <cstdint>

#include "smaxwell/grid.hpp"
#include "smaxwell/philox.hpp"

namespace smaxwell {

inline FieldState experiment_initial_state(const GridSpec& grid, std::uint64_t seed, double h_amplitude = 1.0) {
  FieldState u(grid);
  const int nx = grid.nx();
  const double h = grid.dx();
  for (int i = 1; i < nx; ++i)
    for (int j = 1; j < nx; ++j) {
      const double x = i * h - 0.5, y = j * h - 0.5;
      u.values()(grid.ez_index(i, j)) = 0.1 * std::exp(-50.0 * (x * x + y * y));
    }
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j < nx; ++j)
      u.values()(grid.hx_index(i, j)) =
          h_amplitude * counter_uniform(seed, RandomStream::initial_data, std::uint32_t(j), 1u, 0u, 0u);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j <= nx; ++j)
      u.values()(grid.hy_index(i, j)) =
          h_amplitude * counter_uniform(seed, RandomStream::initial_data, std::uint32_t(i), 2u, 0u, 0u);
  return u;
}

}  // namespace smaxwell
