#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tsfrac/timescale.hpp"

namespace testing_support {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// Distinct sorted points in [0, span), always containing 0.
inline std::vector<double> random_points(std::mt19937_64& rng, int n, double span) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<double> xs{0.0};
  while (static_cast<int>(xs.size()) < n) {
    const double x = u(rng);
    if (std::all_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) > 1e-3; }))
      xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

inline tsfrac::TimeScale random_discrete(std::mt19937_64& rng, int n, double span = 3.0) {
  return tsfrac::TimeScale::points(random_points(rng, n, span));
}

}  // namespace testing_support
