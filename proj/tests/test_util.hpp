#pragma once

#include <cmath>
#include <vector>

#include "sortition/metric.hpp"
#include "sortition/panel.hpp"
#include "sortition/rng.hpp"

namespace sortition::testutil {

// Random points in the unit square; Euclidean distances satisfy the triangle
// inequality by construction.
inline MetricInstance random_euclidean(int n, std::uint64_t seed,
                                       std::vector<long long> weights = {}) {
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = uniform_unit(rng);
    y[i] = uniform_unit(rng);
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = std::hypot(x[i] - x[j], y[i] - y[j]);
  return MetricInstance::from_distances(std::move(d), std::move(weights));
}

inline Panel random_panel(long long n, int k, Rng& rng) {
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + uniform_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return Panel(std::move(ids));
}

}  // namespace sortition::testutil
