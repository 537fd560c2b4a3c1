#pragma once

#include <cstdint>

#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

// Weighted sum of q-costs over the population.
double social_cost(const MetricInstance& inst, const Panel& panel, int q);

enum class OptMethod { brute, greedy };

struct GreedyOptions {
  int restarts = 5;       // first start is the nearest-neighbor heuristic
  int max_steps = 200;    // hill-climb iterations per restart
  std::uint64_t seed = 0;
};

struct OptSocialCost {
  Panel panel;
  double cost = 0.0;
};

// Lowest-social-cost panel. brute enumerates every size-k subset of virtual
// ids (refused past max_n virtual individuals); greedy hill-climbs single
// seat swaps from a q-th-nearest-neighbor start plus random restarts, and is
// only a heuristic stand-in for the optimum.
OptSocialCost opt_social_cost(const MetricInstance& inst, int k, int q,
                              OptMethod method, const GreedyOptions& opts = {},
                              long long max_n = 14);

}  // namespace sortition
