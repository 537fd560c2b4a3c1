#pragma once

#include <vector>

#include "sortition/birkhoff.hpp"
#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

struct CoreViolationResult {
  // Minimal beta such that the panel is in the beta-q-core; +infinity when an
  // entitled coalition can reach cost zero.
  double alpha_star = 0.0;
  Panel witness_panel;            // alternative attaining alpha_star
  std::vector<int> witness_set;   // virtual ids with ratio >= alpha_star
};

struct OracleLimits {
  long long max_n = 14;  // virtual individuals
  int max_k = 5;
};

// Brute-force realization of the core definition: enumerates every
// alternative panel P' of size q..min(k, max_size) over virtual ids and takes
// the ceil(|P'|*N/k)-th largest cost ratio, maximized over P'. Sizes below q
// leave the q-cost undefined and sizes above k are vacuous, so both are
// excluded. max_size <= 0 means k. Refuses instances past the limits.
CoreViolationResult exact_core_violation(const MetricInstance& inst,
                                         const Panel& panel, int k, int q,
                                         int max_size = 0,
                                         const OracleLimits& limits = {});

// Same enumeration against expected q-costs under the given distribution:
// minimal beta such that no entitled coalition improves every member's
// expected cost by more than beta. Expected costs are evaluated over a common
// probability denominator so fixture values come out exact.
CoreViolationResult expected_cost_core_violation(
    const MetricInstance& inst, const PanelDistribution& dist, int k, int q,
    int max_size = 0, const OracleLimits& limits = {});

// Expected q-cost of every data point under the distribution.
std::vector<double> expected_q_costs(const MetricInstance& inst,
                                     const PanelDistribution& dist, int q);

}  // namespace sortition
