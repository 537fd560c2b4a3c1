#pragma once

#include <vector>

#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

struct CenterAudit {
  int center = -1;      // data point id
  Panel nearest_panel;  // q seats: the center plus its q-1 nearest neighbors
  double alpha = 0.0;   // may be +infinity
};

struct AuditReport {
  int k = 0;
  int q = 0;
  double alpha_hat = 0.0;  // max over centers; may be +infinity
  std::vector<CenterAudit> centers;
};

// The q-seat panel around point j: one seat for j itself, then the q-1
// nearest individuals by (distance, virtual id); a point's surplus copies
// compete at distance zero.
Panel nearest_neighbor_panel(const MetricInstance& inst, int j, int q);

// Estimates how much the panel violates the q-core: for every point j the
// ceil(q*N/k)-th largest cost ratio c_q(i, panel) / c_q(i, nearest panel of j)
// over the weight-expanded population, maximized over j. Ratio conventions:
// positive/0 is +infinity and 0/0 is 1. The true violation alpha satisfies
// alpha_hat <= alpha <= 3*alpha_hat + 2.
AuditReport audit_panel(const MetricInstance& inst, const Panel& panel, int k,
                        int q);

// The T-th largest value of a weighted multiset given as (value, multiplicity)
// pairs; used for entitled order statistics throughout.
double weighted_order_statistic(std::vector<std::pair<double, long long>> items,
                                long long t);

}  // namespace sortition
