#include "sortition/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sortition {

namespace {

double cost_ratio(double cp, double ca) {
  if (ca == 0.0)
    return cp == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return cp / ca;
}

}  // namespace

double weighted_order_statistic(std::vector<std::pair<double, long long>> items,
                                long long t) {
  if (t < 1) throw std::invalid_argument("order statistic index must be >= 1");
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  long long cum = 0;
  for (const auto& [value, mult] : items) {
    cum += mult;
    if (cum >= t) return value;
  }
  throw std::invalid_argument("order statistic index exceeds total multiplicity");
}

Panel nearest_neighbor_panel(const MetricInstance& inst, int j, int q) {
  if (j < 0 || j >= inst.n()) throw std::invalid_argument("bad center id");
  if (q < 1 || q > inst.total_weight())
    throw std::invalid_argument("bad neighborhood size q");
  std::vector<int> order(inst.n());
  for (int b = 0; b < inst.n(); ++b) order[b] = b;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double da = inst.dist(j, a), db = inst.dist(j, b);
    if (da != db) return da < db;
    return a < b;
  });

  std::vector<int> ids;
  ids.reserve(q);
  ids.push_back(static_cast<int>(inst.first_virtual(j)));
  long long used_j = 1;
  long long need = q - 1;
  for (int b : order) {
    if (need == 0) break;
    long long avail = inst.weight(b) - (b == j ? used_j : 0);
    long long start = inst.first_virtual(b) + (b == j ? used_j : 0);
    long long take = std::min(need, avail);
    for (long long t = 0; t < take; ++t)
      ids.push_back(static_cast<int>(start + t));
    need -= take;
  }
  if (need != 0) throw std::logic_error("population smaller than q");
  return Panel(std::move(ids));
}

AuditReport audit_panel(const MetricInstance& inst, const Panel& panel, int k,
                        int q) {
  const long long N = inst.total_weight();
  if (panel.k() != k)
    throw std::invalid_argument("panel size " + std::to_string(panel.k()) +
                                " does not match k=" + std::to_string(k));
  if (q < 1 || q > k) throw std::invalid_argument("q must be in [1, k]");
  panel.check_range(N);
  const long long entitled = (static_cast<long long>(q) * N + k - 1) / k;

  std::vector<double> cost_p(inst.n());
  for (int b = 0; b < inst.n(); ++b) cost_p[b] = q_cost_base(inst, b, panel, q);

  AuditReport report;
  report.k = k;
  report.q = q;
  report.alpha_hat = 0.0;
  report.centers.reserve(inst.n());
  for (int j = 0; j < inst.n(); ++j) {
    CenterAudit ca;
    ca.center = j;
    ca.nearest_panel = nearest_neighbor_panel(inst, j, q);
    std::vector<std::pair<double, long long>> ratios;
    ratios.reserve(inst.n());
    for (int b = 0; b < inst.n(); ++b) {
      double cb = q_cost_base(inst, b, ca.nearest_panel, q);
      ratios.emplace_back(cost_ratio(cost_p[b], cb), inst.weight(b));
    }
    ca.alpha = weighted_order_statistic(std::move(ratios), entitled);
    report.alpha_hat = std::max(report.alpha_hat, ca.alpha);
    report.centers.push_back(std::move(ca));
  }
  return report;
}

}  // namespace sortition
