#include "sortition/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sortition/audit.hpp"

namespace sortition {

namespace {

double cost_ratio(double cost, double denom) {
  if (denom == 0.0)
    return cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return cost / denom;
}

// Lexicographic enumeration of size-s subsets of [0, n); returns false when
// exhausted.
bool next_combination(std::vector<int>& idx, int n) {
  int s = static_cast<int>(idx.size());
  for (int i = s - 1; i >= 0; --i) {
    if (idx[i] < n - s + i) {
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void check_limits(const MetricInstance& inst, int k, const OracleLimits& lim) {
  if (inst.total_weight() > lim.max_n)
    throw std::invalid_argument(
        "exact enumeration refused: " + std::to_string(inst.total_weight()) +
        " virtual individuals exceed the cap of " + std::to_string(lim.max_n) +
        " (raise limits explicitly for a longer run)");
  if (k > lim.max_k)
    throw std::invalid_argument("exact enumeration refused: k=" +
                                std::to_string(k) + " exceeds the cap of " +
                                std::to_string(lim.max_k));
}

// Shared sweep: maximize the entitled order statistic of cost(b) / c_q(b, P')
// over alternatives P'.
CoreViolationResult sweep_alternatives(const MetricInstance& inst,
                                       const std::vector<double>& cost, int k,
                                       int q, int max_size) {
  const long long N = inst.total_weight();
  const int max_s = max_size <= 0 ? k : std::min(max_size, k);
  if (q > max_s)
    throw std::invalid_argument("no alternative sizes to enumerate: q > k");

  CoreViolationResult best;
  best.alpha_star = -1.0;
  for (int s = q; s <= max_s; ++s) {
    const long long entitled = (static_cast<long long>(s) * N + k - 1) / k;
    std::vector<int> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    do {
      Panel alt{std::vector<int>(idx)};
      std::vector<std::pair<double, long long>> ratios;
      ratios.reserve(inst.n());
      for (int b = 0; b < inst.n(); ++b)
        ratios.emplace_back(cost_ratio(cost[b], q_cost_base(inst, b, alt, q)),
                            inst.weight(b));
      double alpha = weighted_order_statistic(ratios, entitled);
      if (alpha > best.alpha_star) {
        best.alpha_star = alpha;
        best.witness_panel = alt;
        best.witness_set.clear();
        for (int b = 0; b < inst.n(); ++b) {
          double r = cost_ratio(cost[b], q_cost_base(inst, b, alt, q));
          if (r >= alpha) {
            long long first = inst.first_virtual(b);
            for (long long v = first; v < first + inst.weight(b); ++v)
              best.witness_set.push_back(static_cast<int>(v));
          }
        }
      }
    } while (next_combination(idx, static_cast<int>(N)));
  }
  return best;
}

}  // namespace

CoreViolationResult exact_core_violation(const MetricInstance& inst,
                                         const Panel& panel, int k, int q,
                                         int max_size,
                                         const OracleLimits& limits) {
  if (panel.k() != k) throw std::invalid_argument("panel size != k");
  if (q < 1 || q > k) throw std::invalid_argument("q must be in [1, k]");
  panel.check_range(inst.total_weight());
  check_limits(inst, k, limits);
  std::vector<double> cost(inst.n());
  for (int b = 0; b < inst.n(); ++b) cost[b] = q_cost_base(inst, b, panel, q);
  return sweep_alternatives(inst, cost, k, q, max_size);
}

std::vector<double> expected_q_costs(const MetricInstance& inst,
                                     const PanelDistribution& dist, int q) {
  long long den = 1;
  for (const auto& e : dist.entries) {
    long long g = std::gcd(den, e.lambda.den());
    __int128 l = static_cast<__int128>(den) / g * e.lambda.den();
    if (l > INT64_MAX) throw std::overflow_error("probability denominator");
    den = static_cast<long long>(l);
  }
  std::vector<double> expected(inst.n(), 0.0);
  for (const auto& e : dist.entries) {
    double scaled = static_cast<double>(e.lambda.num() * (den / e.lambda.den()));
    for (int b = 0; b < inst.n(); ++b)
      expected[b] += scaled * q_cost_base(inst, b, e.panel, q);
  }
  for (double& v : expected) v /= static_cast<double>(den);
  return expected;
}

CoreViolationResult expected_cost_core_violation(const MetricInstance& inst,
                                                 const PanelDistribution& dist,
                                                 int k, int q, int max_size,
                                                 const OracleLimits& limits) {
  if (q < 1 || q > k) throw std::invalid_argument("q must be in [1, k]");
  dist.check();
  check_limits(inst, k, limits);
  std::vector<double> cost = expected_q_costs(inst, dist, q);
  return sweep_alternatives(inst, cost, k, q, max_size);
}

}  // namespace sortition
