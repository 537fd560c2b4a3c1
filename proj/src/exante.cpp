#include "sortition/exante.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortition/rng.hpp"

namespace sortition {

namespace {

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

long long preference_count_cached(const MetricInstance& inst,
                                  const Panel& panel,
                                  const std::vector<double>& alt_cost,
                                  double alpha, int q) {
  long long count = 0;
  for (int b = 0; b < inst.n(); ++b)
    if (q_cost_base(inst, b, panel, q) > alpha * alt_cost[b])
      count += inst.weight(b);
  return count;
}

}  // namespace

Rational exante_exact_uniform(const MetricInstance& inst, int k,
                              const Panel& alt, double alpha, int q,
                              long long max_n) {
  const long long N = inst.total_weight();
  if (N > max_n)
    throw std::invalid_argument(
        "exact uniform expectation refused: " + std::to_string(N) +
        " virtual individuals exceed the cap of " + std::to_string(max_n) +
        " (raise max_n explicitly for a longer run)");
  if (k < 1 || k > N) throw std::invalid_argument("k must be in [1, N]");
  if (q < 1 || q > k || q > alt.k())
    throw std::invalid_argument("q must be in [1, min(k, |alt|)]");
  alt.check_range(N);

  std::vector<double> alt_cost(inst.n());
  for (int b = 0; b < inst.n(); ++b) alt_cost[b] = q_cost_base(inst, b, alt, q);

  long long total = 0;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    Panel panel{std::vector<int>(idx)};
    total += preference_count_cached(inst, panel, alt_cost, alpha, q);
  } while (next_combination(idx, static_cast<int>(N)));
  return Rational(total, binomial(N, k));
}

Rational exante_exact(const MetricInstance& inst, const PanelDistribution& dist,
                      const Panel& alt, double alpha, int q) {
  dist.check();
  if (q < 1 || q > dist.k || q > alt.k())
    throw std::invalid_argument("q must be in [1, min(k, |alt|)]");
  alt.check_range(inst.total_weight());
  std::vector<double> alt_cost(inst.n());
  for (int b = 0; b < inst.n(); ++b) alt_cost[b] = q_cost_base(inst, b, alt, q);
  Rational total(0);
  for (const auto& e : dist.entries)
    total += e.lambda *
             Rational(preference_count_cached(inst, e.panel, alt_cost, alpha, q));
  return total;
}

MonteCarloEstimate exante_monte_carlo(const MetricInstance& inst,
                                      const PanelSampler& sampler,
                                      const Panel& alt, double alpha, int q,
                                      long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<double> alt_cost(inst.n());
  for (int b = 0; b < inst.n(); ++b) alt_cost[b] = q_cost_base(inst, b, alt, q);

  double sum = 0.0, sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    Panel panel = sampler(derive_seed(seed, static_cast<std::uint64_t>(t)));
    double v = static_cast<double>(
        preference_count_cached(inst, panel, alt_cost, alpha, q));
    sum += v;
    sum_sq += v * v;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double var =
        (sum_sq - sum * sum / static_cast<double>(trials)) /
        static_cast<double>(trials - 1);
    est.stderr_of_mean = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
  }
  return est;
}

Rational exante_uniform_bound(long long n, int k, int q, long long j) {
  if (j < 0 || j > n || q < 1 || q > k || k > n)
    throw std::invalid_argument("need 0 <= j <= n and 1 <= q <= k <= n");
  __int128 num = 0;
  for (int r = 0; r < q; ++r)
    num += static_cast<__int128>(binomial(j, r)) * binomial(n - j, k - r);
  if (num > INT64_MAX) throw std::overflow_error("hypergeometric numerator");
  return Rational(static_cast<long long>(num), binomial(n, k));
}

std::pair<long long, long long> chu_vandermonde_check(int n, int k, int r) {
  if (r < 0 || r > k || k > n)
    throw std::invalid_argument("need 0 <= r <= k <= n");
  __int128 lhs = 0;
  for (int j = 0; j <= n; ++j)
    lhs += static_cast<__int128>(binomial(j, r)) * binomial(n - j, k - r);
  if (lhs > INT64_MAX) throw std::overflow_error("identity sum overflow");
  return {static_cast<long long>(lhs), binomial(n + 1, k + 1)};
}

}  // namespace sortition
