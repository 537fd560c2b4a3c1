#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "sortition/birkhoff.hpp"
#include "sortition/metric.hpp"
#include "sortition/panel.hpp"
#include "sortition/rational.hpp"

namespace sortition {

// E[V_q(P, alt, alpha)] under uniform selection of k from the N virtual
// individuals, as an exact rational with denominator C(N, k). Enumerates all
// panels; refuses populations past max_n.
Rational exante_exact_uniform(const MetricInstance& inst, int k,
                              const Panel& alt, double alpha, int q,
                              long long max_n = 14);

// Same expectation over an explicit distribution's support.
Rational exante_exact(const MetricInstance& inst, const PanelDistribution& dist,
                      const Panel& alt, double alpha, int q);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  long long trials = 0;
};

using PanelSampler = std::function<Panel(std::uint64_t seed)>;

// Sample mean and standard error of V_q(P, alt, alpha) over sampled panels.
// Trial t draws the panel with a seed derived from (seed, t).
MonteCarloEstimate exante_monte_carlo(const MetricInstance& inst,
                                      const PanelSampler& sampler,
                                      const Panel& alt, double alpha, int q,
                                      long long trials, std::uint64_t seed);

// Hypergeometric tail bound on the probability that a uniform panel meets a
// prefix of j individuals fewer than q times:
// sum_{r=0}^{q-1} C(j,r) * C(n-j, k-r) / C(n,k).
Rational exante_uniform_bound(long long n, int k, int q, long long j);

// Both sides of sum_{j=0}^{n} C(j,r) * C(n-j, k-r) = C(n+1, k+1).
std::pair<long long, long long> chu_vandermonde_check(int n, int k, int r);

}  // namespace sortition
