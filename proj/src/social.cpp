#include "sortition/social.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sortition/rng.hpp"
#include "sortition/selectors.hpp"

namespace sortition {

double social_cost(const MetricInstance& inst, const Panel& panel, int q) {
  double total = 0.0;
  for (int b = 0; b < inst.n(); ++b)
    total += static_cast<double>(inst.weight(b)) * q_cost_base(inst, b, panel, q);
  return total;
}

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

OptSocialCost brute_opt(const MetricInstance& inst, int k, int q,
                        long long max_n) {
  const long long N = inst.total_weight();
  if (N > max_n)
    throw std::invalid_argument(
        "brute-force social cost refused: " + std::to_string(N) +
        " virtual individuals exceed the cap of " + std::to_string(max_n));
  OptSocialCost best;
  best.cost = -1.0;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    Panel panel{std::vector<int>(idx)};
    double cost = social_cost(inst, panel, q);
    if (best.cost < 0 || cost < best.cost) {
      best.cost = cost;
      best.panel = std::move(panel);
    }
  } while (next_combination(idx, static_cast<int>(N)));
  return best;
}

// Start panel: seats filled in order of each point's distance to its q-th
// nearest individual (own copies count), ties by id.
Panel nearest_neighbor_start(const MetricInstance& inst, int k, int q) {
  std::vector<std::pair<double, int>> rank(inst.n());
  for (int b = 0; b < inst.n(); ++b) {
    std::vector<std::pair<double, long long>> around;
    around.reserve(inst.n());
    for (int o = 0; o < inst.n(); ++o)
      around.emplace_back(inst.dist(b, o), inst.weight(o));
    std::sort(around.begin(), around.end());
    long long seen = 0;
    double qdist = around.back().first;
    for (const auto& [d, w] : around) {
      seen += w;
      if (seen >= q) {
        qdist = d;
        break;
      }
    }
    rank[b] = {qdist, b};
  }
  std::sort(rank.begin(), rank.end());
  std::vector<int> ids;
  ids.reserve(k);
  for (const auto& [d, b] : rank) {
    long long first = inst.first_virtual(b);
    for (long long t = 0; t < inst.weight(b) && static_cast<int>(ids.size()) < k;
         ++t)
      ids.push_back(static_cast<int>(first + t));
    if (static_cast<int>(ids.size()) == k) break;
  }
  return Panel(std::move(ids));
}

// First-improvement hill climbing over single seat swaps. Co-located copies
// are interchangeable, so only the lowest free virtual id of each point is
// tried as a replacement.
double climb(const MetricInstance& inst, int q, std::vector<int>& seats,
             int max_steps) {
  double cost = social_cost(inst, Panel(std::vector<int>(seats)), q);
  for (int step = 0; step < max_steps; ++step) {
    bool improved = false;
    for (std::size_t pos = 0; pos < seats.size() && !improved; ++pos) {
      std::vector<int> sorted_seats = seats;
      std::sort(sorted_seats.begin(), sorted_seats.end());
      for (int b = 0; b < inst.n() && !improved; ++b) {
        long long first = inst.first_virtual(b);
        int candidate = -1;
        for (long long v = first; v < first + inst.weight(b); ++v) {
          if (!std::binary_search(sorted_seats.begin(), sorted_seats.end(),
                                  static_cast<int>(v))) {
            candidate = static_cast<int>(v);
            break;
          }
        }
        if (candidate < 0) continue;
        int old = seats[pos];
        seats[pos] = candidate;
        double trial = social_cost(inst, Panel(std::vector<int>(seats)), q);
        if (trial < cost) {
          cost = trial;
          improved = true;
        } else {
          seats[pos] = old;
        }
      }
    }
    if (!improved) break;
  }
  return cost;
}

OptSocialCost greedy_opt(const MetricInstance& inst, int k, int q,
                         const GreedyOptions& opts) {
  const long long N = inst.total_weight();
  OptSocialCost best;
  best.cost = -1.0;
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    Panel start = r == 0 ? nearest_neighbor_start(inst, k, q)
                         : uniform_sample(N, k, derive_seed(opts.seed, r));
    std::vector<int> seats = start.members;
    double cost = climb(inst, q, seats, opts.max_steps);
    if (best.cost < 0 || cost < best.cost) {
      best.cost = cost;
      best.panel = Panel(std::move(seats));
    }
  }
  return best;
}

}  // namespace

OptSocialCost opt_social_cost(const MetricInstance& inst, int k, int q,
                              OptMethod method, const GreedyOptions& opts,
                              long long max_n) {
  if (k < 1 || k > inst.total_weight())
    throw std::invalid_argument("k must be in [1, N]");
  if (q < 1 || q > k) throw std::invalid_argument("q must be in [1, k]");
  return method == OptMethod::brute ? brute_opt(inst, k, q, max_n)
                                    : greedy_opt(inst, k, q, opts);
}

}  // namespace sortition
