#include "sortition/selectors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sortition/rng.hpp"

namespace sortition {

SelectorKind selector_from_name(const std::string& name) {
  if (name == "uniform") return SelectorKind::uniform;
  if (name == "fgc") return SelectorKind::fgc;
  if (name == "afgc") return SelectorKind::afgc;
  throw std::invalid_argument("unknown selector '" + name + "'");
}

std::string selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::uniform: return "uniform";
    case SelectorKind::fgc: return "fgc";
    case SelectorKind::afgc: return "afgc";
  }
  return "?";
}

void SelectorConfig::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (kind == SelectorKind::afgc && (q < 1 || q > k))
    throw std::invalid_argument("afgc requires 1 <= q <= k");
}

Panel uniform_sample(long long n, int k, std::uint64_t seed) {
  if (k < 1 || k > n)
    throw std::invalid_argument("uniform_sample requires 1 <= k <= n");
  if (n > INT32_MAX) throw std::invalid_argument("population too large");
  std::vector<int> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + uniform_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(k);
  return Panel(std::move(ids));
}

Panel afgc_sample(const MetricInstance& inst, int k, int q,
                  std::uint64_t seed) {
  const int n = inst.n();
  const long long N = inst.total_weight();
  if (k < 1 || k > N || q < 1 || q > k)
    throw std::invalid_argument("afgc_sample requires 1 <= q <= k <= N");
  if (N > 1'000'000) throw std::invalid_argument("population too large");

  const long long m = (static_cast<long long>(q) * N + k - 1) / k;  // ceil(qN/k)
  Rng rng(seed);

  // rem[b]: individuals of point b still under consideration. Individuals
  // leave in ascending virtual id order, so point b's remaining ids are the
  // tail of its range.
  std::vector<long long> rem(n);
  for (int b = 0; b < n; ++b) rem[b] = inst.weight(b);
  long long r_size = N;

  std::vector<int> panel_ids;
  auto in_panel = [&](long long vid) {
    return std::binary_search(panel_ids.begin(), panel_ids.end(),
                              static_cast<int>(vid));
  };

  if (r_size >= m) {
    std::vector<std::vector<int>> order(n);
    for (int c = 0; c < n; ++c) {
      order[c].resize(n);
      std::iota(order[c].begin(), order[c].end(), 0);
      std::sort(order[c].begin(), order[c].end(), [&](int a, int b) {
        double da = inst.dist(c, a), db = inst.dist(c, b);
        if (da != db) return da < db;
        return a < b;
      });
    }
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) radii.push_back(inst.dist(i, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<int> reach(n, 0);           // prefix of order[c] inside the ball
    std::vector<long long> captured(n, 0);  // remaining individuals inside
    std::vector<std::vector<int>> coverers(n);

    for (double delta : radii) {
      if (r_size < m) break;
      for (int c = 0; c < n; ++c) {
        while (reach[c] < n && inst.dist(c, order[c][reach[c]]) <= delta) {
          int b = order[c][reach[c]];
          captured[c] += rem[b];
          coverers[b].push_back(c);
          ++reach[c];
        }
      }
      bool detected = true;
      while (detected && r_size >= m) {
        detected = false;
        for (int c = 0; c < n; ++c) {
          if (rem[c] == 0 || captured[c] < m) continue;
          // Freeze this ball: keep the m closest remaining individuals.
          std::vector<int> taken;
          taken.reserve(static_cast<std::size_t>(m));
          long long need = m;
          for (int idx = 0; idx < reach[c] && need > 0; ++idx) {
            int b = order[c][idx];
            if (rem[b] == 0) continue;
            long long take = std::min(need, rem[b]);
            long long first_left = inst.first_virtual(b) + inst.weight(b) - rem[b];
            for (long long t = 0; t < take; ++t)
              taken.push_back(static_cast<int>(first_left + t));
            rem[b] -= take;
            need -= take;
            for (int cov : coverers[b]) captured[cov] -= take;
          }
          if (need != 0) throw std::logic_error("ball detected without quota");
          r_size -= m;
          // q of the frozen individuals join the panel, uniformly at random.
          for (int t = 0; t < q; ++t) {
            std::size_t j =
                t + uniform_below(rng, static_cast<std::uint64_t>(taken.size() - t));
            std::swap(taken[t], taken[j]);
          }
          panel_ids.insert(panel_ids.end(), taken.begin(), taken.begin() + q);
          std::sort(panel_ids.begin(), panel_ids.end());
          detected = true;
          break;
        }
      }
    }
  }

  long long open_seats = k - static_cast<long long>(panel_ids.size());
  if (open_seats < 0) throw std::logic_error("panel overfilled");
  if (open_seats > 0) {
    // Systematic sampling walk with exact integer probabilities over a
    // common denominator.
    long long p_size = static_cast<long long>(panel_ids.size());
    long long d_size = N - p_size - r_size;  // disregarded, not selected
    long long den = d_size > 0 ? N * d_size : N;
    long long p_rem = d_size > 0 ? k * d_size : k;  // Pr[i in R] = k/N
    long long p_dis = open_seats * N - r_size * k;  // over den, when d_size > 0
    if (p_rem < 0 || p_rem > den || (d_size > 0 && (p_dis < 0 || p_dis > den)))
      throw std::logic_error("systematic sampling probability outside [0,1]");

    long long total = 0;
    std::vector<std::pair<int, long long>> candidates;  // ascending ids
    for (int b = 0; b < n; ++b) {
      long long first = inst.first_virtual(b);
      long long gone = inst.weight(b) - rem[b];
      for (long long v = first; v < first + gone; ++v) {
        if (in_panel(v)) continue;
        candidates.emplace_back(static_cast<int>(v), p_dis);
        total += p_dis;
      }
      for (long long v = first + gone; v < first + inst.weight(b); ++v) {
        candidates.emplace_back(static_cast<int>(v), p_rem);
        total += p_rem;
      }
    }
    if (total != open_seats * den)
      throw std::logic_error("systematic sampling mass mismatch");

    long long offset =
        static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(den)));
    long long cum = 0;
    long long next = offset;
    for (const auto& [vid, p] : candidates) {
      cum += p;
      if (next < cum) {
        panel_ids.push_back(vid);
        next += den;
      }
    }
    std::sort(panel_ids.begin(), panel_ids.end());
  }

  if (static_cast<int>(panel_ids.size()) != k)
    throw std::logic_error("afgc produced a panel of the wrong size");
  return Panel(std::move(panel_ids));
}

}  // namespace sortition
