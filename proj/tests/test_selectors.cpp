#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "sortition/selectors.hpp"
#include "test_util.hpp"

using namespace sortition;
using testutil::random_euclidean;

namespace {

// Two groups of `size` co-located points, far apart.
MetricInstance two_groups(int size, double gap = 100.0) {
  int n = 2 * size;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((i < size) != (j < size)) d[i][j] = gap;
  return MetricInstance::from_distances(std::move(d));
}

}  // namespace

TEST_CASE("selector names round-trip") {
  for (auto kind : {SelectorKind::uniform, SelectorKind::fgc, SelectorKind::afgc})
    CHECK(selector_from_name(selector_name(kind)) == kind);
  CHECK_THROWS(selector_from_name("stratified"));
}

TEST_CASE("selector config validation") {
  SelectorConfig cfg{SelectorKind::afgc, 4, 0, 0};
  CHECK_THROWS(cfg.validate());
  cfg.q = 5;
  CHECK_THROWS(cfg.validate());
  cfg.q = 2;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("uniform_sample") {
  SUBCASE("k = n returns everyone") {
    Panel p = uniform_sample(6, 6, 9);
    CHECK(p == Panel({0, 1, 2, 3, 4, 5}));
  }
  SUBCASE("k > n is rejected") { CHECK_THROWS(uniform_sample(3, 4, 0)); }
  SUBCASE("deterministic per seed") {
    CHECK(uniform_sample(30, 5, 42) == uniform_sample(30, 5, 42));
  }
  SUBCASE("all 10 pairs of C(5,2) appear uniformly") {
    const int trials = 100000;
    std::map<std::vector<int>, int> freq;
    for (int t = 0; t < trials; ++t)
      ++freq[uniform_sample(5, 2, derive_seed(7, t)).members];
    CHECK(freq.size() == 10);
    double sigma = std::sqrt(0.1 * 0.9 * trials);
    for (const auto& [pair, count] : freq)
      CHECK(std::abs(count - trials * 0.1) <= 3 * sigma);
  }
  SUBCASE("marginals are k/n") {
    const int trials = 100000;
    std::vector<int> hits(5, 0);
    for (int t = 0; t < trials; ++t)
      for (int id : uniform_sample(5, 2, derive_seed(11, t)).members)
        ++hits[id];
    double p = 2.0 / 5.0;
    double sigma = std::sqrt(p * (1 - p) * trials);
    for (int id = 0; id < 5; ++id)
      CHECK(std::abs(hits[id] - p * trials) <= 3 * sigma);
  }
}

TEST_CASE("afgc_sample basics") {
  SUBCASE("panel has exactly k distinct ids") {
    auto inst = random_euclidean(20, 3);
    for (std::uint64_t s = 0; s < 200; ++s) {
      Panel p = afgc_sample(inst, 4, 2, s);
      CHECK(p.k() == 4);  // Panel construction enforces distinctness
      p.check_range(20);
    }
  }
  SUBCASE("n = k returns the whole population") {
    auto inst = random_euclidean(5, 23);
    for (std::uint64_t s = 0; s < 20; ++s) {
      for (int q = 1; q <= 5; ++q)
        CHECK(afgc_sample(inst, 5, q, s) == Panel({0, 1, 2, 3, 4}));
    }
  }
  SUBCASE("invalid q rejected") {
    auto inst = random_euclidean(6, 1);
    CHECK_THROWS(afgc_sample(inst, 3, 0, 0));
    CHECK_THROWS(afgc_sample(inst, 3, 4, 0));
  }
  SUBCASE("deterministic per seed") {
    auto inst = random_euclidean(15, 8);
    CHECK(afgc_sample(inst, 4, 2, 99) == afgc_sample(inst, 4, 2, 99));
  }
}

TEST_CASE("afgc detection takes exactly q per far group") {
  // n = 8, k = 4, q = 2: ceil(q*n/k) = 4 = group size, so both groups are
  // detected whole and the leftover step never runs.
  auto inst = two_groups(4);
  for (std::uint64_t s = 0; s < 300; ++s) {
    Panel p = afgc_sample(inst, 4, 2, s);
    int left = 0;
    for (int id : p.members)
      if (id < 4) ++left;
    CHECK(left == 2);
  }
}

TEST_CASE("afgc always seats q from a big cohesive group") {
  // One co-located group of ceil(q*n/k) = 5 among 20 scattered-but-far points.
  const int n = 20, k = 4, q = 1;
  const int m = (q * n + k - 1) / k;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool gi = i < m, gj = j < m;
      if (i == j || (gi && gj)) continue;
      d[i][j] = 50.0 + (i + j) * 0.01;  // far and generic
    }
  auto inst = MetricInstance::from_distances(std::move(d));
  for (std::uint64_t s = 0; s < 300; ++s) {
    Panel p = afgc_sample(inst, k, q, s);
    int in_group = 0;
    for (int id : p.members)
      if (id < m) ++in_group;
    CHECK(in_group >= q);
  }
}

TEST_CASE("afgc marginals match k/n at 3 sigma") {
  const int n = 20, k = 4, q = 2, trials = 100000;
  auto inst = random_euclidean(n, 77);
  std::vector<int> hits(n, 0);
  for (int t = 0; t < trials; ++t)
    for (int id : afgc_sample(inst, k, q, derive_seed(5, t)).members)
      ++hits[id];
  double p = static_cast<double>(k) / n;
  double sigma = std::sqrt(p * (1 - p) * trials);
  for (int id = 0; id < n; ++id)
    CHECK(std::abs(hits[id] - p * trials) <= 3 * sigma);
}

TEST_CASE("afgc marginals on a weighted instance") {
  // Virtual individuals of the same point share the k/N inclusion rate.
  auto inst = MetricInstance::from_distances(
      {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {3, 2, 2});
  const int trials = 100000, k = 3, q = 1;
  const long long N = inst.total_weight();
  std::vector<int> hits(N, 0);
  for (int t = 0; t < trials; ++t)
    for (int id : afgc_sample(inst, k, q, derive_seed(31, t)).members)
      ++hits[id];
  double p = static_cast<double>(k) / static_cast<double>(N);
  double sigma = std::sqrt(p * (1 - p) * trials);
  for (long long id = 0; id < N; ++id)
    CHECK(std::abs(hits[id] - p * trials) <= 3 * sigma);
}
