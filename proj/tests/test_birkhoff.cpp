#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "sortition/birkhoff.hpp"
#include "sortition/fixtures.hpp"
#include "test_util.hpp"

using namespace sortition;
using testutil::random_euclidean;

namespace {

MetricInstance colocated(int n) {
  return MetricInstance::from_distances(
      std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

SquareBistochastic uniform_matrix(int n, int k) {
  SquareBistochastic y;
  y.size = n;
  y.top_rows = k;
  y.den = n;
  y.num.assign(static_cast<std::size_t>(n) * n, 1);
  return y;
}

long long positive_entries(const SquareBistochastic& y) {
  long long c = 0;
  for (long long v : y.num) c += v > 0;
  return c;
}

}  // namespace

TEST_CASE("completion squares the allocation") {
  SUBCASE("n = k leaves no completion rows") {
    auto inst = random_euclidean(4, 1);
    auto y = complete_bistochastic(inst, fractional_allocation(inst, 4));
    CHECK(y.size == 4);
    CHECK(y.top_rows == 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(y.at(i, j) == (i == j ? 4 : 0));
  }
  SUBCASE("co-located quartet fills the bottom with 1/4") {
    auto inst = colocated(4);
    auto y = complete_bistochastic(inst, fractional_allocation(inst, 2));
    for (int r = 2; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(y.at(r, c) == 1);
    CHECK_NOTHROW(y.check());
  }
  SUBCASE("weighted points expand into virtual columns") {
    auto inst = MetricInstance::from_distances({{0, 1}, {1, 0}}, {3, 2});
    auto y = complete_bistochastic(inst, fractional_allocation(inst, 2));
    CHECK(y.size == 5);
    CHECK_NOTHROW(y.check());
  }
}

TEST_CASE("decomposing the identity yields one panel") {
  SquareBistochastic y;
  y.size = 3;
  y.top_rows = 2;
  y.den = 3;
  y.num = {3, 0, 0, 0, 3, 0, 0, 0, 3};
  auto result = birkhoff_decompose(y);
  REQUIRE(result.dist.entries.size() == 1);
  CHECK(result.dist.entries[0].lambda == Rational(1));
  CHECK(result.dist.entries[0].panel == Panel({0, 1}));
}

TEST_CASE("decomposing the uniform matrix") {
  auto y = uniform_matrix(5, 2);
  auto result = birkhoff_decompose(y);
  CHECK(result.dist.entries.size() == 5);
  for (const auto& e : result.dist.entries) CHECK(e.lambda == Rational(1, 5));
  for (int i = 0; i < 5; ++i) CHECK(result.dist.marginal(i) == Rational(2, 5));
}

TEST_CASE("non-bistochastic input is rejected") {
  SquareBistochastic y = uniform_matrix(3, 1);
  y.at(0, 0) = 2;
  CHECK_THROWS(birkhoff_decompose(y));
  SquareBistochastic neg = uniform_matrix(2, 1);
  neg.at(0, 0) = -1;
  neg.at(0, 1) = 3;
  CHECK_THROWS(birkhoff_decompose(neg));
}

TEST_CASE("reconstruction is exact") {
  auto inst = colocated(4);
  auto y = complete_bistochastic(inst, fractional_allocation(inst, 2));
  BirkhoffOptions opts;
  opts.record_permutations = true;
  auto result = birkhoff_decompose(y, opts);
  REQUIRE(result.permutations.size() == result.dist.entries.size());

  std::vector<std::vector<Rational>> sum(4, std::vector<Rational>(4, Rational(0)));
  for (std::size_t l = 0; l < result.permutations.size(); ++l)
    for (int r = 0; r < 4; ++r)
      sum[r][result.permutations[l][r]] += result.dist.entries[l].lambda;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(sum[r][c] == Rational(y.at(r, c), y.den));

  // Every panel pairs one of {0,1} with one of {2,3}.
  for (const auto& e : result.dist.entries) {
    CHECK(e.panel.k() == 2);
    CHECK((e.panel.members[0] == 0 || e.panel.members[0] == 1));
    CHECK((e.panel.members[1] == 2 || e.panel.members[1] == 3));
  }
}

TEST_CASE("term count stays within both bounds") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    int n = 6 + static_cast<int>(seed * 3);
    auto inst = random_euclidean(n, seed);
    auto y = complete_bistochastic(inst, fractional_allocation(inst, 3));
    long long pos = positive_entries(y);
    auto result = birkhoff_decompose(y);
    long long L = static_cast<long long>(result.dist.entries.size());
    CHECK(L <= static_cast<long long>(n) * n - n + 2);
    CHECK(L <= pos - n + 1);
  }
}

TEST_CASE("fgc distribution") {
  SUBCASE("n = k is deterministic") {
    auto inst = random_euclidean(5, 3);
    auto dist = fgc_distribution(inst, 5);
    REQUIRE(dist.entries.size() == 1);
    CHECK(dist.entries[0].panel == Panel({0, 1, 2, 3, 4}));
    CHECK(dist.entries[0].lambda == Rational(1));
  }
  SUBCASE("the all-A panel is excluded on the two-group instance") {
    auto fx = make_fixture("thm31", {.n = 12, .k = 3});
    auto dist = fgc_distribution(fx.instance, 3);
    for (const auto& e : dist.entries) {
      int from_b = 0;
      for (int id : e.panel.members)
        if (id >= 4) ++from_b;
      CHECK(from_b == 2);  // one seat per B ball, one from A's ball
    }
  }
  SUBCASE("exact marginals k/n on a random instance") {
    auto inst = random_euclidean(20, 9);
    auto dist = fgc_distribution(inst, 4);
    for (int i = 0; i < 20; ++i) CHECK(dist.marginal(i) == Rational(1, 5));
  }
  SUBCASE("exact marginals k*w/N on a weighted instance") {
    auto inst = MetricInstance::from_distances(
        {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {4, 2, 1});
    auto dist = fgc_distribution(inst, 3);
    Rational per_virtual(3, 7);
    for (long long v = 0; v < 7; ++v) CHECK(dist.marginal(v) == per_virtual);
  }
  SUBCASE("size gate refuses large instances") {
    auto inst = MetricInstance::from_distances({{0, 1}, {1, 0}}, {2000, 2000});
    CHECK_THROWS(fgc_distribution(inst, 2));
  }
}

TEST_CASE("sample_panel") {
  auto inst = colocated(4);
  auto dist = fgc_distribution(inst, 2);
  SUBCASE("deterministic per seed") {
    CHECK(sample_panel(dist, 7) == sample_panel(dist, 7));
  }
  SUBCASE("single-entry distribution always returns it") {
    PanelDistribution single;
    single.k = 2;
    single.N = 4;
    single.entries = {{Panel({1, 3}), Rational(1)}};
    for (std::uint64_t s = 0; s < 20; ++s)
      CHECK(sample_panel(single, s) == Panel({1, 3}));
  }
  SUBCASE("two even entries land within 3 sigma of half") {
    PanelDistribution two;
    two.k = 1;
    two.N = 2;
    two.entries = {{Panel({0}), Rational(1, 2)}, {Panel({1}), Rational(1, 2)}};
    int hits = 0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t)
      if (sample_panel(two, derive_seed(123, t)) == Panel({0})) ++hits;
    double sigma = std::sqrt(0.25 * trials);
    CHECK(std::abs(hits - trials / 2.0) <= 3 * sigma);
  }
}

TEST_CASE("distribution dump format") {
  auto inst = colocated(4);
  auto dist = fgc_distribution(inst, 2);
  std::ostringstream out;
  write_distribution(out, dist);
  std::string line;
  std::istringstream in(out.str());
  Rational total(0);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word, frac, colon;
    REQUIRE((ls >> word >> frac >> colon));
    CHECK(word == "lambda");
    CHECK(colon == ":");
    auto slash = frac.find('/');
    REQUIRE(slash != std::string::npos);
    total += Rational(std::stoll(frac.substr(0, slash)),
                      std::stoll(frac.substr(slash + 1)));
    int id, count = 0;
    while (ls >> id) ++count;
    CHECK(count == 2);
  }
  CHECK(total == Rational(1));
}
