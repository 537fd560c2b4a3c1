#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "sortition/allocation.hpp"
#include "test_util.hpp"

using namespace sortition;
using testutil::random_euclidean;

namespace {

MetricInstance colocated(int n) {
  return MetricInstance::from_distances(
      std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

MetricInstance line_instance() {
  return MetricInstance::from_distances(
      {{0, 1, 10, 11}, {1, 0, 9, 10}, {10, 9, 0, 1}, {11, 10, 1, 0}});
}

void check_allocation_invariants(const MetricInstance& inst,
                                 const FractionalAllocation& alloc) {
  REQUIRE(static_cast<int>(alloc.rows.size()) == alloc.k);
  long long total = 0;
  for (int j = 0; j < alloc.k; ++j) {
    CHECK(alloc.row_sum_num(j) == alloc.N);
    total += alloc.row_sum_num(j);
    if (j > 0) CHECK(alloc.balls[j].radius >= alloc.balls[j - 1].radius);
    for (const auto& [p, num] : alloc.rows[j]) {
      CHECK(num > 0);
      CHECK(inst.dist(alloc.balls[j].center, p) <= alloc.balls[j].radius);
    }
  }
  CHECK(total == static_cast<long long>(alloc.k) * alloc.N);  // mass k
  for (int i = 0; i < inst.n(); ++i)
    CHECK(alloc.col_sum_num(i) == static_cast<long long>(alloc.k) * inst.weight(i));
}

}  // namespace

TEST_CASE("n = k gives the identity pattern at radius zero") {
  auto inst = random_euclidean(5, 2);
  auto alloc = fractional_allocation(inst, 5);
  check_allocation_invariants(inst, alloc);
  for (int j = 0; j < 5; ++j) {
    REQUIRE(alloc.rows[j].size() == 1);
    CHECK(alloc.rows[j][0].first == j);
    CHECK(alloc.rows[j][0].second == alloc.N);
    CHECK(alloc.balls[j].radius == 0.0);
  }
}

TEST_CASE("co-located points split by id order") {
  auto inst = colocated(4);
  auto alloc = fractional_allocation(inst, 2);
  check_allocation_invariants(inst, alloc);
  REQUIRE(alloc.rows[0].size() == 2);
  CHECK(alloc.rows[0][0] == std::pair<int, long long>{0, 2});
  CHECK(alloc.rows[0][1] == std::pair<int, long long>{1, 2});
  CHECK(alloc.rows[1][0] == std::pair<int, long long>{2, 2});
  CHECK(alloc.rows[1][1] == std::pair<int, long long>{3, 2});
  CHECK(alloc.balls[0].radius == 0.0);
  CHECK(alloc.balls[1].radius == 0.0);
}

TEST_CASE("two separated pairs open two radius-1 balls") {
  auto inst = line_instance();
  auto alloc = fractional_allocation(inst, 2);
  check_allocation_invariants(inst, alloc);
  CHECK(alloc.balls[0].center == 0);
  CHECK(alloc.balls[0].radius == 1.0);
  CHECK(alloc.balls[1].center == 2);
  CHECK(alloc.balls[1].radius == 1.0);
  CHECK(alloc.entry_num(0, 0) == 2);
  CHECK(alloc.entry_num(0, 1) == 2);
  CHECK(alloc.entry_num(1, 2) == 2);
  CHECK(alloc.entry_num(1, 3) == 2);
}

TEST_CASE("heavy point fills whole balls alone") {
  // weight 5 of 7, k = 3: y_0 = 15/7 > 1, so point 0 fills two balls at
  // radius 0 and spills 1/7 into a third.
  auto inst = MetricInstance::from_distances(
      {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {5, 1, 1});
  auto alloc = fractional_allocation(inst, 3);
  check_allocation_invariants(inst, alloc);
  CHECK(alloc.balls[0].radius == 0.0);
  CHECK(alloc.balls[1].radius == 0.0);
  CHECK(alloc.rows[0].size() == 1);
  CHECK(alloc.rows[0][0] == std::pair<int, long long>{0, 7});
  CHECK(alloc.rows[1][0] == std::pair<int, long long>{0, 7});
  CHECK(alloc.col_sum_num(0) == 15);
}

TEST_CASE("invariants hold on random instances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = 5 + static_cast<int>(seed % 14) * 4;  // up to 57
    int k = 2 + static_cast<int>(seed % 5);
    auto inst = random_euclidean(n, seed);
    auto alloc = fractional_allocation(inst, k);
    check_allocation_invariants(inst, alloc);
  }
}

TEST_CASE("invariants hold on weighted instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    int n = 6 + static_cast<int>(seed);
    std::vector<long long> w(n);
    for (auto& x : w) x = 1 + uniform_below(rng, 9);
    auto inst = random_euclidean(n, seed + 100, w);
    auto alloc = fractional_allocation(inst, 4);
    check_allocation_invariants(inst, alloc);
  }
}

TEST_CASE("rerunning is bit-identical") {
  auto inst = random_euclidean(30, 77);
  auto a = fractional_allocation(inst, 5);
  auto b = fractional_allocation(inst, 5);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t j = 0; j < a.rows.size(); ++j) {
    CHECK(a.rows[j] == b.rows[j]);
    CHECK(a.balls[j].center == b.balls[j].center);
    CHECK(a.balls[j].radius == b.balls[j].radius);
  }
}

TEST_CASE("k out of range is rejected") {
  auto inst = colocated(3);
  CHECK_THROWS(fractional_allocation(inst, 0));
  CHECK_THROWS(fractional_allocation(inst, 4));
}

TEST_CASE("ball memberships") {
  SUBCASE("identity pattern") {
    auto inst = random_euclidean(4, 5);
    auto member = ball_memberships(fractional_allocation(inst, 4));
    for (int i = 0; i < 4; ++i) CHECK(member[i] == std::vector<int>{i});
  }
  SUBCASE("co-located quartet") {
    auto member = ball_memberships(fractional_allocation(colocated(4), 2));
    CHECK(member[0] == std::vector<int>{0});
    CHECK(member[1] == std::vector<int>{0});
    CHECK(member[2] == std::vector<int>{1});
    CHECK(member[3] == std::vector<int>{1});
  }
  SUBCASE("line instance follows the allocation support") {
    auto alloc = fractional_allocation(line_instance(), 2);
    auto member = ball_memberships(alloc);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 2; ++j) {
        bool in = std::find(member[i].begin(), member[i].end(), j) !=
                  member[i].end();
        CHECK(in == (alloc.entry_num(j, i) > 0));
      }
    }
  }
}

TEST_CASE("dump formats") {
  auto alloc = fractional_allocation(line_instance(), 2);
  std::ostringstream out;
  write_allocation(out, alloc);
  std::string dump = out.str();
  CHECK(dump.find("0 0 1/2\n") != std::string::npos);
  CHECK(dump.find("ball 0 center 0 radius 1\n") != std::string::npos);

  std::ostringstream csv;
  write_ball_quotas_csv(csv, alloc);
  CHECK(csv.str() ==
        "id,balls\n"
        "0,0\n"
        "1,0\n"
        "2,1\n"
        "3,1\n");
}
