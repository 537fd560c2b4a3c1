#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "sortition/metric.hpp"
#include "sortition/rational.hpp"

namespace sortition {

struct BallInfo {
  int center = -1;
  double radius = 0.0;
};

// The k x n fractional assignment of selection mass to balls. Entries are
// exact multiples of 1/N, stored as integer numerators over denominator N.
// Row j holds the mass captured by ball j in capture order; every row sums to
// N (i.e. mass 1) and column i sums to k * weight[i].
struct FractionalAllocation {
  int k = 0;
  int n = 0;
  long long N = 0;  // denominator
  std::vector<std::vector<std::pair<int, long long>>> rows;  // (point, numerator)
  std::vector<BallInfo> balls;

  long long entry_num(int row, int point) const;
  Rational entry(int row, int point) const { return {entry_num(row, point), N}; }
  long long row_sum_num(int row) const;
  long long col_sum_num(int point) const;
};

// Grows balls around every point at a common rate over the sorted multiset of
// pairwise distances. Whenever some ball holds unallocated mass >= 1 it is
// opened and exactly mass 1 is deducted from the captured points, closest to
// the center first, ties by ascending id. Qualifying centers at one radius
// are handled in ascending id with a rescan after every opening. Terminates
// with exactly k opened balls and all mass allocated.
FractionalAllocation fractional_allocation(const MetricInstance& inst, int k);

// b_i = set of balls with positive mass on point i, indexed by point id.
std::vector<std::vector<int>> ball_memberships(const FractionalAllocation& alloc);

// Text dump: one "row col num/den" line per positive entry, then one
// "ball j center c radius r" line per ball.
void write_allocation(std::ostream& out, const FractionalAllocation& alloc);

// CSV of ball memberships: header "id,balls", one row per point, the ball
// list separated by spaces.
void write_ball_quotas_csv(std::ostream& out,
                           const FractionalAllocation& alloc);

}  // namespace sortition
