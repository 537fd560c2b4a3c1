#include "sortition/allocation.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sortition {

long long FractionalAllocation::entry_num(int row, int point) const {
  for (const auto& [p, num] : rows[row])
    if (p == point) return num;
  return 0;
}

long long FractionalAllocation::row_sum_num(int row) const {
  long long s = 0;
  for (const auto& [p, num] : rows[row]) s += num;
  return s;
}

long long FractionalAllocation::col_sum_num(int point) const {
  long long s = 0;
  for (const auto& row : rows)
    for (const auto& [p, num] : row)
      if (p == point) s += num;
  return s;
}

FractionalAllocation fractional_allocation(const MetricInstance& inst, int k) {
  const int n = inst.n();
  const long long N = inst.total_weight();
  if (k < 1 || k > N)
    throw std::invalid_argument("k must be in [1, N], got k=" +
                                std::to_string(k) + ", N=" + std::to_string(N));

  // Unallocated mass, in units of 1/N.
  std::vector<long long> y(n);
  for (int i = 0; i < n; ++i) y[i] = static_cast<long long>(k) * inst.weight(i);

  // Neighbors of each center sorted by (distance, id); capture follows this
  // order as the radius grows.
  std::vector<std::vector<int>> order(n);
  for (int c = 0; c < n; ++c) {
    order[c].resize(n);
    for (int i = 0; i < n; ++i) order[c][i] = i;
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

  // captured[c]: how many of order[c] fall inside the current radius;
  // mass[c]: their remaining unallocated mass. coverers[i] lists the centers
  // whose current ball contains i, so deductions can be propagated.
  std::vector<int> captured(n, 0);
  std::vector<long long> mass(n, 0);
  std::vector<std::vector<int>> coverers(n);

  FractionalAllocation alloc;
  alloc.k = k;
  alloc.n = n;
  alloc.N = N;

  long long total = static_cast<long long>(k) * N;  // sum of y in 1/N units

  for (double delta : radii) {
    if (total == 0) break;
    for (int c = 0; c < n; ++c) {
      while (captured[c] < n &&
             inst.dist(c, order[c][captured[c]]) <= delta) {
        int i = order[c][captured[c]];
        mass[c] += y[i];
        coverers[i].push_back(c);
        ++captured[c];
      }
    }
    bool opened = true;
    while (opened && total > 0) {
      opened = false;
      for (int c = 0; c < n; ++c) {
        if (mass[c] < N) continue;
        // Open a ball at this center: deduct exactly mass 1 in capture order.
        std::vector<std::pair<int, long long>> row;
        long long need = N;
        for (int idx = 0; idx < captured[c] && need > 0; ++idx) {
          int i = order[c][idx];
          if (y[i] == 0) continue;
          long long take = std::min(need, y[i]);
          row.emplace_back(i, take);
          y[i] -= take;
          need -= take;
          for (int cov : coverers[i]) mass[cov] -= take;
        }
        if (need != 0)
          throw std::logic_error("ball opened with insufficient mass");
        total -= N;
        alloc.rows.push_back(std::move(row));
        alloc.balls.push_back({c, delta});
        opened = true;
        break;  // rescan from the lowest id at the same radius
      }
    }
  }

  if (total != 0 || static_cast<int>(alloc.rows.size()) != k)
    throw std::logic_error("allocation did not open exactly k balls");
  return alloc;
}

std::vector<std::vector<int>> ball_memberships(
    const FractionalAllocation& alloc) {
  std::vector<std::vector<int>> member(alloc.n);
  for (int j = 0; j < alloc.k; ++j)
    for (const auto& [p, num] : alloc.rows[j])
      if (num > 0) member[p].push_back(j);
  return member;
}

void write_allocation(std::ostream& out, const FractionalAllocation& alloc) {
  out.precision(17);
  for (int j = 0; j < alloc.k; ++j)
    for (const auto& [p, num] : alloc.rows[j])
      out << j << ' ' << p << ' ' << Rational(num, alloc.N).str() << "\n";
  for (int j = 0; j < alloc.k; ++j)
    out << "ball " << j << " center " << alloc.balls[j].center << " radius "
        << alloc.balls[j].radius << "\n";
}

void write_ball_quotas_csv(std::ostream& out,
                           const FractionalAllocation& alloc) {
  out << "id,balls\n";
  auto member = ball_memberships(alloc);
  for (int i = 0; i < alloc.n; ++i) {
    out << i << ',';
    for (std::size_t t = 0; t < member[i].size(); ++t) {
      if (t) out << ' ';
      out << member[i][t];
    }
    out << "\n";
  }
}

}  // namespace sortition
