#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sortition/panel.hpp"

namespace sortition {

// Population of n data points with pairwise distances and positive integer
// multiplicities. A point with weight w stands for w co-located individuals;
// the individuals carry contiguous "virtual" ids, point b owning the range
// [first_virtual(b), first_virtual(b) + weight(b)). For unit weights the
// virtual ids coincide with the point ids.
//
// Immutable after construction; safe to read concurrently.
class MetricInstance {
 public:
  static MetricInstance from_distances(std::vector<std::vector<double>> dist,
                                       std::vector<long long> weights = {},
                                       std::vector<std::string> labels = {});

  int n() const { return n_; }
  long long total_weight() const { return total_weight_; }  // N

  double dist(int a, int b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  long long weight(int b) const { return w_[b]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool unit_weights() const { return total_weight_ == n_; }

  long long first_virtual(int base) const { return off_[base]; }
  int base_of(long long vid) const;
  double vdist(long long u, long long v) const {
    return dist(base_of(u), base_of(v));
  }

  // Symmetry, zero diagonal, nonnegativity, and the triangle inequality at
  // relative tolerance rel_tol. Full O(n^3) sweep up to n = 600, a fixed
  // sample of triples beyond that.
  void check_metric(double rel_tol = 1e-9) const;

 private:
  int n_ = 0;
  long long total_weight_ = 0;
  std::vector<double> d_;
  std::vector<long long> w_;
  std::vector<long long> off_;  // size n_ + 1, prefix sums of w_
  std::vector<std::string> labels_;
};

// Distance to the q-th closest panel member (seats counted with multiplicity).
// Requires 1 <= q <= |P|. The id may be any virtual id.
double q_cost(const MetricInstance& inst, long long id, const Panel& panel,
              int q);

// Same, approached from a data point directly; equals q_cost of any of its
// virtual ids.
double q_cost_base(const MetricInstance& inst, int base, const Panel& panel,
                   int q);

// The q panel members closest to id, ties broken by ascending member id.
std::vector<int> top_q(const MetricInstance& inst, long long id,
                       const Panel& panel, int q);

// Closed ball: all virtual ids within distance r of id. Requires r >= 0.
std::vector<long long> ball(const MetricInstance& inst, long long id, double r);

// Weighted count of individuals strictly preferring alternative to panel at
// factor alpha: sum of weights over i with c_q(i, panel) > alpha * c_q(i, alt).
// Requires alpha >= 1 and q <= min(|panel|, |alt|).
long long preference_count(const MetricInstance& inst, const Panel& panel,
                           const Panel& alt, double alpha, int q);

// Plain-text matrix form: first line n, then n lines of n distances.
// Imported instances get unit weights.
void write_distance_matrix(std::ostream& out, const MetricInstance& inst);
MetricInstance read_distance_matrix(std::istream& in);
MetricInstance read_distance_matrix_file(const std::string& path);

}  // namespace sortition
