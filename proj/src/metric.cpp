#include "sortition/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sortition/rng.hpp"

namespace sortition {

MetricInstance MetricInstance::from_distances(
    std::vector<std::vector<double>> dist, std::vector<long long> weights,
    std::vector<std::string> labels) {
  MetricInstance inst;
  inst.n_ = static_cast<int>(dist.size());
  if (inst.n_ == 0) throw std::invalid_argument("empty instance");
  inst.d_.resize(static_cast<std::size_t>(inst.n_) * inst.n_);
  for (int i = 0; i < inst.n_; ++i) {
    if (static_cast<int>(dist[i].size()) != inst.n_)
      throw std::invalid_argument("distance matrix is not square");
    for (int j = 0; j < inst.n_; ++j)
      inst.d_[static_cast<std::size_t>(i) * inst.n_ + j] = dist[i][j];
  }
  if (weights.empty()) weights.assign(inst.n_, 1);
  if (static_cast<int>(weights.size()) != inst.n_)
    throw std::invalid_argument("weight count does not match n");
  for (long long w : weights)
    if (w < 1) throw std::invalid_argument("weights must be >= 1");
  inst.w_ = std::move(weights);
  inst.off_.resize(inst.n_ + 1);
  inst.off_[0] = 0;
  for (int i = 0; i < inst.n_; ++i) inst.off_[i + 1] = inst.off_[i] + inst.w_[i];
  inst.total_weight_ = inst.off_[inst.n_];
  if (!labels.empty() && static_cast<int>(labels.size()) != inst.n_)
    throw std::invalid_argument("label count does not match n");
  inst.labels_ = std::move(labels);
  inst.check_metric();
  return inst;
}

int MetricInstance::base_of(long long vid) const {
  if (vid < 0 || vid >= total_weight_)
    throw std::out_of_range("virtual id out of range");
  auto it = std::upper_bound(off_.begin(), off_.end(), vid);
  return static_cast<int>(it - off_.begin()) - 1;
}

void MetricInstance::check_metric(double rel_tol) const {
  for (int i = 0; i < n_; ++i) {
    if (dist(i, i) != 0.0)
      throw std::invalid_argument("dist[" + std::to_string(i) + "][" +
                                  std::to_string(i) + "] must be 0");
    for (int j = i + 1; j < n_; ++j) {
      double dij = dist(i, j);
      if (!(dij >= 0.0) || !std::isfinite(dij))
        throw std::invalid_argument("negative or non-finite distance");
      if (dij != dist(j, i))
        throw std::invalid_argument("distance matrix is not symmetric");
    }
  }
  auto check_triple = [&](int i, int j, int l) {
    double lhs = dist(i, j);
    double rhs = dist(i, l) + dist(l, j);
    if (lhs > rhs + rel_tol * std::max(1.0, lhs))
      throw std::invalid_argument(
          "triangle inequality violated at (" + std::to_string(i) + "," +
          std::to_string(j) + "," + std::to_string(l) + ")");
  };
  if (n_ <= 600) {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        for (int l = 0; l < n_; ++l) check_triple(i, j, l);
  } else {
    Rng rng(0x72616e646f6dULL);
    for (int t = 0; t < 200000; ++t) {
      int i = static_cast<int>(uniform_below(rng, n_));
      int j = static_cast<int>(uniform_below(rng, n_));
      int l = static_cast<int>(uniform_below(rng, n_));
      check_triple(i, j, l);
    }
  }
}

namespace {

void check_q(const Panel& panel, int q) {
  if (q < 1 || q > panel.k())
    throw std::invalid_argument("q must be in [1, |P|], got q=" +
                                std::to_string(q) + " with |P|=" +
                                std::to_string(panel.k()));
}

}  // namespace

double q_cost_base(const MetricInstance& inst, int base, const Panel& panel,
                   int q) {
  check_q(panel, q);
  std::vector<double> ds;
  ds.reserve(panel.members.size());
  for (int m : panel.members) ds.push_back(inst.dist(base, inst.base_of(m)));
  std::nth_element(ds.begin(), ds.begin() + (q - 1), ds.end());
  return ds[q - 1];
}

double q_cost(const MetricInstance& inst, long long id, const Panel& panel,
              int q) {
  return q_cost_base(inst, inst.base_of(id), panel, q);
}

std::vector<int> top_q(const MetricInstance& inst, long long id,
                       const Panel& panel, int q) {
  check_q(panel, q);
  int base = inst.base_of(id);
  std::vector<std::pair<double, int>> order;
  order.reserve(panel.members.size());
  for (int m : panel.members)
    order.emplace_back(inst.dist(base, inst.base_of(m)), m);
  std::sort(order.begin(), order.end());
  std::vector<int> out;
  out.reserve(q);
  for (int i = 0; i < q; ++i) out.push_back(order[i].second);
  return out;
}

std::vector<long long> ball(const MetricInstance& inst, long long id,
                            double r) {
  if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
  int base = inst.base_of(id);
  std::vector<long long> out;
  for (int b = 0; b < inst.n(); ++b) {
    if (inst.dist(base, b) <= r) {
      long long first = inst.first_virtual(b);
      for (long long v = first; v < first + inst.weight(b); ++v)
        out.push_back(v);
    }
  }
  return out;
}

long long preference_count(const MetricInstance& inst, const Panel& panel,
                           const Panel& alt, double alpha, int q) {
  if (alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  check_q(panel, q);
  check_q(alt, q);
  long long count = 0;
  for (int b = 0; b < inst.n(); ++b) {
    double cp = q_cost_base(inst, b, panel, q);
    double ca = q_cost_base(inst, b, alt, q);
    if (cp > alpha * ca) count += inst.weight(b);
  }
  return count;
}

void write_distance_matrix(std::ostream& out, const MetricInstance& inst) {
  out << inst.n() << "\n";
  out.precision(17);
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      if (j) out << ' ';
      out << inst.dist(i, j);
    }
    out << "\n";
  }
}

MetricInstance read_distance_matrix(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n <= 0)
    throw std::runtime_error("distance matrix: bad point count");
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(in >> d[i][j]))
        throw std::runtime_error("distance matrix: truncated at row " +
                                 std::to_string(i));
  return MetricInstance::from_distances(std::move(d));
}

MetricInstance read_distance_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_distance_matrix(in);
}

}  // namespace sortition
