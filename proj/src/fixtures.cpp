#include "sortition/fixtures.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sortition {

namespace {

constexpr double kFarFactor = 1e6;

// Block instance: point i belongs to the group g with cumulative sizes
// covering i, and d(i, j) = gd[g(i)][g(j)].
MetricInstance block_instance(const std::vector<int>& sizes,
                              const std::vector<std::vector<double>>& gd) {
  int n = std::accumulate(sizes.begin(), sizes.end(), 0);
  std::vector<int> group;
  group.reserve(n);
  for (std::size_t g = 0; g < sizes.size(); ++g)
    for (int t = 0; t < sizes[g]; ++t) group.push_back(static_cast<int>(g));
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = i == j ? 0.0 : gd[group[i]][group[j]];
  return MetricInstance::from_distances(std::move(d));
}

// ids [start, start + count)
std::vector<int> id_range(int start, int count) {
  std::vector<int> ids(count);
  std::iota(ids.begin(), ids.end(), start);
  return ids;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("fixture: " + msg);
}

Fixture thm31(const FixtureParams& p) {
  require(p.n >= 2 && p.k >= 1, "thm31 needs n and k");
  int a = p.n / p.k;
  require(a >= p.k, "thm31 needs floor(n/k) >= k");
  Fixture f{block_instance({a, p.n - a}, {{0, 1}, {1, 0}}), {}, {}, 0.0};
  f.panels.emplace("all_A", Panel(id_range(0, p.k)));
  return f;
}

Fixture thm42(const FixtureParams& p) {
  require(p.n >= 2 && p.k >= 2 && p.q >= 1 && p.q < p.k,
          "thm42 needs q in [1, k-1]");
  require(static_cast<long long>(p.n) * (p.k - p.q) >=
              2LL * p.k * p.k,
          "thm42 needs n >= 2k^2/(k-q)");
  Fixture f{block_instance({p.q, p.n - p.q}, {{0, 1}, {1, 2}}), {}, {}, 0.0};
  f.panels.emplace("I", Panel(id_range(0, p.q)));
  return f;
}

Fixture appxA(const FixtureParams& p) {
  require(p.n >= 8 && p.n % 2 == 0, "appxA needs even n >= 8");
  double far = kFarFactor * 10.0;
  int half = (p.n - 2) / 2;
  Fixture f{block_instance({1, 1, half, half},
                           {{0, far, far, far},
                            {far, 0, far, far},
                            {far, far, 0, 10},
                            {far, far, 10, 0}}),
            {},
            {},
            far};
  f.panels.emplace("A", Panel({0}));
  f.panels.emplace("B", Panel({1}));
  f.panels.emplace("C", Panel(id_range(2, half)));
  f.panels.emplace("D", Panel(id_range(2 + half, half)));
  return f;
}

Fixture appxB_tight(const FixtureParams& p) {
  require(p.k >= 2 && p.n >= 2 * p.k, "appxB_tight needs n >= 2k, k >= 2");
  int a = p.k / 2, b = p.k - a, c = p.n - p.k;
  Fixture f{block_instance({a, b, c},
                           {{0, 2, 1}, {2, 0, 1}, {1, 1, 0}}),
            {},
            {},
            0.0};
  f.panels.emplace("AB", Panel(id_range(0, p.k)));
  f.panels.emplace("C", Panel(id_range(p.k, p.k)));
  return f;
}

Fixture propE1_a(const FixtureParams& p) {
  require(p.q >= 1 && p.q <= p.k, "propE1_a needs q in [1, k]");
  long long quota = static_cast<long long>(p.q) * p.n;
  require(quota % p.k == 0, "propE1_a needs q*n divisible by k");
  long long group3 = quota / p.k - p.q;
  require(group3 > 0 && group3 % 3 == 0,
          "propE1_a needs (q*n/k - q) a positive multiple of 3");
  int g = static_cast<int>(group3 / 3);
  int e = static_cast<int>(p.n - quota / p.k);
  require(g >= p.q, "propE1_a needs group size >= q");
  require(e >= p.k - p.q, "propE1_a needs enough distant individuals");
  double far = kFarFactor * 2.0;
  Fixture f{block_instance({g, g, g, p.q, e},
                           {{0, 2, 2, 1, far},
                            {2, 0, 2, 1, far},
                            {2, 2, 0, 1, far},
                            {1, 1, 1, 0, far},
                            {far, far, far, far, 0}}),
            {},
            {},
            far};
  auto seats = [&](int group_start) {
    std::vector<int> ids = id_range(group_start, p.q);
    std::vector<int> from_e = id_range(3 * g + p.q, p.k - p.q);
    ids.insert(ids.end(), from_e.begin(), from_e.end());
    return Panel(std::move(ids));
  };
  f.panels.emplace("P_A", seats(0));
  f.panels.emplace("P_B", seats(g));
  f.panels.emplace("P_C", seats(2 * g));
  f.panels.emplace("D", Panel(id_range(3 * g, p.q)));
  PanelDistribution dist;
  dist.k = p.k;
  dist.N = p.n;
  dist.entries = {{f.panels.at("P_A"), Rational(1, 3)},
                  {f.panels.at("P_B"), Rational(1, 3)},
                  {f.panels.at("P_C"), Rational(1, 3)}};
  f.distribution = std::move(dist);
  return f;
}

Fixture propE1_b(const FixtureParams& p) {
  require(p.q >= 1 && p.q < p.k, "propE1_b needs q in [1, k-1]");
  long long quota = static_cast<long long>(p.q) * p.n;
  require(quota % p.k == 0, "propE1_b needs q*n divisible by k");
  int a = static_cast<int>(quota / p.k - p.q);
  int d = static_cast<int>(p.n - quota / p.k - p.q);
  require(a >= 1, "propE1_b needs a nonempty first group");
  require(a >= p.q, "propE1_b needs first group size >= q");
  require(d >= p.k - p.q && d >= 1, "propE1_b needs enough distant individuals");
  double far = kFarFactor * 2.0;
  Fixture f{block_instance({a, p.q, p.q, d},
                           {{0, 1, 2, far},
                            {1, 0, 1, far},
                            {2, 1, 0, far},
                            {far, far, far, 0}}),
            {},
            {},
            far};
  auto with_d = [&](std::vector<int> ids) {
    std::vector<int> from_d = id_range(a + 2 * p.q, p.k - p.q);
    ids.insert(ids.end(), from_d.begin(), from_d.end());
    return Panel(std::move(ids));
  };
  f.panels.emplace("P_1", with_d(id_range(0, p.q)));
  f.panels.emplace("P_2", with_d(id_range(a + p.q, p.q)));
  f.panels.emplace("B", Panel(id_range(a, p.q)));
  PanelDistribution dist;
  dist.k = p.k;
  dist.N = p.n;
  dist.entries = {{f.panels.at("P_1"), Rational(1, 2)},
                  {f.panels.at("P_2"), Rational(1, 2)}};
  f.distribution = std::move(dist);
  return f;
}

Fixture appxG(const FixtureParams& p) {
  double eps = p.eps;
  require(eps > 0 && eps < 1e-2, "appxG needs 0 < eps < 0.01");
  const double s = std::sqrt(17.0);
  // Within-block distances, upper triangle of the 7-point pattern.
  std::vector<std::vector<double>> b(7, std::vector<double>(7, 0.0));
  auto set = [&](int i, int j, double v) { b[i][j] = b[j][i] = v; };
  set(0, 1, 1);
  set(0, 2, 2);
  set(0, 3, (s - 1) / 2);
  set(0, 4, (s + 1) / 2 - eps);
  set(0, 5, (s + 1) / 2 - eps);
  set(0, 6, (s + 3) / 2 - 2 * eps);
  set(1, 2, 1);
  set(1, 3, (s - 3) / 2);
  set(1, 4, (s - 1) / 2 - eps);
  set(1, 5, (s - 1) / 2 - eps);
  set(1, 6, (s + 1) / 2 - 2 * eps);
  set(2, 3, (s - 1) / 2);
  set(2, 4, (s + 1) / 2 - eps);
  set(2, 5, (s + 1) / 2 - eps);
  set(2, 6, (s + 3) / 2 - 2 * eps);
  set(3, 4, 1 - eps);
  set(3, 5, 1 - eps);
  set(3, 6, 2 - 2 * eps);
  set(4, 5, 0);
  set(4, 6, 1 - eps);
  set(5, 6, 1 - eps);

  double max_local = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) max_local = std::max(max_local, b[i][j]);
  double far = kFarFactor * max_local;

  const int n = 28;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d[i][j] = (i / 7 == j / 7) ? b[i % 7][j % 7] : far;
    }
  Fixture f{MetricInstance::from_distances(std::move(d)), {}, {}, far};
  return f;
}

}  // namespace

Fixture make_fixture(const std::string& name, const FixtureParams& params) {
  if (name == "thm31") return thm31(params);
  if (name == "thm42") return thm42(params);
  if (name == "appxA") return appxA(params);
  if (name == "appxB_tight") return appxB_tight(params);
  if (name == "propE1_a") return propE1_a(params);
  if (name == "propE1_b") return propE1_b(params);
  if (name == "appxG") return appxG(params);
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace sortition
