#include "sortition/synthetic.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortition/rng.hpp"

namespace sortition {

DataTable make_adult_like_table(const SyntheticSpec& spec) {
  if (spec.points < 20) throw std::invalid_argument("need at least 20 points");
  double reserved = spec.heavy_fraction + 2 * spec.mid_fraction +
                    6 * spec.small_fraction;
  if (!(spec.heavy_fraction > 0) || !(reserved < 1.0))
    throw std::invalid_argument("weight fractions must fit below 1");

  FeatureSchema schema;
  schema.features = {
      {"sex", FeatureKind::categorical, {}},
      {"race", FeatureKind::categorical, {}},
      {"workclass", FeatureKind::categorical, {}},
      {"marital_status", FeatureKind::categorical, {}},
      {"education_num", FeatureKind::continuous, {}},
  };

  const int card[4] = {2, 5, 7, 5};
  Rng rng(spec.seed);
  std::set<std::vector<std::string>> seen;
  DataTable table;
  table.schema = schema;
  while (static_cast<int>(table.rows.size()) < spec.points) {
    std::vector<std::string> row(5);
    for (int f = 0; f < 4; ++f)
      row[f] = schema.features[f].name.substr(0, 1) +
               std::to_string(uniform_below(rng, card[f]));
    row[4] = std::to_string(1 + uniform_below(rng, 16));
    if (seen.insert(row).second) table.rows.push_back(std::move(row));
  }

  int n = spec.points;
  table.raw_weight.resize(n);
  table.raw_weight[0] = spec.heavy_fraction;
  for (int i = 1; i <= 2; ++i) table.raw_weight[i] = spec.mid_fraction;
  for (int i = 3; i <= 8; ++i) table.raw_weight[i] = spec.small_fraction;
  double left = 1.0 - reserved;
  std::vector<double> tail(n - 9);
  double tail_sum = 0;
  for (auto& t : tail) {
    t = 0.2 + uniform_unit(rng);
    tail_sum += t;
  }
  for (int i = 9; i < n; ++i)
    table.raw_weight[i] = left * tail[i - 9] / tail_sum;

  table.weight.assign(n, 1);
  return table;
}

}  // namespace sortition
