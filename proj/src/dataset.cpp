#include "sortition/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "sortition/rng.hpp"

namespace sortition {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::string canonical_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, bool& ok) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    ok = pos == s.size() && std::isfinite(v);
    return v;
  } catch (...) {
    ok = false;
    return 0.0;
  }
}

}  // namespace

FeatureSchema FeatureSchema::parse(std::istream& in) {
  FeatureSchema schema;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string head;
    ls >> head;
    if (head == "feature") {
      Feature f;
      std::string kind;
      if (!(ls >> f.name >> kind))
        throw LoadError("schema line " + std::to_string(lineno) +
                        ": expected 'feature <name> <kind> [weight]'");
      if (kind == "categorical")
        f.kind = FeatureKind::categorical;
      else if (kind == "continuous")
        f.kind = FeatureKind::continuous;
      else
        throw LoadError("schema line " + std::to_string(lineno) +
                        ": unknown kind '" + kind + "'");
      double w;
      if (ls >> w) {
        if (w < 0)
          throw LoadError("schema line " + std::to_string(lineno) +
                          ": negative feature weight");
        f.weight = w;
      }
      schema.features.push_back(std::move(f));
    } else if (head == "weight_column") {
      std::string name;
      if (!(ls >> name))
        throw LoadError("schema line " + std::to_string(lineno) +
                        ": weight_column needs a name");
      schema.weight_column = name;
    } else {
      throw LoadError("schema line " + std::to_string(lineno) +
                      ": unknown directive '" + head + "'");
    }
  }
  schema.validate();
  return schema;
}

FeatureSchema FeatureSchema::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open schema file " + path);
  return parse(in);
}

bool FeatureSchema::all_weights_fixed() const {
  for (const auto& f : features)
    if (!f.weight) return false;
  return true;
}

void FeatureSchema::validate() const {
  if (features.empty()) throw LoadError("schema has no features");
  bool any_fixed = false, any_free = false;
  for (const auto& f : features) {
    if (f.name.empty()) throw LoadError("schema feature with empty name");
    (f.weight ? any_fixed : any_free) = true;
  }
  if (any_fixed && any_free)
    throw LoadError("schema must fix all feature weights or none");
  for (std::size_t i = 0; i < features.size(); ++i)
    for (std::size_t j = i + 1; j < features.size(); ++j)
      if (features[i].name == features[j].name)
        throw LoadError("duplicate feature '" + features[i].name + "'");
}

long long DataTable::total_weight() const {
  long long s = 0;
  for (long long w : weight) s += w;
  return s;
}

DataTable load_dataset(std::istream& in, const FeatureSchema& schema) {
  schema.validate();
  std::string line;
  if (!std::getline(in, line)) throw LoadError("dataset is empty");
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);

  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw LoadError("dataset is missing column '" + name + "'");
    return static_cast<int>(it - header.begin());
  };

  std::vector<int> feat_col;
  for (const auto& f : schema.features) feat_col.push_back(column_of(f.name));
  int weight_col = -1;
  if (schema.weight_column) weight_col = column_of(*schema.weight_column);

  DataTable table;
  table.schema = schema;
  std::map<std::vector<std::string>, std::size_t> seen;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    std::vector<std::string> values(schema.features.size());
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
      if (feat_col[f] >= static_cast<int>(cells.size()))
        throw LoadError("row " + std::to_string(lineno) + ": missing value for '" +
                        schema.features[f].name + "'");
      std::string raw = trim(cells[feat_col[f]]);
      if (schema.features[f].kind == FeatureKind::continuous) {
        bool ok = false;
        double v = parse_double(raw, ok);
        if (!ok)
          throw LoadError("row " + std::to_string(lineno) +
                          ": non-numeric value '" + raw + "' for continuous feature '" +
                          schema.features[f].name + "'");
        values[f] = canonical_double(v);
      } else {
        values[f] = raw;
      }
    }
    double w = 1.0;
    if (weight_col >= 0) {
      if (weight_col >= static_cast<int>(cells.size()))
        throw LoadError("row " + std::to_string(lineno) + ": missing weight");
      bool ok = false;
      w = parse_double(trim(cells[weight_col]), ok);
      if (!ok || w <= 0)
        throw LoadError("row " + std::to_string(lineno) +
                        ": weight must be a positive number");
    }
    auto it = seen.find(values);
    if (it == seen.end()) {
      seen.emplace(values, table.rows.size());
      table.rows.push_back(std::move(values));
      table.raw_weight.push_back(w);
    } else {
      table.raw_weight[it->second] += w;
    }
  }
  if (table.rows.empty()) throw LoadError("dataset has no data rows");
  table.weight.resize(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    table.weight[i] = std::max<long long>(1, std::llround(table.raw_weight[i]));
  return table;
}

DataTable load_dataset_file(const std::string& path,
                            const FeatureSchema& schema) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open dataset " + path);
  return load_dataset(in, schema);
}

std::vector<long long> apportion(const std::vector<double>& w,
                                 long long resolution) {
  std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("apportion: empty weights");
  if (resolution < static_cast<long long>(n))
    throw std::invalid_argument("apportion: resolution below point count");
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0)) throw std::invalid_argument("apportion: nonpositive total");

  // Reserve one unit per point, split the rest by largest remainder.
  long long spare = resolution - static_cast<long long>(n);
  std::vector<long long> share(n, 1);
  std::vector<std::pair<double, std::size_t>> rem(n);
  long long assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double exact = w[i] / total * static_cast<double>(spare);
    long long base = static_cast<long long>(std::floor(exact));
    share[i] += base;
    assigned += base;
    rem[i] = {exact - static_cast<double>(base), i};
  }
  std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (long long t = 0; t < spare - assigned; ++t) ++share[rem[t].second];
  return share;
}

void rescale_weights(DataTable& table, long long resolution) {
  table.weight = apportion(table.raw_weight, resolution);
}

BuildResult build_metric(const DataTable& table, std::uint64_t seed) {
  if (table.rows.empty()) throw std::invalid_argument("empty table");
  const auto& schema = table.schema;
  std::size_t nf = schema.features.size();
  std::size_t n = table.rows.size();

  std::vector<double> weights(nf);
  if (schema.all_weights_fixed()) {
    for (std::size_t f = 0; f < nf; ++f) weights[f] = *schema.features[f].weight;
  } else {
    Rng rng(seed);
    double sum = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      weights[f] = uniform_unit(rng);
      sum += weights[f];
    }
    if (sum <= 0) sum = 1;
    for (auto& w : weights) w /= sum;
  }

  // Parse continuous columns and find their observed ranges.
  std::vector<std::vector<double>> cont(nf);
  std::vector<double> range(nf, 0.0);
  std::vector<std::string> warnings;
  for (std::size_t f = 0; f < nf; ++f) {
    if (schema.features[f].kind != FeatureKind::continuous) continue;
    cont[f].resize(n);
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool ok = false;
      cont[f][i] = parse_double(table.rows[i][f], ok);
      if (!ok)
        throw LoadError("non-numeric stored value for continuous feature '" +
                        schema.features[f].name + "'");
      if (i == 0) {
        lo = hi = cont[f][i];
      } else {
        lo = std::min(lo, cont[f][i]);
        hi = std::max(hi, cont[f][i]);
      }
    }
    range[f] = hi - lo;
    if (range[f] == 0.0)
      warnings.push_back("continuous feature '" + schema.features[f].name +
                         "' has zero range and contributes 0");
  }

  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0;
      for (std::size_t f = 0; f < nf; ++f) {
        double df;
        if (schema.features[f].kind == FeatureKind::categorical) {
          df = table.rows[i][f] != table.rows[j][f] ? 1.0 : 0.0;
        } else if (range[f] > 0) {
          df = std::abs(cont[f][i] - cont[f][j]) / range[f];
        } else {
          df = 0.0;
        }
        sum += weights[f] * df;
      }
      d[i][j] = d[j][i] = sum;
    }
  }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string lab;
    for (std::size_t f = 0; f < nf; ++f) {
      if (f) lab += '|';
      lab += table.rows[i][f];
    }
    labels.push_back(std::move(lab));
  }

  MetricInstance inst =
      MetricInstance::from_distances(std::move(d), table.weight, std::move(labels));
  return BuildResult{std::move(inst), std::move(weights), std::move(warnings)};
}

}  // namespace sortition
