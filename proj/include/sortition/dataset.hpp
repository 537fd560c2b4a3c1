#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sortition/metric.hpp"

namespace sortition {

enum class FeatureKind { categorical, continuous };

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::categorical;
  std::optional<double> weight;  // fixed weight; absent -> drawn per seed
};

// Schema file: one feature per line, "feature <name> <categorical|continuous>
// [weight]", plus an optional "weight_column <name>" line. '#' starts a
// comment. Either all features carry fixed weights or none do.
struct FeatureSchema {
  std::vector<Feature> features;
  std::optional<std::string> weight_column;

  static FeatureSchema parse(std::istream& in);
  static FeatureSchema parse_file(const std::string& path);

  bool all_weights_fixed() const;
  void validate() const;
};

// Deduplicated table of individuals. Values are canonicalized strings in
// schema feature order (continuous values reformatted from their parsed
// doubles so numerically equal rows merge).
struct DataTable {
  FeatureSchema schema;
  std::vector<std::vector<std::string>> rows;
  std::vector<double> raw_weight;   // merged weights as loaded
  std::vector<long long> weight;    // positive integers

  std::size_t size() const { return rows.size(); }
  long long total_weight() const;
};

struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a CSV with a header row naming at least the schema features. Equal
// rows are merged with weights summed; weights come from the schema's weight
// column (default 1 per row) and are rounded to integers >= 1.
DataTable load_dataset(std::istream& in, const FeatureSchema& schema);
DataTable load_dataset_file(const std::string& path,
                            const FeatureSchema& schema);

// Largest-remainder apportionment of resolution units proportional to w,
// every share at least 1. The result sums to resolution exactly.
std::vector<long long> apportion(const std::vector<double>& w,
                                 long long resolution);

// Rescales table weights so they sum to resolution exactly (proportional to
// the raw weights).
void rescale_weights(DataTable& table, long long resolution);

struct BuildResult {
  MetricInstance instance;
  std::vector<double> feature_weights;
  std::vector<std::string> warnings;
};

// Representation metric from a table: per-feature indicator distance for
// categorical features, range-normalized absolute difference for continuous
// ones, combined as a weighted sum. Feature weights come from the schema when
// fixed; otherwise each is drawn uniformly from [0,1] using the seed and the
// vector is normalized to sum 1. A continuous feature with zero observed
// range contributes 0 and records a warning.
BuildResult build_metric(const DataTable& table, std::uint64_t seed);

}  // namespace sortition
