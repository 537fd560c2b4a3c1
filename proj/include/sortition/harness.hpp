#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sortition/selectors.hpp"
#include "sortition/synthetic.hpp"

namespace sortition {

// Key-value config, one "key value..." pair per line, '#' comments:
//   dataset <csv path>        schema <schema path>
//   synthetic <0|1>           synthetic_points <n>   synthetic_seed <s>
//   seeds <count>             subsample <cap>
//   k <k>                     q <list of values | all>
//   algorithms <names...>     master_seed <s>
//   resolution <N>            birkhoff_gate <N>
//   greedy_restarts <r>       greedy_max_steps <s>
//   workers <w>               out_dir <dir>
struct ExperimentConfig {
  std::string dataset_path;
  std::string schema_path;
  bool synthetic = false;
  SyntheticSpec synth;

  int seeds = 100;
  int subsample = 300;
  int k = 40;
  std::vector<int> q_values;  // empty means 1..k
  std::vector<SelectorKind> algorithms = {SelectorKind::uniform,
                                          SelectorKind::fgc};
  std::uint64_t master_seed = 1;
  long long resolution = 0;  // 0 means 1000 * k
  long long birkhoff_gate = 2000;
  int greedy_restarts = 5;
  int greedy_max_steps = 200;
  int workers = 1;
  std::string out_dir = "experiment_out";

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
  void validate() const;
};

struct ExperimentRow {
  int seed = 0;
  SelectorKind algorithm = SelectorKind::uniform;
  int q = 0;
  double violation = 0.0;  // audit alpha-hat, may be +infinity
  double social = 0.0;
  double opt_social = 0.0;
  double cost_ratio = 0.0;  // opt / social, the paper's orientation
  std::string error;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  long long effective_resolution = 0;
};

// One metric per weight seed, one sampled panel per (seed, algorithm, q),
// audited and scored. Failures land in the row's error column and the run
// continues. Rows come back sorted by (seed, algorithm, q) no matter how many
// workers ran.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes rows.csv plus the aggregate and figure files into out_dir.
void write_reports(const ExperimentConfig& config,
                   const ExperimentResult& result);

// Rebuilds aggregate.csv, figure_expost.csv and figure_socialcost.csv from an
// existing rows.csv.
void summarize(const std::string& dir);

}  // namespace sortition
