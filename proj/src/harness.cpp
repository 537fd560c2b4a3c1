#include "sortition/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "sortition/audit.hpp"
#include "sortition/birkhoff.hpp"
#include "sortition/rng.hpp"
#include "sortition/social.hpp"

namespace sortition {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_violation(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string key;
    ls >> key;
    auto bad = [&](const std::string& why) {
      throw std::runtime_error("config line " + std::to_string(lineno) + ": " +
                               why);
    };
    if (key == "dataset") {
      ls >> cfg.dataset_path;
    } else if (key == "schema") {
      ls >> cfg.schema_path;
    } else if (key == "synthetic") {
      int v = 0;
      if (!(ls >> v)) bad("synthetic needs 0 or 1");
      cfg.synthetic = v != 0;
    } else if (key == "synthetic_points") {
      if (!(ls >> cfg.synth.points)) bad("bad synthetic_points");
    } else if (key == "synthetic_seed") {
      if (!(ls >> cfg.synth.seed)) bad("bad synthetic_seed");
    } else if (key == "seeds") {
      if (!(ls >> cfg.seeds)) bad("bad seeds");
    } else if (key == "subsample") {
      if (!(ls >> cfg.subsample)) bad("bad subsample");
    } else if (key == "k") {
      if (!(ls >> cfg.k)) bad("bad k");
    } else if (key == "q") {
      cfg.q_values.clear();
      std::string tok;
      while (ls >> tok) {
        if (tok == "all") {
          cfg.q_values.clear();
          break;
        }
        cfg.q_values.push_back(std::stoi(tok));
      }
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      std::string tok;
      while (ls >> tok) cfg.algorithms.push_back(selector_from_name(tok));
      if (cfg.algorithms.empty()) bad("algorithms needs at least one name");
    } else if (key == "master_seed") {
      if (!(ls >> cfg.master_seed)) bad("bad master_seed");
    } else if (key == "resolution") {
      if (!(ls >> cfg.resolution)) bad("bad resolution");
    } else if (key == "birkhoff_gate") {
      if (!(ls >> cfg.birkhoff_gate)) bad("bad birkhoff_gate");
    } else if (key == "greedy_restarts") {
      if (!(ls >> cfg.greedy_restarts)) bad("bad greedy_restarts");
    } else if (key == "greedy_max_steps") {
      if (!(ls >> cfg.greedy_max_steps)) bad("bad greedy_max_steps");
    } else if (key == "workers") {
      if (!(ls >> cfg.workers)) bad("bad workers");
    } else if (key == "out_dir") {
      ls >> cfg.out_dir;
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return parse(in);
}

void ExperimentConfig::validate() const {
  if (seeds < 1) throw std::runtime_error("config: seeds must be >= 1");
  if (k < 1) throw std::runtime_error("config: k must be >= 1");
  if (!synthetic && (dataset_path.empty() || schema_path.empty()))
    throw std::runtime_error("config: dataset and schema (or synthetic 1) required");
  for (int q : q_values)
    if (q < 1 || q > k) throw std::runtime_error("config: q outside [1, k]");
  long long res = resolution ? resolution : 1000LL * k;
  bool has_fgc = std::find(algorithms.begin(), algorithms.end(),
                           SelectorKind::fgc) != algorithms.end();
  if (has_fgc && std::min(res, birkhoff_gate) < 1)
    throw std::runtime_error("config: bad resolution");
  if (workers < 1) throw std::runtime_error("config: workers must be >= 1");
}

namespace {

DataTable load_table(const ExperimentConfig& cfg) {
  if (cfg.synthetic) return make_adult_like_table(cfg.synth);
  FeatureSchema schema = FeatureSchema::parse_file(cfg.schema_path);
  return load_dataset_file(cfg.dataset_path, schema);
}

// Keeps the `cap` heaviest points (ties by id), preserving row order.
void subsample_table(DataTable& table, int cap) {
  int n = static_cast<int>(table.size());
  if (n <= cap) return;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (table.raw_weight[a] != table.raw_weight[b])
      return table.raw_weight[a] > table.raw_weight[b];
    return a < b;
  });
  order.resize(cap);
  std::sort(order.begin(), order.end());
  DataTable out;
  out.schema = table.schema;
  for (int idx : order) {
    out.rows.push_back(std::move(table.rows[idx]));
    out.raw_weight.push_back(table.raw_weight[idx]);
  }
  out.weight.assign(cap, 1);
  table = std::move(out);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  DataTable table = load_table(config);
  subsample_table(table, config.subsample);

  long long resolution = config.resolution ? config.resolution : 1000LL * config.k;
  bool has_fgc = std::find(config.algorithms.begin(), config.algorithms.end(),
                           SelectorKind::fgc) != config.algorithms.end();
  if (has_fgc) resolution = std::min(resolution, config.birkhoff_gate);
  resolution = std::max<long long>(resolution, static_cast<long long>(table.size()));
  rescale_weights(table, resolution);

  std::vector<int> q_values = config.q_values;
  if (q_values.empty()) {
    q_values.resize(config.k);
    std::iota(q_values.begin(), q_values.end(), 1);
  }

  const std::size_t rows_per_seed = config.algorithms.size() * q_values.size();
  ExperimentResult result;
  result.effective_resolution = resolution;
  result.rows.assign(static_cast<std::size_t>(config.seeds) * rows_per_seed, {});

  auto run_seed = [&](int seed) {
    std::size_t base_index = static_cast<std::size_t>(seed) * rows_per_seed;
    const MetricInstance inst =
        build_metric(table, derive_seed(config.master_seed, seed, 1)).instance;
    const long long N = inst.total_weight();

    // The social-cost reference depends only on (instance, q); share it
    // across algorithms.
    std::map<int, OptSocialCost> opt_by_q;
    for (int q : q_values) {
      GreedyOptions gopts;
      gopts.restarts = config.greedy_restarts;
      gopts.max_steps = config.greedy_max_steps;
      gopts.seed = derive_seed(config.master_seed, seed, 2, q);
      try {
        opt_by_q.emplace(q, opt_social_cost(inst, config.k, q, OptMethod::greedy,
                                            gopts));
      } catch (...) {
        // Left missing; rows that need it will record the error below.
      }
    }

    PanelDistribution fgc_dist;
    bool fgc_ready = false;
    std::string fgc_error;
    if (has_fgc) {
      try {
        fgc_dist = fgc_distribution(inst, config.k, config.birkhoff_gate);
        fgc_ready = true;
      } catch (const std::exception& e) {
        fgc_error = e.what();
      }
    }

    std::size_t slot = base_index;
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
      SelectorKind algo = config.algorithms[ai];
      for (int q : q_values) {
        ExperimentRow row;
        row.seed = seed;
        row.algorithm = algo;
        row.q = q;
        try {
          std::uint64_t draw_seed =
              derive_seed(config.master_seed, seed, 3 + ai, q);
          Panel panel;
          switch (algo) {
            case SelectorKind::uniform:
              panel = uniform_sample(N, config.k, draw_seed);
              break;
            case SelectorKind::fgc:
              if (!fgc_ready) throw std::runtime_error(fgc_error);
              panel = sample_panel(fgc_dist, draw_seed);
              break;
            case SelectorKind::afgc:
              panel = afgc_sample(inst, config.k, q, draw_seed);
              break;
          }
          row.violation = audit_panel(inst, panel, config.k, q).alpha_hat;
          row.social = social_cost(inst, panel, q);
          auto it = opt_by_q.find(q);
          if (it == opt_by_q.end())
            throw std::runtime_error("social-cost reference unavailable");
          row.opt_social = it->second.cost;
          row.cost_ratio =
              row.social == 0.0 ? 1.0 : row.opt_social / row.social;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        result.rows[slot++] = std::move(row);
      }
    }
  };

  int workers = std::min(config.workers, config.seeds);
  if (workers <= 1) {
    for (int s = 0; s < config.seeds; ++s) run_seed(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int s = next.fetch_add(1);
          if (s >= config.seeds) return;
          run_seed(s);
        }
      });
    for (auto& t : pool) t.join();
  }
  return result;
}

void write_reports(const ExperimentConfig& config,
                   const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  std::ofstream rows(fs::path(config.out_dir) / "rows.csv");
  rows << "seed,algorithm,q,violation,social_cost,opt_social_cost,cost_ratio,error\n";
  for (const auto& r : result.rows) {
    rows << r.seed << ',' << selector_name(r.algorithm) << ',' << r.q << ',';
    if (r.error.empty()) {
      rows << format_double(r.violation) << ',' << format_double(r.social)
           << ',' << format_double(r.opt_social) << ','
           << format_double(r.cost_ratio) << ',';
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      rows << ",,,," << msg;
    }
    rows << "\n";
  }
  rows.close();
  summarize(config.out_dir);
}

void summarize(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(dir) / "rows.csv");
  if (!in) throw std::runtime_error("no rows.csv in " + dir);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("rows.csv is empty");

  struct Bucket {
    long long rows = 0, unbounded = 0, errors = 0;
    double violation_sum = 0, violation_max = 0, ratio_sum = 0;
  };
  std::map<std::pair<std::string, int>, Bucket> buckets;
  bool any = false;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream ls(line);
    std::string seed, algo, qs, viol, social, opt, ratio, err;
    std::getline(ls, seed, ',');
    std::getline(ls, algo, ',');
    std::getline(ls, qs, ',');
    std::getline(ls, viol, ',');
    std::getline(ls, social, ',');
    std::getline(ls, opt, ',');
    std::getline(ls, ratio, ',');
    std::getline(ls, err);
    any = true;
    Bucket& b = buckets[{algo, std::stoi(qs)}];
    ++b.rows;
    if (!err.empty() || viol.empty()) {
      ++b.errors;
      continue;
    }
    double v = parse_violation(viol);
    if (std::isinf(v)) {
      ++b.unbounded;
    } else {
      b.violation_sum += v;
      b.violation_max = std::max(b.violation_max, v);
    }
    b.ratio_sum += std::stod(ratio);
  }
  if (!any) throw std::runtime_error("rows.csv has no data rows");

  std::ofstream agg(fs::path(dir) / "aggregate.csv");
  agg << "algorithm,q,rows,errors,mean_violation,max_violation,frac_unbounded,"
         "mean_cost_ratio\n";
  std::ofstream fig_v(fs::path(dir) / "figure_expost.csv");
  fig_v << "algorithm,q,mean_violation,frac_unbounded\n";
  std::ofstream fig_r(fs::path(dir) / "figure_socialcost.csv");
  fig_r << "algorithm,q,mean_cost_ratio\n";
  for (const auto& [key, b] : buckets) {
    long long ok = b.rows - b.errors;
    long long bounded = ok - b.unbounded;
    double mean_v = bounded > 0 ? b.violation_sum / bounded : 0.0;
    double frac_unb = ok > 0 ? static_cast<double>(b.unbounded) / ok : 0.0;
    double mean_r = ok > 0 ? b.ratio_sum / ok : 0.0;
    agg << key.first << ',' << key.second << ',' << b.rows << ',' << b.errors
        << ',' << format_double(mean_v) << ',' << format_double(b.violation_max)
        << ',' << format_double(frac_unb) << ',' << format_double(mean_r)
        << "\n";
    fig_v << key.first << ',' << key.second << ',' << format_double(mean_v)
          << ',' << format_double(frac_unb) << "\n";
    fig_r << key.first << ',' << key.second << ',' << format_double(mean_r)
          << "\n";
  }
}

}  // namespace sortition
