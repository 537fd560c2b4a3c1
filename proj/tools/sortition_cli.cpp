#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sortition/allocation.hpp"
#include "sortition/audit.hpp"
#include "sortition/birkhoff.hpp"
#include "sortition/dataset.hpp"
#include "sortition/harness.hpp"
#include "sortition/metric.hpp"
#include "sortition/oracle.hpp"
#include "sortition/selectors.hpp"

namespace {

using namespace sortition;

struct InstanceArgs {
  std::string matrix;
  std::string dataset;
  std::string schema;
  long long resolution = 0;
  std::uint64_t metric_seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--matrix", matrix, "distance matrix file (unit weights)");
    cmd->add_option("--data", dataset, "dataset CSV (needs --schema)");
    cmd->add_option("--schema", schema, "schema file for --data");
    cmd->add_option("--resolution", resolution,
                    "integer weight resolution for --data (0 keeps loaded weights)");
    cmd->add_option("--metric-seed", metric_seed,
                    "feature-weight seed for --data");
  }

  MetricInstance load() const {
    if (!matrix.empty()) return read_distance_matrix_file(matrix);
    if (dataset.empty() || schema.empty())
      throw CLI::ValidationError("instance",
                                 "need --matrix or --data with --schema");
    FeatureSchema sch = FeatureSchema::parse_file(schema);
    DataTable table = load_dataset_file(dataset, sch);
    if (resolution > 0) rescale_weights(table, resolution);
    BuildResult built = build_metric(table, metric_seed);
    for (const auto& w : built.warnings) std::cerr << "warning: " << w << "\n";
    return std::move(built.instance);
  }
};

Panel read_panel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open panel file " + path);
  std::vector<int> ids;
  int id;
  while (in >> id) ids.push_back(id);
  return Panel(std::move(ids));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    open_out(path) << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Panel selection with exact fairness and core guarantees"};
  app.require_subcommand(1);

  // select
  auto* select = app.add_subcommand("select", "sample one panel");
  InstanceArgs select_inst;
  select_inst.attach(select);
  std::string algo_name = "fgc";
  int sel_k = 0, sel_q = 0;
  std::uint64_t sel_seed = 0;
  std::string sel_out;
  long long sel_gate = 2000;
  select->add_option("--algo", algo_name, "uniform | fgc | afgc")->required();
  select->add_option("--k", sel_k, "panel size")->required();
  select->add_option("--q", sel_q, "representation rank (afgc)");
  select->add_option("--seed", sel_seed, "RNG seed");
  select->add_option("--gate", sel_gate, "exact decomposition size gate");
  select->add_option("--out", sel_out, "output file (default stdout)");

  // decompose
  auto* decompose = app.add_subcommand(
      "decompose", "emit the full panel distribution of fair greedy capture");
  InstanceArgs dec_inst;
  dec_inst.attach(decompose);
  int dec_k = 0;
  long long dec_gate = 2000;
  std::string dec_out;
  decompose->add_option("--k", dec_k, "panel size")->required();
  decompose->add_option("--gate", dec_gate, "exact decomposition size gate");
  decompose->add_option("--out", dec_out, "output file (default stdout)");

  // allocate
  auto* allocate = app.add_subcommand(
      "allocate", "emit the fractional allocation of fair greedy capture");
  InstanceArgs alloc_inst;
  alloc_inst.attach(allocate);
  int alloc_k = 0;
  std::string alloc_out;
  allocate->add_option("--k", alloc_k, "panel size")->required();
  allocate->add_option("--out", alloc_out, "output file (default stdout)");

  // quotas
  auto* quotas = app.add_subcommand(
      "quotas", "export per-individual ball memberships as CSV");
  InstanceArgs quota_inst;
  quota_inst.attach(quotas);
  int quota_k = 0;
  std::string quota_out;
  quotas->add_option("--k", quota_k, "panel size")->required();
  quotas->add_option("--out", quota_out, "output file (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "estimate a panel's core violation");
  InstanceArgs audit_inst;
  audit_inst.attach(audit);
  std::string audit_panel_path, audit_centers_out;
  int audit_k = 0, audit_q = 1;
  audit->add_option("--panel", audit_panel_path, "panel file, one id per line")
      ->required();
  audit->add_option("--k", audit_k, "panel size")->required();
  audit->add_option("--q", audit_q, "representation rank")->required();
  audit->add_option("--centers-out", audit_centers_out,
                    "per-center CSV output file");

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "exact core violation by brute-force enumeration");
  InstanceArgs oracle_inst;
  oracle_inst.attach(oracle);
  std::string oracle_panel_path;
  int oracle_k = 0, oracle_q = 1, oracle_max_size = 0;
  long long oracle_max_n = 14;
  oracle->add_option("--panel", oracle_panel_path, "panel file")->required();
  oracle->add_option("--k", oracle_k, "panel size")->required();
  oracle->add_option("--q", oracle_q, "representation rank")->required();
  oracle->add_option("--max-size", oracle_max_size,
                     "cap on alternative panel size (default k)");
  oracle->add_option("--max-n", oracle_max_n,
                     "refuse instances above this many individuals");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run the full protocol");
  std::string exp_config;
  experiment->add_option("--config", exp_config, "config file")->required();

  // summarize
  auto* summ = app.add_subcommand("summarize", "re-aggregate a finished run");
  std::string summ_dir;
  summ->add_option("--dir", summ_dir, "report directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (select->parsed()) {
      MetricInstance inst = select_inst.load();
      SelectorKind kind = selector_from_name(algo_name);
      Panel panel;
      switch (kind) {
        case SelectorKind::uniform:
          panel = uniform_sample(inst.total_weight(), sel_k, sel_seed);
          break;
        case SelectorKind::fgc:
          panel = sample_panel(fgc_distribution(inst, sel_k, sel_gate), sel_seed);
          break;
        case SelectorKind::afgc:
          panel = afgc_sample(inst, sel_k, sel_q, sel_seed);
          break;
      }
      std::ostringstream body;
      for (int id : panel.members) body << id << "\n";
      emit(sel_out, body.str());
    } else if (decompose->parsed()) {
      MetricInstance inst = dec_inst.load();
      std::ostringstream body;
      write_distribution(body, fgc_distribution(inst, dec_k, dec_gate));
      emit(dec_out, body.str());
    } else if (allocate->parsed()) {
      MetricInstance inst = alloc_inst.load();
      std::ostringstream body;
      write_allocation(body, fractional_allocation(inst, alloc_k));
      emit(alloc_out, body.str());
    } else if (quotas->parsed()) {
      MetricInstance inst = quota_inst.load();
      std::ostringstream body;
      write_ball_quotas_csv(body, fractional_allocation(inst, quota_k));
      emit(quota_out, body.str());
    } else if (audit->parsed()) {
      MetricInstance inst = audit_inst.load();
      Panel panel = read_panel_file(audit_panel_path);
      AuditReport report = audit_panel(inst, panel, audit_k, audit_q);
      std::cout << "k " << report.k << "\n"
                << "q " << report.q << "\n"
                << "alpha_hat "
                << (std::isinf(report.alpha_hat)
                        ? std::string("inf")
                        : std::to_string(report.alpha_hat))
                << "\n"
                << "unbounded " << (std::isinf(report.alpha_hat) ? 1 : 0) << "\n";
      if (!audit_centers_out.empty()) {
        std::ofstream centers = open_out(audit_centers_out);
        centers << "center,alpha,panel\n";
        for (const auto& c : report.centers) {
          centers << c.center << ','
                  << (std::isinf(c.alpha) ? std::string("inf")
                                          : std::to_string(c.alpha))
                  << ',';
          for (std::size_t i = 0; i < c.nearest_panel.members.size(); ++i) {
            if (i) centers << ' ';
            centers << c.nearest_panel.members[i];
          }
          centers << "\n";
        }
      }
    } else if (oracle->parsed()) {
      MetricInstance inst = oracle_inst.load();
      Panel panel = read_panel_file(oracle_panel_path);
      OracleLimits limits;
      limits.max_n = oracle_max_n;
      limits.max_k = oracle_k;
      CoreViolationResult res = exact_core_violation(inst, panel, oracle_k,
                                                     oracle_q, oracle_max_size,
                                                     limits);
      std::cout << "alpha_star "
                << (std::isinf(res.alpha_star) ? std::string("inf")
                                               : std::to_string(res.alpha_star))
                << "\n"
                << "unbounded " << (std::isinf(res.alpha_star) ? 1 : 0) << "\n";
      std::cout << "witness_panel";
      for (int id : res.witness_panel.members) std::cout << ' ' << id;
      std::cout << "\nwitness_set";
      for (int id : res.witness_set) std::cout << ' ' << id;
      std::cout << "\n";
    } else if (experiment->parsed()) {
      ExperimentConfig cfg = ExperimentConfig::parse_file(exp_config);
      ExperimentResult result = run_experiment(cfg);
      write_reports(cfg, result);
      std::cout << "wrote " << result.rows.size() << " rows to " << cfg.out_dir
                << " (resolution " << result.effective_resolution << ")\n";
    } else if (summ->parsed()) {
      summarize(summ_dir);
      std::cout << "rebuilt aggregates in " << summ_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
