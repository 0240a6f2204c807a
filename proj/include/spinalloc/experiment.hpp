#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinalloc/baselines.hpp"
#include "spinalloc/metrics.hpp"

namespace spinalloc {

enum class NetModel { ER, Geometric };

std::string to_string(NetModel m);

struct ExperimentConfig {
  NetModel model = NetModel::ER;
  std::vector<int> i_values = {100};
  std::vector<int> q_values = {4};
  double mu_dbm = -75.0;              // geometric only
  double edge_prob = 0.0;             // ER: fixed p when > 0, else 4.5/I
  int z = 100;                        // realizations per (I, Q) cell
  std::uint64_t master_seed = 1;
  std::vector<std::string> solvers = {"sp", "bp", "mnf", "pmnf", "random"};
  SpParams sp_params;
  bool compute_delta = false;         // exact for n <= 80, sampled otherwise
  std::string out_dir;

  void validate() const;
};

ExperimentConfig config_from_json(const std::string& json_text);

struct ExperimentRecord {
  std::string model;
  int i_target = 0;
  int i_actual = 0;
  int q = 0;
  double mu_dbm = 0.0;
  bool has_mu = false;
  int realization = 0;
  std::string solver;
  int interference_links = 0;
  bool zero_interference = false;
  int cost = 0;
  double avg_degree = 0.0;
  double degree_std = 0.0;
  double delta = 0.0;
  bool has_delta = false;
  int sp_iterations = 0;
  int sp_restarts = 0;
  bool fallback_used = false;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t graph_hash = 0;
};

// One record per (cell, realization, solver); all solvers of a realization
// see the same graph. Fully determined by the config except runtime_ms.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

struct SummaryRow {
  std::string model;
  int i_target = 0;
  int q = 0;
  double mu_dbm = 0.0;
  bool has_mu = false;
  std::string solver;
  int z = 0;
  double zero_rate_pct = 0.0;
  double mean_conflicts = 0.0;
  double std_conflicts = 0.0;
  double mean_degree = 0.0;
  double mean_delta = 0.0;
  bool has_delta = false;
};

std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord>& records);

std::string records_csv(const std::vector<ExperimentRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);

// Writes records.csv, summary.csv and figures.gp into out_dir.
void emit_outputs(const std::vector<ExperimentRecord>& records,
                  const std::vector<SummaryRow>& summary,
                  const std::string& out_dir);

std::uint64_t graph_hash(const NetworkGraph& g);

// Dispatch one solver run on a prepared graph with its own rng stream.
std::pair<Allocation, SolveStats> run_solver(const std::string& name,
                                             const NetworkGraph& g, int q,
                                             const SpParams& params, Rng& rng);

}  // namespace spinalloc
