#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinalloc/experiment.hpp"

namespace {

using namespace spinalloc;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

NetworkGraph load_graph(const std::string& path) {
  return parse_edge_list(slurp(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survey-propagation channel assignment toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random network");
  std::string model = "er";
  int stations = 100;
  int pools = 4;  // unused by generate, accepted for symmetry
  double mu_dbm = -75.0;
  double edge_prob = 0.0;
  std::uint64_t seed = 1;
  std::string out;
  gen->add_option("--model", model, "er|geo")->check(CLI::IsMember({"er", "geo"}));
  gen->add_option("--stations", stations, "station count (ER) / lambda (geo)");
  gen->add_option("--edge-prob", edge_prob, "ER edge probability; 0 = 4.5/I");
  gen->add_option("--mu-dbm", mu_dbm, "neighbor threshold [dBm] (geo)");
  gen->add_option("--seed", seed, "rng seed");
  gen->add_option("--out", out, "output file (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Allocate pools on a graph file");
  std::string graph_path, solver = "sp";
  solve->add_option("--graph", graph_path, "edge-list file")->required();
  solve->add_option("--solver", solver, "sp|bp|mnf|pmnf|random")
      ->check(CLI::IsMember({"sp", "bp", "mnf", "pmnf", "random"}));
  solve->add_option("--pools", pools, "number of resource pools Q");
  solve->add_option("--seed", seed, "rng seed");
  solve->add_option("--out", out, "output CSV file (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a Monte-Carlo sweep");
  std::string config_path, out_dir = "out";
  bool have_seed = false, have_out = false;
  exp->add_option("--config", config_path, "JSON config file");
  exp->add_option("--seed", seed, "master seed (overrides config)")
      ->each([&](const std::string&) { have_seed = true; });
  exp->add_option("--out", out_dir, "output directory (overrides config)")
      ->each([&](const std::string&) { have_out = true; });
  exp->add_option("--model", model, "er|geo (overrides config)")
      ->check(CLI::IsMember({"er", "geo", ""}));
  auto* exp_model = exp->get_option("--model");
  auto* exp_stations = exp->add_option("--stations", stations, "single I value");
  auto* exp_pools = exp->add_option("--pools", pools, "single Q value");
  auto* exp_mu = exp->add_option("--mu-dbm", mu_dbm, "threshold (geo)");
  auto* exp_solver = exp->add_option("--solver", solver, "single solver");

  // hyperbolicity
  auto* hyp = app.add_subcommand("hyperbolicity", "Gromov 4-point delta");
  long samples = 0;
  hyp->add_option("--graph", graph_path, "edge-list file")->required();
  hyp->add_option("--samples", samples, "sample count (0 = exact mode)");
  hyp->add_option("--seed", seed, "rng seed (sampled mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Rng rng = make_rng(seed);
      NetworkGraph g;
      if (model == "er") {
        double p = edge_prob > 0.0 ? edge_prob : 4.5 / stations;
        g = generate_erdos_renyi(stations, p, rng);
      } else {
        ChannelParams params;
        params.mu_dbm = mu_dbm;
        g = generate_geometric(stations, params, rng);
      }
      std::string text = write_edge_list(g);
      if (out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
      }
      auto [mean, sd] = degree_stats(g);
      std::cerr << "n=" << g.n << " edges=" << g.edge_count()
                << " mean_degree=" << mean << " degree_std=" << sd << "\n";
    } else if (*solve) {
      NetworkGraph g = load_graph(graph_path);
      Rng rng = make_rng(seed);
      SpParams params;
      auto [alloc, stats] = run_solver(solver, g, pools, params, rng);
      std::ostringstream csv;
      csv << "station,pool\n";
      for (int i = 0; i < g.n; ++i) csv << i << ',' << alloc.pool[i] + 1 << '\n';
      if (out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(out, std::ios::binary);
        f << csv.str();
      }
      std::cerr << "solver=" << solver
                << " conflicts=" << interference_links(g, alloc)
                << " iterations=" << stats.iterations
                << " restarts=" << stats.sp_restarts
                << " fallback=" << (stats.fallback_used ? 1 : 0) << "\n";
    } else if (*exp) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = config_from_json(slurp(config_path));
      if (have_seed) cfg.master_seed = seed;
      if (have_out || cfg.out_dir.empty()) cfg.out_dir = out_dir;
      if (!exp_model->empty())
        cfg.model = model == "geo" ? NetModel::Geometric : NetModel::ER;
      if (!exp_stations->empty()) cfg.i_values = {stations};
      if (!exp_pools->empty()) cfg.q_values = {pools};
      if (!exp_mu->empty()) cfg.mu_dbm = mu_dbm;
      if (!exp_solver->empty()) cfg.solvers = {solver};
      auto records = run_experiment(cfg);
      auto summary = aggregate(records);
      emit_outputs(records, summary, cfg.out_dir);
      std::cerr << "wrote " << records.size() << " records to " << cfg.out_dir
                << "\n";
    } else if (*hyp) {
      NetworkGraph g = load_graph(graph_path);
      DeltaMode mode;
      if (samples > 0) {
        mode.kind = DeltaMode::Sampled;
        mode.samples = samples;
        mode.seed = seed;
      }
      double delta = delta_hyperbolicity(g, mode);
      DistanceMatrix m = all_pairs_hops(g);
      // component count via reachability from the hop matrix
      std::vector<char> seen(g.n, 0);
      int components = 0;
      for (int i = 0; i < g.n; ++i) {
        if (seen[i]) continue;
        ++components;
        for (int j = 0; j < g.n; ++j)
          if (m(i, j) != kUnreachable) seen[j] = 1;
      }
      std::cout << "delta=" << delta << " components=" << components
                << " diameter=" << m.diameter() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
