#include "spinalloc/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spinalloc {

std::string to_string(NetModel m) { return m == NetModel::ER ? "er" : "geo"; }

void ExperimentConfig::validate() const {
  if (z < 1) throw std::invalid_argument("z must be >= 1");
  if (i_values.empty() || q_values.empty())
    throw std::invalid_argument("i_values and q_values must be non-empty");
  if (solvers.empty()) throw std::invalid_argument("solvers must be non-empty");
  for (const auto& s : solvers)
    if (s != "sp" && s != "bp" && s != "mnf" && s != "pmnf" && s != "random")
      throw std::invalid_argument("unknown solver: " + s);
  for (int i : i_values)
    if (i < 1) throw std::invalid_argument("station counts must be >= 1");
  for (int q : q_values)
    if (q < 1) throw std::invalid_argument("pool counts must be >= 1");
}

ExperimentConfig config_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ExperimentConfig cfg;
  if (j.contains("model")) {
    std::string m = j["model"];
    if (m == "er")
      cfg.model = NetModel::ER;
    else if (m == "geo")
      cfg.model = NetModel::Geometric;
    else
      throw std::invalid_argument("model must be 'er' or 'geo'");
  }
  if (j.contains("i_values")) cfg.i_values = j["i_values"].get<std::vector<int>>();
  if (j.contains("q_values")) cfg.q_values = j["q_values"].get<std::vector<int>>();
  if (j.contains("mu_dbm")) cfg.mu_dbm = j["mu_dbm"];
  if (j.contains("edge_prob")) cfg.edge_prob = j["edge_prob"];
  if (j.contains("z")) cfg.z = j["z"];
  if (j.contains("master_seed")) cfg.master_seed = j["master_seed"];
  if (j.contains("solvers"))
    cfg.solvers = j["solvers"].get<std::vector<std::string>>();
  if (j.contains("compute_delta")) cfg.compute_delta = j["compute_delta"];
  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"];
  if (j.contains("sp_params")) {
    const auto& p = j["sp_params"];
    if (p.contains("epsilon")) cfg.sp_params.epsilon = p["epsilon"];
    if (p.contains("t_sp_max")) cfg.sp_params.t_sp_max = p["t_sp_max"];
    if (p.contains("t_max")) cfg.sp_params.t_max = p["t_max"];
    if (p.contains("t_prime_max")) cfg.sp_params.t_prime_max = p["t_prime_max"];
    if (p.contains("eta_zero_tol")) cfg.sp_params.eta_zero_tol = p["eta_zero_tol"];
  }
  cfg.validate();
  return cfg;
}

std::uint64_t graph_hash(const NetworkGraph& g) {
  // FNV-1a over the canonical edge-list text.
  std::string text = write_edge_list(g);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::pair<Allocation, SolveStats> run_solver(const std::string& name,
                                             const NetworkGraph& g, int q,
                                             const SpParams& params, Rng& rng) {
  if (name == "sp") return sp_allocate(g, q, params, rng);
  if (name == "bp") return bp_allocate(g, q, params, rng);
  GreedyOrder order;
  if (name == "mnf")
    order = GreedyOrder::StaticDegree;
  else if (name == "pmnf")
    order = GreedyOrder::ProgressiveDegree;
  else if (name == "random")
    order = GreedyOrder::Random;
  else
    throw std::invalid_argument("unknown solver: " + name);
  Allocation a = greedy_allocate(g, q, order, rng);
  SolveStats st;
  return {a, st};
}

namespace {

std::uint64_t solver_tag(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ExperimentRecord> records;
  const std::uint64_t model_tag = cfg.model == NetModel::ER ? 1 : 2;

  for (int i_target : cfg.i_values) {
    for (int q : cfg.q_values) {
      for (int r = 0; r < cfg.z; ++r) {
        std::uint64_t real_seed =
            mix_seed(cfg.master_seed,
                     {model_tag, static_cast<std::uint64_t>(i_target),
                      static_cast<std::uint64_t>(q),
                      static_cast<std::uint64_t>(r)});
        Rng gen_rng = make_rng(real_seed);
        NetworkGraph g;
        if (cfg.model == NetModel::ER) {
          double p = cfg.edge_prob > 0.0 ? cfg.edge_prob : 4.5 / i_target;
          g = generate_erdos_renyi(i_target, p, gen_rng);
        } else {
          ChannelParams params;
          params.mu_dbm = cfg.mu_dbm;
          g = generate_geometric(i_target, params, gen_rng);
        }
        auto [mean_deg, std_deg] = degree_stats(g);
        std::uint64_t ghash = graph_hash(g);

        double delta = 0.0;
        bool has_delta = false;
        if (cfg.compute_delta) {
          DeltaMode mode;
          if (g.n <= 80) {
            mode.kind = DeltaMode::Exact;
          } else {
            mode.kind = DeltaMode::Sampled;
            mode.seed = real_seed;
          }
          delta = delta_hyperbolicity(g, mode);
          has_delta = true;
        }

        FactorGraph checker = build_csp(g, q);
        for (const auto& solver : cfg.solvers) {
          std::uint64_t srun_seed = mix_seed(real_seed, {solver_tag(solver)});
          Rng srng = make_rng(srun_seed);
          auto t0 = std::chrono::steady_clock::now();
          auto [alloc, stats] = run_solver(solver, g, q, cfg.sp_params, srng);
          auto t1 = std::chrono::steady_clock::now();

          ExperimentRecord rec;
          rec.model = to_string(cfg.model);
          rec.i_target = i_target;
          rec.i_actual = g.n;
          rec.q = q;
          rec.has_mu = cfg.model == NetModel::Geometric;
          rec.mu_dbm = cfg.mu_dbm;
          rec.realization = r;
          rec.solver = solver;
          // Scored independently, never taken from the solver.
          rec.interference_links = interference_links(g, alloc);
          rec.cost = cost(checker, alloc);
          rec.zero_interference = rec.interference_links == 0;
          rec.avg_degree = mean_deg;
          rec.degree_std = std_deg;
          rec.delta = delta;
          rec.has_delta = has_delta;
          rec.sp_iterations = stats.iterations;
          rec.sp_restarts = stats.sp_restarts;
          rec.fallback_used = stats.fallback_used;
          rec.runtime_ms =
              std::chrono::duration<double, std::milli>(t1 - t0).count();
          rec.seed = srun_seed;
          rec.graph_hash = ghash;
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: empty input");
  std::vector<SummaryRow> rows;
  auto find_row = [&](const ExperimentRecord& r) -> SummaryRow& {
    for (auto& row : rows)
      if (row.model == r.model && row.i_target == r.i_target && row.q == r.q &&
          row.solver == r.solver)
        return row;
    SummaryRow row;
    row.model = r.model;
    row.i_target = r.i_target;
    row.q = r.q;
    row.mu_dbm = r.mu_dbm;
    row.has_mu = r.has_mu;
    row.solver = r.solver;
    rows.push_back(row);
    return rows.back();
  };
  // first pass: sums
  for (const auto& r : records) {
    SummaryRow& row = find_row(r);
    ++row.z;
    row.zero_rate_pct += r.zero_interference ? 1.0 : 0.0;
    row.mean_conflicts += r.interference_links;
    row.mean_degree += r.avg_degree;
    if (r.has_delta) {
      row.mean_delta += r.delta;
      row.has_delta = true;
    }
  }
  for (auto& row : rows) {
    row.zero_rate_pct = 100.0 * row.zero_rate_pct / row.z;
    row.mean_conflicts /= row.z;
    row.mean_degree /= row.z;
    if (row.has_delta) row.mean_delta /= row.z;
  }
  // second pass: conflict std (population)
  for (const auto& r : records) {
    SummaryRow& row = find_row(r);
    double d = r.interference_links - row.mean_conflicts;
    row.std_conflicts += d * d;
  }
  for (auto& row : rows) row.std_conflicts = std::sqrt(row.std_conflicts / row.z);
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "model,i_target,i_actual,q,mu_dbm,realization,solver,"
         "interference_links,zero_interference,cost,avg_degree,degree_std,"
         "delta,sp_iterations,sp_restarts,fallback_used,runtime_ms,seed,"
         "graph_hash\n";
  for (const auto& r : records) {
    out << r.model << ',' << r.i_target << ',' << r.i_actual << ',' << r.q
        << ',' << (r.has_mu ? fmt(r.mu_dbm) : "") << ',' << r.realization
        << ',' << r.solver << ',' << r.interference_links << ','
        << (r.zero_interference ? 1 : 0) << ',' << r.cost << ','
        << fmt(r.avg_degree) << ',' << fmt(r.degree_std) << ','
        << (r.has_delta ? fmt(r.delta) : "") << ',' << r.sp_iterations << ','
        << r.sp_restarts << ',' << (r.fallback_used ? 1 : 0) << ','
        << fmt(r.runtime_ms) << ',' << r.seed << ',' << r.graph_hash << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "model,i_target,q,mu_dbm,solver,z,zero_rate_pct,mean_conflicts,"
         "std_conflicts,mean_degree,mean_delta\n";
  for (const auto& r : rows) {
    out << r.model << ',' << r.i_target << ',' << r.q << ','
        << (r.has_mu ? fmt(r.mu_dbm) : "") << ',' << r.solver << ',' << r.z
        << ',' << fmt(r.zero_rate_pct) << ',' << fmt(r.mean_conflicts) << ','
        << fmt(r.std_conflicts) << ',' << fmt(r.mean_degree) << ','
        << (r.has_delta ? fmt(r.mean_delta) : "") << '\n';
  }
  return out.str();
}

void emit_outputs(const std::vector<ExperimentRecord>& records,
                  const std::vector<SummaryRow>& summary,
                  const std::string& out_dir) {
  if (records.empty())
    throw std::invalid_argument("emit_outputs: no records to write");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name);
    f << text;
  };
  write("records.csv", records_csv(records));
  write("summary.csv", summary_csv(summary));
  write("figures.gp", R"(# gnuplot script over summary.csv
set datafile separator ","
set key outside
set grid

set terminal pngcairo size 900,600

set output "zero_rate_vs_I.png"
set xlabel "Average number I of stations"
set ylabel "Zero interference allocations [%]"
plot for [s in "sp bp mnf pmnf random"] \
  "summary.csv" using 2:(strcol(5) eq s ? column(7) : 1/0) \
  with linespoints title s

set output "conflicts_vs_I.png"
set ylabel "Average number of interference links"
plot for [s in "sp bp mnf pmnf random"] \
  "summary.csv" using 2:(strcol(5) eq s ? column(8) : 1/0) \
  with linespoints title s

set output "conflicts_vs_Q.png"
set xlabel "Number Q of resource pools"
plot for [s in "sp bp mnf pmnf random"] \
  "summary.csv" using 3:(strcol(5) eq s ? column(8) : 1/0) \
  with linespoints title s
)");
}

}  // namespace spinalloc
