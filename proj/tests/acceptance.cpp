// Acceptance gate for the solver suite. Each criterion prints exactly one
// [AC-n] PASS/FAIL line; the exit code is the number of failures. Run a
// single criterion with --only AC-n.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "spinalloc/experiment.hpp"

using namespace spinalloc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (cond) return;
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += what;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const SummaryRow& row_of(const std::vector<SummaryRow>& rows,
                         const std::string& solver, int i_target, int q) {
  for (const auto& r : rows)
    if (r.solver == solver && r.i_target == i_target && r.q == q) return r;
  throw std::runtime_error("missing summary row for " + solver);
}

// ---- AC-1: factor graph size formulas ------------------------------------

Outcome ac1() {
  Outcome o;
  for (int t = 0; t < 100; ++t) {
    Rng rng = make_rng(1000 + t);
    int i_target = 5 + t % 56;
    int q = 2 + t % 5;
    NetworkGraph g;
    if (t % 2 == 0) {
      g = generate_erdos_renyi(i_target, 4.5 / i_target, rng);
    } else {
      ChannelParams params;
      g = generate_geometric(i_target, params, rng);
    }
    FactorGraph fg = build_csp(g, q);
    long vars = static_cast<long>(q) * g.n;
    long clauses = g.n + static_cast<long>(q) * g.edge_count();
    require(o, fg.build_var_count() == vars,
            "var count mismatch at trial " + std::to_string(t));
    require(o, fg.build_clause_count() == clauses,
            "clause count mismatch at trial " + std::to_string(t));
  }
  return o;
}

// ---- AC-2: solver costs against the exhaustive oracle --------------------

Outcome ac2() {
  Outcome o;
  const std::vector<std::string> solvers = {"sp", "bp", "mnf", "pmnf",
                                           "random"};
  SpParams params;
  int satisfiable = 0, sp_zero = 0;
  for (int t = 0; t < 200; ++t) {
    Rng gen = make_rng(2000 + t);
    int n = 3 + t % 6;  // 3..8
    int q = 2 + t % 2;  // 2..3
    NetworkGraph g = generate_erdos_renyi(n, 0.5, gen);
    int best = brute_force_min_cost(g, q).second;
    if (best == 0) ++satisfiable;
    for (const auto& s : solvers) {
      Rng rng = make_rng(mix_seed(3000 + t, {static_cast<std::uint64_t>(
                                      &s - solvers.data())}));
      auto [a, st] = run_solver(s, g, q, params, rng);
      int c = interference_links(g, a);
      require(o, c >= best,
              s + " beat the oracle on trial " + std::to_string(t));
      if (s == "sp" && best == 0 && c == 0) ++sp_zero;
    }
  }
  require(o, satisfiable > 0, "no satisfiable instances drawn");
  double rate = 100.0 * sp_zero / std::max(satisfiable, 1);
  require(o, rate >= 90.0,
          "sp solved only " + num(rate) + "% of satisfiable instances");
  return o;
}

// ---- AC-3 / AC-4 / AC-5: Monte-Carlo benchmark targets -------------------

std::vector<SummaryRow> run_cells(int i, std::vector<int> qs, int z,
                                  std::vector<std::string> solvers,
                                  std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.model = NetModel::ER;
  cfg.i_values = {i};
  cfg.q_values = std::move(qs);
  cfg.z = z;
  cfg.master_seed = seed;
  cfg.solvers = std::move(solvers);
  return aggregate(run_experiment(cfg));
}

Outcome ac3() {
  Outcome o;
  auto rows = run_cells(100, {4}, 100, {"sp", "bp", "mnf", "pmnf", "random"},
                        30001);
  double sp = row_of(rows, "sp", 100, 4).zero_rate_pct;
  double mnf = row_of(rows, "mnf", 100, 4).zero_rate_pct;
  double pmnf = row_of(rows, "pmnf", 100, 4).zero_rate_pct;
  double rnd = row_of(rows, "random", 100, 4).zero_rate_pct;
  require(o, sp >= 90.0, "sp zero rate " + num(sp) + "% < 90%");
  require(o, mnf >= 60.0 && mnf <= 90.0,
          "mnf zero rate " + num(mnf) + "% outside [60, 90]");
  require(o, pmnf >= 65.0 && pmnf <= 92.0,
          "pmnf zero rate " + num(pmnf) + "% outside [65, 92]");
  require(o, rnd <= 20.0, "random zero rate " + num(rnd) + "% > 20%");
  for (auto [name, v] : {std::pair<const char*, double>{"mnf", mnf},
                         {"pmnf", pmnf},
                         {"random", rnd}})
    require(o, sp >= v, std::string("sp below ") + name);
  return o;
}

Outcome ac4() {
  Outcome o;
  auto rows = run_cells(100, {5}, 100, {"sp", "mnf", "pmnf"}, 40001);
  double sp = row_of(rows, "sp", 100, 5).mean_conflicts;
  double mnf = row_of(rows, "mnf", 100, 5).mean_conflicts;
  double pmnf = row_of(rows, "pmnf", 100, 5).mean_conflicts;
  require(o, sp == 0.0, "sp mean conflicts " + num(sp) + " != 0");
  require(o, mnf <= 0.5, "mnf mean conflicts " + num(mnf) + " > 0.5");
  require(o, pmnf <= 0.5, "pmnf mean conflicts " + num(pmnf) + " > 0.5");
  return o;
}

Outcome ac5() {
  Outcome o;
  auto rows = run_cells(300, {3}, 50, {"sp", "mnf"}, 50001);
  double sp = row_of(rows, "sp", 300, 3).mean_conflicts;
  double mnf = row_of(rows, "mnf", 300, 3).mean_conflicts;
  require(o, sp <= 0.5 * mnf,
          "sp mean conflicts " + num(sp) + " > 0.5 * mnf (" + num(mnf) + ")");
  return o;
}

// ---- AC-6: mean degree of the benchmark networks -------------------------

Outcome ac6() {
  Outcome o;
  for (int i : {100, 300}) {
    double total = 0.0;
    for (int r = 0; r < 100; ++r) {
      Rng rng = make_rng(mix_seed(60001, {static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(r)}));
      total += degree_stats(generate_erdos_renyi(i, 4.5 / i, rng)).first;
    }
    double mean = total / 100.0;
    require(o, std::abs(mean - 4.5) <= 0.15,
            "I=" + std::to_string(i) + " mean degree " + num(mean) +
                " outside 4.5 +- 0.15");
  }
  return o;
}

// ---- AC-7: hyperbolicity reference values --------------------------------

NetworkGraph random_tree(int n, Rng& rng) {
  NetworkGraph g;
  g.n = n;
  for (int i = 1; i < n; ++i) {
    int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    g.add_edge(parent, i, 1.0);
  }
  return g;
}

Outcome ac7() {
  Outcome o;
  DeltaMode exact;
  for (int t = 0; t < 50; ++t) {
    Rng rng = make_rng(70001 + t);
    int n = 4 + t % 30;
    double d = delta_hyperbolicity(random_tree(n, rng), exact);
    require(o, d == 0.0,
            "tree trial " + std::to_string(t) + " delta " + num(d));
  }
  NetworkGraph c4;
  c4.n = 4;
  for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4, 1.0);
  require(o, delta_hyperbolicity(c4, exact) == 1.0, "C4 delta != 1");
  NetworkGraph k4;
  k4.n = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j, 1.0);
  require(o, delta_hyperbolicity(k4, exact) == 0.0, "K4 delta != 0");
  return o;
}

// ---- AC-8: geometric vs ER hyperbolicity contrast ------------------------

Outcome ac8() {
  Outcome o;
  DeltaMode exact;
  double geo_sum = 0.0, er_sum = 0.0;
  for (int s = 0; s < 30; ++s) {
    std::uint64_t seed = mix_seed(80001, {static_cast<std::uint64_t>(s)});
    {
      ChannelParams params;
      Rng rng = make_rng(seed);
      geo_sum += delta_hyperbolicity(generate_geometric(50.0, params, rng),
                                     exact);
    }
    {
      Rng rng = make_rng(seed);
      er_sum += delta_hyperbolicity(generate_erdos_renyi(50, 4.5 / 50, rng),
                                    exact);
    }
  }
  double geo = geo_sum / 30.0, er = er_sum / 30.0;
  require(o, geo > er, "geometric mean delta " + num(geo) +
                           " not above ER mean delta " + num(er));
  return o;
}

// ---- AC-9: byte determinism modulo runtime_ms ----------------------------

std::string mask_runtime(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream cells(line);
    std::string cell;
    int idx = 0;
    while (std::getline(cells, cell, ',')) {
      if (idx) out << ',';
      out << (idx == 16 ? "*" : cell);
      ++idx;
    }
    out << '\n';
  }
  return out.str();
}

Outcome ac9() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.model = NetModel::Geometric;
  cfg.i_values = {20};
  cfg.q_values = {3};
  cfg.z = 5;
  cfg.master_seed = 90001;
  cfg.compute_delta = true;
  std::string a = mask_runtime(records_csv(run_experiment(cfg)));
  std::string b = mask_runtime(records_csv(run_experiment(cfg)));
  require(o, a == b, "repeated runs differ beyond runtime_ms");
  return o;
}

// ---- AC-10: invariant suite ----------------------------------------------

Outcome ac10() {
  Outcome o;
  SpParams params;
  long eta_checked = 0;
  for (int t = 0; eta_checked < 10000; ++t) {
    Rng gen = make_rng(100001 + t);
    NetworkGraph g = generate_erdos_renyi(15, 0.3, gen);
    FactorGraph fg = build_csp(g, 2 + t % 3);
    Rng rng = make_rng(110001 + t);
    SurveyState st = run_surveys(fg, params, rng);
    eta_checked += static_cast<long>(st.eta.size()) * (st.sweeps + 1);
    for (double e : st.eta)
      require(o, e >= 0.0 && e <= 1.0, "eta outside [0,1]");
    for (const Bias& b : biases(fg, st)) {
      require(o, b.pi_plus >= 0.0 && b.pi_plus <= 1.0, "pi+ outside [0,1]");
      require(o, b.pi_minus >= 0.0 && b.pi_minus <= 1.0, "pi- outside [0,1]");
      require(o, b.pi_zero >= 0.0 && b.pi_zero <= 1.0, "pi0 outside [0,1]");
      require(o, b.w_plus >= 0.0 && b.w_plus <= 1.0, "W+ outside [0,1]");
      require(o, b.w_minus >= 0.0 && b.w_minus <= 1.0, "W- outside [0,1]");
      require(o, b.w_plus + b.w_minus <= 1.0 + 1e-9, "W+ + W- > 1");
    }
    if (!o.pass) return o;
  }

  long steps = 0;
  for (int t = 0; steps < 1000; ++t) {
    Rng rng = make_rng(120001 + t);
    NetworkGraph g = generate_erdos_renyi(10, 0.3, rng);
    int q = 2 + t % 2;
    FactorGraph fg = build_csp(g, q);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (fg.live_var_count() > 0) {
      auto live = fg.live_vars();
      int prev_vars = fg.live_var_count();
      int prev_clauses = fg.live_clause_count();
      int v = live[std::uniform_int_distribution<std::size_t>(
          0, live.size() - 1)(rng)];
      fg.fix_variable(v, u(rng) < 0.5);
      ++steps;
      require(o, fg.live_var_count() < prev_vars, "variable count grew");
      require(o, fg.live_clause_count() <= prev_clauses, "clause count grew");
      for (const auto& c : fg.clauses()) {
        if (!c.live) continue;
        for (const auto& l : c.lits)
          require(o, fg.var_live(l.var), "live clause cites a fixed variable");
      }
      if (!o.pass) return o;
    }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) only = argv[++i];
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {{"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4},
       {"AC-5", ac5}, {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8},
       {"AC-9", ac9}, {"AC-10", ac10}};

  int failures = 0;
  bool matched = false;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && name != only) continue;
    matched = true;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (o.pass) {
      std::printf("[%s] PASS\n", name.c_str());
    } else {
      std::printf("[%s] FAIL: %s\n", name.c_str(), o.detail.c_str());
      ++failures;
    }
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion: %s\n", only.c_str());
    return 2;
  }
  return failures;
}
