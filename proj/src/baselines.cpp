#include "spinalloc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "decimate.hpp"

namespace spinalloc {

Allocation greedy_allocate(const NetworkGraph& g, int q_pools,
                           GreedyOrder order, Rng& rng) {
  if (q_pools < 1) throw std::invalid_argument("q_pools must be >= 1");
  auto nb = g.adjacency();
  Allocation a(g.n);

  std::vector<int> serve;
  if (order == GreedyOrder::StaticDegree) {
    serve.resize(g.n);
    for (int i = 0; i < g.n; ++i) serve[i] = i;
    std::stable_sort(serve.begin(), serve.end(), [&](int x, int y) {
      return nb[x].size() > nb[y].size();
    });
  } else if (order == GreedyOrder::Random) {
    serve.resize(g.n);
    for (int i = 0; i < g.n; ++i) serve[i] = i;
    std::shuffle(serve.begin(), serve.end(), rng);
  }

  auto pick_pool = [&](int s) {
    for (int p = 0; p < q_pools; ++p)
      if (detail::conflicts_if(nb, a, s, p) == 0) return p;
    return detail::min_conflict_pool(nb, a, s, q_pools);
  };

  if (order == GreedyOrder::ProgressiveDegree) {
    // Residual degree among unserved stations, recomputed each step.
    std::vector<char> served(g.n, 0);
    for (int step = 0; step < g.n; ++step) {
      int best = -1, best_deg = -1;
      for (int i = 0; i < g.n; ++i) {
        if (served[i]) continue;
        int deg = 0;
        for (int k : nb[i])
          if (!served[k]) ++deg;
        if (deg > best_deg) {
          best_deg = deg;
          best = i;
        }
      }
      served[best] = 1;
      a.assign(best, pick_pool(best), Provenance::Baseline);
    }
  } else {
    for (int s : serve) a.assign(s, pick_pool(s), Provenance::Baseline);
  }
  return a;
}

namespace {

// Belief propagation state: one message q_{v->c} per (clause, var) edge,
// the probability that v takes the value violating its literal in c.
struct BpState {
  std::vector<SurveyState::Edge> edges;
  std::vector<double> q;
  std::vector<std::vector<int>> var_in;
};

BpState make_bp_state(const FactorGraph& fg, Rng& rng) {
  BpState st;
  st.var_in.assign(fg.build_var_count(), {});
  const auto& clauses = fg.clauses();
  for (int cid = 0; cid < static_cast<int>(clauses.size()); ++cid) {
    if (!clauses[cid].live) continue;
    for (const Lit& l : clauses[cid].lits) {
      st.var_in[l.var].push_back(static_cast<int>(st.edges.size()));
      st.edges.push_back({cid, l.var});
    }
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  st.q.assign(st.edges.size(), 0.5);
  for (double& x : st.q) x = u(rng);
  return st;
}

// 1 - prod of q over the other variables of the clause.
double clause_unsat_msg(const FactorGraph& fg, const BpState& st, int clause,
                        int v) {
  double prod = 1.0;
  for (const Lit& l : fg.clauses()[clause].lits) {
    if (l.var == v) continue;
    // locate the edge (clause, l.var)
    for (int e : st.var_in[l.var])
      if (st.edges[e].clause == clause) {
        prod *= st.q[e];
        break;
      }
  }
  return 1.0 - prod;
}

// Unnormalized likelihoods of v = 0 and v = 1 from clauses other than `skip`
// (pass -1 for the full belief).
std::pair<double, double> var_likelihood(const FactorGraph& fg,
                                         const BpState& st, int v, int skip) {
  double m0 = 1.0, m1 = 1.0;
  for (int e : st.var_in[v]) {
    int c = st.edges[e].clause;
    if (c == skip) continue;
    double unsat = clause_unsat_msg(fg, st, c, v);
    if (fg.clauses()[c].kind == Clause::Alpha)
      m0 *= unsat;  // value 0 leaves the Alpha clause to the others
    else
      m1 *= unsat;  // value 1 leaves the Beta clause to the other endpoint
  }
  return {m0, m1};
}

bool run_bp(const FactorGraph& fg, BpState& st, const SpParams& params) {
  if (st.edges.empty()) return true;
  std::vector<int> order(st.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  for (int sweep = 0; sweep < params.t_sp_max; ++sweep) {
    bool steady = true;
    for (int e : order) {
      int c = st.edges[e].clause, v = st.edges[e].var;
      auto [m0, m1] = var_likelihood(fg, st, v, c);
      bool unsat_is_one = fg.clauses()[c].kind == Clause::Beta;
      double denom = m0 + m1;
      double fresh = denom > 0.0 ? (unsat_is_one ? m1 : m0) / denom : 0.5;
      double nv = 0.5 * st.q[e] + 0.5 * fresh;
      if (std::abs(nv - st.q[e]) > params.epsilon) steady = false;
      st.q[e] = nv;
    }
    if (steady) return true;
  }
  return false;
}

}  // namespace

std::pair<Allocation, SolveStats> bp_allocate(const NetworkGraph& g,
                                              int q_pools,
                                              const SpParams& params,
                                              Rng& rng) {
  FactorGraph fg = build_csp(g, q_pools);
  Allocation a(g.n);
  SolveStats st;

  while (!a.full()) {
    if (fg.live_var_count() == 0) {
      std::vector<int> rest;
      for (int i = 0; i < fg.n(); ++i)
        if (a.pool[i] < 0) rest.push_back(i);
      detail::resolve_contradictions(fg, a, rest, st);
      break;
    }
    BpState bp = make_bp_state(fg, rng);
    run_bp(fg, bp, params);
    ++st.iterations;

    // Most polarized live variable, fixed towards its leaning.
    int best = -1;
    double best_pol = -1.0;
    bool best_val = false;
    for (int v : fg.live_vars()) {
      auto [m0, m1] = var_likelihood(fg, bp, v, -1);
      double denom = m0 + m1;
      double b1 = denom > 0.0 ? m1 / denom : 0.5;
      double pol = std::abs(b1 - 0.5);
      if (pol > best_pol) {
        best_pol = pol;
        best = v;
        best_val = b1 >= 0.5;
      }
    }
    int before = st.contradictions;
    if (best_val) {
      detail::assign_and_cascade(fg, a, best / q_pools, best % q_pools,
                                 Provenance::Baseline, st);
    } else {
      auto r = fg.fix_variable(best, false);
      detail::resolve_contradictions(fg, a, r.contradiction_stations, st);
      detail::cascade_one_option(fg, a, st);
    }
    if (st.contradictions > before) {
      // A pair of stations was forced onto the same pool: decimation stops
      // here. Remaining stations get min-conflict assignments.
      st.bp_stopped = true;
      for (int i = 0; i < fg.n(); ++i)
        if (a.pool[i] < 0)
          a.assign(i,
                   detail::min_conflict_pool(fg.neighbors(), a, i, q_pools),
                   Provenance::Baseline);
      break;
    }
  }

  st.conflicts = detail::count_conflicts(fg.graph_edges(), a);
  return {a, st};
}

}  // namespace spinalloc
