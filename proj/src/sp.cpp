#include "spinalloc/sp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decimate.hpp"

namespace spinalloc {

double SurveyState::max_eta() const {
  double m = 0.0;
  for (double e : eta) m = std::max(m, e);
  return m;
}

namespace {

SurveyState make_state(const FactorGraph& fg) {
  SurveyState st;
  st.var_in.assign(fg.build_var_count(), {});
  const auto& clauses = fg.clauses();
  for (int cid = 0; cid < static_cast<int>(clauses.size()); ++cid) {
    if (!clauses[cid].live) continue;
    for (const Lit& l : clauses[cid].lits) {
      st.var_in[l.var].push_back(static_cast<int>(st.edges.size()));
      st.edges.push_back({cid, l.var});
    }
  }
  st.eta.assign(st.edges.size(), 0.0);
  return st;
}

}  // namespace

PiTriplet pi_triplet(const FactorGraph& fg, const SurveyState& state, int v,
                     int clause) {
  // Same-kind adjacent clauses push v towards satisfying the recipient,
  // opposite-kind ones away; the recipient itself is excluded (cavity).
  auto kind = fg.clauses()[clause].kind;
  double p_same = 1.0, p_opp = 1.0;
  for (int e : state.var_in[v]) {
    int b = state.edges[e].clause;
    if (b == clause) continue;
    if (fg.clauses()[b].kind == kind)
      p_same *= 1.0 - state.eta[e];
    else
      p_opp *= 1.0 - state.eta[e];
  }
  PiTriplet t;
  t.u = (1.0 - p_opp) * p_same;
  t.s = (1.0 - p_same) * p_opp;
  t.star = p_same * p_opp;
  return t;
}

double eta_update(const FactorGraph& fg, const SurveyState& state, int clause,
                  int v) {
  double prod = 1.0;
  for (const Lit& l : fg.clauses()[clause].lits) {
    if (l.var == v) continue;
    PiTriplet t = pi_triplet(fg, state, l.var, clause);
    double denom = t.u + t.s + t.star;
    prod *= denom > 0.0 ? t.u / denom : 0.0;
  }
  return std::clamp(prod, 0.0, 1.0);
}

SurveyState run_surveys(const FactorGraph& fg, const SpParams& params,
                        Rng& rng) {
  SurveyState st = make_state(fg);
  if (st.edges.empty()) {
    st.converged = true;
    return st;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& e : st.eta) e = u(rng);

  std::vector<int> order(st.edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  for (int sweep = 0; sweep < params.t_sp_max; ++sweep) {
    std::shuffle(order.begin(), order.end(), rng);
    bool steady = true;
    for (int e : order) {
      double nv = eta_update(fg, st, st.edges[e].clause, st.edges[e].var);
      if (std::abs(nv - st.eta[e]) > params.epsilon) steady = false;
      st.eta[e] = nv;  // asynchronous, in place
    }
    ++st.sweeps;
    if (steady) {
      st.converged = true;
      break;
    }
  }
  return st;
}

BiasTable biases(const FactorGraph& fg, const SurveyState& state) {
  BiasTable table;
  for (int v : fg.live_vars()) {
    double pa = 1.0, pb = 1.0;
    for (int e : state.var_in[v]) {
      if (fg.clauses()[state.edges[e].clause].kind == Clause::Alpha)
        pa *= 1.0 - state.eta[e];
      else
        pb *= 1.0 - state.eta[e];
    }
    Bias b;
    b.var = v;
    b.pi_plus = (1.0 - pa) * pb;
    b.pi_minus = (1.0 - pb) * pa;
    b.pi_zero = pa * pb;
    double denom = b.pi_plus + b.pi_minus + b.pi_zero;
    if (denom > 0.0) {
      b.w_plus = b.pi_plus / denom;
      b.w_minus = b.pi_minus / denom;
    }
    table.push_back(b);
  }
  return table;
}

int max_bias_var(const BiasTable& table) {
  if (table.empty()) throw std::invalid_argument("max_bias_var: empty table");
  int best = table.front().var;
  double best_diff = std::abs(table.front().w_plus - table.front().w_minus);
  for (const Bias& b : table) {
    double d = std::abs(b.w_plus - b.w_minus);
    if (d > best_diff) {
      best_diff = d;
      best = b.var;
    }
  }
  return best;
}

namespace {

// Random pick among unassigned stations with the largest number of
// unassigned neighbors; give it a random still-feasible pool.
void forced_random_move(FactorGraph& fg, Allocation& a, SolveStats& st,
                        Rng& rng) {
  std::vector<int> best;
  int best_deg = -1;
  for (int i = 0; i < fg.n(); ++i) {
    if (a.pool[i] >= 0) continue;
    int deg = 0;
    for (int k : fg.neighbors()[i])
      if (a.pool[k] < 0) ++deg;
    if (deg > best_deg) {
      best_deg = deg;
      best.clear();
    }
    if (deg == best_deg) best.push_back(i);
  }
  if (best.empty()) return;
  int s = best[std::uniform_int_distribution<std::size_t>(0, best.size() - 1)(
      rng)];
  std::vector<int> pools;
  for (int q = 0; q < fg.num_pools(); ++q)
    if (fg.var_live(fg.var(s, q))) pools.push_back(q);
  if (pools.empty()) {
    detail::resolve_contradictions(fg, a, {s}, st);
    return;
  }
  int q = pools[std::uniform_int_distribution<std::size_t>(0, pools.size() - 1)(
      rng)];
  detail::assign_and_cascade(fg, a, s, q, Provenance::Restart, st);
  ++st.forced_moves;
}

}  // namespace

std::pair<Allocation, SolveStats> sp_allocate(const NetworkGraph& g,
                                              int q_pools,
                                              const SpParams& params,
                                              Rng& rng) {
  FactorGraph fg = build_csp(g, q_pools);
  Allocation a(g.n);
  SolveStats st;
  const int t_max = params.t_max > 0 ? params.t_max : g.n * q_pools;
  int t = 1, t_prime = 1;

  while (!a.full()) {
    if (fg.live_var_count() == 0) {
      // Stations stripped of every pool by contradiction repair.
      std::vector<int> rest;
      for (int i = 0; i < fg.n(); ++i)
        if (a.pool[i] < 0) rest.push_back(i);
      detail::resolve_contradictions(fg, a, rest, st);
      break;
    }
    if (t > t_max) {
      detail::greedy_complete(fg, a, Provenance::GreedyFallback, st);
      st.fallback_used = true;
      break;
    }
    SurveyState sv = run_surveys(fg, params, rng);
    if (!sv.converged) {
      ++st.sp_restarts;
      ++t_prime;
      if (t_prime > params.t_prime_max) {
        t_prime = 1;
        forced_random_move(fg, a, st, rng);
      }
      continue;
    }
    t_prime = 1;
    if (sv.max_eta() <= params.eta_zero_tol) {
      // Trivial (paramagnetic) fixed point: the residual is under-constrained.
      detail::greedy_complete(fg, a, Provenance::GreedyFallback, st);
      st.fallback_used = true;
      break;
    }
    BiasTable table = biases(fg, sv);
    int v = max_bias_var(table);
    detail::assign_and_cascade(fg, a, v / q_pools, v % q_pools,
                               Provenance::SpBias, st);
    ++st.iterations;
    ++t;
  }

  st.conflicts = detail::count_conflicts(fg.graph_edges(), a);
  return {a, st};
}

}  // namespace spinalloc
