#include "spinalloc/csp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinalloc {

FactorGraph build_csp(const NetworkGraph& g, int q_pools) {
  if (q_pools < 1) throw std::invalid_argument("q_pools must be >= 1");
  FactorGraph fg;
  fg.n_ = g.n;
  fg.q_ = q_pools;
  fg.graph_edges_.reserve(g.edge_count());
  for (const auto& [e, gain] : g.gains) fg.graph_edges_.push_back(e);
  fg.neighbors_ = g.adjacency();
  for (auto& nb : fg.neighbors_) std::sort(nb.begin(), nb.end());

  fg.fixed_.assign(fg.build_var_count(), -1);
  fg.var_adj_.assign(fg.build_var_count(), {});
  fg.live_var_count_ = static_cast<int>(fg.build_var_count());

  // One Alpha clause per station, Q positive literals.
  for (int i = 0; i < g.n; ++i) {
    Clause c;
    c.kind = Clause::Alpha;
    c.station = i;
    for (int q = 0; q < q_pools; ++q)
      c.lits.push_back({fg.var(i, q), true});
    fg.clauses_.push_back(std::move(c));
  }
  // One Beta clause per (edge, pool), two negative literals.
  for (const auto& [u, v] : fg.graph_edges_) {
    for (int q = 0; q < q_pools; ++q) {
      Clause c;
      c.kind = Clause::Beta;
      c.u = u;
      c.v = v;
      c.pool = q;
      c.lits.push_back({fg.var(u, q), false});
      c.lits.push_back({fg.var(v, q), false});
      fg.clauses_.push_back(std::move(c));
    }
  }
  fg.live_clause_count_ = static_cast<int>(fg.clauses_.size());
  for (int cid = 0; cid < static_cast<int>(fg.clauses_.size()); ++cid)
    for (const Lit& l : fg.clauses_[cid].lits)
      fg.var_adj_[l.var].push_back(cid);
  return fg;
}

std::vector<int> FactorGraph::live_vars() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(fixed_.size()); ++v)
    if (fixed_[v] < 0) out.push_back(v);
  return out;
}

void FactorGraph::kill_clause(int cid) {
  Clause& c = clauses_[cid];
  if (!c.live) return;
  c.live = false;
  --live_clause_count_;
  for (const Lit& l : c.lits) {
    auto& adj = var_adj_[l.var];
    adj.erase(std::remove(adj.begin(), adj.end(), cid), adj.end());
  }
  c.lits.clear();
}

void FactorGraph::fix_one(int v, bool value, FixResult& res) {
  if (fixed_[v] >= 0) return;
  fixed_[v] = value ? 1 : 0;
  --live_var_count_;
  res.fixed.emplace_back(v, value);

  // Walk a copy; kill_clause mutates the adjacency lists.
  std::vector<int> adj = var_adj_[v];
  for (int cid : adj) {
    Clause& c = clauses_[cid];
    if (!c.live) continue;
    auto it = std::find_if(c.lits.begin(), c.lits.end(),
                           [v](const Lit& l) { return l.var == v; });
    if (it == c.lits.end()) continue;
    if (it->positive == value) {
      kill_clause(cid);  // satisfied
      continue;
    }
    c.lits.erase(it);  // falsified literal
    auto& va = var_adj_[v];
    va.erase(std::remove(va.begin(), va.end(), cid), va.end());
    if (c.lits.empty()) {
      // Unsatisfiable residual. For an Alpha clause the station has no pool
      // left; for a Beta clause both endpoints took the same pool.
      res.contradiction_stations.push_back(c.kind == Clause::Alpha ? c.station
                                                                   : c.v);
      kill_clause(cid);
    }
  }
}

FixResult FactorGraph::fix_variable(int v, bool value) {
  if (v < 0 || v >= static_cast<int>(fixed_.size()) || fixed_[v] >= 0)
    throw std::invalid_argument("fix_variable: variable not live");
  FixResult res;
  fix_one(v, value, res);
  if (value) {
    auto [i, q] = std::pair{v / q_, v % q_};
    for (int r = 0; r < q_; ++r)
      if (r != q && fixed_[var(i, r)] < 0) fix_one(var(i, r), false, res);
    for (int j : neighbors_[i])
      if (fixed_[var(j, q)] < 0) fix_one(var(j, q), false, res);
  }
  return res;
}

std::vector<int> FactorGraph::one_option_stations() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i) {
    const Clause& c = clauses_[i];  // Alpha clauses come first, indexed by station
    if (c.live && c.lits.size() == 1) out.push_back(i);
  }
  return out;
}

double theta(const FactorGraph& fg) {
  if (fg.build_var_count() == 0) throw std::invalid_argument("empty instance");
  return static_cast<double>(fg.build_clause_count()) /
         static_cast<double>(fg.build_var_count());
}

int cost(const FactorGraph& fg, const Allocation& a) {
  if (static_cast<int>(a.pool.size()) != fg.n() || !a.full())
    throw std::invalid_argument("cost: allocation must be full");
  for (int p : a.pool)
    if (p < 0 || p >= fg.num_pools())
      throw std::invalid_argument("cost: pool out of range");
  // Alpha clauses are always satisfied by a one-pool-per-station assignment;
  // Beta(e, q) fails iff both endpoints hold q.
  int unsat = 0;
  for (const auto& [u, v] : fg.graph_edges())
    if (a.pool[u] == a.pool[v]) ++unsat;
  return unsat;
}

bool is_zero_interference(const FactorGraph& fg, const Allocation& a) {
  return cost(fg, a) == 0;
}

std::pair<Allocation, int> brute_force_min_cost(const NetworkGraph& g,
                                                int q_pools) {
  double states = std::pow(static_cast<double>(q_pools), g.n);
  if (states > 1e7)
    throw std::invalid_argument("brute_force_min_cost: instance too large");
  std::vector<std::pair<int, int>> edges;
  for (const auto& [e, gain] : g.gains) edges.push_back(e);

  std::vector<int> cur(g.n, 0), best;
  int best_cost = -1;
  while (true) {
    int c = 0;
    for (const auto& [u, v] : edges)
      if (cur[u] == cur[v]) ++c;
    if (best_cost < 0 || c < best_cost) {  // first lexicographic minimizer wins
      best_cost = c;
      best = cur;
    }
    int k = g.n - 1;
    while (k >= 0 && cur[k] == q_pools - 1) cur[k--] = 0;
    if (k < 0) break;
    ++cur[k];
  }
  Allocation a(g.n);
  for (int i = 0; i < g.n; ++i) a.assign(i, best[i], Provenance::Baseline);
  return {a, best_cost};
}

}  // namespace spinalloc
