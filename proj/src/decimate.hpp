#pragma once

// Shared decimation plumbing for the survey- and belief-propagation solvers:
// forced-fix cascades, min-conflict repair of contradicted stations, and
// greedy completion of the residual.

#include <deque>

#include "spinalloc/sp.hpp"

namespace spinalloc::detail {

inline int conflicts_if(const std::vector<std::vector<int>>& neighbors,
                        const Allocation& a, int station, int pool) {
  int c = 0;
  for (int k : neighbors[station])
    if (a.pool[k] == pool) ++c;
  return c;
}

inline int min_conflict_pool(const std::vector<std::vector<int>>& neighbors,
                             const Allocation& a, int station, int q_pools) {
  int best = 0, best_c = conflicts_if(neighbors, a, station, 0);
  for (int p = 1; p < q_pools; ++p) {
    int c = conflicts_if(neighbors, a, station, p);
    if (c < best_c) {
      best_c = c;
      best = p;
    }
  }
  return best;
}

// Stations whose Alpha clause emptied get the least-conflicting pool; the
// chosen pool is then forbidden for their live neighbors, which may empty
// further Alpha clauses.
inline void resolve_contradictions(FactorGraph& fg, Allocation& a,
                                   const std::vector<int>& stations,
                                   SolveStats& st) {
  std::deque<int> queue(stations.begin(), stations.end());
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop_front();
    if (a.pool[j] >= 0) continue;
    int p = min_conflict_pool(fg.neighbors(), a, j, fg.num_pools());
    a.assign(j, p, Provenance::Forced);
    ++st.contradictions;
    for (int k : fg.neighbors()[j]) {
      int v = fg.var(k, p);
      if (fg.var_live(v)) {
        auto r = fg.fix_variable(v, false);
        for (int s : r.contradiction_stations) queue.push_back(s);
      }
    }
  }
}

// The V^1 cascade: stations with a single pool left take it immediately.
inline void cascade_one_option(FactorGraph& fg, Allocation& a,
                               SolveStats& st) {
  while (true) {
    auto v1 = fg.one_option_stations();
    if (v1.empty()) break;
    int s = v1.front();
    int v = fg.clauses()[s].lits[0].var;
    a.assign(s, v % fg.num_pools(), Provenance::Forced);
    auto r = fg.fix_variable(v, true);
    resolve_contradictions(fg, a, r.contradiction_stations, st);
  }
}

inline void assign_and_cascade(FactorGraph& fg, Allocation& a, int station,
                               int pool, Provenance why, SolveStats& st) {
  a.assign(station, pool, why);
  auto r = fg.fix_variable(fg.var(station, pool), true);
  resolve_contradictions(fg, a, r.contradiction_stations, st);
  cascade_one_option(fg, a, st);
}

// Maximum-neighbors-first completion of whatever is still unassigned. Each
// assignment is propagated through the factor graph so that one-option
// stations cascade immediately instead of waiting for their sort position.
inline void greedy_complete(FactorGraph& fg, Allocation& a, Provenance why,
                            SolveStats& st) {
  const auto& nb = fg.neighbors();
  std::vector<int> rest;
  for (int i = 0; i < fg.n(); ++i)
    if (a.pool[i] < 0) rest.push_back(i);
  std::stable_sort(rest.begin(), rest.end(), [&](int x, int y) {
    return nb[x].size() > nb[y].size();
  });
  for (int s : rest) {
    if (a.pool[s] >= 0) continue;  // filled by an earlier cascade
    int pick = -1;
    for (int p = 0; p < fg.num_pools(); ++p)
      if (fg.var_live(fg.var(s, p)) && conflicts_if(nb, a, s, p) == 0) {
        pick = p;
        break;
      }
    if (pick >= 0) {
      a.assign(s, pick, why);
      auto r = fg.fix_variable(fg.var(s, pick), true);
      resolve_contradictions(fg, a, r.contradiction_stations, st);
      cascade_one_option(fg, a, st);
      continue;
    }
    for (int p = 0; p < fg.num_pools(); ++p)
      if (conflicts_if(nb, a, s, p) == 0) {
        pick = p;
        break;
      }
    if (pick < 0) pick = min_conflict_pool(nb, a, s, fg.num_pools());
    a.assign(s, pick, why);
  }
}

inline int count_conflicts(const std::vector<std::pair<int, int>>& edges,
                           const Allocation& a) {
  int c = 0;
  for (const auto& [u, v] : edges)
    if (a.pool[u] >= 0 && a.pool[u] == a.pool[v]) ++c;
  return c;
}

}  // namespace spinalloc::detail
