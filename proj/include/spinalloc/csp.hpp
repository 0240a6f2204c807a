#pragma once

#include <string>
#include <vector>

#include "spinalloc/net_model.hpp"

namespace spinalloc {

// Variable x_{i,q} is addressed by the flat index i*Q + q. Pools are 0-based
// internally, 1-based in all I/O.
struct VarId {
  int station = 0;
  int pool = 0;
  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

struct Lit {
  int var = 0;         // flat variable index
  bool positive = true;
};

struct Clause {
  enum Kind { Alpha, Beta } kind = Alpha;
  int station = -1;            // Alpha: owning station
  int u = -1, v = -1;          // Beta: edge endpoints
  int pool = -1;               // Beta: resource pool
  std::vector<Lit> lits;       // live literals; shrinks under decimation
  bool live = true;
};

enum class Provenance { Unset, SpBias, Forced, GreedyFallback, Restart, Baseline };

struct Allocation {
  std::vector<int> pool;              // -1 = unassigned
  std::vector<Provenance> provenance;

  explicit Allocation(int n = 0)
      : pool(n, -1), provenance(n, Provenance::Unset) {}
  bool full() const {
    for (int p : pool)
      if (p < 0) return false;
    return true;
  }
  void assign(int station, int q, Provenance why) {
    pool[station] = q;
    provenance[station] = why;
  }
};

// Outcome of a decimation step. A contradiction means some station's Alpha
// clause emptied (every pool eliminated); it is reported, never dropped.
struct FixResult {
  std::vector<std::pair<int, bool>> fixed;   // (var, value) in fix order
  std::vector<int> contradiction_stations;
  bool contradiction() const { return !contradiction_stations.empty(); }
};

class FactorGraph {
 public:
  FactorGraph() = default;

  int n() const { return n_; }
  int num_pools() const { return q_; }
  std::size_t graph_edge_count() const { return graph_edges_.size(); }
  const std::vector<std::pair<int, int>>& graph_edges() const {
    return graph_edges_;
  }
  const std::vector<std::vector<int>>& neighbors() const { return neighbors_; }

  int var(int station, int pool) const { return station * q_ + pool; }
  VarId var_id(int v) const { return {v / q_, v % q_}; }

  std::size_t build_var_count() const {
    return static_cast<std::size_t>(n_) * q_;
  }
  std::size_t build_clause_count() const { return clauses_.size(); }
  int live_var_count() const { return live_var_count_; }
  int live_clause_count() const { return live_clause_count_; }

  bool var_live(int v) const { return fixed_[v] < 0; }
  // Valid only after the variable has been fixed.
  bool fixed_value(int v) const { return fixed_[v] == 1; }

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<int>& var_clauses(int v) const { return var_adj_[v]; }

  std::vector<int> live_vars() const;

  // Fix v to value and simplify. value=1 additionally forces x_{i,r}=0 for
  // the other pools of the station and x_{j,pool}=0 for its neighbors.
  FixResult fix_variable(int v, bool value);

  // Stations whose live Alpha clause has exactly one literal left.
  std::vector<int> one_option_stations() const;

  friend FactorGraph build_csp(const NetworkGraph& g, int q_pools);

 private:
  void fix_one(int v, bool value, FixResult& res);
  void kill_clause(int cid);

  int n_ = 0, q_ = 0;
  std::vector<std::pair<int, int>> graph_edges_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> var_adj_;  // var -> live clause ids
  std::vector<signed char> fixed_;         // -1 live, else 0/1
  int live_var_count_ = 0;
  int live_clause_count_ = 0;
};

FactorGraph build_csp(const NetworkGraph& g, int q_pools);

// |Gamma| / |X| from build-time counts.
double theta(const FactorGraph& fg);

// Number of clauses of the original (undecimated) instance unsatisfied by a
// full one-pool-per-station allocation. Throws on partial allocations.
int cost(const FactorGraph& fg, const Allocation& a);

bool is_zero_interference(const FactorGraph& fg, const Allocation& a);

// Exhaustive minimizer over all Q^n one-pool-per-station assignments,
// lexicographic tie-break. Guarded at Q^n <= 1e7.
std::pair<Allocation, int> brute_force_min_cost(const NetworkGraph& g,
                                                int q_pools);

}  // namespace spinalloc
