#pragma once

#include <cstdint>
#include <vector>

#include "spinalloc/csp.hpp"

namespace spinalloc {

struct SpParams {
  double epsilon = 1e-3;     // survey convergence threshold
  int t_sp_max = 10;         // max survey sweeps per run
  int t_max = 0;             // max decimation iterations; 0 = n*Q
  int t_prime_max = 5;       // max consecutive non-convergent survey runs
  double eta_zero_tol = 1e-3;  // surveys below this count as zero
};

// One eta per live (clause -> variable) edge of the factor graph.
struct SurveyState {
  struct Edge {
    int clause;
    int var;
  };
  std::vector<Edge> edges;
  std::vector<double> eta;
  // var -> indices into edges/eta for its incoming surveys
  std::vector<std::vector<int>> var_in;
  int sweeps = 0;
  bool converged = false;

  double max_eta() const;
};

struct PiTriplet {
  double u = 0.0;
  double s = 0.0;
  double star = 1.0;
};

// Cavity triplet for the survey v -> clause c: products over the clauses
// adjacent to v excluding the recipient, split by literal-sign agreement.
PiTriplet pi_triplet(const FactorGraph& fg, const SurveyState& state, int v,
                     int clause);

// Product over the other variables of c of pi_u / (pi_u + pi_s + pi_star);
// a 0/0 factor contributes 0. Result clamped to [0,1].
double eta_update(const FactorGraph& fg, const SurveyState& state, int clause,
                  int v);

// Random eta init, asynchronous sweeps in a fresh random edge permutation,
// until every per-edge delta is <= epsilon or t_sp_max sweeps elapse.
SurveyState run_surveys(const FactorGraph& fg, const SpParams& params,
                        Rng& rng);

struct Bias {
  int var;
  double w_plus = 0.0;
  double w_minus = 0.0;
  double pi_plus = 0.0;
  double pi_minus = 0.0;
  double pi_zero = 1.0;
};

using BiasTable = std::vector<Bias>;  // one entry per live variable, ascending

BiasTable biases(const FactorGraph& fg, const SurveyState& state);

// Argmax of |W+ - W-|; ties broken by smallest (station, pool).
int max_bias_var(const BiasTable& table);

struct SolveStats {
  int iterations = 0;      // decimation steps driven by a bias pick
  int sp_restarts = 0;     // non-convergent survey runs
  int forced_moves = 0;    // random max-degree assignments after T' failures
  int contradictions = 0;  // stations completed by min-conflict repair
  bool fallback_used = false;  // trivial fixed point -> greedy completion
  bool bp_stopped = false;     // belief propagation stop event
  int conflicts = 0;
};

std::pair<Allocation, SolveStats> sp_allocate(const NetworkGraph& g,
                                              int q_pools,
                                              const SpParams& params,
                                              Rng& rng);

}  // namespace spinalloc
