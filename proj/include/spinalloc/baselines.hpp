#pragma once

#include "spinalloc/sp.hpp"

namespace spinalloc {

enum class GreedyOrder { StaticDegree, ProgressiveDegree, Random };

// Smallest-index-pool greedy under the given service order. Stations with no
// conflict-free pool get the least-conflicting one.
Allocation greedy_allocate(const NetworkGraph& g, int q_pools,
                           GreedyOrder order, Rng& rng);

// Sum-product belief propagation with 0.5 damping and single-variable
// decimation. Stops at the first forced shared pool; the remaining stations
// are completed by min-conflict assignment so the allocation is full.
std::pair<Allocation, SolveStats> bp_allocate(const NetworkGraph& g,
                                              int q_pools,
                                              const SpParams& params,
                                              Rng& rng);

}  // namespace spinalloc
