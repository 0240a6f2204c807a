#pragma once

#include "spinalloc/csp.hpp"
#include "spinalloc/net_model.hpp"

namespace spinalloc {

inline constexpr int kUnreachable = -1;

struct DistanceMatrix {
  int n = 0;
  std::vector<std::vector<int>> dist;  // hop counts, kUnreachable if disconnected

  int operator()(int i, int j) const { return dist[i][j]; }
  int diameter() const;  // largest finite distance
};

// Number of edges whose endpoints share a pool. Throws on partial allocations.
int interference_links(const NetworkGraph& g, const Allocation& a);

DistanceMatrix all_pairs_hops(const NetworkGraph& g);

struct DeltaMode {
  enum Kind { Exact, Sampled } kind = Exact;
  long samples = 100000;
  std::uint64_t seed = 0;
};

// Gromov 4-point delta: max over quadruples (within one component) of
// (S1 - S2)/2 where S1 >= S2 >= S3 are the three pairwise-distance sums.
// Exact mode enumerates all quadruples and requires n <= 80.
double delta_hyperbolicity(const NetworkGraph& g, const DeltaMode& mode);

double zero_interference_rate(const std::vector<int>& conflict_counts);

}  // namespace spinalloc
