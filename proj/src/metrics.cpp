#include "spinalloc/metrics.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "spinalloc/rng.hpp"

namespace spinalloc {

int DistanceMatrix::diameter() const {
  int d = 0;
  for (const auto& row : dist)
    for (int x : row) d = std::max(d, x);
  return d;
}

int interference_links(const NetworkGraph& g, const Allocation& a) {
  if (static_cast<int>(a.pool.size()) != g.n || !a.full())
    throw std::invalid_argument("interference_links: allocation must be full");
  int c = 0;
  for (const auto& [e, gain] : g.gains)
    if (a.pool[e.first] == a.pool[e.second]) ++c;
  return c;
}

DistanceMatrix all_pairs_hops(const NetworkGraph& g) {
  DistanceMatrix m;
  m.n = g.n;
  m.dist.assign(g.n, std::vector<int>(g.n, kUnreachable));
  auto adj = g.adjacency();
  for (int src = 0; src < g.n; ++src) {
    auto& d = m.dist[src];
    d[src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adj[x])
        if (d[y] == kUnreachable) {
          d[y] = d[x] + 1;
          queue.push_back(y);
        }
    }
  }
  return m;
}

namespace {

double quadruple_delta(const DistanceMatrix& m, int a, int b, int c, int d) {
  int s1 = m(a, b) + m(c, d);
  int s2 = m(a, c) + m(b, d);
  int s3 = m(a, d) + m(b, c);
  int hi = std::max({s1, s2, s3});
  int lo = std::min({s1, s2, s3});
  int mid = s1 + s2 + s3 - hi - lo;
  return (hi - mid) / 2.0;
}

bool quadruple_connected(const DistanceMatrix& m, int a, int b, int c, int d) {
  const int q[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (m(q[i], q[j]) == kUnreachable) return false;
  return true;
}

}  // namespace

double delta_hyperbolicity(const NetworkGraph& g, const DeltaMode& mode) {
  if (g.n < 4) return 0.0;
  if (mode.kind == DeltaMode::Exact && g.n > 80)
    throw std::invalid_argument(
        "delta_hyperbolicity: exact mode limited to n <= 80");
  DistanceMatrix m = all_pairs_hops(g);
  double best = 0.0;
  if (mode.kind == DeltaMode::Exact) {
    for (int a = 0; a < g.n; ++a)
      for (int b = a + 1; b < g.n; ++b)
        for (int c = b + 1; c < g.n; ++c)
          for (int d = c + 1; d < g.n; ++d)
            if (quadruple_connected(m, a, b, c, d))
              best = std::max(best, quadruple_delta(m, a, b, c, d));
  } else {
    Rng rng = make_rng(mode.seed);
    std::uniform_int_distribution<int> pick(0, g.n - 1);
    for (long k = 0; k < mode.samples; ++k) {
      int q[4];
      for (int i = 0; i < 4;) {
        q[i] = pick(rng);
        bool dup = false;
        for (int j = 0; j < i; ++j) dup |= q[j] == q[i];
        if (!dup) ++i;
      }
      if (quadruple_connected(m, q[0], q[1], q[2], q[3]))
        best = std::max(best, quadruple_delta(m, q[0], q[1], q[2], q[3]));
    }
  }
  return best;
}

double zero_interference_rate(const std::vector<int>& conflict_counts) {
  if (conflict_counts.empty())
    throw std::invalid_argument("zero_interference_rate: empty input");
  long zero = std::count(conflict_counts.begin(), conflict_counts.end(), 0);
  return 100.0 * static_cast<double>(zero) /
         static_cast<double>(conflict_counts.size());
}

}  // namespace spinalloc
