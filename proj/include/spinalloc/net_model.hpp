#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinalloc/rng.hpp"

namespace spinalloc {

struct ChannelParams {
  double p_tx = 100.0;        // transmit power [mW]
  double sigma2 = 1.0;        // noise power, recorded but not used in the
                              // neighbor test (see README)
  double mu_dbm = -75.0;      // neighbor threshold [dBm]
  double path_loss_exp = 3.0;
  double area_km = 1.0;       // side length of the square deployment area
};

// Interference topology. Edges are unordered station pairs stored with
// i < j; the gain map is the edge set.
struct NetworkGraph {
  int n = 0;
  std::map<std::pair<int, int>, double> gains;  // |h|^2, linear
  std::optional<std::vector<std::array<double, 2>>> positions;  // km

  bool has_edge(int i, int j) const;
  double gain(int i, int j) const;
  void add_edge(int i, int j, double gain);
  std::size_t edge_count() const { return gains.size(); }
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;
};

struct GeoGenInfo {
  int poisson_redraws = 0;
};

// 10*log10(gain * p_tx), dBm. Throws std::domain_error on non-positive input.
double received_power_dbm(double gain, double p_tx);

NetworkGraph generate_erdos_renyi(int n, double edge_prob, Rng& rng);

// Station count ~ Poisson(lambda) (redrawn while 0), positions uniform on the
// square. Pairwise gain |h|^2 = g * k_ref * d_m^(-alpha) with g ~ Exp(1) drawn
// once per pair (reciprocity) and d_m the distance in meters, clamped at 1 m.
// An edge exists iff received_power_dbm(gain, p_tx) >= mu_dbm.
NetworkGraph generate_geometric(double lambda, const ChannelParams& params,
                                Rng& rng, GeoGenInfo* info = nullptr);

// Reference path gain at 1 m. The -30 dB anchor keeps the neighbor radius at
// a few hundred meters for thresholds around -75 dBm.
inline constexpr double kReferenceGain = 1e-3;

std::pair<double, double> degree_stats(const NetworkGraph& g);

// Text format: header "spinalloc-graph v1 n=<n>", then one line per edge
// "i j gain [xi yi xj yj]" (0-based). Parse errors carry the line number.
std::string write_edge_list(const NetworkGraph& g);
NetworkGraph parse_edge_list(const std::string& text);

}  // namespace spinalloc
