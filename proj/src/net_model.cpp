#include "spinalloc/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace spinalloc {

namespace {
std::pair<int, int> key(int i, int j) {
  return {std::min(i, j), std::max(i, j)};
}
}  // namespace

bool NetworkGraph::has_edge(int i, int j) const {
  return gains.count(key(i, j)) != 0;
}

double NetworkGraph::gain(int i, int j) const { return gains.at(key(i, j)); }

void NetworkGraph::add_edge(int i, int j, double gain) {
  if (i == j) throw std::invalid_argument("self-loop");
  if (gain <= 0.0) throw std::invalid_argument("non-positive gain");
  gains[key(i, j)] = gain;
}

std::vector<int> NetworkGraph::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& [e, g] : gains) {
    ++deg[e.first];
    ++deg[e.second];
  }
  return deg;
}

std::vector<std::vector<int>> NetworkGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [e, g] : gains) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  return adj;
}

double received_power_dbm(double gain, double p_tx) {
  if (gain <= 0.0 || p_tx <= 0.0)
    throw std::domain_error("received_power_dbm: non-positive input");
  return 10.0 * std::log10(gain * p_tx);
}

NetworkGraph generate_erdos_renyi(int n, double edge_prob, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("edge_prob out of [0,1]");
  NetworkGraph g;
  g.n = n;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < edge_prob) g.add_edge(i, j, 1.0);
  return g;
}

NetworkGraph generate_geometric(double lambda, const ChannelParams& params,
                                Rng& rng, GeoGenInfo* info) {
  if (lambda <= 0.0) throw std::invalid_argument("lambda must be > 0");
  std::poisson_distribution<int> pois(lambda);
  int n = pois(rng);
  int redraws = 0;
  while (n == 0) {
    n = pois(rng);
    ++redraws;
  }
  if (info) info->poisson_redraws = redraws;

  NetworkGraph g;
  g.n = n;
  std::uniform_real_distribution<double> u(0.0, params.area_km);
  std::vector<std::array<double, 2>> pos(n);
  for (auto& p : pos) {
    p[0] = u(rng);
    p[1] = u(rng);
  }
  std::exponential_distribution<double> fade(1.0);  // unit-mean |h|^2
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dx = pos[i][0] - pos[j][0];
      double dy = pos[i][1] - pos[j][1];
      double d_km = std::max(std::sqrt(dx * dx + dy * dy), 0.001);
      double d_m = d_km * 1000.0;
      double gain =
          fade(rng) * kReferenceGain * std::pow(d_m, -params.path_loss_exp);
      if (received_power_dbm(gain, params.p_tx) >= params.mu_dbm)
        g.add_edge(i, j, gain);
    }
  }
  g.positions = std::move(pos);
  return g;
}

std::pair<double, double> degree_stats(const NetworkGraph& g) {
  if (g.n < 1) throw std::invalid_argument("empty graph");
  auto deg = g.degrees();
  double mean = 0.0;
  for (int d : deg) mean += d;
  mean /= g.n;
  double var = 0.0;
  for (int d : deg) var += (d - mean) * (d - mean);
  var /= g.n;  // population std
  return {mean, std::sqrt(var)};
}

std::string write_edge_list(const NetworkGraph& g) {
  std::ostringstream out;
  out << "spinalloc-graph v1 n=" << g.n << "\n";
  char buf[160];
  for (const auto& [e, gain] : g.gains) {
    if (g.positions) {
      const auto& p = *g.positions;
      std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g %.17g %.17g %.17g",
                    e.first, e.second, gain, p[e.first][0], p[e.first][1],
                    p[e.second][0], p[e.second][1]);
    } else {
      std::snprintf(buf, sizeof buf, "%d %d %.17g", e.first, e.second, gain);
    }
    out << buf << "\n";
  }
  return out.str();
}

namespace {
[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::runtime_error("edge list parse error, line " +
                           std::to_string(line) + ": " + what);
}
}  // namespace

NetworkGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) parse_fail(1, "missing header");
  int n = -1;
  if (std::sscanf(line.c_str(), "spinalloc-graph v1 n=%d", &n) != 1 || n < 0)
    parse_fail(1, "bad header");
  NetworkGraph g;
  g.n = n;
  std::vector<std::array<double, 2>> pos(n, {0.0, 0.0});
  std::vector<char> pos_seen(n, 0);
  bool any_pos = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    int i, j;
    double gain, xi, yi, xj, yj;
    int fields = std::sscanf(line.c_str(), "%d %d %lf %lf %lf %lf %lf", &i, &j,
                             &gain, &xi, &yi, &xj, &yj);
    if (fields != 3 && fields != 7) parse_fail(lineno, "expected 3 or 7 fields");
    if (i < 0 || i >= n || j < 0 || j >= n)
      parse_fail(lineno, "station index out of range");
    if (i == j) parse_fail(lineno, "self-loop");
    if (gain <= 0.0) parse_fail(lineno, "non-positive gain");
    if (g.has_edge(i, j)) parse_fail(lineno, "duplicate edge");
    g.add_edge(i, j, gain);
    if (fields == 7) {
      any_pos = true;
      for (auto [s, x, y] : {std::tuple{i, xi, yi}, std::tuple{j, xj, yj}}) {
        if (pos_seen[s] && (pos[s][0] != x || pos[s][1] != y))
          parse_fail(lineno, "inconsistent position for station " +
                                 std::to_string(s));
        pos[s] = {x, y};
        pos_seen[s] = 1;
      }
    }
  }
  if (any_pos) g.positions = std::move(pos);
  return g;
}

}  // namespace spinalloc
