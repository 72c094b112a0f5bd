#pragma once
// Per-bank and network-level topology statistics: degrees, strengths,
// density, skewness, reciprocity, clustering, efficiency, betweenness,
// and the 5-point moving average used for time-series smoothing.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liqnet/network.hpp"

namespace liqnet {

struct BankMetrics {
  int in_degree = 0;
  int out_degree = 0;
  int reciprocal_degree = 0;
  int degree = 0;  // k = k_out + k_in - k_recip
  double in_strength = 0.0;
  double out_strength = 0.0;
  double strength = 0.0;
  double binary_clustering = 0.0;
  double weighted_clustering = 0.0;
  double betweenness = 0.0;  // 0 when N < 3
};

enum class ClusteringMode { binary, weighted };

namespace detail {

// BFS hop distances from `source`; unreachable nodes get -1.
inline void bfs_distances(const QuarterlyNetwork& net, int source, std::vector<int>& dist,
                          std::vector<double>& sigma, std::vector<int>& order) {
  const int n = net.n_banks();
  dist.assign(n, -1);
  sigma.assign(n, 0.0);  // shortest-path counts; doubles stay exact well past any N here
  order.clear();
  dist[source] = 0;
  sigma[source] = 1.0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int v = order[head];
    for (const auto& [u, w] : net.out_neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        order.push_back(u);
      }
      if (dist[u] == dist[v] + 1) sigma[u] += sigma[v];
    }
  }
}

}  // namespace detail

// Centered moving average; at the boundaries the window shrinks symmetrically
// to the largest centered window that fits.
inline std::vector<double> moving_average(const std::vector<double>& series, int window = 5) {
  if (window < 1 || window % 2 == 0) throw std::invalid_argument("moving_average: window must be odd");
  const int n = static_cast<int>(series.size());
  std::vector<double> out(n);
  const int half = window / 2;
  for (int t = 0; t < n; ++t) {
    const int h = std::min({half, t, n - 1 - t});
    double sum = 0.0;
    for (int j = t - h; j <= t + h; ++j) sum += series[j];
    out[t] = sum / (2 * h + 1);
  }
  return out;
}

inline double density(const QuarterlyNetwork& net) {
  const int n = net.n_banks();
  if (n < 2) throw std::invalid_argument("density: degenerate network (fewer than 2 banks)");
  return static_cast<double>(net.n_links()) / (static_cast<double>(n) * (n - 1));
}

inline double total_volume(const QuarterlyNetwork& net) {
  double v = 0.0;
  for (const Edge& e : net.edges()) v += e.weight;
  return v;
}

// Population skewness g1 = m3 / m2^(3/2) of a sequence.
inline double moment_skewness(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 3) throw std::invalid_argument("skewness: need at least 3 values");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (m2 == 0.0) throw std::invalid_argument("skewness: undefined for a constant sequence");
  return m3 / (m2 * std::sqrt(m2));
}

// Counts one mutual pair per unordered {i,j} with links both ways.
inline long mutual_pair_count(const QuarterlyNetwork& net) {
  long pairs = 0;
  for (const Edge& e : net.edges()) {
    if (e.src < e.dst && net.has_edge(e.dst, e.src)) ++pairs;
  }
  return pairs;
}

// Fraction of links that are reciprocated: 2 * (mutual pairs) / L, so a fully
// mutual network scores 1 and a mutual-free network scores 0.
inline double reciprocity(const QuarterlyNetwork& net) {
  if (net.n_links() == 0) throw std::invalid_argument("reciprocity: network has no links");
  return 2.0 * static_cast<double>(mutual_pair_count(net)) / static_cast<double>(net.n_links());
}

struct ClusteringResult {
  double network = 0.0;
  std::vector<double> per_bank;
};

// Per-bank coefficient sum_{j,h} u_ij u_ih u_jh / (k_i^2 - k_i), with
// u_ij = a_ij + a_ji - a_ij a_ji (binary) or u_ij = w_ij + w_ji (weighted);
// banks with degree < 2 contribute 0. Network value is the mean over banks.
inline ClusteringResult clustering(const QuarterlyNetwork& net, ClusteringMode mode) {
  const int n = net.n_banks();
  auto u = [&](int i, int j) -> double {
    const double wij = net.weight(i, j), wji = net.weight(j, i);
    if (mode == ClusteringMode::weighted) return wij + wji;
    return (wij > 0.0 || wji > 0.0) ? 1.0 : 0.0;
  };
  ClusteringResult res;
  res.per_bank.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Union of in- and out-neighbors of i (u_ij > 0 exactly there).
    std::vector<int> nbrs;
    {
      const auto& out = net.out_neighbors(i);
      const auto& in = net.in_neighbors(i);
      std::size_t a = 0, b = 0;
      while (a < out.size() || b < in.size()) {
        if (b == in.size() || (a < out.size() && out[a].first < in[b].first)) {
          nbrs.push_back(out[a++].first);
        } else if (a == out.size() || in[b].first < out[a].first) {
          nbrs.push_back(in[b++].first);
        } else {
          nbrs.push_back(out[a].first);
          ++a, ++b;
        }
      }
    }
    const int k = static_cast<int>(nbrs.size());
    if (k < 2) continue;
    double num = 0.0;
    for (int j : nbrs) {
      for (int h : nbrs) {
        if (j == h) continue;
        const double ujh = u(j, h);
        if (ujh > 0.0) num += u(i, j) * u(i, h) * ujh;
      }
    }
    res.per_bank[i] = num / (static_cast<double>(k) * k - k);
  }
  for (double c : res.per_bank) res.network += c;
  res.network /= n;
  return res;
}

// Average inverse shortest-path length over ordered pairs; unreachable pairs
// contribute 0. Paths are directed and binary (hop counts).
inline double efficiency(const QuarterlyNetwork& net) {
  const int n = net.n_banks();
  if (n < 2) throw std::invalid_argument("efficiency: degenerate network (fewer than 2 banks)");
  std::vector<int> dist;
  std::vector<double> sigma;
  std::vector<int> order;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    detail::bfs_distances(net, i, dist, sigma, order);
    for (int j = 0; j < n; ++j) {
      if (j != i && dist[j] > 0) sum += 1.0 / dist[j];
    }
  }
  return sum / (static_cast<double>(n) * (n - 1));
}

// Betweenness of each bank: fraction of directed shortest paths passing
// through it, normalized by (N-1)(N-2). Built from all-source BFS path
// counts: sigma_st(v) = sigma_sv * sigma_vt when d_sv + d_vt = d_st.
inline std::vector<double> betweenness(const QuarterlyNetwork& net) {
  const int n = net.n_banks();
  if (n < 3) throw std::invalid_argument("betweenness: need at least 3 banks");
  std::vector<std::vector<int>> dist(n);
  std::vector<std::vector<double>> sigma(n);
  std::vector<int> order;
  for (int s = 0; s < n; ++s) detail::bfs_distances(net, s, dist[s], sigma[s], order);
  std::vector<double> bc(n, 0.0);
  for (int v = 0; v < n; ++v) {
    for (int s = 0; s < n; ++s) {
      if (s == v) continue;
      if (dist[s][v] < 0) continue;
      for (int t = 0; t < n; ++t) {
        if (t == s || t == v) continue;
        if (dist[s][t] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) {
          bc[v] += sigma[s][v] * sigma[v][t] / sigma[s][t];
        }
      }
    }
    bc[v] /= static_cast<double>(n - 1) * (n - 2);
  }
  return bc;
}

inline std::vector<BankMetrics> bank_metrics(const QuarterlyNetwork& net) {
  const int n = net.n_banks();
  std::vector<BankMetrics> out(n);
  for (int i = 0; i < n; ++i) {
    BankMetrics& m = out[i];
    m.out_degree = static_cast<int>(net.out_neighbors(i).size());
    m.in_degree = static_cast<int>(net.in_neighbors(i).size());
    for (const auto& [j, w] : net.out_neighbors(i)) {
      if (net.has_edge(j, i)) ++m.reciprocal_degree;
    }
    m.degree = m.out_degree + m.in_degree - m.reciprocal_degree;
    m.out_strength = net.out_strength(i);
    m.in_strength = net.in_strength(i);
    m.strength = m.out_strength + m.in_strength;
  }
  const ClusteringResult cb = clustering(net, ClusteringMode::binary);
  const ClusteringResult cw = clustering(net, ClusteringMode::weighted);
  for (int i = 0; i < n; ++i) {
    out[i].binary_clustering = cb.per_bank[i];
    out[i].weighted_clustering = cw.per_bank[i];
  }
  if (n >= 3) {
    const std::vector<double> bc = betweenness(net);
    for (int i = 0; i < n; ++i) out[i].betweenness = bc[i];
  }
  return out;
}

inline double degree_skewness(const QuarterlyNetwork& net) {
  std::vector<double> degrees;
  degrees.reserve(net.n_banks());
  for (const BankMetrics& m : bank_metrics(net)) degrees.push_back(m.degree);
  return moment_skewness(degrees);
}

struct NetworkMetrics {
  int n_banks = 0;
  long n_links = 0;
  double density = 0.0;
  double total_volume = 0.0;
  double volume_per_bank = 0.0;
  std::optional<double> degree_skewness;  // empty when undefined (constant degrees or N < 3)
  double reciprocity = 0.0;
  double clustering = 0.0;  // binary network average
  double efficiency = 0.0;
};

inline NetworkMetrics network_metrics(const QuarterlyNetwork& net) {
  NetworkMetrics m;
  m.n_banks = net.n_banks();
  m.n_links = net.n_links();
  m.density = density(net);
  m.total_volume = total_volume(net);
  m.volume_per_bank = m.total_volume / m.n_banks;
  try {
    m.degree_skewness = degree_skewness(net);
  } catch (const std::invalid_argument&) {
    m.degree_skewness = std::nullopt;
  }
  m.reciprocity = reciprocity(net);
  m.clustering = clustering(net, ClusteringMode::binary).network;
  m.efficiency = efficiency(net);
  return m;
}

}  // namespace liqnet
