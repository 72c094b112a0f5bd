#pragma once
// Test-only reference implementations, written independently of the library
// code paths they check: exact binomial-sum beta, Floyd-Warshall distances,
// shortest-path enumeration betweenness, dense-matrix degree/strength sums,
// LSDV regression, brute-force KS scans, and a straightforward EDB stepper.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "liqnet/edb.hpp"
#include "liqnet/network.hpp"
#include "liqnet/rng.hpp"

namespace oracle {

// ---------------------------------------------------------------- beta ----

// Pascal-triangle binomial coefficients; exact in double well past a+b = 50.
inline double binomial(int n, int k) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][k];
}

inline double ibeta_integer(int a, int b, double x) {
  const int n = a + b - 1;
  double sum = 0.0;
  for (int k = a; k <= n; ++k) {
    sum += binomial(n, k) * std::pow(x, k) * std::pow(1.0 - x, n - k);
  }
  return sum;
}

// --------------------------------------------------------------- graphs ----

// Dense adjacency/weight matrices of a network.
inline std::vector<std::vector<double>> weight_matrix(const liqnet::QuarterlyNetwork& net) {
  const int n = net.n_banks();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const liqnet::Edge& e : net.edges()) w[e.src][e.dst] = e.weight;
  return w;
}

inline constexpr int kUnreachable = 1 << 20;

inline std::vector<std::vector<int>> floyd_warshall(const liqnet::QuarterlyNetwork& net) {
  const int n = net.n_banks();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const liqnet::Edge& e : net.edges()) d[e.src][e.dst] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

inline double efficiency(const liqnet::QuarterlyNetwork& net) {
  const int n = net.n_banks();
  const auto d = floyd_warshall(net);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && d[i][j] < kUnreachable) sum += 1.0 / d[i][j];
  return sum / (static_cast<double>(n) * (n - 1));
}

// All shortest paths s->t by exhaustive simple-path enumeration (N <= 8),
// returning, for every v, the number of shortest s->t paths through v.
struct PathCounts {
  double total = 0.0;                 // sigma_st
  std::vector<double> through;        // sigma_st(v)
};

inline PathCounts enumerate_paths(const liqnet::QuarterlyNetwork& net, int s, int t) {
  const int n = net.n_banks();
  const auto d = floyd_warshall(net);
  PathCounts res;
  res.through.assign(n, 0.0);
  if (d[s][t] >= kUnreachable) return res;
  std::vector<int> path{s};
  std::vector<char> used(n, 0);
  used[s] = 1;
  auto dfs = [&](auto&& self, int v) -> void {
    if (static_cast<int>(path.size()) - 1 > d[s][t]) return;
    if (v == t) {
      if (static_cast<int>(path.size()) - 1 == d[s][t]) {
        res.total += 1.0;
        for (int u : path)
          if (u != s && u != t) res.through[u] += 1.0;
      }
      return;
    }
    for (const auto& [u, w] : net.out_neighbors(v)) {
      if (used[u]) continue;
      used[u] = 1;
      path.push_back(u);
      self(self, u);
      path.pop_back();
      used[u] = 0;
    }
  };
  dfs(dfs, s);
  return res;
}

// Betweenness accumulated in the same (v, s, t) order as the library so the
// floating-point sums are comparable at full precision.
inline std::vector<double> betweenness(const liqnet::QuarterlyNetwork& net) {
  const int n = net.n_banks();
  std::vector<std::vector<PathCounts>> counts(n, std::vector<PathCounts>(n));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t) counts[s][t] = enumerate_paths(net, s, t);
  std::vector<double> bc(n, 0.0);
  for (int v = 0; v < n; ++v) {
    for (int s = 0; s < n; ++s) {
      if (s == v) continue;
      for (int t = 0; t < n; ++t) {
        if (t == s || t == v) continue;
        if (counts[s][t].total > 0.0 && counts[s][t].through[v] > 0.0) {
          // sigma_st(v) = sigma_sv * sigma_vt; the enumeration counted it
          // directly as paths containing v.
          bc[v] += counts[s][t].through[v] / counts[s][t].total;
        }
      }
    }
    bc[v] /= static_cast<double>(n - 1) * (n - 2);
  }
  return bc;
}

// ------------------------------------------------------------------- KS ----

inline double ks_statistic_brute(std::vector<double> a, std::vector<double> b) {
  std::vector<double> points = a;
  points.insert(points.end(), b.begin(), b.end());
  std::sort(points.begin(), points.end());
  double d = 0.0;
  for (double x : points) {
    std::size_t ca = 0, cb = 0;
    for (double v : a)
      if (v <= x) ++ca;
    for (double v : b)
      if (v <= x) ++cb;
    const double diff = std::fabs(static_cast<double>(ca) / static_cast<double>(a.size()) -
                                  static_cast<double>(cb) / static_cast<double>(b.size()));
    if (diff > d) d = diff;
  }
  return d;
}

// ----------------------------------------------------------- regression ----

struct LsdvFit {
  Eigen::VectorXd slopes;  // coefficients on the regressors, in column order
  Eigen::VectorXd residuals;
};

// Least squares with one dummy per group (no constant): the textbook LSDV
// estimator the within transform must reproduce.
inline LsdvFit lsdv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    const std::vector<int>& group) {
  std::map<int, int> gindex;
  for (int g : group) gindex.emplace(g, static_cast<int>(gindex.size()));
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  const int g = static_cast<int>(gindex.size());
  Eigen::MatrixXd D(n, k + g);
  D.leftCols(k) = X;
  D.rightCols(g).setZero();
  for (int r = 0; r < n; ++r) D(r, k + gindex[group[r]]) = 1.0;
  const Eigen::VectorXd beta = D.colPivHouseholderQr().solve(y);
  LsdvFit fit;
  fit.slopes = beta.head(k);
  fit.residuals = y - D * beta;
  return fit;
}

// Direct assembly of the cluster sandwich on a given design and residuals.
inline Eigen::MatrixXd cluster_sandwich(const Eigen::MatrixXd& D, const Eigen::VectorXd& resid,
                                        const std::vector<int>& cluster) {
  const int n = static_cast<int>(D.rows());
  const int k = static_cast<int>(D.cols());
  std::map<int, Eigen::VectorXd> scores;
  for (int r = 0; r < n; ++r) {
    auto [it, inserted] = scores.try_emplace(cluster[r], Eigen::VectorXd::Zero(k));
    it->second += D.row(r).transpose() * resid(r);
  }
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
  for (const auto& [g, s] : scores) meat += s * s.transpose();
  const double G = static_cast<double>(scores.size());
  const double c = (G / (G - 1.0)) * ((n - 1.0) / (n - k));
  const Eigen::MatrixXd bread = (D.transpose() * D).inverse();
  return c * bread * meat * bread;
}

// ------------------------------------------------------------------ EDB ----

// Plain-loop EDB stepper following the published update rules, sharing only
// the positional draw convention with the library (so ensembles are
// comparable run by run when needed, but the state bookkeeping is
// independent).
inline std::vector<liqnet::BankState> edb_run(const liqnet::QuarterlyNetwork& net,
                                              const liqnet::SimConfig& cfg,
                                              std::uint64_t realization, int* stop_step = nullptr) {
  const int n = net.n_banks();
  const auto w = weight_matrix(net);
  std::vector<double> s_out(n, 0.0), s_in(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s_out[i] += w[i][j];
      s_in[i] += w[j][i];
    }

  const std::uint64_t stream = liqnet::rng::mix(cfg.rng_seed, realization);
  std::vector<liqnet::BankState> state(n, liqnet::BankState::Exposed);
  const int seeds = liqnet::seed_bank_count(cfg.seed_density, n);
  {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int t = 0; t < seeds; ++t) {
      const int j = t + static_cast<int>(liqnet::rng::below(n - t, stream, 0, t));
      std::swap(pool[t], pool[j]);
      state[pool[t]] = liqnet::BankState::Distressed;
    }
  }

  int final_step = cfg.max_steps;
  for (int step = 1; step <= cfg.max_steps; ++step) {
    const std::vector<liqnet::BankState> before = state;
    for (int j = 0; j < n; ++j) {
      if (before[j] != liqnet::BankState::Exposed || state[j] != liqnet::BankState::Exposed)
        continue;
      for (int i = 0; i < n; ++i) {
        if (w[i][j] <= 0.0 || before[i] == liqnet::BankState::Exposed) continue;
        const double lambda = cfg.scenario.phi(w[i][j] / s_out[i]);
        if (liqnet::rng::uniform(stream, 1, step, i, j) < lambda) {
          state[j] = liqnet::BankState::Distressed;
          break;
        }
      }
    }
    const std::vector<liqnet::BankState> after_infection = state;
    for (int i = 0; i < n; ++i) {
      if (after_infection[i] != liqnet::BankState::Distressed) continue;
      if (s_in[i] <= 0.0) continue;
      double unhealthy = 0.0;
      for (int j = 0; j < n; ++j) {
        if (w[j][i] > 0.0 && after_infection[j] != liqnet::BankState::Exposed) unhealthy += w[j][i];
      }
      const double mu = cfg.scenario.psi(unhealthy / s_in[i]);
      if (mu > 0.0 && liqnet::rng::uniform(stream, 2, step, i) < mu) {
        state[i] = liqnet::BankState::Bankrupted;
      }
    }
    int distressed = 0;
    for (int i = 0; i < n; ++i) distressed += state[i] == liqnet::BankState::Distressed;
    if (distressed == 0) {
      final_step = step;
      break;
    }
    // Nothing left that can ever fire: every event probability is zero.
    bool frozen = true;
    for (int v = 0; v < n && frozen; ++v) {
      if (state[v] == liqnet::BankState::Bankrupted) continue;
      for (int u = 0; u < n; ++u) {
        if (w[u][v] > 0.0 && state[u] != liqnet::BankState::Exposed) {
          frozen = false;
          break;
        }
      }
    }
    if (frozen) break;
  }
  if (stop_step) *stop_step = final_step;
  return state;
}

// Per-bank default frequencies over `runs` realizations.
inline std::vector<double> edb_default_frequency(const liqnet::QuarterlyNetwork& net,
                                                 const liqnet::SimConfig& cfg, int runs) {
  std::vector<double> freq(net.n_banks(), 0.0);
  for (int r = 0; r < runs; ++r) {
    const auto state = edb_run(net, cfg, static_cast<std::uint64_t>(r));
    for (int i = 0; i < net.n_banks(); ++i)
      if (state[i] == liqnet::BankState::Bankrupted) freq[i] += 1.0;
  }
  for (double& f : freq) f /= runs;
  return freq;
}

// ------------------------------------------------------- random networks ----

// Random weakly connected directed network on n nodes (test fixture).
inline liqnet::QuarterlyNetwork random_network(int n, double p, std::uint64_t seed,
                                               bool integer_weights = false) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::vector<liqnet::Edge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (liqnet::rng::uniform(seed, attempt, i, j) < p) {
          double w;
          if (integer_weights) {
            w = 1.0 + static_cast<double>(liqnet::rng::below(9, seed, attempt, i, j, 7));
          } else {
            w = 0.5 + 10.0 * liqnet::rng::uniform(seed, attempt, i, j, 9);
          }
          edges.push_back(liqnet::Edge{i, j, w});
        }
      }
    }
    if (edges.empty()) continue;
    const std::vector<int> wcc = liqnet::largest_weakly_connected_component(n, edges);
    if (static_cast<int>(wcc.size()) != n) continue;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("B" + std::to_string(i));
    return liqnet::QuarterlyNetwork(liqnet::Quarter{2005, 1}, std::move(ids), std::move(edges));
  }
}

}  // namespace oracle
