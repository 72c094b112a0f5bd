#pragma once
// Bank x quarter panel assembly and within-group (fixed-effects) OLS with
// cluster-robust standard errors.
//
// Design columns: the chosen regressor set, the same set interacted with the
// crisis dummy, the crisis dummy itself, and a constant. All columns except
// the constant are demeaned by bank with the grand mean added back, which
// leaves slope estimates identical to the pure within estimator while giving
// the constant the usual "average fixed effect" meaning.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "liqnet/calendar.hpp"
#include "liqnet/metrics.hpp"

namespace liqnet {

enum class RegressorSet { binary, weighted };

inline std::vector<std::string> regressor_names(RegressorSet set) {
  if (set == RegressorSet::binary)
    return {"in-degree", "out-degree", "binary-clustering", "coreness"};
  return {"in-strength", "out-strength", "weighted-clustering", "betweenness"};
}

struct PanelQuarterInput {
  Quarter quarter;
  std::map<std::string, BankMetrics> metrics;
  std::map<std::string, int> coreness;
  std::map<std::string, double> default_frequency;
};

struct PanelObservation {
  int bank = 0;     // index into PanelDataset::bank_ids
  int quarter = 0;  // index into PanelDataset::quarters
  double y = 0.0;   // default frequency in percent (0-100)
  std::vector<double> x;
};

struct PanelDataset {
  std::vector<std::string> bank_ids;
  std::vector<Quarter> quarters;
  std::vector<std::string> x_names;
  Quarter crisis_quarter{2008, 4};
  std::vector<PanelObservation> observations;

  bool crisis(int quarter_index) const { return !(quarters[quarter_index] < crisis_quarter); }
};

// Joins per-quarter metric, coreness and default-frequency tables into a long
// (possibly unbalanced) panel. The three sources must agree on which banks
// are present in each quarter.
inline PanelDataset build_panel(const std::vector<PanelQuarterInput>& inputs, RegressorSet set,
                                Quarter crisis_quarter = Quarter{2008, 4}) {
  PanelDataset panel;
  panel.crisis_quarter = crisis_quarter;
  panel.x_names = regressor_names(set);

  std::set<std::string> orphans;
  std::string orphan_detail;
  std::set<std::string> all_banks;
  for (const auto& in : inputs) {
    for (const auto& [id, m] : in.metrics) {
      if (!in.coreness.count(id) || !in.default_frequency.count(id)) {
        orphans.insert(id);
        if (orphan_detail.size() < 400)
          orphan_detail += " " + id + "@" + in.quarter.label();
      }
      all_banks.insert(id);
    }
    for (const auto& [id, c] : in.coreness) {
      if (!in.metrics.count(id)) {
        orphans.insert(id);
        if (orphan_detail.size() < 400) orphan_detail += " " + id + "@" + in.quarter.label();
      }
    }
    for (const auto& [id, f] : in.default_frequency) {
      if (!in.metrics.count(id)) {
        orphans.insert(id);
        if (orphan_detail.size() < 400) orphan_detail += " " + id + "@" + in.quarter.label();
      }
    }
  }
  if (!orphans.empty()) {
    throw std::invalid_argument("build_panel: bank ids not present in all sources:" + orphan_detail);
  }
  if (all_banks.empty()) throw std::invalid_argument("build_panel: empty join");

  std::map<std::string, int> bank_index;
  for (const auto& id : all_banks) {
    bank_index.emplace(id, static_cast<int>(panel.bank_ids.size()));
    panel.bank_ids.push_back(id);
  }

  std::vector<const PanelQuarterInput*> sorted;
  for (const auto& in : inputs) sorted.push_back(&in);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->quarter < b->quarter; });

  for (const auto* in : sorted) {
    const int qi = static_cast<int>(panel.quarters.size());
    panel.quarters.push_back(in->quarter);
    for (const auto& [id, m] : in->metrics) {
      PanelObservation obs;
      obs.bank = bank_index.at(id);
      obs.quarter = qi;
      obs.y = 100.0 * in->default_frequency.at(id);
      if (set == RegressorSet::binary) {
        obs.x = {static_cast<double>(m.in_degree), static_cast<double>(m.out_degree),
                 m.binary_clustering, static_cast<double>(in->coreness.at(id))};
      } else {
        obs.x = {m.in_strength, m.out_strength, m.weighted_clustering, m.betweenness};
      }
      panel.observations.push_back(std::move(obs));
    }
  }
  return panel;
}

enum class ClusterBy { bank, quarter };
enum class TimeEffects { constant, quarter_dummies };

struct FeOptions {
  ClusterBy cluster_by = ClusterBy::bank;
  TimeEffects time_effects = TimeEffects::constant;
};

struct Coefficient {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  std::string stars;  // "", "*", "**", "***" at p < 0.05 / 0.01 / 0.001
};

struct RegressionResult {
  std::vector<Coefficient> coefficients;  // regressors, interactions, theta, intercept (last)
  std::vector<std::string> dropped;       // absorbed or collinear-by-constancy columns
  double r_squared_within = 0.0;
  double adj_r_squared = 0.0;
  long n_obs = 0;
  int n_groups = 0;
  int min_group_size = 0, max_group_size = 0;
  std::string y_unit = "percent";
  std::string cluster_dimension = "bank";
};

inline std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

inline RegressionResult fe_regression(const PanelDataset& panel, const FeOptions& opt = {}) {
  const long n_obs = static_cast<long>(panel.observations.size());
  const int n_x = static_cast<int>(panel.x_names.size());
  if (n_obs == 0) throw std::invalid_argument("fe_regression: empty panel");

  // Raw design: x_m..., theta*x_m..., theta [, quarter dummies...]
  std::vector<std::string> names;
  for (const auto& nm : panel.x_names) names.push_back("alpha_" + nm);
  for (const auto& nm : panel.x_names) names.push_back("beta_" + nm);
  names.push_back("theta");
  if (opt.time_effects == TimeEffects::quarter_dummies) {
    for (std::size_t q = 1; q < panel.quarters.size(); ++q)
      names.push_back("q_" + panel.quarters[q].label());
  }
  const int n_raw = static_cast<int>(names.size());

  Eigen::MatrixXd X(n_obs, n_raw);
  Eigen::VectorXd y(n_obs);
  std::vector<int> group(n_obs);
  std::map<int, int> group_count;
  for (long r = 0; r < n_obs; ++r) {
    const PanelObservation& obs = panel.observations[r];
    const double theta = panel.crisis(obs.quarter) ? 1.0 : 0.0;
    for (int m = 0; m < n_x; ++m) X(r, m) = obs.x[m];
    for (int m = 0; m < n_x; ++m) X(r, n_x + m) = theta * obs.x[m];
    X(r, 2 * n_x) = theta;
    if (opt.time_effects == TimeEffects::quarter_dummies) {
      for (std::size_t q = 1; q < panel.quarters.size(); ++q)
        X(r, 2 * n_x + 1 + static_cast<int>(q) - 1) = obs.quarter == static_cast<int>(q) ? 1.0 : 0.0;
    }
    y(r) = obs.y;
    group[r] = opt.cluster_by == ClusterBy::bank ? obs.bank : obs.quarter;
    ++group_count[obs.bank];
  }
  const int n_groups = static_cast<int>(group_count.size());
  if (n_groups < 2) throw std::invalid_argument("fe_regression: need at least 2 groups");

  // Within transform by bank (the fixed effect), grand mean added back.
  std::map<int, long> bank_size;
  for (const auto& obs : panel.observations) ++bank_size[obs.bank];
  auto demean = [&](Eigen::VectorXd v) {
    std::map<int, double> bank_sum;
    double grand = 0.0;
    for (long r = 0; r < n_obs; ++r) {
      bank_sum[panel.observations[r].bank] += v(r);
      grand += v(r);
    }
    grand /= static_cast<double>(n_obs);
    for (long r = 0; r < n_obs; ++r) {
      const int b = panel.observations[r].bank;
      v(r) += grand - bank_sum[b] / static_cast<double>(bank_size[b]);
    }
    return v;
  };

  Eigen::VectorXd y_within = demean(y);
  const double y_grand = y.mean();
  double sst_within = 0.0;
  for (long r = 0; r < n_obs; ++r) {
    const double d = y_within(r) - y_grand;
    sst_within += d * d;
  }

  // Columns with no within-bank variation are absorbed by the fixed effect.
  RegressionResult result;
  std::vector<int> kept;
  Eigen::MatrixXd Xw(n_obs, n_raw);
  for (int c = 0; c < n_raw; ++c) {
    Eigen::VectorXd col = demean(X.col(c));
    double var = 0.0;
    const double mu = col.mean();
    for (long r = 0; r < n_obs; ++r) var += (col(r) - mu) * (col(r) - mu);
    const double scale = std::max(1.0, X.col(c).cwiseAbs().maxCoeff());
    if (var <= 1e-18 * scale * scale * static_cast<double>(n_obs)) {
      result.dropped.push_back(names[c]);
      continue;
    }
    Xw.col(static_cast<int>(kept.size())) = col;
    kept.push_back(c);
  }
  const int n_kept = static_cast<int>(kept.size());
  if (n_kept == 0) throw std::invalid_argument("fe_regression: all regressors absorbed");

  const int k_cols = n_kept + 1;  // + constant
  Eigen::MatrixXd D(n_obs, k_cols);
  D.leftCols(n_kept) = Xw.leftCols(n_kept);
  D.col(n_kept).setOnes();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D);
  qr.setThreshold(1e-10);
  if (qr.rank() < k_cols) {
    // Pivot order exposes which columns are linear combinations of others.
    std::string bad;
    const auto& perm = qr.colsPermutation().indices();
    for (int c = qr.rank(); c < k_cols; ++c) {
      const int col = perm(c);
      bad += " " + (col == n_kept ? std::string("const") : names[kept[col]]);
    }
    throw std::invalid_argument("fe_regression: collinear design, dependent columns:" + bad);
  }
  const Eigen::VectorXd b = qr.solve(y_within);
  const Eigen::VectorXd resid = y_within - D * b;

  // Cluster-robust sandwich with the usual small-sample factor.
  const Eigen::MatrixXd xtx_inv = (D.transpose() * D).inverse();
  std::map<int, Eigen::VectorXd> cluster_score;
  for (long r = 0; r < n_obs; ++r) {
    auto [it, inserted] = cluster_score.try_emplace(group[r], Eigen::VectorXd::Zero(k_cols));
    it->second += D.row(r).transpose() * resid(r);
  }
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k_cols, k_cols);
  for (const auto& [g, s] : cluster_score) meat += s * s.transpose();
  const int n_clusters = static_cast<int>(cluster_score.size());
  if (n_clusters < 2) throw std::invalid_argument("fe_regression: need at least 2 clusters");
  const double c_factor = (static_cast<double>(n_clusters) / (n_clusters - 1)) *
                          ((static_cast<double>(n_obs) - 1) / (static_cast<double>(n_obs) - k_cols));
  const Eigen::MatrixXd V = c_factor * xtx_inv * meat * xtx_inv;

  const double ssr = resid.squaredNorm();
  result.r_squared_within = sst_within > 0.0 ? 1.0 - ssr / sst_within : 0.0;
  result.adj_r_squared = 1.0 - (1.0 - result.r_squared_within) *
                                   (static_cast<double>(n_obs) - 1) /
                                   (static_cast<double>(n_obs) - k_cols);
  result.n_obs = n_obs;
  result.n_groups = n_groups;
  result.min_group_size = std::numeric_limits<int>::max();
  result.max_group_size = 0;
  for (const auto& [g, cnt] : group_count) {
    result.min_group_size = std::min(result.min_group_size, cnt);
    result.max_group_size = std::max(result.max_group_size, cnt);
  }
  result.cluster_dimension = opt.cluster_by == ClusterBy::bank ? "bank" : "quarter";

  for (int c = 0; c < k_cols; ++c) {
    Coefficient coef;
    coef.name = c == n_kept ? "eta" : names[kept[c]];
    coef.estimate = b(c);
    coef.std_error = std::sqrt(V(c, c));
    coef.z = coef.std_error > 0.0 ? coef.estimate / coef.std_error : 0.0;
    coef.p_value = std::erfc(std::fabs(coef.z) / std::numbers::sqrt2);
    coef.stars = significance_stars(coef.p_value);
    result.coefficients.push_back(std::move(coef));
  }
  return result;
}

}  // namespace liqnet
