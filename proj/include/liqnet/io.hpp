#pragma once
// Artifact file formats shared by the CLI stages:
//   networks   quarter,lender,borrower,weight
//   metrics    one row per quarter (wide) and quarter,bank,metric,value (long)
//   coreness   quarter,bank,coreness
//   frequency  quarter,bank,default_frequency
// Every writer emits '#' comment lines carrying the producing command line,
// so each artifact is self-describing and reproducible.

#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "liqnet/csv.hpp"
#include "liqnet/metrics.hpp"
#include "liqnet/network.hpp"

#include "json.hpp"

namespace liqnet {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr const char* kNetworksHeader = "quarter,lender,borrower,weight";

inline void write_networks_csv(std::ostream& out, const std::vector<QuarterlyNetwork>& nets,
                               const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kNetworksHeader << '\n';
  for (const auto& net : nets) {
    for (const Edge& e : net.edges()) {
      out << net.quarter().label() << ',' << net.bank_ids()[e.src] << ',' << net.bank_ids()[e.dst]
          << ',' << csv::format_double(e.weight) << '\n';
    }
  }
}

inline std::vector<QuarterlyNetwork> read_networks_csv(std::istream& in) {
  std::map<Quarter, std::map<std::pair<std::string, std::string>, double>> volume;
  for (const auto& row : csv::read_rows(in, kNetworksHeader, "networks")) {
    if (row.fields.size() != 4)
      throw std::runtime_error("networks: line " + std::to_string(row.line_no) + ": expected 4 fields");
    const Quarter q = Quarter::parse(row.fields[0]);
    const double w = csv::parse_double(row.fields[3], "weight");
    auto [it, inserted] = volume[q].try_emplace({row.fields[1], row.fields[2]}, w);
    if (!inserted)
      throw std::runtime_error("networks: line " + std::to_string(row.line_no) + ": duplicate edge");
  }
  std::vector<QuarterlyNetwork> nets;
  for (const auto& [quarter, pairs] : volume) {
    QuarterAggregate agg;
    agg.quarter = quarter;
    std::map<std::string, int> index;
    for (const auto& [pair, w] : pairs) {
      index.emplace(pair.first, 0);
      index.emplace(pair.second, 0);
    }
    for (auto& [id, idx] : index) {
      idx = static_cast<int>(agg.bank_ids.size());
      agg.bank_ids.push_back(id);
    }
    for (const auto& [pair, w] : pairs) agg.edges.push_back(Edge{index.at(pair.first), index.at(pair.second), w});
    // Stored networks are already reduced; constructing validates invariants.
    nets.emplace_back(agg.quarter, std::move(agg.bank_ids), std::move(agg.edges));
  }
  return nets;
}

inline constexpr const char* kNetworkMetricsHeader =
    "quarter,n_banks,n_links,density,total_volume,volume_per_bank,degree_skewness,reciprocity,"
    "clustering,efficiency";

inline void write_network_metrics_csv(std::ostream& out,
                                      const std::vector<std::pair<Quarter, NetworkMetrics>>& rows,
                                      const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kNetworkMetricsHeader << '\n';
  for (const auto& [q, m] : rows) {
    out << q.label() << ',' << m.n_banks << ',' << m.n_links << ',' << csv::format_double(m.density)
        << ',' << csv::format_double(m.total_volume) << ',' << csv::format_double(m.volume_per_bank)
        << ',' << (m.degree_skewness ? csv::format_double(*m.degree_skewness) : std::string())
        << ',' << csv::format_double(m.reciprocity) << ',' << csv::format_double(m.clustering)
        << ',' << csv::format_double(m.efficiency) << '\n';
  }
}

struct NetworkMetricsRow {
  Quarter quarter;
  NetworkMetrics metrics;
};

inline std::vector<NetworkMetricsRow> read_network_metrics_csv(std::istream& in) {
  std::vector<NetworkMetricsRow> rows;
  for (const auto& row : csv::read_rows(in, kNetworkMetricsHeader, "network metrics")) {
    if (row.fields.size() != 10) throw std::runtime_error("network metrics: bad row");
    NetworkMetricsRow r;
    r.quarter = Quarter::parse(row.fields[0]);
    r.metrics.n_banks = static_cast<int>(csv::parse_long(row.fields[1], "n_banks"));
    r.metrics.n_links = csv::parse_long(row.fields[2], "n_links");
    r.metrics.density = csv::parse_double(row.fields[3], "density");
    r.metrics.total_volume = csv::parse_double(row.fields[4], "total_volume");
    r.metrics.volume_per_bank = csv::parse_double(row.fields[5], "volume_per_bank");
    if (!row.fields[6].empty())
      r.metrics.degree_skewness = csv::parse_double(row.fields[6], "degree_skewness");
    r.metrics.reciprocity = csv::parse_double(row.fields[7], "reciprocity");
    r.metrics.clustering = csv::parse_double(row.fields[8], "clustering");
    r.metrics.efficiency = csv::parse_double(row.fields[9], "efficiency");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline constexpr const char* kBankMetricsHeader = "quarter,bank,metric,value";

inline const std::vector<std::pair<const char*, double BankMetrics::*>>& bank_metric_fields() {
  static const std::vector<std::pair<const char*, double BankMetrics::*>> kDoubleFields = {
      {"in-strength", &BankMetrics::in_strength},
      {"out-strength", &BankMetrics::out_strength},
      {"strength", &BankMetrics::strength},
      {"binary-clustering", &BankMetrics::binary_clustering},
      {"weighted-clustering", &BankMetrics::weighted_clustering},
      {"betweenness", &BankMetrics::betweenness},
  };
  return kDoubleFields;
}

inline void write_bank_metrics_csv(
    std::ostream& out,
    const std::vector<std::pair<Quarter, std::pair<std::vector<std::string>, std::vector<BankMetrics>>>>& rows,
    const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kBankMetricsHeader << '\n';
  for (const auto& [q, table] : rows) {
    const auto& [ids, metrics] = table;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const BankMetrics& m = metrics[i];
      out << q.label() << ',' << ids[i] << ",in-degree," << m.in_degree << '\n';
      out << q.label() << ',' << ids[i] << ",out-degree," << m.out_degree << '\n';
      out << q.label() << ',' << ids[i] << ",reciprocal-degree," << m.reciprocal_degree << '\n';
      out << q.label() << ',' << ids[i] << ",degree," << m.degree << '\n';
      for (const auto& [name, field] : bank_metric_fields()) {
        out << q.label() << ',' << ids[i] << ',' << name << ',' << csv::format_double(m.*field)
            << '\n';
      }
    }
  }
}

// quarter -> bank -> metrics, rebuilt from the long CSV.
inline std::map<Quarter, std::map<std::string, BankMetrics>> read_bank_metrics_csv(
    std::istream& in) {
  std::map<Quarter, std::map<std::string, BankMetrics>> out;
  for (const auto& row : csv::read_rows(in, kBankMetricsHeader, "bank metrics")) {
    if (row.fields.size() != 4) throw std::runtime_error("bank metrics: bad row");
    const Quarter q = Quarter::parse(row.fields[0]);
    BankMetrics& m = out[q][row.fields[1]];
    const std::string& name = row.fields[2];
    const double v = csv::parse_double(row.fields[3], name);
    if (name == "in-degree") m.in_degree = static_cast<int>(v);
    else if (name == "out-degree") m.out_degree = static_cast<int>(v);
    else if (name == "reciprocal-degree") m.reciprocal_degree = static_cast<int>(v);
    else if (name == "degree") m.degree = static_cast<int>(v);
    else {
      bool known = false;
      for (const auto& [fname, field] : bank_metric_fields()) {
        if (name == fname) {
          m.*field = v;
          known = true;
          break;
        }
      }
      if (!known) throw std::runtime_error("bank metrics: unknown metric '" + name + "'");
    }
  }
  return out;
}

inline constexpr const char* kCorenessHeader = "quarter,bank,coreness";

inline void write_coreness_csv(
    std::ostream& out,
    const std::vector<std::pair<Quarter, std::map<std::string, int>>>& rows,
    const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kCorenessHeader << '\n';
  for (const auto& [q, table] : rows) {
    for (const auto& [bank, coreness] : table) {
      out << q.label() << ',' << bank << ',' << coreness << '\n';
    }
  }
}

inline std::map<Quarter, std::map<std::string, int>> read_coreness_csv(std::istream& in) {
  std::map<Quarter, std::map<std::string, int>> out;
  for (const auto& row : csv::read_rows(in, kCorenessHeader, "coreness")) {
    if (row.fields.size() != 3) throw std::runtime_error("coreness: bad row");
    out[Quarter::parse(row.fields[0])][row.fields[1]] =
        static_cast<int>(csv::parse_long(row.fields[2], "coreness"));
  }
  return out;
}

inline constexpr const char* kFrequencyHeader = "quarter,bank,default_frequency";

inline void write_frequency_csv(
    std::ostream& out, const std::vector<std::pair<Quarter, std::map<std::string, double>>>& rows,
    const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  out << kFrequencyHeader << '\n';
  for (const auto& [q, table] : rows) {
    for (const auto& [bank, freq] : table) {
      out << q.label() << ',' << bank << ',' << csv::format_double(freq) << '\n';
    }
  }
}

inline std::map<Quarter, std::map<std::string, double>> read_frequency_csv(std::istream& in) {
  std::map<Quarter, std::map<std::string, double>> out;
  for (const auto& row : csv::read_rows(in, kFrequencyHeader, "default frequency")) {
    if (row.fields.size() != 3) throw std::runtime_error("default frequency: bad row");
    out[Quarter::parse(row.fields[0])][row.fields[1]] =
        csv::parse_double(row.fields[2], "default_frequency");
  }
  return out;
}

// Self-description block embedded in JSON artifacts.
inline nlohmann::json artifact_meta(const std::string& subcommand, const nlohmann::json& config) {
  return nlohmann::json{{"tool", "liqnet"}, {"version", kVersion}, {"subcommand", subcommand},
                        {"config", config}};
}

}  // namespace liqnet
