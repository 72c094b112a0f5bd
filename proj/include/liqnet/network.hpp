#pragma once
// Quarterly interbank networks: directed weighted graphs aggregated from
// overnight transactions, restricted to the largest weakly connected
// component.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liqnet/calendar.hpp"
#include "liqnet/transactions.hpp"

namespace liqnet {

struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;

  auto operator<=>(const Edge&) const = default;
};

class QuarterlyNetwork {
 public:
  // Validates invariants: positive weights, no self-loops, no duplicate
  // (src,dst) pairs, weak connectivity, no isolated banks.
  QuarterlyNetwork(Quarter quarter, std::vector<std::string> bank_ids, std::vector<Edge> edges)
      : quarter_(quarter), bank_ids_(std::move(bank_ids)), edges_(std::move(edges)) {
    const int n = static_cast<int>(bank_ids_.size());
    if (n < 1) throw std::invalid_argument("network: no banks");
    std::sort(edges_.begin(), edges_.end());
    out_adj_.assign(n, {});
    in_adj_.assign(n, {});
    out_strength_.assign(n, 0.0);
    in_strength_.assign(n, 0.0);
    const Edge* prev = nullptr;
    for (const Edge& e : edges_) {
      if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
        throw std::invalid_argument("network: edge endpoint out of range");
      if (e.src == e.dst) throw std::invalid_argument("network: self-loop at bank " + bank_ids_[e.src]);
      if (!(e.weight > 0.0)) throw std::invalid_argument("network: nonpositive weight");
      if (prev && prev->src == e.src && prev->dst == e.dst)
        throw std::invalid_argument("network: duplicate edge");
      prev = &e;
      out_adj_[e.src].emplace_back(e.dst, e.weight);
      in_adj_[e.dst].emplace_back(e.src, e.weight);
      out_strength_[e.src] += e.weight;
      in_strength_[e.dst] += e.weight;
    }
    if (!weakly_connected())
      throw std::invalid_argument("network " + quarter_.label() + ": not weakly connected");
  }

  const Quarter& quarter() const { return quarter_; }
  int n_banks() const { return static_cast<int>(bank_ids_.size()); }
  long n_links() const { return static_cast<long>(edges_.size()); }
  const std::vector<std::string>& bank_ids() const { return bank_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Out-/in-neighbor lists, sorted by neighbor index.
  const std::vector<std::pair<int, double>>& out_neighbors(int i) const { return out_adj_[i]; }
  const std::vector<std::pair<int, double>>& in_neighbors(int i) const { return in_adj_[i]; }

  double out_strength(int i) const { return out_strength_[i]; }
  double in_strength(int i) const { return in_strength_[i]; }

  double total_out_strength() const {
    return std::accumulate(out_strength_.begin(), out_strength_.end(), 0.0);
  }

  double weight(int i, int j) const {
    const auto& row = out_adj_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& p, int v) { return p.first < v; });
    return (it != row.end() && it->first == j) ? it->second : 0.0;
  }

  bool has_edge(int i, int j) const { return weight(i, j) > 0.0; }

 private:
  bool weakly_connected() const {
    const int n = n_banks();
    if (n == 1) return !edges_.empty() ? false : true;  // single bank, no self-loops possible
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [u, w] : out_adj_[v])
        if (!seen[u]) seen[u] = 1, ++count, stack.push_back(u);
      for (const auto& [u, w] : in_adj_[v])
        if (!seen[u]) seen[u] = 1, ++count, stack.push_back(u);
    }
    return count == n;
  }

  Quarter quarter_;
  std::vector<std::string> bank_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, double>>> out_adj_, in_adj_;
  std::vector<double> out_strength_, in_strength_;
};

// One quarter's aggregation before the connected-component reduction.
struct QuarterAggregate {
  Quarter quarter;
  std::vector<std::string> bank_ids;
  std::vector<Edge> edges;  // unique (src,dst), summed ON volume
};

// Groups ON records by calendar quarter and sums volumes per ordered bank
// pair. Malformed records abort with the offending record's index.
inline std::vector<QuarterAggregate> aggregate_quarterly(
    const std::vector<TransactionRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (auto bad = validate_record(records[i])) {
      throw std::invalid_argument("record " + std::to_string(i) + ": " + *bad);
    }
  }
  std::map<Quarter, std::map<std::pair<std::string, std::string>, double>> volume;
  for (const auto& r : records) {
    if (r.maturity != Maturity::ON) continue;  // overnight segment only
    volume[Quarter::of(r.date)][{r.lender_id, r.borrower_id}] += r.amount;
  }
  std::vector<QuarterAggregate> out;
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
    for (const auto& [pair, w] : pairs) {
      agg.edges.push_back(Edge{index[pair.first], index[pair.second], w});
    }
    out.push_back(std::move(agg));
  }
  return out;
}

// Node set of the largest weakly connected component of an n-node edge list,
// sorted ascending. Isolated nodes form singleton components and are never
// selected. Ties between equally large components go to the one containing
// the smallest node index.
inline std::vector<int> largest_weakly_connected_component(int n, const std::vector<Edge>& edges) {
  if (edges.empty()) throw std::runtime_error("weakly connected component: no edges");
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<char> has_edge(n, 0);
  for (const Edge& e : edges) {
    has_edge[e.src] = has_edge[e.dst] = 1;
    const int a = find(e.src), b = find(e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> size(n, 0);
  for (int v = 0; v < n; ++v)
    if (has_edge[v]) ++size[find(v)];
  int best = -1;
  for (int root = 0; root < n; ++root) {
    // Roots are the smallest member of their component, so scanning in index
    // order applies the smallest-member tie rule.
    if (size[root] > 0 && (best < 0 || size[root] > size[best])) best = root;
  }
  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (has_edge[v] && find(v) == best) members.push_back(v);
  return members;
}

// Induced subgraph on the largest weakly connected component.
inline QuarterlyNetwork reduce_to_wcc(const QuarterAggregate& agg) {
  const int n = static_cast<int>(agg.bank_ids.size());
  const std::vector<int> keep = largest_weakly_connected_component(n, agg.edges);
  std::vector<int> remap(n, -1);
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (int v : keep) {
    remap[v] = static_cast<int>(ids.size());
    ids.push_back(agg.bank_ids[v]);
  }
  std::vector<Edge> edges;
  for (const Edge& e : agg.edges) {
    if (remap[e.src] >= 0 && remap[e.dst] >= 0)
      edges.push_back(Edge{remap[e.src], remap[e.dst], e.weight});
  }
  return QuarterlyNetwork(agg.quarter, std::move(ids), std::move(edges));
}

// Full pipeline: ON-only quarterly aggregation, then WCC reduction, sorted by
// quarter. Quarters whose aggregate has no ON transaction produce no network.
inline std::vector<QuarterlyNetwork> build_quarterly_networks(
    const std::vector<TransactionRecord>& records) {
  std::vector<QuarterlyNetwork> nets;
  for (const auto& agg : aggregate_quarterly(records)) {
    nets.push_back(reduce_to_wcc(agg));
  }
  return nets;
}

}  // namespace liqnet
