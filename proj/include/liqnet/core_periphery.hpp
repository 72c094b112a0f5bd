#pragma once
// Discrete core-periphery partitioning. The error score of a candidate core
// counts, on the binary adjacency:
//   1. missing links inside the core,
//   2. links present inside the periphery,
//   3. core banks with no out-link to the periphery,
//   4. core banks with no in-link from the periphery.
// Fitting greedily switches single banks from random bisections with
// multiple restarts; best score wins, ties to the smaller then
// lexicographically smaller core.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "liqnet/network.hpp"
#include "liqnet/rng.hpp"

namespace liqnet {

struct CorePeripheryPartition {
  std::vector<int> core_set;  // sorted bank indices
  long long error_score = 0;
  std::vector<std::uint8_t> coreness;  // 1 iff in core
};

namespace detail {

// Incrementally maintained score state for single-bank switches.
class CpState {
 public:
  CpState(const QuarterlyNetwork& net, const std::vector<std::uint8_t>& coreness)
      : net_(net), is_core_(coreness) {
    const int n = net.n_banks();
    out_to_periph_.assign(n, 0);
    in_from_periph_.assign(n, 0);
    core_size_ = 0;
    for (int i = 0; i < n; ++i) core_size_ += is_core_[i];
    cc_links_ = pp_links_ = 0;
    for (const Edge& e : net.edges()) {
      if (is_core_[e.src] && is_core_[e.dst]) ++cc_links_;
      if (!is_core_[e.src] && !is_core_[e.dst]) ++pp_links_;
      if (is_core_[e.src] && !is_core_[e.dst]) ++out_to_periph_[e.src];
      if (!is_core_[e.src] && is_core_[e.dst]) ++in_from_periph_[e.dst];
    }
    row_violations_ = col_violations_ = 0;
    for (int i = 0; i < n; ++i) {
      if (is_core_[i] && out_to_periph_[i] == 0) ++row_violations_;
      if (is_core_[i] && in_from_periph_[i] == 0) ++col_violations_;
    }
  }

  long long score() const {
    const long long cs = core_size_;
    const long long missing_cc = cs * (cs - 1) - cc_links_;
    return missing_cc + pp_links_ + row_violations_ + col_violations_;
  }

  int core_size() const { return core_size_; }
  bool is_core(int v) const { return is_core_[v] != 0; }

  // Score after switching bank b to the other side, without mutating.
  long long switched_score(int b) const {
    CpState& self = const_cast<CpState&>(*this);
    self.flip(b);
    const long long s = score();
    self.flip(b);
    return s;
  }

  void flip(int b) {
    const bool to_core = !is_core_[b];
    // Remove b's current contribution to row/col violations.
    if (is_core_[b]) {
      if (out_to_periph_[b] == 0) --row_violations_;
      if (in_from_periph_[b] == 0) --col_violations_;
    }
    int out_core = 0, out_periph = 0;
    for (const auto& [j, w] : net_.out_neighbors(b)) {
      if (is_core_[j]) {
        ++out_core;
        // Edge b->j feeds j's in-from-periphery count when b is peripheral.
        if (to_core) {
          if (--in_from_periph_[j] == 0) ++col_violations_;
        } else {
          if (in_from_periph_[j]++ == 0) --col_violations_;
        }
      } else {
        ++out_periph;
      }
    }
    int in_core = 0, in_periph = 0;
    for (const auto& [j, w] : net_.in_neighbors(b)) {
      if (is_core_[j]) {
        ++in_core;
        if (to_core) {
          if (--out_to_periph_[j] == 0) ++row_violations_;
        } else {
          if (out_to_periph_[j]++ == 0) --row_violations_;
        }
      } else {
        ++in_periph;
      }
    }
    if (to_core) {
      cc_links_ += out_core + in_core;
      pp_links_ -= out_periph + in_periph;
      out_to_periph_[b] = out_periph;
      in_from_periph_[b] = in_periph;
      if (out_periph == 0) ++row_violations_;
      if (in_periph == 0) ++col_violations_;
      ++core_size_;
    } else {
      cc_links_ -= out_core + in_core;
      pp_links_ += out_periph + in_periph;
      --core_size_;
    }
    is_core_[b] = to_core ? 1 : 0;
  }

  std::vector<std::uint8_t> coreness() const { return is_core_; }

 private:
  const QuarterlyNetwork& net_;
  std::vector<std::uint8_t> is_core_;
  std::vector<int> out_to_periph_, in_from_periph_;  // meaningful for core banks
  long long cc_links_ = 0, pp_links_ = 0;
  long long row_violations_ = 0, col_violations_ = 0;
  int core_size_ = 0;
};

}  // namespace detail

inline long long cp_error(const QuarterlyNetwork& net, const std::vector<int>& core_set) {
  const int n = net.n_banks();
  if (core_set.empty() || static_cast<int>(core_set.size()) >= n) {
    throw std::invalid_argument("cp_error: core must be a proper nonempty subset");
  }
  std::vector<std::uint8_t> coreness(n, 0);
  for (int v : core_set) {
    if (v < 0 || v >= n) throw std::invalid_argument("cp_error: bank index out of range");
    if (coreness[v]) throw std::invalid_argument("cp_error: duplicate bank in core set");
    coreness[v] = 1;
  }
  return detail::CpState(net, coreness).score();
}

inline CorePeripheryPartition fit_core_periphery(const QuarterlyNetwork& net, std::uint64_t seed,
                                                 int restarts = 20) {
  const int n = net.n_banks();
  if (n < 3) throw std::invalid_argument("fit_core_periphery: need at least 3 banks");
  if (restarts < 1) throw std::invalid_argument("fit_core_periphery: restarts must be >= 1");

  bool have_best = false;
  long long best_score = 0;
  std::vector<std::uint8_t> best_coreness;
  std::vector<int> best_core;

  for (int r = 0; r < restarts; ++r) {
    // Random bisection, fixed up to a proper nonempty core.
    std::vector<std::uint8_t> coreness(n, 0);
    int core_size = 0;
    for (int v = 0; v < n; ++v) {
      coreness[v] = rng::uniform(seed, r, 0, v) < 0.5 ? 1 : 0;
      core_size += coreness[v];
    }
    if (core_size == 0) coreness[rng::below(n, seed, r, 1)] = 1;
    if (core_size == n) coreness[rng::below(n, seed, r, 2)] = 0;

    detail::CpState state(net, coreness);
    while (true) {
      const long long current = state.score();
      long long best_move_score = current;
      int best_move = -1;
      for (int v = 0; v < n; ++v) {
        // Keep the core a proper nonempty subset.
        if (state.is_core(v) && state.core_size() == 1) continue;
        if (!state.is_core(v) && state.core_size() == n - 1) continue;
        const long long s = state.switched_score(v);
        if (s < best_move_score) {
          best_move_score = s;
          best_move = v;
        }
      }
      if (best_move < 0) break;
      state.flip(best_move);
    }

    const long long score = state.score();
    std::vector<std::uint8_t> coreness_fit = state.coreness();
    std::vector<int> core;
    for (int v = 0; v < n; ++v)
      if (coreness_fit[v]) core.push_back(v);
    const bool better =
        !have_best || score < best_score ||
        (score == best_score &&
         (core.size() < best_core.size() || (core.size() == best_core.size() && core < best_core)));
    if (better) {
      have_best = true;
      best_score = score;
      best_coreness = std::move(coreness_fit);
      best_core = std::move(core);
    }
  }

  return CorePeripheryPartition{std::move(best_core), best_score, std::move(best_coreness)};
}

}  // namespace liqnet
