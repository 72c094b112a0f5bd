#pragma once
// Exposed-Distressed-Bankrupted liquidity-contagion process on a quarterly
// network, plus ensemble simulation.
//
// Per step: distressed and bankrupted lenders try to infect each exposed
// borrower j with probability phi(w_ij / s_i^out) (infectious set frozen at
// step start); afterwards every distressed bank i, including banks infected
// this step, goes bankrupt with probability psi(unhealthy in-strength share).
// The run stops when no distressed bank remains or at the step cap.
//
// Every uniform draw is a pure function of (seed, realization, step, event),
// so results are independent of thread count and two scenarios run with the
// same seed share their underlying randomness (coupled runs).

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "liqnet/incomplete_beta.hpp"
#include "liqnet/network.hpp"
#include "liqnet/rng.hpp"
#include "liqnet/stats.hpp"

namespace liqnet {

// Nondecreasing [0,1] -> [0,1] shape with f(0)=0 and f(1)=1: either the
// identity or a regularized incomplete beta CDF.
struct ShapeFunction {
  enum class Kind { identity, beta };
  Kind kind = Kind::identity;
  double a = 1.0, b = 1.0;

  static ShapeFunction identity() { return ShapeFunction{}; }
  static ShapeFunction beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("shape function: beta parameters must be positive");
    return ShapeFunction{Kind::beta, a, b};
  }

  double operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("shape function: argument outside [0,1]");
    return kind == Kind::identity ? x : regularized_incomplete_beta(x, a, b);
  }

  std::string describe() const {
    if (kind == Kind::identity) return "identity";
    return "beta(" + csv::format_double(a) + "," + csv::format_double(b) + ")";
  }
};

struct ScenarioSpec {
  std::string name;
  ShapeFunction phi;  // infection shape
  ShapeFunction psi;  // bankruptcy shape

  static ScenarioSpec lc_ld() { return {"lc-ld", ShapeFunction::identity(), ShapeFunction::identity()}; }
  static ScenarioSpec lc_nld() {
    return {"lc-nld", ShapeFunction::identity(), ShapeFunction::beta(5, 20)};
  }
  static ScenarioSpec nlc_nld() {
    return {"nlc-nld", ShapeFunction::beta(1, 2), ShapeFunction::beta(5, 20)};
  }
  static ScenarioSpec by_name(const std::string& name) {
    if (name == "lc-ld") return lc_ld();
    if (name == "lc-nld") return lc_nld();
    if (name == "nlc-nld") return nlc_nld();
    throw std::invalid_argument("unknown scenario '" + name + "' (expected lc-ld, lc-nld, nlc-nld)");
  }
};

enum class BankState : std::uint8_t { Exposed, Distressed, Bankrupted };

struct SimConfig {
  double seed_density = 0.01;  // initial fraction of distressed banks, in (0,1]
  int max_steps = 100;
  int n_realizations = 5000;
  std::uint64_t rng_seed = 0;
  ScenarioSpec scenario = ScenarioSpec::lc_ld();
  int threads = 0;  // 0 = hardware concurrency
};

// ceil(f * N) distinct seed banks.
inline int seed_bank_count(double seed_density, int n_banks) {
  if (!(seed_density > 0.0)) throw std::invalid_argument("seed density must be positive");
  const int count = static_cast<int>(std::ceil(seed_density * n_banks));
  if (count > n_banks)
    throw std::invalid_argument("seed density asks for more seed banks than exist");
  return count < 1 ? 1 : count;
}

inline double infection_probability(const QuarterlyNetwork& net, int lender, int borrower,
                                    const ScenarioSpec& scenario) {
  const double w = net.weight(lender, borrower);
  if (!(w > 0.0)) throw std::invalid_argument("infection_probability: no loan from lender to borrower");
  return scenario.phi(w / net.out_strength(lender));
}

inline double bankruptcy_probability(const QuarterlyNetwork& net, int bank,
                                     const std::vector<BankState>& states,
                                     const ScenarioSpec& scenario) {
  const double s_in = net.in_strength(bank);
  if (s_in == 0.0) return 0.0;  // no funding to withdraw
  double unhealthy = 0.0;
  for (const auto& [lender, w] : net.in_neighbors(bank)) {
    if (states[lender] != BankState::Exposed) unhealthy += w;
  }
  return scenario.psi(unhealthy / s_in);
}

struct RunRecord {
  std::vector<BankState> final_states;
  int stop_step = 0;  // step at which no distressed bank remained, or the cap
  bool hit_cap = false;
};

namespace detail {
// Draw-stream tags; also part of the coupled-run contract, do not renumber.
inline constexpr std::uint64_t kDrawSeedBank = 0;
inline constexpr std::uint64_t kDrawInfection = 1;
inline constexpr std::uint64_t kDrawBankruptcy = 2;
}  // namespace detail

// Observer is called after each completed step with the current states.
using StepObserver = std::function<void(int step, const std::vector<BankState>&)>;

inline RunRecord simulate_once(const QuarterlyNetwork& net, const SimConfig& config,
                               std::uint64_t realization, const StepObserver& observer = {}) {
  const int n = net.n_banks();
  const int n_seeds = seed_bank_count(config.seed_density, n);
  const std::uint64_t stream = rng::mix(config.rng_seed, realization);

  RunRecord run;
  run.final_states.assign(n, BankState::Exposed);
  std::vector<BankState>& states = run.final_states;

  // Seeds drawn uniformly without replacement (partial Fisher-Yates).
  {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < n_seeds; ++t) {
      const int j = t + static_cast<int>(rng::below(n - t, stream, detail::kDrawSeedBank, t));
      std::swap(pool[t], pool[j]);
      states[pool[t]] = BankState::Distressed;
    }
  }

  int n_distressed = n_seeds;
  std::vector<BankState> at_step_start;
  for (int step = 1; step <= config.max_steps; ++step) {
    at_step_start = states;

    // Infection phase: lenders infectious as of step start.
    for (int j = 0; j < n; ++j) {
      if (states[j] != BankState::Exposed) continue;
      for (const auto& [i, w] : net.in_neighbors(j)) {
        if (at_step_start[i] == BankState::Exposed) continue;
        const double lambda = config.scenario.phi(w / net.out_strength(i));
        if (rng::uniform(stream, detail::kDrawInfection, step, i, j) < lambda) {
          states[j] = BankState::Distressed;
          ++n_distressed;
          break;
        }
      }
    }

    // Bankruptcy phase: every currently distressed bank, against the
    // post-infection unhealthy set (which D->B flips inside this loop do
    // not alter).
    for (int i = 0; i < n; ++i) {
      if (states[i] != BankState::Distressed) continue;
      const double mu = bankruptcy_probability(net, i, states, config.scenario);
      if (mu > 0.0 && rng::uniform(stream, detail::kDrawBankruptcy, step, i) < mu) {
        states[i] = BankState::Bankrupted;
        --n_distressed;
      }
    }

    if (n_distressed == 0) {
      run.stop_step = step;
      run.hit_cap = false;
      return run;
    }

    // If no exposed or distressed bank has an unhealthy lender, every event
    // probability is zero from here on: the run idles to the cap.
    bool frozen = true;
    for (int v = 0; v < n && frozen; ++v) {
      if (states[v] == BankState::Bankrupted) continue;
      for (const auto& [u, w] : net.in_neighbors(v)) {
        if (states[u] != BankState::Exposed) {
          frozen = false;
          break;
        }
      }
    }
    if (frozen) break;
  }

  run.stop_step = config.max_steps;
  run.hit_cap = true;
  return run;
}

struct EnsembleResult {
  double bankrupted_fraction_mean = 0.0;
  double bankrupted_fraction_std = 0.0;
  double liquidity_loss_mean = 0.0;
  double liquidity_loss_std = 0.0;
  std::vector<double> per_bank_default_frequency;
  double mean_stop_step = 0.0;
  double fraction_hitting_cap = 0.0;
  // Raw per-realization series, in realization order.
  std::vector<double> realization_bankrupted_fraction;
  std::vector<double> realization_liquidity_loss;
};

inline EnsembleResult simulate_ensemble(const QuarterlyNetwork& net, const SimConfig& config) {
  if (config.n_realizations < 1) throw std::invalid_argument("n_realizations must be >= 1");
  if (config.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  seed_bank_count(config.seed_density, net.n_banks());  // validate up front

  const int n = net.n_banks();
  const int runs = config.n_realizations;
  const double total_out = net.total_out_strength();

  unsigned hw = std::thread::hardware_concurrency();
  const int n_threads =
      config.threads > 0 ? config.threads : static_cast<int>(hw > 0 ? hw : 1);
  const int used_threads = std::min(n_threads, runs);

  std::vector<double> bankrupted(runs), liq_loss(runs);
  std::vector<int> stop_steps(runs);
  std::vector<std::uint8_t> capped(runs);
  std::vector<std::vector<std::uint32_t>> bank_defaults(used_threads,
                                                        std::vector<std::uint32_t>(n, 0));

  auto work = [&](int tid, int begin, int end) {
    for (int r = begin; r < end; ++r) {
      const RunRecord run = simulate_once(net, config, static_cast<std::uint64_t>(r));
      int n_bankrupt = 0;
      double lost = 0.0;
      for (int i = 0; i < n; ++i) {
        if (run.final_states[i] == BankState::Bankrupted) {
          ++n_bankrupt;
          lost += net.out_strength(i);
          ++bank_defaults[tid][i];
        }
      }
      bankrupted[r] = static_cast<double>(n_bankrupt) / n;
      liq_loss[r] = total_out > 0.0 ? lost / total_out : 0.0;
      stop_steps[r] = run.stop_step;
      capped[r] = run.hit_cap ? 1 : 0;
    }
  };

  if (used_threads <= 1) {
    work(0, 0, runs);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (runs + used_threads - 1) / used_threads;
    for (int t = 0; t < used_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(runs, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, t, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult res;
  res.realization_bankrupted_fraction = std::move(bankrupted);
  res.realization_liquidity_loss = std::move(liq_loss);
  res.bankrupted_fraction_mean = mean(res.realization_bankrupted_fraction);
  res.bankrupted_fraction_std = sample_std(res.realization_bankrupted_fraction);
  res.liquidity_loss_mean = mean(res.realization_liquidity_loss);
  res.liquidity_loss_std = sample_std(res.realization_liquidity_loss);
  res.per_bank_default_frequency.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t defaults = 0;
    for (int t = 0; t < used_threads; ++t) defaults += bank_defaults[t][i];
    res.per_bank_default_frequency[i] = static_cast<double>(defaults) / runs;
  }
  double stop_sum = 0.0;
  long cap_count = 0;
  for (int r = 0; r < runs; ++r) {
    stop_sum += stop_steps[r];
    cap_count += capped[r];
  }
  res.mean_stop_step = stop_sum / runs;
  res.fraction_hitting_cap = static_cast<double>(cap_count) / runs;
  return res;
}

// Pearson correlation between per-bank default frequency and a bank feature.
inline double feature_risk_correlation(const std::vector<double>& default_frequency,
                                       const std::vector<double>& feature) {
  return pearson_correlation(default_frequency, feature);
}

}  // namespace liqnet
