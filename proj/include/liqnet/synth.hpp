#pragma once
// Seeded synthetic transaction-log generator with a planted core-periphery
// block structure and a three-phase regime schedule (pre-crisis, crisis,
// post-crisis). Produces logs in the standard transaction CSV shape so the
// whole pipeline can run without proprietary market data.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "liqnet/calendar.hpp"
#include "liqnet/rng.hpp"
#include "liqnet/transactions.hpp"

namespace liqnet {

struct RegimePhase {
  Quarter from;
  Quarter to;  // inclusive
  double activity = 1.0;   // scales link probabilities
  double attrition = 0.0;  // fraction of banks sitting out a quarter
};

struct SynthSpec {
  int n_banks = 100;
  double core_fraction = 0.15;
  // Block link probabilities: core->core, core->periphery, periphery->core,
  // periphery->periphery.
  double p_cc = 0.9, p_cp = 0.15, p_pc = 0.15, p_pp = 0.01;
  // Log-normal weight parameters per block, same order; money in millions.
  std::array<double, 4> mu_w = {3.0, 1.5, 1.5, 0.5};
  std::array<double, 4> sigma_w = {0.8, 0.7, 0.7, 0.5};
  std::vector<Quarter> quarters;
  std::vector<RegimePhase> regimes;
  std::uint64_t rng_seed = 0;
  int min_active = 10;

  int core_size() const { return static_cast<int>(std::ceil(core_fraction * n_banks)); }

  static std::string bank_id(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "BK%04d", index);
    return buf;
  }

  // Banks 0 .. core_size-1 are the planted core.
  std::vector<std::string> planted_core_ids() const {
    std::vector<std::string> ids;
    for (int i = 0; i < core_size(); ++i) ids.push_back(bank_id(i));
    return ids;
  }

  void validate() const {
    if (n_banks < 2) throw std::invalid_argument("synth: need at least 2 banks");
    if (!(core_fraction > 0.0 && core_fraction < 1.0))
      throw std::invalid_argument("synth: core fraction must lie in (0,1)");
    for (double p : {p_cc, p_cp, p_pc, p_pp}) {
      if (p < 0.0 || p > 1.0) throw std::invalid_argument("synth: block probability outside [0,1]");
    }
    if (quarters.empty()) throw std::invalid_argument("synth: no quarters");
    for (const auto& r : regimes) {
      if (r.to < r.from) throw std::invalid_argument("synth: regime range reversed");
      if (r.activity < 0.0) throw std::invalid_argument("synth: negative activity");
      if (r.attrition < 0.0 || r.attrition >= 1.0)
        throw std::invalid_argument("synth: attrition outside [0,1)");
    }
    for (const Quarter& q : quarters) {
      if (!std::any_of(regimes.begin(), regimes.end(),
                       [&](const RegimePhase& r) { return !(q < r.from) && !(r.to < q); })) {
        throw std::invalid_argument("synth: quarter " + q.label() + " not covered by any regime");
      }
    }
  }

  const RegimePhase& regime_of(Quarter q) const {
    for (const auto& r : regimes) {
      if (!(q < r.from) && !(r.to < q)) return r;
    }
    throw std::invalid_argument("synth: quarter " + q.label() + " not covered by any regime");
  }

  // 2005Q1-2011Q4 with the crisis window 2007Q3-2009Q1 at reduced activity
  // and a further-shrunk post-crisis market.
  static SynthSpec defaults(std::uint64_t seed) {
    SynthSpec spec;
    spec.rng_seed = seed;
    Quarter q{2005, 1};
    const Quarter last{2011, 4};
    while (!(last < q)) {
      spec.quarters.push_back(q);
      q = q.next();
    }
    spec.regimes = {
        RegimePhase{{2005, 1}, {2007, 2}, 1.0, 0.0},
        RegimePhase{{2007, 3}, {2009, 1}, 0.55, 0.10},
        RegimePhase{{2009, 2}, {2011, 4}, 0.45, 0.25},
    };
    return spec;
  }
};

inline std::vector<TransactionRecord> generate(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 engine(rng::mix(spec.rng_seed, 0x53594e54ULL));  // "SYNT"
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n = spec.n_banks;
  const int n_core = spec.core_size();
  auto block = [&](int i, int j) {
    const bool ic = i < n_core, jc = j < n_core;
    if (ic && jc) return 0;
    if (ic) return 1;
    if (jc) return 2;
    return 3;
  };
  const std::array<double, 4> p_block = {spec.p_cc, spec.p_cp, spec.p_pc, spec.p_pp};

  std::vector<TransactionRecord> records;
  for (const Quarter& quarter : spec.quarters) {
    const RegimePhase& regime = spec.regime_of(quarter);

    // Active set for the quarter; topped up deterministically if attrition
    // bites too hard.
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
      if (unit(engine) >= regime.attrition) active.push_back(i);
    }
    for (int i = 0; i < n && static_cast<int>(active.size()) < spec.min_active; ++i) {
      if (std::find(active.begin(), active.end(), i) == active.end()) active.push_back(i);
    }
    std::sort(active.begin(), active.end());

    std::vector<TransactionRecord> quarter_records;
    const int days = quarter.days_in_quarter();
    for (int i : active) {
      for (int j : active) {
        if (i == j) continue;
        const int blk = block(i, j);
        const double p = std::min(1.0, p_block[blk] * regime.activity);
        if (unit(engine) >= p) continue;
        std::lognormal_distribution<double> weight_dist(spec.mu_w[blk], spec.sigma_w[blk]);
        const double weight = weight_dist(engine);
        // Split the quarterly volume into 1-5 overnight contracts.
        const int pieces = 1 + static_cast<int>(engine() % 5);
        std::array<double, 5> gaps{};
        double gap_sum = 0.0;
        for (int k = 0; k < pieces; ++k) {
          gaps[k] = 0.05 - std::log(1.0 - unit(engine));  // strictly positive parts
          gap_sum += gaps[k];
        }
        for (int k = 0; k < pieces; ++k) {
          TransactionRecord rec;
          rec.date = quarter.date_at(static_cast<int>(engine() % days));
          rec.time_s = 9 * 3600 + static_cast<int>(engine() % (8 * 3600));
          rec.lender_id = SynthSpec::bank_id(i);
          rec.borrower_id = SynthSpec::bank_id(j);
          rec.amount = weight * gaps[k] / gap_sum;
          rec.rate = 2.0 + 2.0 * unit(engine);
          rec.maturity = Maturity::ON;
          quarter_records.push_back(std::move(rec));
        }
      }
    }
    std::sort(quarter_records.begin(), quarter_records.end(), [](const auto& a, const auto& b) {
      return std::tie(a.date, a.time_s, a.lender_id, a.borrower_id, a.amount) <
             std::tie(b.date, b.time_s, b.lender_id, b.borrower_id, b.amount);
    });
    records.insert(records.end(), quarter_records.begin(), quarter_records.end());
  }
  return records;
}

}  // namespace liqnet
