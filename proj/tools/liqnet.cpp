// liqnet command line: synth -> ingest -> metrics/coreperiphery -> simulate
// -> null -> regress, plus a report bundler that emits plot-ready CSV time
// series. Artifacts embed the producing configuration; rerunning with the
// same flags reproduces them byte for byte.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liqnet/core_periphery.hpp"
#include "liqnet/decm.hpp"
#include "liqnet/edb.hpp"
#include "liqnet/io.hpp"
#include "liqnet/metrics.hpp"
#include "liqnet/network.hpp"
#include "liqnet/panel.hpp"
#include "liqnet/stats.hpp"
#include "liqnet/synth.hpp"
#include "liqnet/transactions.hpp"

namespace {

using nlohmann::json;

std::vector<liqnet::QuarterlyNetwork> load_networks(const std::string& path) {
  auto in = liqnet::csv::open_input(path);
  return liqnet::read_networks_csv(in);
}

std::string meta_comment(const std::string& subcommand, const json& config) {
  return "liqnet v" + std::string(liqnet::kVersion) + " " + subcommand +
         " config=" + config.dump();
}

liqnet::ScenarioSpec scenario_from_flags(const std::string& name, const std::string& phi_beta,
                                         const std::string& psi_beta) {
  liqnet::ScenarioSpec scenario = liqnet::ScenarioSpec::by_name(name);
  auto parse_ab = [](const std::string& s, const char* flag) {
    double a = 0.0, b = 0.0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> a >> comma >> b) || comma != ',' || !(a > 0.0) || !(b > 0.0)) {
      throw CLI::ValidationError(flag, "expected 'a,b' with positive values");
    }
    return liqnet::ShapeFunction::beta(a, b);
  };
  bool custom = false;
  if (!phi_beta.empty()) {
    scenario.phi = parse_ab(phi_beta, "--phi-beta");
    custom = true;
  }
  if (!psi_beta.empty()) {
    scenario.psi = parse_ab(psi_beta, "--psi-beta");
    custom = true;
  }
  if (custom) scenario.name = "custom(" + scenario.phi.describe() + "," + scenario.psi.describe() + ")";
  return scenario;
}

json scenario_json(const liqnet::ScenarioSpec& s) {
  return json{{"name", s.name}, {"phi", s.phi.describe()}, {"psi", s.psi.describe()}};
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
  std::uint64_t seed = 0;
  std::string out;
  int banks = 100;
  double core_fraction = 0.15;
  double p_cc = 0.9, p_cp = 0.15, p_pc = 0.15, p_pp = 0.01;
  std::vector<std::string> regimes;  // from:to:activity:attrition
  std::string from_q = "2005Q1", to_q = "2011Q4";
};

int run_synth(const SynthArgs& args) {
  liqnet::SynthSpec spec = liqnet::SynthSpec::defaults(args.seed);
  spec.n_banks = args.banks;
  spec.core_fraction = args.core_fraction;
  spec.p_cc = args.p_cc;
  spec.p_cp = args.p_cp;
  spec.p_pc = args.p_pc;
  spec.p_pp = args.p_pp;
  spec.quarters.clear();
  for (liqnet::Quarter q = liqnet::Quarter::parse(args.from_q),
                       last = liqnet::Quarter::parse(args.to_q);
       !(last < q); q = q.next()) {
    spec.quarters.push_back(q);
  }
  if (!args.regimes.empty()) {
    spec.regimes.clear();
    for (const std::string& r : args.regimes) {
      std::istringstream is(r);
      std::string from, to, act, att;
      if (!std::getline(is, from, ':') || !std::getline(is, to, ':') ||
          !std::getline(is, act, ':') || !std::getline(is, att, ':')) {
        throw CLI::ValidationError("--regime", "expected FROM:TO:ACTIVITY:ATTRITION");
      }
      spec.regimes.push_back(liqnet::RegimePhase{liqnet::Quarter::parse(from),
                                                 liqnet::Quarter::parse(to), std::stod(act),
                                                 std::stod(att)});
    }
  }

  const std::vector<liqnet::TransactionRecord> records = liqnet::generate(spec);
  json config{{"seed", args.seed},          {"banks", spec.n_banks},
              {"core_fraction", spec.core_fraction}, {"p_cc", spec.p_cc},
              {"p_cp", spec.p_cp},          {"p_pc", spec.p_pc},
              {"p_pp", spec.p_pp},          {"from", args.from_q},
              {"to", args.to_q}};
  json regimes = json::array();
  for (const auto& r : spec.regimes) {
    regimes.push_back(json{{"from", r.from.label()},
                           {"to", r.to.label()},
                           {"activity", r.activity},
                           {"attrition", r.attrition}});
  }
  config["regimes"] = regimes;
  auto out = liqnet::csv::open_output(args.out);
  liqnet::write_transactions_csv(out, records, {meta_comment("synth", config)});
  std::cout << "synth: wrote " << records.size() << " transactions to " << args.out << "\n";
  return 0;
}

// --------------------------------------------------------------- ingest ----

int run_ingest(const std::string& in_path, const std::string& out_path,
               const std::string& on_invalid) {
  auto in = liqnet::csv::open_input(in_path);
  const liqnet::IngestResult parsed = liqnet::read_transactions_csv(in);
  for (const auto& rej : parsed.rejects) {
    std::cerr << "ingest: line " << rej.line_no << ": rejected: " << rej.reason << "\n";
  }
  if (!parsed.rejects.empty() && on_invalid == "error") {
    std::cerr << "ingest: " << parsed.rejects.size() << " malformed record(s) in " << in_path
              << "\n";
    return 1;
  }
  const std::vector<liqnet::QuarterlyNetwork> nets =
      liqnet::build_quarterly_networks(parsed.records);
  json config{{"in", in_path}, {"on_invalid", on_invalid}};
  auto out = liqnet::csv::open_output(out_path);
  liqnet::write_networks_csv(out, nets, {meta_comment("ingest", config)});
  std::cout << "ingest: " << parsed.records.size() << " records ("
            << parsed.rejects.size() << " rejected) -> " << nets.size() << " quarterly networks\n";
  return 0;
}

// -------------------------------------------------------------- metrics ----

int run_metrics(const std::string& networks_path, const std::string& out_network,
                const std::string& out_banks) {
  const auto nets = load_networks(networks_path);
  std::vector<std::pair<liqnet::Quarter, liqnet::NetworkMetrics>> net_rows;
  std::vector<std::pair<liqnet::Quarter,
                        std::pair<std::vector<std::string>, std::vector<liqnet::BankMetrics>>>>
      bank_rows;
  for (const auto& net : nets) {
    net_rows.emplace_back(net.quarter(), liqnet::network_metrics(net));
    bank_rows.emplace_back(net.quarter(),
                           std::make_pair(net.bank_ids(), liqnet::bank_metrics(net)));
  }
  json config{{"networks", networks_path},
              {"skewness_estimator", "population (biased) g1"},
              {"betweenness_normalization", "(N-1)(N-2)"}};
  {
    auto out = liqnet::csv::open_output(out_network);
    liqnet::write_network_metrics_csv(out, net_rows, {meta_comment("metrics", config)});
  }
  {
    auto out = liqnet::csv::open_output(out_banks);
    liqnet::write_bank_metrics_csv(out, bank_rows, {meta_comment("metrics", config)});
  }
  std::cout << "metrics: " << nets.size() << " quarters -> " << out_network << ", " << out_banks
            << "\n";
  return 0;
}

// -------------------------------------------------------- coreperiphery ----

int run_coreperiphery(const std::string& networks_path, const std::string& out_path,
                      std::uint64_t seed, int restarts) {
  const auto nets = load_networks(networks_path);
  std::vector<std::pair<liqnet::Quarter, std::map<std::string, int>>> rows;
  for (const auto& net : nets) {
    const liqnet::CorePeripheryPartition part = liqnet::fit_core_periphery(net, seed, restarts);
    std::map<std::string, int> table;
    for (int i = 0; i < net.n_banks(); ++i) table[net.bank_ids()[i]] = part.coreness[i];
    rows.emplace_back(net.quarter(), std::move(table));
    std::cout << net.quarter().label() << ": core " << part.core_set.size() << "/"
              << net.n_banks() << " error " << part.error_score << "\n";
  }
  json config{{"networks", networks_path}, {"seed", seed}, {"restarts", restarts}};
  auto out = liqnet::csv::open_output(out_path);
  liqnet::write_coreness_csv(out, rows, {meta_comment("coreperiphery", config)});
  return 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
  std::string networks, out_json, out_frequency;
  std::string scenario = "lc-ld";
  std::string phi_beta, psi_beta;
  double seed_density = 0.01;
  int realizations = 5000;
  int max_steps = 100;
  std::uint64_t rng_seed = 0;
  int threads = 0;
};

json ensemble_json(const liqnet::EnsembleResult& res) {
  return json{{"bankrupted_fraction_mean", res.bankrupted_fraction_mean},
              {"bankrupted_fraction_std", res.bankrupted_fraction_std},
              {"liquidity_loss_mean", res.liquidity_loss_mean},
              {"liquidity_loss_std", res.liquidity_loss_std},
              {"mean_stop_step", res.mean_stop_step},
              {"fraction_hitting_cap", res.fraction_hitting_cap}};
}

int run_simulate(const SimulateArgs& args) {
  const auto nets = load_networks(args.networks);
  liqnet::SimConfig config;
  config.scenario = scenario_from_flags(args.scenario, args.phi_beta, args.psi_beta);
  config.seed_density = args.seed_density;
  config.n_realizations = args.realizations;
  config.max_steps = args.max_steps;
  config.rng_seed = args.rng_seed;
  config.threads = args.threads;

  json jconfig{{"networks", args.networks},
               {"scenario", scenario_json(config.scenario)},
               {"seed_density", config.seed_density},
               {"realizations", config.n_realizations},
               {"max_steps", config.max_steps},
               {"rng_seed", config.rng_seed}};
  json results = json::array();
  std::vector<std::pair<liqnet::Quarter, std::map<std::string, double>>> freq_rows;
  for (const auto& net : nets) {
    const liqnet::EnsembleResult res = liqnet::simulate_ensemble(net, config);
    json row = ensemble_json(res);
    row["quarter"] = net.quarter().label();
    row["n_banks"] = net.n_banks();
    results.push_back(std::move(row));
    std::map<std::string, double> freq;
    for (int i = 0; i < net.n_banks(); ++i)
      freq[net.bank_ids()[i]] = res.per_bank_default_frequency[i];
    freq_rows.emplace_back(net.quarter(), std::move(freq));
  }

  json doc{{"meta", liqnet::artifact_meta("simulate", jconfig)}, {"results", results}};
  {
    auto out = liqnet::csv::open_output(args.out_json);
    out << doc.dump(2) << "\n";
  }
  {
    auto out = liqnet::csv::open_output(args.out_frequency);
    liqnet::write_frequency_csv(out, freq_rows, {meta_comment("simulate", jconfig)});
  }
  std::cout << "simulate: " << nets.size() << " quarters, scenario " << config.scenario.name
            << " -> " << args.out_json << ", " << args.out_frequency << "\n";
  return 0;
}

// ----------------------------------------------------------------- null ----

struct NullArgs {
  std::string networks, out_json, samples_dir;
  std::string scenario = "lc-ld";
  std::string phi_beta, psi_beta;
  std::string quarter;  // optional filter
  double seed_density = 0.01;
  int realizations = 5000;
  int max_steps = 100;
  int n_null = 100;
  double quantum = 0.1;
  double tol = 1e-6;
  std::uint64_t rng_seed = 0;
  int threads = 0;
};

int run_null(const NullArgs& args) {
  auto nets = load_networks(args.networks);
  if (!args.quarter.empty()) {
    const liqnet::Quarter q = liqnet::Quarter::parse(args.quarter);
    std::erase_if(nets, [&](const auto& net) { return net.quarter() != q; });
    if (nets.empty()) throw std::runtime_error("null: no network for quarter " + args.quarter);
  }
  liqnet::SimConfig config;
  config.scenario = scenario_from_flags(args.scenario, args.phi_beta, args.psi_beta);
  config.seed_density = args.seed_density;
  config.n_realizations = args.realizations;
  config.max_steps = args.max_steps;
  config.rng_seed = args.rng_seed;
  config.threads = args.threads;
  liqnet::DecmOptions decm_opt;
  decm_opt.quantum = args.quantum;
  decm_opt.tol = args.tol;

  json jconfig{{"networks", args.networks},
               {"scenario", scenario_json(config.scenario)},
               {"seed_density", config.seed_density},
               {"realizations", config.n_realizations},
               {"max_steps", config.max_steps},
               {"n_null", args.n_null},
               {"quantum", args.quantum},
               {"tol", args.tol},
               {"rng_seed", args.rng_seed}};

  json results = json::array();
  for (const auto& net : nets) {
    const liqnet::NullRiskReport report =
        liqnet::null_risk_test(net, config, args.n_null, args.rng_seed, decm_opt);
    json row{{"quarter", net.quarter().label()},
             {"ks_statistic", report.ks_statistic},
             {"p_value", report.p_value},
             {"solver_residual", report.solver_residual},
             {"n_null", report.n_null},
             {"real_fractions", report.real_fractions},
             {"null_fractions", report.null_fractions}};
    results.push_back(std::move(row));
    std::cout << net.quarter().label() << ": KS D=" << report.ks_statistic
              << " p=" << report.p_value << " residual=" << report.solver_residual << "\n";
    if (!args.samples_dir.empty()) {
      std::filesystem::create_directories(args.samples_dir);
      const liqnet::DECMParameters params = liqnet::solve_decm(net, decm_opt);
      for (int s = 0; s < args.n_null; ++s) {
        const liqnet::QuarterlyNetwork sample = liqnet::sample_null(
            params, net.bank_ids(), net.quarter(), liqnet::rng::mix(args.rng_seed, s, 0));
        auto out = liqnet::csv::open_output(args.samples_dir + "/" + net.quarter().label() +
                                            "_null" + std::to_string(s) + ".csv");
        liqnet::write_networks_csv(out, {sample}, {meta_comment("null-sample", jconfig)});
      }
    }
  }
  json doc{{"meta", liqnet::artifact_meta("null", jconfig)}, {"results", results}};
  auto out = liqnet::csv::open_output(args.out_json);
  out << doc.dump(2) << "\n";
  return 0;
}

// -------------------------------------------------------------- regress ----

struct RegressArgs {
  std::string bank_metrics, coreness, frequency, out_json, out_table;
  std::string set = "binary";
  std::string crisis_quarter = "2008Q4";
  std::string time_effects = "const";
  std::string cluster_by = "bank";
};

std::string format_table(const liqnet::RegressionResult& res) {
  std::ostringstream os;
  os << std::left;
  const int name_w = 26;
  for (const auto& c : res.coefficients) {
    std::ostringstream est;
    est << std::fixed << std::setprecision(3) << c.estimate << c.stars;
    os << std::setw(name_w) << c.name << est.str() << "\n";
    std::ostringstream se;
    se << "(" << std::fixed << std::setprecision(3) << c.std_error << ")";
    os << std::setw(name_w) << "" << se.str() << "\n";
  }
  os << std::setw(name_w) << "N" << res.n_obs << "\n";
  os << std::setw(name_w) << "groups" << res.n_groups << "\n";
  os << std::setw(name_w) << "adj. R2 (within)"
     << std::fixed << std::setprecision(3) << res.adj_r_squared << "\n";
  if (!res.dropped.empty()) {
    os << "dropped (absorbed):";
    for (const auto& d : res.dropped) os << " " << d;
    os << "\n";
  }
  os << "* p<0.05, ** p<0.01, *** p<0.001; cluster-adjusted by " << res.cluster_dimension << "\n";
  return os.str();
}

int run_regress(const RegressArgs& args) {
  std::map<liqnet::Quarter, std::map<std::string, liqnet::BankMetrics>> metrics;
  {
    auto in = liqnet::csv::open_input(args.bank_metrics);
    metrics = liqnet::read_bank_metrics_csv(in);
  }
  std::map<liqnet::Quarter, std::map<std::string, int>> coreness;
  {
    auto in = liqnet::csv::open_input(args.coreness);
    coreness = liqnet::read_coreness_csv(in);
  }
  std::map<liqnet::Quarter, std::map<std::string, double>> frequency;
  {
    auto in = liqnet::csv::open_input(args.frequency);
    frequency = liqnet::read_frequency_csv(in);
  }
  std::string mismatch;
  for (const auto& [q, t] : metrics) {
    if (!coreness.count(q)) mismatch += " " + q.label() + "(coreness)";
    if (!frequency.count(q)) mismatch += " " + q.label() + "(frequency)";
  }
  for (const auto& [q, t] : coreness)
    if (!metrics.count(q)) mismatch += " " + q.label() + "(metrics)";
  for (const auto& [q, t] : frequency)
    if (!metrics.count(q)) mismatch += " " + q.label() + "(metrics)";
  if (!mismatch.empty()) throw std::runtime_error("regress: quarters missing from inputs:" + mismatch);

  std::vector<liqnet::PanelQuarterInput> inputs;
  for (const auto& [q, table] : metrics) {
    liqnet::PanelQuarterInput in;
    in.quarter = q;
    in.metrics = table;
    in.coreness = coreness.at(q);
    in.default_frequency = frequency.at(q);
    inputs.push_back(std::move(in));
  }
  const liqnet::RegressorSet set =
      args.set == "weighted" ? liqnet::RegressorSet::weighted : liqnet::RegressorSet::binary;
  const liqnet::PanelDataset panel =
      liqnet::build_panel(inputs, set, liqnet::Quarter::parse(args.crisis_quarter));

  liqnet::FeOptions opt;
  opt.cluster_by =
      args.cluster_by == "quarter" ? liqnet::ClusterBy::quarter : liqnet::ClusterBy::bank;
  opt.time_effects = args.time_effects == "dummies" ? liqnet::TimeEffects::quarter_dummies
                                                    : liqnet::TimeEffects::constant;
  const liqnet::RegressionResult res = liqnet::fe_regression(panel, opt);

  json jconfig{{"bank_metrics", args.bank_metrics},
               {"coreness", args.coreness},
               {"frequency", args.frequency},
               {"set", args.set},
               {"crisis_quarter", args.crisis_quarter},
               {"time_effects", args.time_effects},
               {"cluster_by", args.cluster_by},
               {"y_unit", res.y_unit}};
  json coeffs = json::array();
  for (const auto& c : res.coefficients) {
    coeffs.push_back(json{{"name", c.name},
                          {"estimate", c.estimate},
                          {"std_error", c.std_error},
                          {"z", c.z},
                          {"p_value", c.p_value},
                          {"stars", c.stars}});
  }
  json doc{{"meta", liqnet::artifact_meta("regress", jconfig)},
           {"coefficients", coeffs},
           {"dropped", res.dropped},
           {"r_squared_within", res.r_squared_within},
           {"adj_r_squared", res.adj_r_squared},
           {"n_obs", res.n_obs},
           {"n_groups", res.n_groups},
           {"min_group_size", res.min_group_size},
           {"max_group_size", res.max_group_size}};
  {
    auto out = liqnet::csv::open_output(args.out_json);
    out << doc.dump(2) << "\n";
  }
  const std::string table = format_table(res);
  if (!args.out_table.empty()) {
    auto out = liqnet::csv::open_output(args.out_table);
    out << table;
  }
  std::cout << table;
  return 0;
}

// --------------------------------------------------------------- report ----

struct ReportArgs {
  std::string network_metrics, networks, coreness, out_dir;
  std::vector<std::string> simulate_json;
};

int run_report(const ReportArgs& args) {
  namespace fs = std::filesystem;
  fs::create_directories(args.out_dir);
  json jconfig{{"network_metrics", args.network_metrics},
               {"networks", args.networks},
               {"coreness", args.coreness},
               {"simulate_json", args.simulate_json}};
  const std::string comment = meta_comment("report", jconfig);

  {  // Network metric time series with 5-point moving averages.
    auto in = liqnet::csv::open_input(args.network_metrics);
    const auto rows = liqnet::read_network_metrics_csv(in);
    std::vector<double> density, skew, vpb, rec, clu, eff;
    for (const auto& r : rows) {
      density.push_back(r.metrics.density);
      skew.push_back(r.metrics.degree_skewness.value_or(0.0));
      vpb.push_back(r.metrics.volume_per_bank);
      rec.push_back(r.metrics.reciprocity);
      clu.push_back(r.metrics.clustering);
      eff.push_back(r.metrics.efficiency);
    }
    const auto ma = [](const std::vector<double>& v) { return liqnet::moving_average(v, 5); };
    const auto d5 = ma(density), s5 = ma(skew), v5 = ma(vpb), r5 = ma(rec), c5 = ma(clu),
               e5 = ma(eff);
    auto out = liqnet::csv::open_output(args.out_dir + "/network_timeseries.csv");
    out << "# " << comment << "\n";
    out << "quarter,density,density_ma5,degree_skewness,degree_skewness_ma5,volume_per_bank,"
           "volume_per_bank_ma5,reciprocity,reciprocity_ma5,clustering,clustering_ma5,"
           "efficiency,efficiency_ma5\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      using liqnet::csv::format_double;
      out << rows[i].quarter.label() << ',' << format_double(density[i]) << ','
          << format_double(d5[i]) << ',' << format_double(skew[i]) << ',' << format_double(s5[i])
          << ',' << format_double(vpb[i]) << ',' << format_double(v5[i]) << ','
          << format_double(rec[i]) << ',' << format_double(r5[i]) << ',' << format_double(clu[i])
          << ',' << format_double(c5[i]) << ',' << format_double(eff[i]) << ','
          << format_double(e5[i]) << '\n';
    }
  }

  if (!args.networks.empty() && !args.coreness.empty()) {
    // Core/periphery block decomposition of N_t, L_t, V_t.
    const auto nets = load_networks(args.networks);
    auto in = liqnet::csv::open_input(args.coreness);
    const auto coreness = liqnet::read_coreness_csv(in);
    auto out = liqnet::csv::open_output(args.out_dir + "/cp_decomposition.csv");
    out << "# " << comment << "\n";
    out << "quarter,banks_core,banks_periphery,links_cc,links_cp,links_pc,links_pp,"
           "volume_cc,volume_cp,volume_pc,volume_pp\n";
    for (const auto& net : nets) {
      const auto it = coreness.find(net.quarter());
      if (it == coreness.end())
        throw std::runtime_error("report: no coreness for " + net.quarter().label());
      std::vector<int> is_core(net.n_banks(), 0);
      int n_core = 0;
      for (int i = 0; i < net.n_banks(); ++i) {
        const auto bank_it = it->second.find(net.bank_ids()[i]);
        if (bank_it == it->second.end())
          throw std::runtime_error("report: no coreness for bank " + net.bank_ids()[i] + " in " +
                                   net.quarter().label());
        is_core[i] = bank_it->second;
        n_core += bank_it->second;
      }
      long links[4] = {0, 0, 0, 0};
      double volume[4] = {0.0, 0.0, 0.0, 0.0};
      for (const liqnet::Edge& e : net.edges()) {
        const int blk = (is_core[e.src] ? 0 : 2) + (is_core[e.dst] ? 0 : 1);
        ++links[blk];
        volume[blk] += e.weight;
      }
      using liqnet::csv::format_double;
      out << net.quarter().label() << ',' << n_core << ',' << net.n_banks() - n_core << ','
          << links[0] << ',' << links[1] << ',' << links[2] << ',' << links[3] << ','
          << format_double(volume[0]) << ',' << format_double(volume[1]) << ','
          << format_double(volume[2]) << ',' << format_double(volume[3]) << '\n';
    }
  }

  if (!args.simulate_json.empty()) {
    auto out = liqnet::csv::open_output(args.out_dir + "/risk_timeseries.csv");
    out << "# " << comment << "\n";
    out << "quarter,scenario,seed_density,bankrupted_fraction,bankrupted_fraction_ma5,"
           "liquidity_loss,liquidity_loss_ma5\n";
    for (const std::string& path : args.simulate_json) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open input file: " + path);
      const json doc = json::parse(in);
      const std::string scenario = doc["meta"]["config"]["scenario"]["name"];
      const double seed_density = doc["meta"]["config"]["seed_density"];
      std::vector<std::string> quarters;
      std::vector<double> bf, ll;
      for (const auto& row : doc["results"]) {
        quarters.push_back(row["quarter"]);
        bf.push_back(row["bankrupted_fraction_mean"]);
        ll.push_back(row["liquidity_loss_mean"]);
      }
      const auto bf5 = liqnet::moving_average(bf, 5);
      const auto ll5 = liqnet::moving_average(ll, 5);
      using liqnet::csv::format_double;
      for (std::size_t i = 0; i < quarters.size(); ++i) {
        out << quarters[i] << ',' << scenario << ',' << format_double(seed_density) << ','
            << format_double(bf[i]) << ',' << format_double(bf5[i]) << ',' << format_double(ll[i])
            << ',' << format_double(ll5[i]) << '\n';
      }
    }
  }
  std::cout << "report: wrote plot-ready series to " << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liqnet: interbank network construction, contagion simulation and risk analytics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file supplying flag defaults");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic transaction log");
  synth->add_option("--rng-seed", synth_args.seed, "generator seed")->required();
  synth->add_option("--out", synth_args.out, "output transactions CSV")->required();
  synth->add_option("--banks", synth_args.banks, "number of banks");
  synth->add_option("--core-fraction", synth_args.core_fraction, "planted core share");
  synth->add_option("--p-cc", synth_args.p_cc, "core->core link probability");
  synth->add_option("--p-cp", synth_args.p_cp, "core->periphery link probability");
  synth->add_option("--p-pc", synth_args.p_pc, "periphery->core link probability");
  synth->add_option("--p-pp", synth_args.p_pp, "periphery->periphery link probability");
  synth->add_option("--from", synth_args.from_q, "first quarter (e.g. 2005Q1)");
  synth->add_option("--to", synth_args.to_q, "last quarter (e.g. 2011Q4)");
  synth->add_option("--regime", synth_args.regimes,
                    "FROM:TO:ACTIVITY:ATTRITION phase (repeatable, replaces defaults)");

  std::string ingest_in, ingest_out, ingest_on_invalid = "error";
  CLI::App* ingest = app.add_subcommand("ingest", "build quarterly networks from transactions");
  ingest->add_option("--in", ingest_in, "transactions CSV")->required();
  ingest->add_option("--out", ingest_out, "output networks CSV")->required();
  ingest->add_option("--on-invalid", ingest_on_invalid, "error|skip malformed records")
      ->check(CLI::IsMember({"error", "skip"}));

  std::string metrics_networks, metrics_out_net, metrics_out_banks;
  CLI::App* metrics = app.add_subcommand("metrics", "network and per-bank statistics");
  metrics->add_option("--networks", metrics_networks, "networks CSV")->required();
  metrics->add_option("--out-network", metrics_out_net, "per-quarter metrics CSV")->required();
  metrics->add_option("--out-banks", metrics_out_banks, "long per-bank metrics CSV")->required();

  std::string cp_networks, cp_out;
  std::uint64_t cp_seed = 0;
  int cp_restarts = 20;
  CLI::App* cp = app.add_subcommand("coreperiphery", "fit discrete core-periphery partitions");
  cp->add_option("--networks", cp_networks, "networks CSV")->required();
  cp->add_option("--out", cp_out, "output coreness CSV")->required();
  cp->add_option("--rng-seed", cp_seed, "restart seed")->required();
  cp->add_option("--restarts", cp_restarts, "greedy restarts");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "EDB contagion ensemble per quarter");
  sim->add_option("--networks", sim_args.networks, "networks CSV")->required();
  sim->add_option("--scenario", sim_args.scenario, "lc-ld|lc-nld|nlc-nld")
      ->check(CLI::IsMember({"lc-ld", "lc-nld", "nlc-nld"}));
  sim->add_option("--phi-beta", sim_args.phi_beta, "a,b for a custom infection shape");
  sim->add_option("--psi-beta", sim_args.psi_beta, "a,b for a custom bankruptcy shape");
  sim->add_option("--seed-density", sim_args.seed_density, "initial distressed fraction");
  sim->add_option("--realizations", sim_args.realizations, "Monte Carlo realizations");
  sim->add_option("--max-steps", sim_args.max_steps, "step cap per realization");
  sim->add_option("--rng-seed", sim_args.rng_seed, "master seed")->required();
  sim->add_option("--threads", sim_args.threads, "worker threads (0 = hardware)");
  sim->add_option("--out-json", sim_args.out_json, "ensemble results JSON")->required();
  sim->add_option("--out-frequency", sim_args.out_frequency, "per-bank default frequency CSV")
      ->required();

  NullArgs null_args;
  CLI::App* null_cmd = app.add_subcommand("null", "max-entropy null ensemble risk test");
  null_cmd->add_option("--networks", null_args.networks, "networks CSV")->required();
  null_cmd->add_option("--quarter", null_args.quarter, "restrict to one quarter label");
  null_cmd->add_option("--scenario", null_args.scenario, "lc-ld|lc-nld|nlc-nld")
      ->check(CLI::IsMember({"lc-ld", "lc-nld", "nlc-nld"}));
  null_cmd->add_option("--phi-beta", null_args.phi_beta, "a,b for a custom infection shape");
  null_cmd->add_option("--psi-beta", null_args.psi_beta, "a,b for a custom bankruptcy shape");
  null_cmd->add_option("--seed-density", null_args.seed_density, "initial distressed fraction");
  null_cmd->add_option("--realizations", null_args.realizations, "realizations per network");
  null_cmd->add_option("--max-steps", null_args.max_steps, "step cap per realization");
  null_cmd->add_option("--n-null", null_args.n_null, "null networks in the ensemble");
  null_cmd->add_option("--quantum", null_args.quantum, "weight quantum (millions EUR)");
  null_cmd->add_option("--tol", null_args.tol, "solver residual tolerance");
  null_cmd->add_option("--rng-seed", null_args.rng_seed, "master seed")->required();
  null_cmd->add_option("--threads", null_args.threads, "worker threads (0 = hardware)");
  null_cmd->add_option("--out-json", null_args.out_json, "KS report JSON")->required();
  null_cmd->add_option("--emit-samples", null_args.samples_dir,
                       "directory for sampled null edge lists (optional)");

  RegressArgs reg_args;
  CLI::App* reg = app.add_subcommand("regress", "panel fixed-effects regression");
  reg->add_option("--metrics", reg_args.bank_metrics, "long per-bank metrics CSV")->required();
  reg->add_option("--coreness", reg_args.coreness, "coreness CSV")->required();
  reg->add_option("--frequency", reg_args.frequency, "default frequency CSV")->required();
  reg->add_option("--set", reg_args.set, "binary|weighted regressor set")
      ->check(CLI::IsMember({"binary", "weighted"}));
  reg->add_option("--crisis-quarter", reg_args.crisis_quarter, "first crisis-dummy quarter");
  reg->add_option("--time-effects", reg_args.time_effects, "const|dummies")
      ->check(CLI::IsMember({"const", "dummies"}));
  reg->add_option("--cluster-by", reg_args.cluster_by, "bank|quarter")
      ->check(CLI::IsMember({"bank", "quarter"}));
  reg->add_option("--out-json", reg_args.out_json, "results JSON")->required();
  reg->add_option("--out-table", reg_args.out_table, "aligned text table (optional)");

  ReportArgs rep_args;
  CLI::App* rep = app.add_subcommand("report", "plot-ready CSV time series bundle");
  rep->add_option("--network-metrics", rep_args.network_metrics, "per-quarter metrics CSV")
      ->required();
  rep->add_option("--networks", rep_args.networks, "networks CSV (for CP decomposition)");
  rep->add_option("--coreness", rep_args.coreness, "coreness CSV (for CP decomposition)");
  rep->add_option("--simulate-json", rep_args.simulate_json,
                  "simulate JSON artifacts (repeatable)");
  rep->add_option("--out-dir", rep_args.out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_synth(synth_args);
    if (ingest->parsed()) return run_ingest(ingest_in, ingest_out, ingest_on_invalid);
    if (metrics->parsed()) return run_metrics(metrics_networks, metrics_out_net, metrics_out_banks);
    if (cp->parsed()) return run_coreperiphery(cp_networks, cp_out, cp_seed, cp_restarts);
    if (sim->parsed()) return run_simulate(sim_args);
    if (null_cmd->parsed()) return run_null(null_args);
    if (reg->parsed()) return run_regress(reg_args);
    if (rep->parsed()) return run_report(rep_args);
  } catch (const std::exception& e) {
    std::cerr << "liqnet: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
