// mabcs: federated-learning client-selection simulator.
//
//   mabcs simulate --config run.cfg --strategy elementwise_mab --seed 3 --out out/run
//   mabcs sweep --config run.cfg --etas none,1.5,1.99 --strategies all --seeds 10 --out out/sweep
//   mabcs summarize --dir out/sweep

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mabcs/config.hpp"
#include "mabcs/metrics.hpp"
#include "mabcs/sweep.hpp"

namespace {

constexpr const char* kStrategyNames =
    "naive_fedcs, extended_fedcs, naive_mab, elementwise_mab";

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

mabcs::StrategyKind strategy_or_throw(const std::string& name) {
  const auto kind = mabcs::parse_strategy_kind(name);
  if (!kind)
    throw CLI::ValidationError("--strategy",
                               "unknown strategy '" + name + "'; valid names: " + kStrategyNames);
  return *kind;
}

mabcs::RunConfig load_config(const std::string& path) {
  if (path.empty()) return mabcs::RunConfig{};
  return mabcs::parse_config(path);
}

void print_warnings(const mabcs::RunConfig& cfg) {
  for (const std::string& w : mabcs::validate(cfg)) std::cerr << "warning: " << w << '\n';
}

int simulate(const std::string& config_path, const std::string& strategy, std::uint64_t seed,
             bool seed_given, const std::string& out_dir, mabcs::RunOutputs outputs) {
  mabcs::RunConfig cfg = load_config(config_path);
  if (!strategy.empty()) cfg.strategy.kind = strategy_or_throw(strategy);
  if (seed_given) cfg.master_seed = seed;
  print_warnings(cfg);

  const mabcs::RunLedger ledger = mabcs::run_and_write(cfg, out_dir, outputs);
  const double final_s = ledger.rounds.empty() ? 0.0 : ledger.rounds.back().cumulative_time_s;

  std::cout << "final_cumulative_s " << mabcs::format_real(final_s) << '\n';
  std::cout << ledger.meta.run_id << ": " << ledger.rounds.size() << " rounds, "
            << cfg.s_round << " clients/round, final cumulative time "
            << mabcs::format_real(final_s) << " s -> " << out_dir << '\n';
  return 0;
}

int sweep(const std::string& config_path, const std::string& etas, const std::string& strategies,
          int seeds, const std::string& out_dir, unsigned threads, mabcs::RunOutputs outputs) {
  mabcs::SweepSpec spec;
  spec.base = load_config(config_path);
  print_warnings(spec.base);
  for (const std::string& e : split_list(etas)) {
    if (e == "none") {
      spec.etas.emplace_back(std::nullopt);
    } else {
      // Route through the config parser so eta gets the same validation.
      spec.etas.emplace_back(mabcs::parse_config_text("eta = " + e).env.eta);
    }
  }
  if (strategies == "all") {
    spec.strategies.assign(std::begin(mabcs::kAllStrategies), std::end(mabcs::kAllStrategies));
  } else {
    for (const std::string& s : split_list(strategies)) spec.strategies.push_back(strategy_or_throw(s));
  }
  spec.seeds = seeds;
  spec.out_dir = out_dir;
  spec.outputs = outputs;
  spec.threads = threads;

  const mabcs::SweepSummary summary = mabcs::run_sweep(spec);
  std::cout << summary.runs << " runs -> " << out_dir << '\n';
  for (const mabcs::SummaryCell& c : summary.cells)
    std::cout << c.strategy << " eta=" << c.eta << " mean_reduction_ratio "
              << mabcs::format_real(c.mean_reduction_ratio) << '\n';
  return 0;
}

int summarize(const std::string& dir) {
  const mabcs::SweepSummary summary = mabcs::summarize_directory(dir);
  mabcs::write_summary_json(summary, std::filesystem::path(dir) / "summary.json");
  std::cout << mabcs::summary_to_json(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Client-selection simulator for federated learning under fluctuating resources"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  mabcs::RunOutputs outputs;

  auto* sim = app.add_subcommand("simulate", "Run one (strategy, eta, seed) experiment");
  std::string strategy;
  std::uint64_t seed = 0;
  sim->add_option("--config", config_path, "Config file (key = value)")->check(CLI::ExistingFile);
  sim->add_option("--strategy", strategy, std::string("One of: ") + kStrategyNames);
  auto* seed_opt = sim->add_option("--seed", seed, "Master seed (overrides config)");
  sim->add_option("--out", out_dir, "Output directory")->required();
  sim->add_flag("--trace-scores", outputs.scores, "Also write scores.csv");
  sim->add_flag("--trace-realizations", outputs.realizations, "Also write realizations.csv");

  auto* sw = app.add_subcommand("sweep", "Run etas x strategies x seeds and summarize");
  std::string etas = "none,1.5,1.99";
  std::string strategies = "all";
  int seeds = 10;
  unsigned threads = 0;
  sw->add_option("--config", config_path, "Config file (key = value)")->check(CLI::ExistingFile);
  sw->add_option("--etas", etas, "Comma-separated eta values; 'none' disables fluctuation")
      ->capture_default_str();
  sw->add_option("--strategies", strategies, "Comma-separated strategy names or 'all'")
      ->capture_default_str();
  sw->add_option("--seeds", seeds, "Number of seeds, starting at the config's master_seed")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sw->add_option("--out", out_dir, "Output directory")->required();
  sw->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
  sw->add_flag("--trace-scores", outputs.scores, "Also write scores.csv per run");
  sw->add_flag("--trace-realizations", outputs.realizations, "Also write realizations.csv per run");

  auto* sm = app.add_subcommand("summarize", "Rebuild summary.json from a sweep directory");
  std::string dir;
  sm->add_option("--dir", dir, "Sweep output directory")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return simulate(config_path, strategy, seed, seed_opt->count() > 0, out_dir, outputs);
    if (sw->parsed()) return sweep(config_path, etas, strategies, seeds, out_dir, threads, outputs);
    if (sm->parsed()) return summarize(dir);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const mabcs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
