#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mabcs/fl_sim.hpp"

namespace mabcs {

struct RunOutputs {
  bool scores = false;
  bool realizations = false;
};

/// Runs `cfg` and writes rounds.csv (plus the requested traces) and
/// resolved-config.txt into `dir`, creating it if needed.
RunLedger run_and_write(const RunConfig& cfg, const std::filesystem::path& dir,
                        RunOutputs outputs = {});

struct SweepSpec {
  RunConfig base;
  std::vector<std::optional<double>> etas;
  std::vector<StrategyKind> strategies;
  /// Seeds used: base.master_seed, base.master_seed + 1, ...
  int seeds = 1;
  std::filesystem::path out_dir;
  RunOutputs outputs;
  /// 0: one worker per hardware thread.
  unsigned threads = 0;
};

/// One (strategy, eta) cell of a sweep summary.
struct SummaryCell {
  std::string strategy;
  std::string eta;
  int seeds = 0;
  double mean_final_cumulative_s = 0.0;
  /// Mean over seeds of (T_naive_fedcs - T_strategy) / T_naive_fedcs.
  double mean_reduction_ratio = 0.0;
};

struct SweepSummary {
  int runs = 0;
  std::vector<SummaryCell> cells;
};

/// Runs the cross product etas x strategies x seeds, one subdirectory per
/// run named by make_run_id, then writes summary.json. naive_fedcs is added
/// to the strategy list when missing, since every ratio is relative to it.
/// Runs execute concurrently; outputs do not depend on the thread count.
SweepSummary run_sweep(const SweepSpec& spec);

/// Rebuilds the summary from the rounds.csv files under `dir` alone.
/// Baseline rows are omitted from `cells` but counted in `runs`.
SweepSummary summarize_directory(const std::filesystem::path& dir);

std::string summary_to_json(const SweepSummary& summary);
void write_summary_json(const SweepSummary& summary, const std::filesystem::path& path);

}  // namespace mabcs
