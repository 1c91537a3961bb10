#include "mabcs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "mabcs/config.hpp"
#include "mabcs/metrics.hpp"

namespace mabcs {
namespace {

constexpr std::string_view kBaseline = "naive_fedcs";

int strategy_rank(const std::string& name) {
  const auto kind = parse_strategy_kind(name);
  return kind ? static_cast<int>(*kind) : 100;
}

// "none" sorts first, then numerically.
std::tuple<int, double, std::string> eta_rank(const std::string& eta) {
  if (eta == "none") return {0, 0.0, eta};
  try {
    return {1, std::stod(eta), eta};
  } catch (const std::exception&) {
    return {2, 0.0, eta};
  }
}

struct RunSummary {
  std::string strategy;
  std::string eta;
  std::uint64_t seed = 0;
  double final_cumulative_s = 0.0;
};

}  // namespace

RunLedger run_and_write(const RunConfig& cfg, const std::filesystem::path& dir,
                        RunOutputs outputs) {
  RunLedger ledger = run_experiment(cfg);
  std::filesystem::create_directories(dir);
  write_config(cfg, dir / "resolved-config.txt");
  write_rounds_csv(ledger, dir / "rounds.csv");
  if (outputs.scores) write_scores_csv(ledger, dir / "scores.csv");
  if (outputs.realizations) write_realizations_csv(ledger, dir / "realizations.csv");
  return ledger;
}

SweepSummary run_sweep(const SweepSpec& spec) {
  if (spec.seeds < 1) throw ConfigError("seeds must be >= 1");
  if (spec.etas.empty()) throw ConfigError("sweep needs at least one eta");
  if (spec.strategies.empty()) throw ConfigError("sweep needs at least one strategy");

  std::vector<StrategyKind> strategies = spec.strategies;
  if (std::find(strategies.begin(), strategies.end(), StrategyKind::kNaiveFedCS) ==
      strategies.end())
    strategies.insert(strategies.begin(), StrategyKind::kNaiveFedCS);

  std::vector<RunConfig> runs;
  for (const auto& eta : spec.etas)
    for (StrategyKind kind : strategies)
      for (int s = 0; s < spec.seeds; ++s) {
        RunConfig cfg = spec.base;
        cfg.env.eta = eta;
        cfg.strategy.kind = kind;
        cfg.master_seed = spec.base.master_seed + static_cast<std::uint64_t>(s);
        validate(cfg);
        runs.push_back(cfg);
      }

  std::filesystem::create_directories(spec.out_dir);
  unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(runs.size()));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        const RunConfig& cfg = runs[i];
        run_and_write(cfg, spec.out_dir / make_run_id(cfg.strategy.kind, cfg.env.eta, cfg.master_seed),
                      spec.outputs);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  SweepSummary summary = summarize_directory(spec.out_dir);
  write_summary_json(summary, spec.out_dir / "summary.json");
  return summary;
}

SweepSummary summarize_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const auto csv = entry.path() / "rounds.csv";
    if (std::filesystem::exists(csv)) files.push_back(csv);
  }
  std::sort(files.begin(), files.end());

  std::vector<RunSummary> runs;
  for (const auto& f : files) {
    const std::vector<RoundsRow> rows = read_rounds_csv(f);
    if (rows.empty()) continue;
    runs.push_back({rows.front().strategy, rows.front().eta, rows.front().seed,
                    rows.back().cumulative_s});
  }

  std::map<std::pair<std::string, std::uint64_t>, double> baseline;
  for (const RunSummary& r : runs)
    if (r.strategy == kBaseline) baseline[{r.eta, r.seed}] = r.final_cumulative_s;

  struct Accumulator {
    int n = 0;
    double cumulative = 0.0;
    double ratio = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Accumulator> cells;
  for (const RunSummary& r : runs) {
    if (r.strategy == kBaseline) continue;
    const auto it = baseline.find({r.eta, r.seed});
    if (it == baseline.end())
      throw std::runtime_error("no naive_fedcs run for eta=" + r.eta +
                               " seed=" + std::to_string(r.seed));
    const double ratio = time_difference(std::vector<double>{it->second},
                                          std::vector<double>{r.final_cumulative_s})
                              .final_reduction_ratio;
    Accumulator& acc = cells[{r.strategy, r.eta}];
    acc.n += 1;
    acc.cumulative += r.final_cumulative_s;
    acc.ratio += ratio;
  }

  SweepSummary summary;
  summary.runs = static_cast<int>(runs.size());
  for (const auto& [key, acc] : cells)
    summary.cells.push_back({key.first, key.second, acc.n, acc.cumulative / acc.n, acc.ratio / acc.n});
  std::sort(summary.cells.begin(), summary.cells.end(), [](const SummaryCell& a, const SummaryCell& b) {
    return std::make_tuple(eta_rank(a.eta), strategy_rank(a.strategy), a.strategy) <
           std::make_tuple(eta_rank(b.eta), strategy_rank(b.strategy), b.strategy);
  });
  return summary;
}

std::string summary_to_json(const SweepSummary& summary) {
  nlohmann::ordered_json j;
  j["baseline"] = kBaseline;
  j["runs"] = summary.runs;
  j["cells"] = nlohmann::ordered_json::array();
  for (const SummaryCell& c : summary.cells) {
    nlohmann::ordered_json cell;
    cell["strategy"] = c.strategy;
    cell["eta"] = c.eta;
    cell["seeds"] = c.seeds;
    cell["mean_final_cumulative_s"] = c.mean_final_cumulative_s;
    cell["mean_reduction_ratio"] = c.mean_reduction_ratio;
    j["cells"].push_back(std::move(cell));
  }
  return j.dump(2) + "\n";
}

void write_summary_json(const SweepSummary& summary, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << summary_to_json(summary);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mabcs
