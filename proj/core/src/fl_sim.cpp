#include "mabcs/fl_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace mabcs {

std::vector<std::string> validate(const RunConfig& cfg) {
  validate(cfg.env);
  validate(cfg.strategy);
  if (!(cfg.candidate_fraction > 0.0 && cfg.candidate_fraction <= 1.0))
    throw ConfigError("candidate_fraction must be in (0, 1]");
  if (cfg.s_round < 1) throw ConfigError("s_round must be >= 1");
  if (cfg.rounds < 0) throw ConfigError("rounds must be >= 0");

  std::vector<std::string> warnings;
  const int pool = candidate_count(cfg.env.clients, cfg.candidate_fraction);
  if (cfg.s_round > pool)
    warnings.push_back("s_round (" + std::to_string(cfg.s_round) +
                       ") exceeds the candidate pool (" + std::to_string(pool) +
                       "); every candidate will be selected");
  return warnings;
}

int candidate_count(int clients, double fraction) {
  const double exact = static_cast<double>(clients) * fraction;
  const int n = static_cast<int>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
  return std::clamp(n, 1, clients);
}

std::vector<ClientId> sample_candidates(std::uint64_t master_seed, int round_index, int clients,
                                        double fraction) {
  const int n = candidate_count(clients, fraction);
  std::vector<ClientId> ids(static_cast<std::size_t>(clients));
  std::iota(ids.begin(), ids.end(), 0);
  RngStream rng(master_seed, "candidates", {static_cast<std::uint64_t>(round_index)});
  // Partial Fisher-Yates.
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i, clients - 1));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }
  ids.resize(static_cast<std::size_t>(n));
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string format_eta(const std::optional<double>& eta) {
  if (!eta) return "none";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, *eta);
  return std::string(buf, res.ptr);
}

std::string make_run_id(StrategyKind strategy, const std::optional<double>& eta,
                        std::uint64_t seed) {
  return std::string(to_string(strategy)) + "_eta-" + format_eta(eta) + "_seed-" +
         std::to_string(seed);
}

std::vector<ClientProfile> make_population(const RunConfig& cfg) {
  RngStream rng(cfg.master_seed, "population", {});
  return init_population(rng, cfg.env);
}

RoundRecord run_round(StrategyState& state, const std::vector<ClientProfile>& profiles,
                      const RunConfig& cfg, int round_index, double cumulative_before) {
  RoundRecord record;
  record.round_index = round_index;
  record.candidate_ids = sample_candidates(cfg.master_seed, round_index,
                                           static_cast<int>(profiles.size()),
                                           cfg.candidate_fraction);

  // Resource request + client selection, on what the server currently knows.
  const TimeTable estimates = estimation_table(state, cfg.strategy, record.candidate_ids);
  const Scorer scorer = make_scorer(state, cfg.strategy, estimates);
  SelectionResult selection = greedy_select(record.candidate_ids, scorer, cfg.s_round, estimates);
  record.ordered_selection = std::move(selection.ordered_selection);
  record.estimated_round_time_s = selection.estimated_round_time_s;
  for (const Evaluation& e : selection.evaluation_trace) {
    if (e.iteration != 0) break;
    record.scores.push_back({e.client_id, e.score, state.client(e.client_id).n_selected});
  }

  // Execution with this round's actual resources.
  record.realizations =
      realize_round_resources(profiles, round_index, cfg.env, cfg.master_seed);
  TimeTable actual;
  for (ClientId k : record.ordered_selection) {
    const ResourceRealization& r = record.realizations[static_cast<std::size_t>(k)];
    actual.emplace(k, TimePair{r.t_update_s, r.t_upload_s});
  }
  const std::vector<double> increments = replay_increments(record.ordered_selection, actual);
  record.actual_round_time_s = std::accumulate(increments.begin(), increments.end(), 0.0);
  record.cumulative_time_s = cumulative_before + record.actual_round_time_s;

  for (std::size_t i = 0; i < record.ordered_selection.size(); ++i) {
    const ClientId k = record.ordered_selection[i];
    record.observations.push_back({k, actual.at(k), increments[i]});
  }
  state.update(record.observations);
  return record;
}

RunLedger run_experiment(const RunConfig& cfg) {
  validate(cfg);
  RunLedger ledger;
  ledger.meta = {make_run_id(cfg.strategy.kind, cfg.env.eta, cfg.master_seed), cfg.strategy.kind,
                 cfg.env.eta, cfg.master_seed};
  ledger.population = make_population(cfg);
  ledger.final_state = StrategyState(cfg.env.clients, cfg.strategy.window);
  ledger.rounds.reserve(static_cast<std::size_t>(cfg.rounds));
  double cumulative = 0.0;
  for (int r = 0; r < cfg.rounds; ++r) {
    ledger.rounds.push_back(run_round(ledger.final_state, ledger.population, cfg, r, cumulative));
    cumulative = ledger.rounds.back().cumulative_time_s;
  }
  return ledger;
}

}  // namespace mabcs
