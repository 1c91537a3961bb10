#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mabcs/env_model.hpp"
#include "mabcs/scheduling.hpp"
#include "mabcs/strategies.hpp"

namespace mabcs {

struct RunConfig {
  EnvConfig env;
  StrategyConfig strategy;
  /// Fraction C of clients asked for resource information each round.
  double candidate_fraction = 0.1;
  int s_round = 5;
  int rounds = 500;
  std::uint64_t master_seed = 1;
};

/// Throws ConfigError on an invalid configuration. Returns human-readable
/// warnings for legal but suspicious settings.
std::vector<std::string> validate(const RunConfig& cfg);

/// ceil(K * C), robust to C * K landing a rounding error above an integer.
int candidate_count(int clients, double fraction);

/// Uniform sample without replacement of candidate_count(K, C) ids, ascending.
/// Keyed by (master_seed, round) only.
std::vector<ClientId> sample_candidates(std::uint64_t master_seed, int round_index, int clients,
                                        double fraction);

/// Score of one candidate at the first greedy iteration of a round (S empty).
struct ScoreSample {
  ClientId client_id = 0;
  double score = 0.0;
  std::int64_t n_selected = 0;
};

struct RoundRecord {
  int round_index = 0;
  std::vector<ClientId> candidate_ids;
  std::vector<ClientId> ordered_selection;
  double estimated_round_time_s = 0.0;
  double actual_round_time_s = 0.0;
  double cumulative_time_s = 0.0;
  std::vector<Observation> observations;
  std::vector<ScoreSample> scores;
  /// Every client's resources this round, selected or not.
  std::vector<ResourceRealization> realizations;
};

struct RunMetadata {
  std::string run_id;
  StrategyKind strategy = StrategyKind::kNaiveFedCS;
  std::optional<double> eta;
  std::uint64_t master_seed = 0;
};

/// Canonical text for an eta value: shortest round-trip decimal, or "none".
std::string format_eta(const std::optional<double>& eta);

/// "<strategy>_eta-<eta>_seed-<seed>"
std::string make_run_id(StrategyKind strategy, const std::optional<double>& eta,
                        std::uint64_t seed);

struct RunLedger {
  RunMetadata meta;
  std::vector<ClientProfile> population;
  std::vector<RoundRecord> rounds;
  StrategyState final_state{1};
};

std::vector<ClientProfile> make_population(const RunConfig& cfg);

/// One protocol round: resource request, selection, execution with this
/// round's realized resources, and the statistics update for selected clients.
RoundRecord run_round(StrategyState& state, const std::vector<ClientProfile>& profiles,
                      const RunConfig& cfg, int round_index, double cumulative_before = 0.0);

RunLedger run_experiment(const RunConfig& cfg);

}  // namespace mabcs
