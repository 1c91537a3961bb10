#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "mabcs/env_model.hpp"

namespace mabcs {

/// Model-update and model-upload time of one client, in seconds. The
/// element-wise bandit feeds shifted values through the same arithmetic, so
/// negative entries are tolerated here.
struct TimePair {
  double t_update_s = 0.0;
  double t_upload_s = 0.0;

  friend bool operator==(const TimePair&, const TimePair&) = default;
};

using TimeTable = std::map<ClientId, TimePair>;

/// Looks up `k`; throws InternalError when absent.
const TimePair& time_of(const TimeTable& times, ClientId k);

/// Distribution time: max upload time over `selection`, 0 for an empty one.
double distribution_time(const TimeTable& times, std::span<const ClientId> selection);

/// Increase of the round time when `k` is appended to `selection`, whose
/// accumulated round time is `elapsed`.
double t_inc(std::span<const ClientId> selection, double elapsed, const TimeTable& times,
             ClientId k);

/// f(S, t, k): evaluation value of candidate k given the current ordered
/// selection S and its accumulated estimated round time t.
using Scorer = std::function<double(std::span<const ClientId>, double, ClientId)>;

struct Evaluation {
  int iteration = 0;
  ClientId client_id = 0;
  double score = 0.0;
};

struct SelectionResult {
  std::vector<ClientId> ordered_selection;
  double estimated_round_time_s = 0.0;
  /// Every score computed, grouped by iteration in ascending client order.
  std::vector<Evaluation> evaluation_trace;
};

/// Greedy client selection: repeatedly moves the highest-scoring remaining
/// candidate into the selection until `s_round` clients are chosen or the pool
/// is exhausted. The scorer is re-evaluated against the current selection on
/// every iteration; ties go to the lowest client id. The estimated round time
/// accumulates t_inc over `estimation_times`.
SelectionResult greedy_select(std::span<const ClientId> candidates, const Scorer& scorer,
                              int s_round, const TimeTable& estimation_times);

/// Increment contributed by each position when replaying `order` against
/// `times`; the increments sum to actual_round_time.
std::vector<double> replay_increments(std::span<const ClientId> order, const TimeTable& times);

double actual_round_time(std::span<const ClientId> order, const TimeTable& actual_times);

/// Event-driven makespan of the same round: distribution to every selected
/// client, parallel local updates, then sequential uploads in selection order.
double event_oracle_makespan(std::span<const ClientId> order, const TimeTable& actual_times);

}  // namespace mabcs
