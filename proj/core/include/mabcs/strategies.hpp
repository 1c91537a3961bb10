#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mabcs/scheduling.hpp"

namespace mabcs {

enum class StrategyKind { kNaiveFedCS, kExtendedFedCS, kNaiveMab, kElementwiseMab };

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::kNaiveFedCS, StrategyKind::kExtendedFedCS, StrategyKind::kNaiveMab,
    StrategyKind::kElementwiseMab};

/// naive_fedcs, extended_fedcs, naive_mab, elementwise_mab
std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view name);

struct StrategyConfig {
  StrategyKind kind = StrategyKind::kNaiveFedCS;
  double alpha = 1000.0;
  double beta = 50.0;
  int window = 5;
};

void validate(const StrategyConfig& cfg);

/// Magnitude of the tau value given to never-selected clients by the
/// element-wise scorer. Large enough to dominate any observed time / beta,
/// small enough that t_inc sums stay finite and well resolved.
inline constexpr double kUnexploredTauMagnitude = 1e9;

/// What the server knows about one client.
struct ClientStats {
  std::int64_t n_selected = 0;
  double mean_t_inc_s = 0.0;
  double mean_t_update_s = 0.0;
  double mean_t_upload_s = 0.0;
  /// Most recent observation last.
  std::deque<TimePair> window;
  /// Last observed times; (0, 0) until the client first participates.
  TimePair reported;
};

/// One selected client's outcome in a finished round.
struct Observation {
  ClientId client_id = 0;
  TimePair actual;
  double observed_t_inc_s = 0.0;
};

class StrategyState {
 public:
  explicit StrategyState(int clients, int window = 5);

  int clients() const noexcept { return static_cast<int>(stats_.size()); }
  int window_capacity() const noexcept { return window_; }
  const ClientStats& client(ClientId k) const;
  /// Sum of n_selected over all clients.
  std::int64_t total_selected() const noexcept { return total_selected_; }

  /// Records one round's observations. Throws InternalError on a duplicate
  /// or out-of-range client.
  void update(std::span<const Observation> observations);

 private:
  std::vector<ClientStats> stats_;
  int window_;
  std::int64_t total_selected_ = 0;
};

/// sqrt(ln(n_total) / (2 n_k)); +infinity for an arm never played.
double ucb_bonus(std::int64_t n_k, std::int64_t n_total);

/// Per-client time estimates each strategy feeds into t_inc.
TimePair reported_times(const ClientStats& s);
TimePair windowed_mean_times(const ClientStats& s);
TimePair tau_times(const ClientStats& s, std::int64_t n_total, double beta);

double score_naive_fedcs(const StrategyState& state, std::span<const ClientId> selection,
                         double elapsed, ClientId k);
double score_extended_fedcs(const StrategyState& state, std::span<const ClientId> selection,
                            double elapsed, ClientId k);
double score_naive_mab(const StrategyState& state, std::span<const ClientId> selection,
                       double elapsed, ClientId k, double alpha);
double score_elementwise_mab(const StrategyState& state, std::span<const ClientId> selection,
                             double elapsed, ClientId k, double beta);

/// Time table the strategy's greedy pass accumulates over, for the given
/// candidates. Naive MAB-CS scores without it and uses reported times.
TimeTable estimation_table(const StrategyState& state, const StrategyConfig& cfg,
                           std::span<const ClientId> candidates);

/// Scorer bound to `state` and `table`; both must outlive the returned object.
Scorer make_scorer(const StrategyState& state, const StrategyConfig& cfg, const TimeTable& table);

}  // namespace mabcs
