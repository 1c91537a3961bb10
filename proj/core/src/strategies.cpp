#include "mabcs/strategies.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mabcs {
namespace {

struct NamedKind {
  StrategyKind kind;
  std::string_view name;
};

constexpr NamedKind kNames[] = {
    {StrategyKind::kNaiveFedCS, "naive_fedcs"},
    {StrategyKind::kExtendedFedCS, "extended_fedcs"},
    {StrategyKind::kNaiveMab, "naive_mab"},
    {StrategyKind::kElementwiseMab, "elementwise_mab"},
};

// t_inc over estimates for S and k only.
template <typename Estimate>
double estimated_t_inc(const StrategyState& state, std::span<const ClientId> selection,
                       double elapsed, ClientId k, Estimate&& estimate) {
  TimeTable table;
  for (ClientId j : selection) table.emplace(j, estimate(state.client(j)));
  table.emplace(k, estimate(state.client(k)));
  return t_inc(selection, elapsed, table, k);
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  for (const auto& n : kNames)
    if (n.kind == kind) return n.name;
  return "unknown";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
  for (const auto& n : kNames)
    if (n.name == name) return n.kind;
  return std::nullopt;
}

void validate(const StrategyConfig& cfg) {
  if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) throw ConfigError("alpha must be positive");
  if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta)) throw ConfigError("beta must be positive");
  if (cfg.window < 1) throw ConfigError("window must be >= 1");
}

StrategyState::StrategyState(int clients, int window)
    : stats_(static_cast<std::size_t>(clients)), window_(window) {
  if (clients < 1) throw std::invalid_argument("StrategyState: need at least one client");
  if (window < 1) throw std::invalid_argument("StrategyState: window must be >= 1");
}

const ClientStats& StrategyState::client(ClientId k) const {
  if (k < 0 || k >= clients()) throw InternalError("client id out of range: " + std::to_string(k));
  return stats_[static_cast<std::size_t>(k)];
}

void StrategyState::update(std::span<const Observation> observations) {
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const ClientId k = observations[i].client_id;
    if (k < 0 || k >= clients()) throw InternalError("observation for unknown client");
    for (std::size_t j = 0; j < i; ++j)
      if (observations[j].client_id == k)
        throw InternalError("duplicate observation for client " + std::to_string(k));
  }
  for (const Observation& obs : observations) {
    ClientStats& s = stats_[static_cast<std::size_t>(obs.client_id)];
    s.n_selected += 1;
    const double n = static_cast<double>(s.n_selected);
    s.mean_t_update_s += (obs.actual.t_update_s - s.mean_t_update_s) / n;
    s.mean_t_upload_s += (obs.actual.t_upload_s - s.mean_t_upload_s) / n;
    s.mean_t_inc_s += (obs.observed_t_inc_s - s.mean_t_inc_s) / n;
    s.window.push_back(obs.actual);
    while (static_cast<int>(s.window.size()) > window_) s.window.pop_front();
    s.reported = obs.actual;
    ++total_selected_;
  }
}

double ucb_bonus(std::int64_t n_k, std::int64_t n_total) {
  if (n_k < 0 || n_total < n_k) throw std::invalid_argument("ucb_bonus: need n_total >= n_k >= 0");
  if (n_k == 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(std::log(static_cast<double>(n_total)) / (2.0 * static_cast<double>(n_k)));
}

TimePair reported_times(const ClientStats& s) { return s.reported; }

TimePair windowed_mean_times(const ClientStats& s) {
  if (s.window.empty()) return {};
  TimePair sum;
  for (const TimePair& t : s.window) {
    sum.t_update_s += t.t_update_s;
    sum.t_upload_s += t.t_upload_s;
  }
  const double n = static_cast<double>(s.window.size());
  return {sum.t_update_s / n, sum.t_upload_s / n};
}

TimePair tau_times(const ClientStats& s, std::int64_t n_total, double beta) {
  if (s.n_selected == 0) return {-kUnexploredTauMagnitude, -kUnexploredTauMagnitude};
  const double bonus = ucb_bonus(s.n_selected, n_total);
  return {s.mean_t_update_s / beta - bonus, s.mean_t_upload_s / beta - bonus};
}

double score_naive_fedcs(const StrategyState& state, std::span<const ClientId> selection,
                         double elapsed, ClientId k) {
  return -estimated_t_inc(state, selection, elapsed, k, reported_times);
}

double score_extended_fedcs(const StrategyState& state, std::span<const ClientId> selection,
                            double elapsed, ClientId k) {
  return -estimated_t_inc(state, selection, elapsed, k, windowed_mean_times);
}

double score_naive_mab(const StrategyState& state, std::span<const ClientId>, double,
                       ClientId k, double alpha) {
  const ClientStats& s = state.client(k);
  if (s.n_selected == 0) return std::numeric_limits<double>::infinity();
  return -s.mean_t_inc_s / alpha + ucb_bonus(s.n_selected, state.total_selected());
}

double score_elementwise_mab(const StrategyState& state, std::span<const ClientId> selection,
                             double elapsed, ClientId k, double beta) {
  const std::int64_t n_total = state.total_selected();
  return -estimated_t_inc(state, selection, elapsed, k,
                          [&](const ClientStats& s) { return tau_times(s, n_total, beta); });
}

TimeTable estimation_table(const StrategyState& state, const StrategyConfig& cfg,
                           std::span<const ClientId> candidates) {
  TimeTable table;
  const std::int64_t n_total = state.total_selected();
  for (ClientId k : candidates) {
    const ClientStats& s = state.client(k);
    switch (cfg.kind) {
      case StrategyKind::kExtendedFedCS:
        table.emplace(k, windowed_mean_times(s));
        break;
      case StrategyKind::kElementwiseMab:
        table.emplace(k, tau_times(s, n_total, cfg.beta));
        break;
      case StrategyKind::kNaiveFedCS:
      case StrategyKind::kNaiveMab:
        table.emplace(k, reported_times(s));
        break;
    }
  }
  return table;
}

Scorer make_scorer(const StrategyState& state, const StrategyConfig& cfg, const TimeTable& table) {
  if (cfg.kind == StrategyKind::kNaiveMab) {
    return [&state, alpha = cfg.alpha](std::span<const ClientId> selection, double elapsed,
                                       ClientId k) {
      return score_naive_mab(state, selection, elapsed, k, alpha);
    };
  }
  // The other three score -t_inc over their own estimates, which `table` holds.
  return [&table](std::span<const ClientId> selection, double elapsed, ClientId k) {
    return -t_inc(selection, elapsed, table, k);
  };
}

}  // namespace mabcs
