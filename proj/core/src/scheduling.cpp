#include "mabcs/scheduling.hpp"

#include <algorithm>
#include <string>

namespace mabcs {

const TimePair& time_of(const TimeTable& times, ClientId k) {
  const auto it = times.find(k);
  if (it == times.end()) throw InternalError("no time entry for client " + std::to_string(k));
  return it->second;
}

double distribution_time(const TimeTable& times, std::span<const ClientId> selection) {
  if (selection.empty()) return 0.0;
  double td = time_of(times, selection.front()).t_upload_s;
  for (ClientId k : selection.subspan(1)) td = std::max(td, time_of(times, k).t_upload_s);
  return td;
}

double t_inc(std::span<const ClientId> selection, double elapsed, const TimeTable& times,
             ClientId k) {
  const TimePair& tk = time_of(times, k);
  const double td_before = distribution_time(times, selection);
  const double td_after = selection.empty() ? tk.t_upload_s : std::max(td_before, tk.t_upload_s);
  return (td_after - td_before) + std::max(tk.t_update_s - (elapsed - td_before), 0.0) +
         tk.t_upload_s;
}

SelectionResult greedy_select(std::span<const ClientId> candidates, const Scorer& scorer,
                              int s_round, const TimeTable& estimation_times) {
  if (s_round < 1) throw std::invalid_argument("greedy_select: s_round must be >= 1");
  SelectionResult result;
  std::vector<ClientId> remaining(candidates.begin(), candidates.end());
  std::sort(remaining.begin(), remaining.end());
  if (std::adjacent_find(remaining.begin(), remaining.end()) != remaining.end())
    throw InternalError("greedy_select: duplicate candidate");

  double elapsed = 0.0;
  auto& selection = result.ordered_selection;
  // Candidates left after the selection is full would be evaluated and
  // discarded without touching S or t, so the loop stops there.
  for (int iteration = 0;
       !remaining.empty() && static_cast<int>(selection.size()) < s_round; ++iteration) {
    auto best = remaining.end();
    double best_score = 0.0;
    for (auto it = remaining.begin(); it != remaining.end(); ++it) {
      const double score = scorer(selection, elapsed, *it);
      result.evaluation_trace.push_back({iteration, *it, score});
      if (best == remaining.end() || score > best_score) {
        best = it;
        best_score = score;
      }
    }
    const ClientId chosen = *best;
    remaining.erase(best);
    elapsed += t_inc(selection, elapsed, estimation_times, chosen);
    selection.push_back(chosen);
  }
  result.estimated_round_time_s = elapsed;
  return result;
}

std::vector<double> replay_increments(std::span<const ClientId> order, const TimeTable& times) {
  std::vector<double> increments;
  increments.reserve(order.size());
  double elapsed = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double inc = t_inc(order.first(i), elapsed, times, order[i]);
    increments.push_back(inc);
    elapsed += inc;
  }
  return increments;
}

double actual_round_time(std::span<const ClientId> order, const TimeTable& actual_times) {
  double total = 0.0;
  for (double inc : replay_increments(order, actual_times)) total += inc;
  return total;
}

double event_oracle_makespan(std::span<const ClientId> order, const TimeTable& actual_times) {
  const double distribution_done = distribution_time(actual_times, order);
  double channel_free = 0.0;
  for (ClientId k : order) {
    const TimePair& tk = time_of(actual_times, k);
    const double update_done = distribution_done + tk.t_update_s;
    const double upload_start = std::max(channel_free, update_done);
    channel_free = upload_start + tk.t_upload_s;
  }
  return channel_free;
}

}  // namespace mabcs
