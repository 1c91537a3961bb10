// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every criterion runs even when an earlier one fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mabcs/env_model.hpp"
#include "mabcs/fl_sim.hpp"
#include "mabcs/metrics.hpp"
#include "mabcs/scheduling.hpp"
#include "mabcs/stochastics.hpp"
#include "mabcs/strategies.hpp"
#include "oracles.hpp"

namespace {

using namespace mabcs;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RunConfig reference_setup(StrategyKind kind, std::optional<double> eta, std::uint64_t seed) {
  RunConfig cfg;
  cfg.env.eta = eta;
  cfg.strategy.kind = kind;
  cfg.master_seed = seed;
  return cfg;
}

// Runs every strategy for seeds 1..10 and returns final cumulative times.
std::map<StrategyKind, std::vector<double>> final_times(std::optional<double> eta) {
  std::map<StrategyKind, std::vector<double>> out;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    for (StrategyKind kind : kAllStrategies)
      out[kind].push_back(run_experiment(reference_setup(kind, eta, seed)).rounds.back().cumulative_time_s);
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double mean_ratio(const std::vector<double>& base, const std::vector<double>& variant) {
  std::vector<double> r;
  for (std::size_t i = 0; i < base.size(); ++i) r.push_back((base[i] - variant[i]) / base[i]);
  return mean(r);
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  RngStream rng(2024, "acceptance-oracle", {});
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 10));
    TimeTable times;
    std::vector<ClientId> order;
    std::vector<testing::OracleClient> oracle;
    for (ClientId k = 0; k < n; ++k) {
      const TimePair t{rng.uniform_real(0.0, 100.0), rng.uniform_real(0.0, 100.0)};
      times[k] = t;
      order.push_back(k);
    }
    // Random upload order.
    for (int j = n - 1; j > 0; --j) std::swap(order[j], order[rng.uniform_int(0, j)]);
    for (ClientId k : order) oracle.push_back({times[k].t_upload_s, times[k].t_update_s});
    const double actual = actual_round_time(order, times);
    for (double ref : {event_oracle_makespan(order, times), testing::simulated_makespan(oracle)})
      worst = std::max(worst, std::abs(actual - ref) / std::max(std::abs(ref), 1e-300));
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-9 && elapsed < 5.0, fmt("max rel err %.3g, %.2fs", worst, elapsed)};
}

Outcome sampler_correctness() {
  const auto start = Clock::now();
  const TruncNormalParams p{50.0, 10.0, 40.0, 60.0};
  RngStream rng(7, "acceptance-sampler", {});
  std::vector<double> draws(100000);
  bool in_range = true;
  for (double& x : draws) {
    x = sample_trunc_normal(rng, p);
    in_range = in_range && x >= p.lower && x <= p.upper;
  }
  // Analytic CDF written out independently of the library.
  auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  const double lo = phi(-1.0), hi = phi(1.0);
  const double ks =
      testing::ks_distance(draws, [&](double x) { return (phi((x - 50.0) / 10.0) - lo) / (hi - lo); });
  const double elapsed = seconds_since(start);
  return {ks < 0.01 && in_range && elapsed < 10.0,
          fmt("KS %.5f, in range %s, %.2fs", ks, in_range ? "yes" : "no", elapsed)};
}

Outcome throughput_calibration() {
  const auto start = Clock::now();
  const EnvConfig env;
  std::vector<double> means, maxima;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RngStream rng(seed, "population", {});
    std::vector<double> theta;
    for (const ClientProfile& c : init_population(rng, env)) theta.push_back(c.theta_mean);
    means.push_back(mean(theta));
    maxima.push_back(*std::max_element(theta.begin(), theta.end()));
  }
  const double m = mean(means), mx = mean(maxima);
  const double elapsed = seconds_since(start);
  const bool nf_ok = env.noise_figure_db >= 5.0 && env.noise_figure_db <= 13.0;
  return {std::abs(m - 1.4) <= 0.2 * 1.4 && std::abs(mx - 8.6) <= 0.2 * 8.6 && nf_ok && elapsed < 10.0,
          fmt("mean %.3f Mbit/s, max %.3f Mbit/s, NF %.1f dB, %.2fs", m, mx, env.noise_figure_db, elapsed)};
}

Outcome high_fluctuation_ordering() {
  const auto start = Clock::now();
  auto t = final_times(1.99);
  const auto& base = t[StrategyKind::kNaiveFedCS];
  const double naive = mean_ratio(base, t[StrategyKind::kNaiveMab]);
  const double ext = mean_ratio(base, t[StrategyKind::kExtendedFedCS]);
  const double elem = mean_ratio(base, t[StrategyKind::kElementwiseMab]);
  const bool ok = mean(t[StrategyKind::kNaiveMab]) < mean(base) &&
                  mean(t[StrategyKind::kElementwiseMab]) < mean(base) && elem > naive && elem > ext;
  const double elapsed = seconds_since(start);
  return {ok && elapsed < 120.0,
          fmt("ratios ext %.4f naive_mab %.4f elementwise %.4f, %.2fs", ext, naive, elem, elapsed)};
}

Outcome no_fluctuation_ordering() {
  const auto start = Clock::now();
  auto t = final_times(std::nullopt);
  const double base = mean(t[StrategyKind::kNaiveFedCS]);
  const double ext = mean(t[StrategyKind::kExtendedFedCS]);
  const double naive = mean(t[StrategyKind::kNaiveMab]);
  const double elem = mean(t[StrategyKind::kElementwiseMab]);
  const bool ok = ext >= base && naive >= base && elem >= base && naive > ext && naive > elem;
  const double elapsed = seconds_since(start);
  return {ok && elapsed < 120.0,
          fmt("mean final fedcs %.1f ext %.1f naive_mab %.1f elementwise %.1f, %.2fs", base, ext, naive,
              elem, elapsed)};
}

Outcome bandit_invariants() {
  double worst_mean_err = 0.0;
  bool counts_ok = true, bonus_ok = true;
  for (StrategyKind kind : kAllStrategies) {
    const RunConfig cfg = reference_setup(kind, 1.5, 3);
    const RunLedger l = run_experiment(cfg);
    const StrategyState& s = l.final_state;
    counts_ok = counts_ok && s.total_selected() == static_cast<std::int64_t>(cfg.rounds) * cfg.s_round;

    // Brute-force means from the observation log.
    std::vector<std::vector<Observation>> log(static_cast<std::size_t>(cfg.env.clients));
    for (const RoundRecord& r : l.rounds)
      for (const Observation& o : r.observations) log[static_cast<std::size_t>(o.client_id)].push_back(o);
    for (ClientId k = 0; k < cfg.env.clients; ++k) {
      const auto& obs = log[static_cast<std::size_t>(k)];
      const ClientStats& c = s.client(k);
      counts_ok = counts_ok && c.n_selected == static_cast<std::int64_t>(obs.size());
      if (obs.empty()) continue;
      double inc = 0.0, ud = 0.0, ul = 0.0;
      for (const Observation& o : obs) {
        inc += o.observed_t_inc_s;
        ud += o.actual.t_update_s;
        ul += o.actual.t_upload_s;
      }
      const double n = static_cast<double>(obs.size());
      for (auto [got, want] : {std::pair{c.mean_t_inc_s, inc / n}, std::pair{c.mean_t_update_s, ud / n},
                               std::pair{c.mean_t_upload_s, ul / n}})
        worst_mean_err = std::max(worst_mean_err, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }

    // Within each round, the logged N_k values order the bonuses strictly.
    for (const RoundRecord& r : l.rounds) {
      const std::int64_t total = static_cast<std::int64_t>(r.round_index) * cfg.s_round;
      std::vector<std::int64_t> ns;
      for (const ScoreSample& x : r.scores) ns.push_back(x.n_selected);
      std::sort(ns.begin(), ns.end());
      ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
      for (std::size_t i = 1; i < ns.size(); ++i)
        bonus_ok = bonus_ok && ucb_bonus(ns[i - 1], total) > ucb_bonus(ns[i], total);
    }
  }
  return {counts_ok && bonus_ok && worst_mean_err <= 1e-12,
          fmt("counts %s, bonus monotone %s, max mean err %.3g", counts_ok ? "ok" : "bad",
              bonus_ok ? "ok" : "bad", worst_mean_err)};
}

Outcome score_trace_boundedness() {
  const RunConfig cfg = reference_setup(StrategyKind::kElementwiseMab, 1.5, 1);
  const RunLedger l = run_experiment(cfg);
  std::map<ClientId, std::vector<double>> first, last;
  for (const RoundRecord& r : l.rounds)
    for (const ScoreSample& x : r.scores) {
      if (r.round_index < 100) first[x.client_id].push_back(x.score);
      if (r.round_index >= cfg.rounds - 100) last[x.client_id].push_back(x.score);
    }
  int checked = 0, failed = 0;
  for (ClientId k = 0; k < cfg.env.clients; ++k) {
    if (l.final_state.client(k).n_selected < 20) continue;
    // One logged value gives no spread; such a window cannot show convergence.
    if (first[k].size() < 2 || last[k].size() < 2) continue;
    ++checked;
    if (!(stddev(last[k]) < stddev(first[k]))) ++failed;
  }
  return {checked > 0 && failed == 0, fmt("%d clients checked, %d not converging", checked, failed)};
}

std::string csv_bytes(const RunLedger& l) {
  std::ostringstream out;
  write_rounds_csv(l, out);
  write_scores_csv(l, out);
  write_realizations_csv(l, out);
  return out.str();
}

Outcome determinism() {
  bool identical = true, shared = true;
  std::vector<RunLedger> ledgers;
  for (StrategyKind kind : kAllStrategies) {
    RunConfig cfg = reference_setup(kind, 1.5, 11);
    cfg.rounds = 100;
    ledgers.push_back(run_experiment(cfg));
    identical = identical && csv_bytes(ledgers.back()) == csv_bytes(run_experiment(cfg));
  }
  for (const RunLedger& l : ledgers)
    for (std::size_t r = 0; r < l.rounds.size(); ++r) {
      const RoundRecord& a = l.rounds[r];
      const RoundRecord& b = ledgers.front().rounds[r];
      shared = shared && a.candidate_ids == b.candidate_ids;
      for (std::size_t k = 0; k < a.realizations.size(); ++k)
        shared = shared && a.realizations[k].t_update_s == b.realizations[k].t_update_s &&
                 a.realizations[k].t_upload_s == b.realizations[k].t_upload_s;
    }
  return {identical && shared, fmt("byte-identical %s, shared tables %s", identical ? "yes" : "no",
                                   shared ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"sampler correctness", sampler_correctness},
      {"throughput calibration", throughput_calibration},
      {"high-fluctuation ordering", high_fluctuation_ordering},
      {"no-fluctuation ordering", no_fluctuation_ordering},
      {"bandit-state invariants", bandit_invariants},
      {"score-trace boundedness", score_trace_boundedness},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
