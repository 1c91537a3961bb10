#include "mabcs/fl_sim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace mabcs {
namespace {

RunConfig small_config(StrategyKind kind, std::optional<double> eta, int rounds = 60) {
  RunConfig cfg;
  cfg.env.clients = 40;
  cfg.env.eta = eta;
  cfg.strategy.kind = kind;
  cfg.candidate_fraction = 0.25;
  cfg.rounds = rounds;
  cfg.master_seed = 31;
  return cfg;
}

TEST(CandidateCount, Ceiling) {
  EXPECT_EQ(candidate_count(100, 0.1), 10);
  EXPECT_EQ(candidate_count(100, 1.0), 100);
  EXPECT_EQ(candidate_count(30, 0.1), 3);
  EXPECT_EQ(candidate_count(7, 0.5), 4);
  EXPECT_EQ(candidate_count(5, 0.01), 1);
}

TEST(SampleCandidates, SizeDistinctAndKeyedByRound) {
  const auto c = sample_candidates(8, 3, 100, 0.1);
  ASSERT_EQ(c.size(), 10u);
  EXPECT_EQ(std::set<ClientId>(c.begin(), c.end()).size(), 10u);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  for (ClientId k : c) {
    EXPECT_GE(k, 0);
    EXPECT_LT(k, 100);
  }
  EXPECT_EQ(c, sample_candidates(8, 3, 100, 0.1));
  EXPECT_NE(c, sample_candidates(8, 4, 100, 0.1));
  const auto all = sample_candidates(8, 0, 20, 1.0);
  ASSERT_EQ(all.size(), 20u);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(all[static_cast<std::size_t>(i)], i);
}

TEST(SampleCandidates, RoughlyUniform) {
  std::vector<int> hits(50, 0);
  for (int r = 0; r < 5000; ++r)
    for (ClientId k : sample_candidates(1, r, 50, 0.1)) ++hits[static_cast<std::size_t>(k)];
  // 5000 rounds x 5 picks / 50 clients = 500 expected each.
  for (int h : hits) {
    EXPECT_GT(h, 400);
    EXPECT_LT(h, 600);
  }
}

TEST(RunRound, FirstRoundOfMabExploresOnly) {
  for (StrategyKind kind : {StrategyKind::kNaiveMab, StrategyKind::kElementwiseMab}) {
    const RunConfig cfg = small_config(kind, 1.5);
    const auto pop = make_population(cfg);
    StrategyState state(cfg.env.clients);
    const RoundRecord r = run_round(state, pop, cfg, 0);
    EXPECT_EQ(r.ordered_selection.size(), 5u);
    for (const ScoreSample& s : r.scores) EXPECT_EQ(s.n_selected, 0);
    EXPECT_EQ(r.observations.size(), r.ordered_selection.size());
  }
}

TEST(RunRound, ObservationsMatchRealizations) {
  const RunConfig cfg = small_config(StrategyKind::kExtendedFedCS, 1.5);
  const auto pop = make_population(cfg);
  StrategyState state(cfg.env.clients);
  const RoundRecord r = run_round(state, pop, cfg, 4, 100.0);
  double sum = 0.0;
  for (const Observation& o : r.observations) {
    const ResourceRealization& x = r.realizations[static_cast<std::size_t>(o.client_id)];
    EXPECT_EQ(o.actual, (TimePair{x.t_update_s, x.t_upload_s}));
    EXPECT_EQ(state.client(o.client_id).reported, o.actual);
    sum += o.observed_t_inc_s;
  }
  EXPECT_DOUBLE_EQ(sum, r.actual_round_time_s);
  EXPECT_DOUBLE_EQ(r.cumulative_time_s, 100.0 + r.actual_round_time_s);
}

TEST(RunExperiment, EmptyAndDeterministic) {
  EXPECT_TRUE(run_experiment(small_config(StrategyKind::kNaiveFedCS, 1.5, 0)).rounds.empty());
  const RunConfig cfg = small_config(StrategyKind::kElementwiseMab, 1.99);
  const RunLedger a = run_experiment(cfg);
  const RunLedger b = run_experiment(cfg);
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    EXPECT_EQ(a.rounds[i].ordered_selection, b.rounds[i].ordered_selection);
    EXPECT_EQ(a.rounds[i].actual_round_time_s, b.rounds[i].actual_round_time_s);
  }
}

TEST(RunExperiment, EnvironmentIndependentOfStrategy) {
  std::vector<RunLedger> ledgers;
  for (StrategyKind kind : kAllStrategies) ledgers.push_back(run_experiment(small_config(kind, 1.5)));
  for (const RunLedger& l : ledgers) {
    for (std::size_t r = 0; r < l.rounds.size(); ++r) {
      ASSERT_EQ(l.rounds[r].candidate_ids, ledgers[0].rounds[r].candidate_ids);
      for (std::size_t k = 0; k < l.rounds[r].realizations.size(); ++k) {
        ASSERT_EQ(l.rounds[r].realizations[k].theta_tmp, ledgers[0].rounds[r].realizations[k].theta_tmp);
        ASSERT_EQ(l.rounds[r].realizations[k].gamma_tmp, ledgers[0].rounds[r].realizations[k].gamma_tmp);
      }
    }
  }
}

TEST(RunExperiment, LedgerInvariants) {
  for (StrategyKind kind : kAllStrategies) {
    const RunConfig cfg = small_config(kind, 1.5);
    const RunLedger l = run_experiment(cfg);
    double cumulative = 0.0;
    for (const RoundRecord& r : l.rounds) {
      EXPECT_EQ(r.candidate_ids.size(), 10u);
      EXPECT_EQ(r.ordered_selection.size(), 5u);
      for (ClientId k : r.ordered_selection)
        EXPECT_TRUE(std::binary_search(r.candidate_ids.begin(), r.candidate_ids.end(), k));
      cumulative += r.actual_round_time_s;
      EXPECT_NEAR(r.cumulative_time_s, cumulative, 1e-9 * cumulative);
      EXPECT_EQ(r.scores.size(), r.candidate_ids.size());
    }
    EXPECT_EQ(l.final_state.total_selected(), static_cast<std::int64_t>(cfg.rounds) * cfg.s_round);
  }
}

TEST(RunExperiment, NoFluctuationFedCSEstimateBecomesExact) {
  const RunConfig cfg = small_config(StrategyKind::kNaiveFedCS, std::nullopt, 200);
  const RunLedger l = run_experiment(cfg);
  std::set<ClientId> seen;
  for (const RoundRecord& r : l.rounds) {
    const bool all_known = std::all_of(r.candidate_ids.begin(), r.candidate_ids.end(),
                                       [&](ClientId k) { return seen.count(k) > 0; });
    if (all_known) EXPECT_DOUBLE_EQ(r.estimated_round_time_s, r.actual_round_time_s);
    for (ClientId k : r.ordered_selection) seen.insert(k);
  }
}

TEST(RunConfigValidation, Errors) {
  RunConfig cfg;
  cfg.candidate_fraction = 0.0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = RunConfig{};
  cfg.s_round = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = RunConfig{};
  cfg.s_round = 20;
  EXPECT_EQ(validate(cfg).size(), 1u);
  cfg = RunConfig{};
  cfg.env.eta = 2.5;
  EXPECT_THROW(run_experiment(cfg), ConfigError);
}

TEST(RunId, Format) {
  EXPECT_EQ(make_run_id(StrategyKind::kNaiveMab, 1.99, 3), "naive_mab_eta-1.99_seed-3");
  EXPECT_EQ(make_run_id(StrategyKind::kNaiveFedCS, std::nullopt, 0), "naive_fedcs_eta-none_seed-0");
}

}  // namespace
}  // namespace mabcs
