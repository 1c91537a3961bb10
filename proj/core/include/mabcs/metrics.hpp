#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mabcs/fl_sim.hpp"

namespace mabcs {

/// Per-round cumulative elapsed-time gap between a baseline run and a variant.
struct ComparisonSeries {
  std::string baseline_label;
  std::string variant_label;
  /// baseline cumulative - variant cumulative; positive: the variant is faster.
  std::vector<double> diff_s;
  /// diff_s.back() / baseline final cumulative time; 0 for empty ledgers.
  double final_reduction_ratio = 0.0;
};

/// Throws std::invalid_argument when round counts, seeds or eta differ.
ComparisonSeries time_difference(const RunLedger& baseline, const RunLedger& variant);

/// Same computation over bare cumulative-time series.
ComparisonSeries time_difference(const std::vector<double>& baseline_cumulative,
                                 const std::vector<double>& variant_cumulative);

/// Real number with 9 significant digits ("%.9g").
std::string format_real(double v);

/// Ascending, semicolon-joined.
std::string join_ids(std::vector<ClientId> ids);

inline constexpr const char* kRoundsHeader =
    "run_id,strategy,eta,seed,round,elapsed_s,cumulative_s,selected_ids,candidate_ids";
inline constexpr const char* kScoresHeader = "round,client_id,score,n_selected";
inline constexpr const char* kRealizationsHeader =
    "round,client_id,theta_tmp,gamma_tmp,t_update_s,t_upload_s";

void write_rounds_csv(const RunLedger& ledger, std::ostream& out);
void write_scores_csv(const RunLedger& ledger, std::ostream& out);
void write_realizations_csv(const RunLedger& ledger, std::ostream& out);

/// File variants; throw std::runtime_error naming the path on I/O failure.
void write_rounds_csv(const RunLedger& ledger, const std::filesystem::path& path);
void write_scores_csv(const RunLedger& ledger, const std::filesystem::path& path);
void write_realizations_csv(const RunLedger& ledger, const std::filesystem::path& path);

/// One parsed row of a rounds CSV.
struct RoundsRow {
  std::string run_id;
  std::string strategy;
  std::string eta;
  std::uint64_t seed = 0;
  int round = 0;
  double elapsed_s = 0.0;
  double cumulative_s = 0.0;
  std::vector<ClientId> selected_ids;
  std::vector<ClientId> candidate_ids;
};

std::vector<RoundsRow> read_rounds_csv(std::istream& in);
std::vector<RoundsRow> read_rounds_csv(const std::filesystem::path& path);

}  // namespace mabcs
