#include "mabcs/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mabcs {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<ClientId> parse_ids(const std::string& s) {
  std::vector<ClientId> ids;
  if (s.empty()) return ids;
  for (const std::string& p : split(s, ';')) ids.push_back(std::stoi(p));
  return ids;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  writer(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

ComparisonSeries time_difference(const std::vector<double>& baseline_cumulative,
                                 const std::vector<double>& variant_cumulative) {
  if (baseline_cumulative.size() != variant_cumulative.size())
    throw std::invalid_argument("time_difference: round counts differ");
  ComparisonSeries series;
  series.diff_s.reserve(baseline_cumulative.size());
  for (std::size_t i = 0; i < baseline_cumulative.size(); ++i)
    series.diff_s.push_back(baseline_cumulative[i] - variant_cumulative[i]);
  if (!series.diff_s.empty() && baseline_cumulative.back() != 0.0)
    series.final_reduction_ratio = series.diff_s.back() / baseline_cumulative.back();
  return series;
}

ComparisonSeries time_difference(const RunLedger& baseline, const RunLedger& variant) {
  if (baseline.meta.master_seed != variant.meta.master_seed)
    throw std::invalid_argument("time_difference: runs use different master seeds");
  if (baseline.meta.eta != variant.meta.eta)
    throw std::invalid_argument("time_difference: runs use different eta");
  auto cumulative = [](const RunLedger& l) {
    std::vector<double> c;
    c.reserve(l.rounds.size());
    for (const RoundRecord& r : l.rounds) c.push_back(r.cumulative_time_s);
    return c;
  };
  ComparisonSeries series = time_difference(cumulative(baseline), cumulative(variant));
  series.baseline_label = baseline.meta.run_id;
  series.variant_label = variant.meta.run_id;
  return series;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join_ids(std::vector<ClientId> ids) {
  std::sort(ids.begin(), ids.end());
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s.push_back(';');
    s += std::to_string(ids[i]);
  }
  return s;
}

void write_rounds_csv(const RunLedger& ledger, std::ostream& out) {
  out << kRoundsHeader << '\n';
  const std::string prefix = ledger.meta.run_id + ',' + std::string(to_string(ledger.meta.strategy)) +
                             ',' + format_eta(ledger.meta.eta) + ',' +
                             std::to_string(ledger.meta.master_seed) + ',';
  for (const RoundRecord& r : ledger.rounds) {
    out << prefix << r.round_index << ',' << format_real(r.actual_round_time_s) << ','
        << format_real(r.cumulative_time_s) << ',' << join_ids(r.ordered_selection) << ','
        << join_ids(r.candidate_ids) << '\n';
  }
}

void write_scores_csv(const RunLedger& ledger, std::ostream& out) {
  out << kScoresHeader << '\n';
  for (const RoundRecord& r : ledger.rounds)
    for (const ScoreSample& s : r.scores)
      out << r.round_index << ',' << s.client_id << ',' << format_real(s.score) << ','
          << s.n_selected << '\n';
}

void write_realizations_csv(const RunLedger& ledger, std::ostream& out) {
  out << kRealizationsHeader << '\n';
  for (const RoundRecord& r : ledger.rounds)
    for (const ResourceRealization& x : r.realizations)
      out << x.round_index << ',' << x.client_id << ',' << format_real(x.theta_tmp) << ','
          << format_real(x.gamma_tmp) << ',' << format_real(x.t_update_s) << ','
          << format_real(x.t_upload_s) << '\n';
}

void write_rounds_csv(const RunLedger& ledger, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_rounds_csv(ledger, out); });
}

void write_scores_csv(const RunLedger& ledger, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_scores_csv(ledger, out); });
}

void write_realizations_csv(const RunLedger& ledger, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_realizations_csv(ledger, out); });
}

std::vector<RoundsRow> read_rounds_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRoundsHeader)
    throw std::runtime_error("rounds CSV: missing or unexpected header");
  std::vector<RoundsRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 9)
      throw std::runtime_error("rounds CSV line " + std::to_string(line_no) +
                               ": expected 9 fields");
    RoundsRow row;
    row.run_id = f[0];
    row.strategy = f[1];
    row.eta = f[2];
    row.seed = std::stoull(f[3]);
    row.round = std::stoi(f[4]);
    row.elapsed_s = std::stod(f[5]);
    row.cumulative_s = std::stod(f[6]);
    row.selected_ids = parse_ids(f[7]);
    row.candidate_ids = parse_ids(f[8]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RoundsRow> read_rounds_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return read_rounds_csv(in);
}

}  // namespace mabcs
