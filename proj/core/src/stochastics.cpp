#include "mabcs/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mabcs {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_key(std::uint64_t seed, std::string_view label,
                         std::span<const std::uint64_t> indices) {
  std::uint64_t key = mix64(seed + kGolden);
  key = mix64(key ^ fnv1a(label));
  // Fold the index count too, so {1} and {1, 0} differ.
  key = mix64(key ^ (indices.size() * kGolden));
  for (std::uint64_t v : indices) key = mix64(key ^ mix64(v + kGolden));
  return key;
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// Root of std_normal_cdf(z) == p inside [lo, hi], where cdf(lo) <= p <= cdf(hi).
// Newton steps that leave the bracket fall back to bisection.
double solve_normal_cdf(double p, double lo, double hi, double tolerance) {
  double z = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = std_normal_cdf(z) - p;
    if (residual == 0.0) return z;
    if (residual < 0.0)
      lo = z;
    else
      hi = z;
    if (hi - lo <= tolerance) return 0.5 * (lo + hi);

    const double density = normal_pdf(z);
    double next = density > 0.0 ? z - residual / density : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - z);
    z = next;
    if (step <= tolerance) return z;
  }
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::string_view purpose_label,
                     std::initializer_list<std::uint64_t> stream_indices)
    : RngStream(master_seed, purpose_label,
                std::span<const std::uint64_t>(stream_indices.begin(), stream_indices.size())) {}

RngStream::RngStream(std::uint64_t master_seed, std::string_view purpose_label,
                     std::span<const std::uint64_t> stream_indices)
    : key_(derive_key(master_seed, purpose_label, stream_indices)), state_(key_) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::uniform01() {
  // 53 random bits, offset by half a step: never 0, never 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next_u64());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % range);
}

double RngStream::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
}

void validate(const TruncNormalParams& p) {
  if (!std::isfinite(p.mu) || !std::isfinite(p.sigma) || !std::isfinite(p.lower) ||
      !std::isfinite(p.upper))
    throw std::domain_error("truncated normal: non-finite parameter");
  if (!(p.sigma > 0.0)) throw std::domain_error("truncated normal: sigma must be positive");
  if (!(p.lower <= p.mu && p.mu <= p.upper))
    throw std::domain_error("truncated normal: requires lower <= mu <= upper");
}

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_cdf: non-finite input");
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_quantile(double p, double tolerance) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("std_normal_quantile: p must be in (0, 1)");
  double lo = -1.0;
  double hi = 1.0;
  while (std_normal_cdf(lo) > p && lo > -40.0) lo *= 2.0;
  while (std_normal_cdf(hi) < p && hi < 40.0) hi *= 2.0;
  return solve_normal_cdf(p, lo, hi, tolerance);
}

namespace {

struct StandardizedBounds {
  double z_lower;
  double z_upper;
  double cdf_lower;
  double mass;
};

StandardizedBounds standardize(const TruncNormalParams& p) {
  validate(p);
  StandardizedBounds s{};
  s.z_lower = (p.lower - p.mu) / p.sigma;
  s.z_upper = (p.upper - p.mu) / p.sigma;
  s.cdf_lower = std_normal_cdf(s.z_lower);
  s.mass = std_normal_cdf(s.z_upper) - s.cdf_lower;
  if (!(s.mass > 0.0)) throw std::domain_error("truncated normal: zero probability mass in [a, b]");
  return s;
}

}  // namespace

double trunc_normal_cdf(double x, const TruncNormalParams& p) {
  const StandardizedBounds s = standardize(p);
  if (!(x >= p.lower && x <= p.upper))
    throw std::domain_error("trunc_normal_cdf: x outside [a, b]");
  const double F = (std_normal_cdf((x - p.mu) / p.sigma) - s.cdf_lower) / s.mass;
  return std::clamp(F, 0.0, 1.0);
}

double trunc_normal_quantile(double u, const TruncNormalParams& p) {
  const StandardizedBounds s = standardize(p);
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("trunc_normal_quantile: u outside [0, 1]");
  if (u == 0.0) return p.lower;
  if (u == 1.0) return p.upper;
  const double target = s.cdf_lower + u * s.mass;
  const double z = solve_normal_cdf(target, s.z_lower, s.z_upper, 1e-10);
  return std::clamp(p.mu + p.sigma * z, p.lower, p.upper);
}

double sample_trunc_normal(RngStream& rng, const TruncNormalParams& p) {
  return trunc_normal_quantile(rng.uniform01(), p);
}

}  // namespace mabcs
