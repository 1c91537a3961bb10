#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace mabcs {

/// Addressable pseudo-random stream.
///
/// A stream is identified by a master seed, a purpose label and a list of
/// integer indices (round, client, ...). The stream key is a hash of all
/// three, and values are produced by a SplitMix64 sequence started from the
/// key, so any (round, client) stream can be opened independently of how many
/// values other streams have consumed.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view purpose_label,
            std::initializer_list<std::uint64_t> stream_indices);
  RngStream(std::uint64_t master_seed, std::string_view purpose_label,
            std::span<const std::uint64_t> stream_indices);

  std::uint64_t next_u64();

  /// Uniform double strictly inside (0, 1).
  double uniform01();

  /// Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform real in [lo, hi).
  double uniform_real(double lo, double hi);

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t state_;
};

struct TruncNormalParams {
  double mu;
  double sigma;
  double lower;
  double upper;
};

/// Throws std::domain_error unless sigma > 0, all fields are finite and
/// lower <= mu <= upper.
void validate(const TruncNormalParams& p);

/// Standard normal CDF. Throws std::domain_error for non-finite input.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf for p in (0, 1), via a bracketed root find.
double std_normal_quantile(double p, double tolerance = 1e-10);

double trunc_normal_cdf(double x, const TruncNormalParams& p);

/// Value x in [lower, upper] with trunc_normal_cdf(x) == u, for u in [0, 1].
double trunc_normal_quantile(double u, const TruncNormalParams& p);

/// Inverse-CDF draw; consumes exactly one uniform from the stream.
double sample_trunc_normal(RngStream& rng, const TruncNormalParams& p);

}  // namespace mabcs
