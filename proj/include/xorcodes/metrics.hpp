#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "xorcodes/gf2.hpp"
#include "xorcodes/random.hpp"

namespace xorcodes {

/// Where a decoding-probability entry came from.
enum class EntryMode {
  exact,    ///< full subset enumeration: hits / trials is the exact ratio
  sampled,  ///< Monte Carlo estimate over `trials` random subsets
  analytic  ///< closed-form random-code baseline; no counts
};

const char* to_string(EntryMode mode) noexcept;

struct VdEntry {
  double rho = 0.0;
  EntryMode mode = EntryMode::exact;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double standard_error = 0.0;

  bool operator==(const VdEntry&) const = default;
};

/// Decoding probabilities (rho_0, ..., rho_{n-k}) of an [n, k] code: rho_i is
/// the probability that k+i received columns of G have rank k.
class DecodingVector {
public:
  DecodingVector(std::size_t n, std::size_t k, std::vector<VdEntry> entries);

  /// Convenience for hand-built vectors; every entry gets the same mode.
  static DecodingVector from_values(std::size_t n, std::size_t k, std::vector<double> rho,
                                    EntryMode mode = EntryMode::exact);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return entries_.size(); }

  double rho(std::size_t i) const { return entries_.at(i).rho; }
  const VdEntry& entry(std::size_t i) const { return entries_.at(i); }
  std::span<const VdEntry> entries() const noexcept { return entries_; }
  std::vector<double> values() const;

  /// sampled if any entry is sampled, else analytic if any entry is analytic, else exact.
  EntryMode mode() const noexcept;

  bool operator==(const DecodingVector&) const = default;

private:
  std::size_t n_;
  std::size_t k_;
  std::vector<VdEntry> entries_;
};

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept;

inline constexpr std::uint64_t default_enumeration_threshold = 2'000'000;

class ThresholdExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExactOptions {
  std::uint64_t threshold = default_enumeration_threshold;
  unsigned threads = 1;
};

/// Full enumeration of every (k+i)-column subset. Throws ThresholdExceeded when
/// any C(n, k+i) is larger than the threshold.
DecodingVector exact_vd(const BinaryMatrix& g, const ExactOptions& options = {});

/// Number of `size`-column subsets of g with rank g.rows(). Exact, no threshold.
std::uint64_t count_decodable_subsets(const BinaryMatrix& g, std::size_t size, unsigned threads = 1);

struct SampleOptions {
  std::uint64_t samples_per_entry = 10'000;
  /// Entries with C(n, k+i) at or below this are enumerated instead of sampled.
  std::uint64_t threshold = default_enumeration_threshold;
  unsigned threads = 1;
};

/// Monte Carlo V_D. Each sample is one uniformly random ordering of the n
/// columns; entry i succeeds when its first k+i columns have rank k. Every
/// entry therefore sees a uniform (k+i)-subset, and the sampled entries are
/// monotone in i by construction. The base seed is drawn once from rng.
DecodingVector sampled_vd(const BinaryMatrix& g, const SampleOptions& options, Rng& rng);

struct ChannelPoint {
  double p = 0.0;
  double p_s = 0.0;
  double p_u = 0.0;
  /// failure mass from patterns with at most n-k erasures
  double p_u1 = 0.0;
  /// failure mass from patterns with more than n-k erasures
  double p_u2 = 0.0;
};

/// C(n, i) p^i (1-p)^(n-i). Exact integer coefficients up to n = 60, log-gamma above.
double binomial_pmf(std::size_t n, std::size_t i, double p);

/// Probability of recovering all k packets over an erasure channel with loss probability p.
ChannelPoint p_success(const DecodingVector& vd, double p);

/// Points p_min, p_min + step, ..., up to p_max inclusive (within half a step).
std::vector<double> probability_grid(double p_min, double p_max, double step);
std::vector<ChannelPoint> channel_sweep(const DecodingVector& vd, std::span<const double> grid);

/// Probability that I random vectors of GF(q)^k span the space.
double rlnc_probability(std::size_t received, std::size_t k, std::uint64_t q);

/// rho_i = rlnc_probability(k+i, k, q), all entries analytic.
DecodingVector rlnc_vd(std::size_t n, std::size_t k, std::uint64_t q);

/// true iff every rho_i is exactly 1. Sampled vectors are rejected.
bool is_mds(const DecodingVector& vd);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Erases each column independently with probability p and checks whether the
/// survivors have rank k. Trials run in fixed-size chunks with seeds split from
/// one base draw, so the result does not depend on `threads`.
Estimate simulate_ps(const BinaryMatrix& g, double p, std::uint64_t trials, Rng& rng, unsigned threads = 1);

/// printf("%#.9g"): nine significant digits, trailing zeros kept.
std::string format_real(double value);

/// Round half away from zero to three decimals.
double round3(double value);

std::string format_vd_csv(const DecodingVector& vd);
std::string format_sweep_csv(std::span<const ChannelPoint> points);

} // namespace xorcodes
