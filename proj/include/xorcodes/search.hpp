#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xorcodes/gf2.hpp"
#include "xorcodes/latin.hpp"
#include "xorcodes/metrics.hpp"
#include "xorcodes/random.hpp"

namespace xorcodes {

enum class Algorithm : int {
  random_linear = 1, ///< uniformly random full-rank generator, every bit mutable
  balanced_xor = 2   ///< balanced nonsingular block | all-ones column | random tail
};

/// Scalar the climb maximises. Either the success probability at one
/// reference erasure probability, or a weighted sum of the rho entries.
struct Objective {
  double reference_p = 0.1;
  std::vector<double> weights; ///< when non-empty: score = sum_i weights[i] * rho_i

  double score(const DecodingVector& vd) const;
};

struct SearchConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t k1 = default_balance;
  Objective objective;
  std::size_t attempts = 1;
  std::size_t max_climb_steps = 2000;
  std::size_t stagnation_limit = 300;
  std::uint64_t master_seed = 0;
  Algorithm algorithm = Algorithm::balanced_xor;
  std::uint64_t samples = 0; ///< 0 scores with exact_vd, otherwise sampled_vd with this many samples per entry
  std::uint64_t exact_threshold = default_enumeration_threshold;
  unsigned threads = 1;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

struct Provenance {
  Algorithm algorithm = Algorithm::balanced_xor;
  std::size_t restart = 0;
  std::uint64_t seed = 0;
  std::size_t k1 = 0;
  std::optional<LatinRectangle> rectangle; ///< balanced_xor only
  std::size_t accepted_moves = 0;
  std::size_t proposals = 0;
};

struct CodeCandidate {
  BinaryMatrix g;
  DecodingVector vd;
  double score = 0.0;
  Provenance provenance;
};

/// exact_vd or sampled_vd depending on cfg.samples.
DecodingVector evaluate_vd(const BinaryMatrix& g, const SearchConfig& cfg, Rng& rng);

CodeCandidate init_random(const SearchConfig& cfg, Rng& rng);
CodeCandidate init_balanced(const SearchConfig& cfg, Rng& rng);

/// Number of bits a single move may flip: k*n for random_linear, k*(n-k-1) for balanced_xor.
std::size_t mutable_positions(const SearchConfig& cfg);

/// One random bit flip inside the mutable region, re-evaluated.
CodeCandidate neighbor(const CodeCandidate& c, const SearchConfig& cfg, Rng& rng);

/// Strict order used for acceptance: higher score, then lexicographically larger vd.
bool better(const CodeCandidate& a, const CodeCandidate& b);

using ClimbObserver = std::function<void(const CodeCandidate&)>;

/// Stochastic hill climb with strict-improvement acceptance. Stops after
/// cfg.stagnation_limit consecutive rejections or cfg.max_climb_steps proposals.
/// on_accept sees every accepted candidate, in order.
CodeCandidate climb(CodeCandidate start, const SearchConfig& cfg, Rng& rng, const ClimbObserver& on_accept = {});

/// Restart i runs init + climb with seed derive_seed(master_seed, i).
CodeCandidate run_restart(const SearchConfig& cfg, std::size_t restart);

/// All restarts, reduced to the componentwise-nondominated set (one
/// representative per distinct vd), sorted by score descending.
std::vector<CodeCandidate> search_family(const SearchConfig& cfg);

/// a_i >= b_i for every i. Throws on mismatched (n, k).
bool dominates(const DecodingVector& a, const DecodingVector& b);

std::vector<CodeCandidate> pareto_front(std::vector<CodeCandidate> candidates);

/// Family file body: per candidate the matrix block, its rho values as one CSV
/// line, and a key=value provenance line; records are separated by blank lines.
std::string format_family(const std::vector<CodeCandidate>& family);
std::string format_provenance(const Provenance& p, double score);
std::string describe_config(const SearchConfig& cfg);

struct FamilyRecord {
  BinaryMatrix g;
  std::vector<double> rho;
  std::map<std::string, std::string> provenance;
};

/// Reads a family file back; '#' comment lines are skipped.
std::vector<FamilyRecord> parse_family(std::string_view text);

} // namespace xorcodes
