#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ksorder/scene_model.hpp"

namespace ksorder {

/// T(Q) as the exact pair U / |S|, where U = sum over scenes of the 1-based
/// position of the first discovering query.
struct ExactScore {
  std::uint64_t total_time = 0;   // U
  std::uint64_t scene_count = 0;  // |S|

  double value() const {
    return static_cast<double>(total_time) / static_cast<double>(scene_count);
  }
  friend bool operator==(const ExactScore&, const ExactScore&) = default;
};

/// counts[i] is D(q_{i+1}): scenes first discovered by the query at 1-based
/// position i+1.
struct DiscoveryProfile {
  std::vector<std::uint64_t> counts;

  friend bool operator==(const DiscoveryProfile&,
                         const DiscoveryProfile&) = default;
};

struct EliminationResult {
  ExactScore score;
  DiscoveryProfile profile;
};

struct Rational {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::uint64_t numerator, std::uint64_t denominator);

/// 1-based position of the first query of `seq` that discovers `s`. Throws
/// ErrorKind::undiscoverable_scene when no query does.
std::size_t tau(const QuerySequence& seq, Scene s);

/// Per-scene formulation: U = sum_s tau(Q, s). The scene range is split
/// across `threads` workers; the integer sum is independent of the split.
ExactScore score_by_scenes(const QuerySequence& seq, unsigned threads = 1);

/// Per-query formulation: materializes S and removes the scenes each query
/// discovers, so U = sum_i i * D(q_i).
EliminationResult score_by_elimination(const QuerySequence& seq);

/// Average T over all N! complete sequences, closed form in O(N n).
double sigma(const ProblemParams& params);

/// Largest N accepted by the factorial enumerations.
inline constexpr std::uint64_t kMaxEnumeratedQueries = 10;

/// sigma by enumerating every complete sequence. Exact; N <= 10.
Rational sigma_bruteforce(const ProblemParams& params);

/// Expected T for uniformly random queries drawn with repetition.
double expected_random_score(const ProblemParams& params);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  /// Samples that hit the cutoff; they contribute `cutoff` to the mean.
  std::uint64_t censored = 0;
};

/// Samples a scene uniformly from S, then draws uniform random queries until
/// one discovers it (or `cutoff` draws are spent). Deterministic for a seed,
/// whatever the thread count.
MonteCarloEstimate monte_carlo_random_score(const ProblemParams& params,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            std::uint64_t cutoff,
                                            unsigned threads = 1);

/// Expected number of undiscovered scenes after i queries of a uniformly
/// random complete sequence, for i = 0..N.
std::vector<double> expected_remaining_random(const ProblemParams& params);

/// True iff the counts are non-increasing.
bool check_monotonicity(const DiscoveryProfile& profile);

struct ScoreDelta {
  std::int64_t numerator = 0;
  std::uint64_t scene_count = 0;
};

/// U(Q) - U(Q with positions `position` and `position + 1` swapped), with
/// 1-based `position`. Positive means the swap improves the sequence.
ScoreDelta swap_improvement(const QuerySequence& seq, std::size_t position);

/// Profile CSV with columns i,query,D,scenes_remaining,cumulative_U. Queries
/// are rendered with '-' between spike IDs so no quoting is needed.
void write_profile_csv(std::ostream& out, const QuerySequence& seq,
                       const EliminationResult& result);

}  // namespace ksorder
