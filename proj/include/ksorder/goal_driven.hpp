#pragma once

#include <cstdint>
#include <span>

#include "ksorder/scene_model.hpp"
#include "ksorder/scoring.hpp"

namespace ksorder {

/// Which candidate wins among equal heuristic scores. Lexicographic-first is
/// the reference behaviour; the alternative exists for experiments since the
/// tie-break changes the final score.
enum class TieBreak { lexicographic_first, lexicographic_last };

struct GreedyOptions {
  TieBreak tie_break = TieBreak::lexicographic_first;
  /// Pick the query discovering the *fewest* remaining scenes. Only useful to
  /// reproduce the worst-case experiment.
  bool fewest_first = false;
  /// Scene enumeration cap for this run.
  unsigned max_n = kMaxSceneSpikes;
};

struct GreedyResult {
  QuerySequence sequence;
  DiscoveryProfile profile;
};

/// Greedy scene elimination: at every step take the unused query that
/// discovers the most still-undiscovered scenes.
GreedyResult gse(const ProblemParams& params, const GreedyOptions& options = {});

/// Minimally intersecting subsets: at every step take the unused query with
/// the largest delta_mis against the queries already chosen.
QuerySequence mis(const ProblemParams& params,
                  TieBreak tie_break = TieBreak::lexicographic_first);

/// -sum_h (2^|q & h| - 1). The empty intersection contributes nothing.
std::int64_t delta_mis(Query q, std::span<const Query> history);

/// Number of scenes both queries can discover: 2^(n - |q1 | q2|).
std::uint64_t intersection_scene_count(Query q1, Query q2,
                                       const ProblemParams& params);

}  // namespace ksorder
