#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "ksorder/scene_model.hpp"
#include "ksorder/scoring.hpp"

namespace ksorder {

/// The part of a search node the score bound looks at.
struct SearchNode {
  std::size_t depth = 0;            // queries placed so far
  std::uint64_t partial_time = 0;   // sum of i * D(q_i) over placed queries
  std::uint64_t remaining = 0;      // undiscovered scenes
  std::uint64_t cap = 0;            // D of the last placed query
};

/// Optimistic completion cost: positions depth+1, depth+2, ... each take
/// min(cap, what is left) scenes. Admissible for every descendant whose
/// profile stays non-increasing, which includes every optimum.
std::uint64_t lower_bound(const SearchNode& node);

struct PruneCounts {
  std::uint64_t score_bound = 0;     // P1
  std::uint64_t monotonicity = 0;    // P2
  std::uint64_t canonical = 0;       // P3
  std::uint64_t singleton_tail = 0;  // P4
};

struct SearchOptions {
  bool score_bound = true;
  bool monotonicity = true;
  bool canonical = true;
  bool singleton_tail = true;
  /// Start from the greedy scene elimination score as the incumbent bound.
  bool seed_with_greedy = true;
  /// Keep exploring ties and count every optimal complete sequence reached.
  /// Disables the greedy seed. A closed singleton tail of length R counts
  /// as R! sequences.
  bool count_optima = false;
};

struct SearchResult {
  QuerySequence best;
  ExactScore best_score;
  /// Brute force only: the lexicographically first worst sequence.
  std::optional<QuerySequence> worst;
  std::optional<ExactScore> worst_score;
  std::uint64_t nodes_expanded = 0;
  PruneCounts pruned;
  /// Number of optimal sequences seen (brute force, or count_optima mode).
  std::uint64_t optimal_count = 0;
};

/// Every one of the N! orderings, N <= kMaxEnumeratedQueries. Ties resolve to
/// the lexicographically least rank vector.
SearchResult brute_force(const ProblemParams& params);

/// Largest n accepted by branch_and_prune.
inline constexpr unsigned kMaxExactSpikes = 6;

/// Depth-first branch and prune. Returns the canonical optimum with the
/// lexicographically least rank vector among those the prune rules keep.
SearchResult branch_and_prune(const ProblemParams& params,
                              const SearchOptions& options = {});

/// JSON object with n, k, optimal_U, scene_count, score, sequence,
/// nodes_expanded and pruned{p1,p2,p3,p4}.
void write_search_json(std::ostream& out, const SearchResult& result);

}  // namespace ksorder
