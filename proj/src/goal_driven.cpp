#include "ksorder/goal_driven.hpp"

#include <bit>
#include <limits>

#include "ksorder/error.hpp"

namespace ksorder {
namespace {

// Lexicographic rank of an ascending k-subset of 0..n-1 in O(k).
class LexRanker {
 public:
  LexRanker(unsigned n, unsigned k) : n_(n), k_(k), table_(n), total_(binomial(n, k)) {}

  Rank operator()(const unsigned* elements) const {
    Rank mirrored = 0;
    for (unsigned i = 0; i < k_; ++i) mirrored += table_(n_ - 1 - elements[i], k_ - i);
    return total_ - 1 - mirrored;
  }

 private:
  unsigned n_;
  unsigned k_;
  BinomialTable table_;
  std::uint64_t total_;
};

// Calls fn(subset) for every k-subset of `elements` (ascending).
template <typename Fn>
void for_each_k_subset(const unsigned* elements, unsigned t, unsigned k,
                       unsigned* subset, Fn&& fn) {
  unsigned idx[64];
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (unsigned i = 0; i < k; ++i) subset[i] = elements[idx[i]];
    fn(subset);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[i] == t - k + static_cast<unsigned>(i)) --i;
    if (i < 0) return;
    ++idx[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Index of the winning candidate among unused ones. `better(a, b)` is a strict
// preference on scores; ties go to the lowest or highest lexicographic rank.
template <typename Score, typename Better>
std::size_t select(const std::vector<Score>& score, const std::vector<bool>& used,
                   TieBreak tie_break, Better better) {
  std::size_t best = score.size();
  for (std::size_t r = 0; r < score.size(); ++r) {
    if (used[r]) continue;
    if (best == score.size() || better(score[r], score[best]) ||
        (tie_break == TieBreak::lexicographic_last && !better(score[best], score[r]))) {
      best = r;
    }
  }
  return best;
}

}  // namespace

GreedyResult gse(const ProblemParams& params, const GreedyOptions& options) {
  params.require_scene_enumeration(options.max_n);
  const unsigned n = params.n();
  const unsigned k = params.k();
  const std::uint64_t n_queries = params.query_count();

  // D of every candidate, maintained incrementally: when a scene is removed
  // every k-subset of it loses one.
  std::vector<std::uint64_t> gain(n_queries, std::uint64_t{1} << (n - k));
  std::vector<bool> used(n_queries, false);
  std::vector<Query> candidates(n_queries);
  for (Rank r = 0; r < n_queries; ++r) {
    candidates[r] = Query{unrank(ReferenceOrder::lexicographic, r, n, k)};
  }

  const std::size_t universe_size = std::size_t{1} << n;
  std::vector<std::uint64_t> alive((universe_size + 63) / 64, 0);
  for (Mask m = 0; m < universe_size; ++m) {
    if (static_cast<unsigned>(std::popcount(m)) >= k) alive[m / 64] |= Mask{1} << (m % 64);
  }

  const LexRanker lex_rank(n, k);
  unsigned elements[64];
  unsigned subset[64];

  GreedyResult result{QuerySequence(params), {}};
  result.profile.counts.reserve(n_queries);
  const auto more = [](std::uint64_t a, std::uint64_t b) { return a > b; };
  const auto fewer = [](std::uint64_t a, std::uint64_t b) { return a < b; };

  for (std::uint64_t step = 0; step < n_queries; ++step) {
    const std::size_t pick = options.fewest_first
                                 ? select(gain, used, options.tie_break, fewer)
                                 : select(gain, used, options.tie_break, more);
    used[pick] = true;
    const Mask q = candidates[pick].mask;
    const Mask free = params.universe() & ~q;
    std::uint64_t found = 0;
    // Walk every superset q | sub of the chosen query.
    for (Mask sub = free;; sub = (sub - 1) & free) {
      const Mask s = q | sub;
      Mask& word = alive[s / 64];
      const Mask bit = Mask{1} << (s % 64);
      if (word & bit) {
        word &= ~bit;
        ++found;
        unsigned t = 0;
        for (Mask m = s; m != 0; m &= m - 1) {
          elements[t++] = static_cast<unsigned>(std::countr_zero(m));
        }
        for_each_k_subset(elements, t, k, subset,
                          [&](const unsigned* c) { --gain[lex_rank(c)]; });
      }
      if (sub == 0) break;
    }
    result.sequence.push_back(candidates[pick]);
    result.profile.counts.push_back(found);
  }
  return result;
}

QuerySequence mis(const ProblemParams& params, TieBreak tie_break) {
  params.require_masks();
  const std::uint64_t n_queries = params.query_count();
  std::vector<Query> candidates(n_queries);
  for (Rank r = 0; r < n_queries; ++r) {
    candidates[r] = Query{unrank(ReferenceOrder::lexicographic, r, params.n(), params.k())};
  }
  // penalty[r] = -delta_mis(candidate r, history), updated with the newest
  // history entry after every step.
  std::vector<std::uint64_t> penalty(n_queries, 0);
  std::vector<bool> used(n_queries, false);
  const auto lower = [](std::uint64_t a, std::uint64_t b) { return a < b; };

  QuerySequence out(params);
  for (std::uint64_t step = 0; step < n_queries; ++step) {
    const std::size_t pick = select(penalty, used, tie_break, lower);
    used[pick] = true;
    const Mask chosen = candidates[pick].mask;
    out.push_back(candidates[pick]);
    for (std::size_t r = 0; r < n_queries; ++r) {
      if (!used[r]) {
        penalty[r] += (std::uint64_t{1} << std::popcount(candidates[r].mask & chosen)) - 1;
      }
    }
  }
  return out;
}

std::int64_t delta_mis(Query q, std::span<const Query> history) {
  std::int64_t delta = 0;
  for (const Query& h : history) {
    delta -= (std::int64_t{1} << std::popcount(q.mask & h.mask)) - 1;
  }
  return delta;
}

std::uint64_t intersection_scene_count(Query q1, Query q2,
                                       const ProblemParams& params) {
  const auto joint = static_cast<unsigned>(std::popcount(q1.mask | q2.mask));
  if (joint > params.n()) {
    throw Error(ErrorKind::invalid_argument, "queries exceed n spikes");
  }
  return std::uint64_t{1} << (params.n() - joint);
}

}  // namespace ksorder
