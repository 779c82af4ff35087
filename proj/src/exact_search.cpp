#include "ksorder/exact_search.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ksorder/detail/discovery_table.hpp"
#include "ksorder/error.hpp"
#include "ksorder/goal_driven.hpp"

namespace ksorder {
namespace {

constexpr std::uint64_t kNoBound = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_factorial(std::uint64_t r) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= r; ++i) {
    if (f > kNoBound / i) return kNoBound;
    f *= i;
  }
  return f;
}

QuerySequence sequence_from_ranks(const ProblemParams& params,
                                  const detail::DiscoveryTable& table,
                                  const std::vector<std::size_t>& ranks) {
  QuerySequence seq(params);
  for (std::size_t r : ranks) seq.push_back(table.query(r));
  return seq;
}

class BranchAndPrune {
 public:
  BranchAndPrune(const ProblemParams& params, const SearchOptions& options)
      : params_(params),
        options_(options),
        table_(params),
        words_(table_.words()),
        n_queries_(table_.query_count()),
        live_((n_queries_ + 1) * words_),
        used_(n_queries_, 0),
        gains_((n_queries_ + 1) * n_queries_) {
    const auto all = table_.all_scenes();
    std::copy(all.begin(), all.end(), live_.begin());
    path_.reserve(n_queries_);
    max_gain_ = std::uint64_t{1} << (params.n() - params.k());
  }

  SearchResult run() {
    if (options_.seed_with_greedy && !options_.count_optima) {
      // Only sequences at least as good as the greedy one are of interest.
      const auto greedy = gse(params_);
      std::uint64_t greedy_time = 0;
      for (std::size_t i = 0; i < greedy.profile.counts.size(); ++i) {
        greedy_time += (i + 1) * greedy.profile.counts[i];
      }
      best_time_ = greedy_time + 1;
    }
    search(0, 0, table_.scene_count(), max_gain_ + 1, -1);
    SearchResult result{sequence_from_ranks(params_, table_, best_path_),
                        ExactScore{best_time_, table_.scene_count()}};
    result.nodes_expanded = nodes_;
    result.pruned = pruned_;
    result.optimal_count = optimal_count_;
    return result;
  }

 private:
  // Record a complete sequence made of path_ plus the unused queries in
  // ascending rank order.
  void record(std::uint64_t total, std::uint64_t multiplicity) {
    if (total < best_time_ || (options_.count_optima && best_path_.empty())) {
      best_time_ = total;
      optimal_count_ = multiplicity;
      best_path_ = path_;
      for (std::size_t q = 0; q < n_queries_; ++q) {
        if (!used_[q]) best_path_.push_back(q);
      }
    } else if (options_.count_optima && total == best_time_) {
      optimal_count_ = optimal_count_ > kNoBound - multiplicity
                           ? kNoBound
                           : optimal_count_ + multiplicity;
    }
  }

  bool prune_by_bound(std::uint64_t bound) const {
    return options_.count_optima ? bound > best_time_ : bound >= best_time_;
  }

  void search(std::size_t depth, std::uint64_t partial, std::uint64_t remaining,
              std::uint64_t cap, int top_label) {
    if (depth == n_queries_) {
      record(partial, 1);
      return;
    }
    ++nodes_;
    std::span<const std::uint64_t> live(live_.data() + depth * words_, words_);
    std::uint64_t* gain = gains_.data() + depth * n_queries_;
    std::uint64_t best_gain = 0;
    for (std::size_t q = 0; q < n_queries_; ++q) {
      if (used_[q]) continue;
      gain[q] = table_.count(live, q);
      best_gain = std::max(best_gain, gain[q]);
    }

    // Every remaining query now finds exactly its own scene, so all
    // orderings of the tail cost the same.
    if (options_.singleton_tail && best_gain == 1) {
      ++pruned_.singleton_tail;
      std::uint64_t tail = partial;
      for (std::uint64_t j = 1; j <= remaining; ++j) tail += depth + j;
      record(tail, saturating_factorial(remaining));
      return;
    }

    std::span<std::uint64_t> next(live_.data() + (depth + 1) * words_, words_);
    for (std::size_t q = 0; q < n_queries_; ++q) {
      if (used_[q]) continue;
      const Mask mask = table_.query(q).mask;
      if (options_.canonical && !canonical(mask, top_label)) {
        ++pruned_.canonical;
        continue;
      }
      const std::uint64_t d = gain[q];
      if (options_.monotonicity && d > cap) {
        ++pruned_.monotonicity;
        continue;
      }
      const std::uint64_t child_partial = partial + (depth + 1) * d;
      if (options_.score_bound) {
        const SearchNode child{depth + 1, child_partial, remaining - d,
                               options_.monotonicity ? d : max_gain_};
        if (prune_by_bound(lower_bound(child))) {
          ++pruned_.score_bound;
          continue;
        }
      }
      table_.remove(live, q, next);
      used_[q] = 1;
      path_.push_back(q);
      search(depth + 1, child_partial, remaining - d, d,
             std::max(top_label, 63 - std::countl_zero(mask)));
      path_.pop_back();
      used_[q] = 0;
    }
  }

  // Spike labels above the highest one used so far may only enter as the
  // next contiguous block, which picks one representative per relabeling.
  static bool canonical(Mask q, int top_label) {
    const unsigned first_new = static_cast<unsigned>(top_label + 1);
    const Mask fresh = q >> first_new;
    return (fresh & (fresh + 1)) == 0;
  }

  ProblemParams params_;
  SearchOptions options_;
  detail::DiscoveryTable table_;
  std::size_t words_;
  std::size_t n_queries_;
  std::vector<std::uint64_t> live_;
  std::vector<char> used_;
  std::vector<std::uint64_t> gains_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> best_path_;
  std::uint64_t best_time_ = kNoBound;
  std::uint64_t max_gain_ = 0;
  std::uint64_t optimal_count_ = 0;
  std::uint64_t nodes_ = 0;
  PruneCounts pruned_;
};

}  // namespace

std::uint64_t lower_bound(const SearchNode& node) {
  if (node.remaining == 0) return node.partial_time;
  if (node.cap == 0) return kNoBound;
  // Positions depth+1 .. depth+full take `cap` scenes each, then one more
  // position takes the rest.
  const std::uint64_t full = node.remaining / node.cap;
  const std::uint64_t rest = node.remaining % node.cap;
  const std::uint64_t d = node.depth;
  return node.partial_time + node.cap * (full * d + full * (full + 1) / 2) +
         rest * (d + full + 1);
}

SearchResult brute_force(const ProblemParams& params) {
  const std::uint64_t n_queries = params.query_count();
  if (n_queries > kMaxEnumeratedQueries) {
    throw Error(ErrorKind::capacity,
                "brute force needs N <= " + std::to_string(kMaxEnumeratedQueries) +
                    ", got N=" + std::to_string(n_queries));
  }
  const detail::DiscoveryTable table(params);
  const std::size_t words = table.words();
  std::vector<std::uint64_t> live((n_queries + 1) * words);
  const auto all = table.all_scenes();
  std::copy(all.begin(), all.end(), live.begin());
  std::vector<char> used(n_queries, 0);
  std::vector<std::size_t> path;
  std::vector<std::size_t> best_path;
  std::vector<std::size_t> worst_path;
  std::uint64_t best = kNoBound;
  std::uint64_t worst = 0;
  std::uint64_t best_count = 0;
  std::uint64_t nodes = 0;

  auto walk = [&](auto&& self, std::size_t depth, std::uint64_t partial) -> void {
    ++nodes;
    if (depth == n_queries) {
      if (partial < best) {
        best = partial;
        best_path = path;
        best_count = 0;
      }
      if (partial == best) ++best_count;
      if (partial > worst || worst_path.empty()) {
        worst = partial;
        worst_path = path;
      }
      return;
    }
    std::span<const std::uint64_t> cur(live.data() + depth * words, words);
    std::span<std::uint64_t> next(live.data() + (depth + 1) * words, words);
    for (std::size_t q = 0; q < n_queries; ++q) {
      if (used[q]) continue;
      used[q] = 1;
      path.push_back(q);
      const std::uint64_t found = table.remove(cur, q, next);
      self(self, depth + 1, partial + (depth + 1) * found);
      path.pop_back();
      used[q] = 0;
    }
  };
  walk(walk, 0, 0);

  SearchResult result{sequence_from_ranks(params, table, best_path),
                      ExactScore{best, table.scene_count()}};
  result.worst = sequence_from_ranks(params, table, worst_path);
  result.worst_score = ExactScore{worst, table.scene_count()};
  result.nodes_expanded = nodes;
  result.optimal_count = best_count;
  return result;
}

SearchResult branch_and_prune(const ProblemParams& params,
                              const SearchOptions& options) {
  if (params.n() > kMaxExactSpikes) {
    throw Error(ErrorKind::capacity,
                "branch and prune supports n <= " + std::to_string(kMaxExactSpikes));
  }
  return BranchAndPrune(params, options).run();
}

void write_search_json(std::ostream& out, const SearchResult& result) {
  const auto& p = result.best.params();
  nlohmann::json sequence = nlohmann::json::array();
  for (const Query& q : result.best.queries()) sequence.push_back(mask_to_elements(q.mask));
  nlohmann::json doc = {
      {"n", p.n()},
      {"k", p.k()},
      {"optimal_U", result.best_score.total_time},
      {"scene_count", result.best_score.scene_count},
      {"score", result.best_score.value()},
      {"sequence", sequence},
      {"nodes_expanded", result.nodes_expanded},
      {"pruned",
       {{"p1", result.pruned.score_bound},
        {"p2", result.pruned.monotonicity},
        {"p3", result.pruned.canonical},
        {"p4", result.pruned.singleton_tail}}},
  };
  out << doc.dump(2) << '\n';
}

}  // namespace ksorder
