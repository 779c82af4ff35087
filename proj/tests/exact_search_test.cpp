#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ksorder/error.hpp"
#include "ksorder/exact_search.hpp"
#include "ksorder/generators.hpp"
#include "ksorder/scoring.hpp"
#include "test_support.hpp"

using namespace ksorder;

namespace {

// Walks every ordering with a monotone profile and checks at each node that
// the bound does not exceed the best monotone completion below it.
struct BoundAudit {
  std::vector<std::uint32_t> found;  // scene bitmap per query, n <= 5
  std::uint64_t violations = 0;
  std::uint64_t nodes = 0;

  explicit BoundAudit(const ProblemParams& p) {
    for (const auto& q : testing::lex_subsets(p.n(), p.k())) {
      std::uint32_t bits = 0;
      for (Mask s = 0; s < (Mask{1} << p.n()); ++s)
        if ((q.mask & ~s) == 0) bits |= std::uint32_t{1} << s;
      found.push_back(bits);
    }
  }

  std::uint64_t walk(std::uint32_t live, std::uint32_t used, std::size_t depth,
                     std::uint64_t partial, std::uint64_t cap) {
    ++nodes;
    if (depth == found.size()) return partial;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t q = 0; q < found.size(); ++q) {
      if (used & (1u << q)) continue;
      const auto d = static_cast<std::uint64_t>(std::popcount(live & found[q]));
      if (d > cap) continue;
      best = std::min(best, walk(live & ~found[q], used | (1u << q), depth + 1,
                                 partial + (depth + 1) * d, d));
    }
    const SearchNode node{depth, partial, static_cast<std::uint64_t>(std::popcount(live)), cap};
    if (best != std::numeric_limits<std::uint64_t>::max() && lower_bound(node) > best)
      ++violations;
    return best;
  }
};

}  // namespace

TEST_CASE("lower bound examples") {
  CHECK(lower_bound(SearchNode{0, 0, 16, 4}) == 40);
  CHECK(lower_bound(SearchNode{0, 0, 5, 2}) == 2 + 4 + 3);
  CHECK(lower_bound(SearchNode{3, 20, 0, 1}) == 20);
  CHECK(lower_bound(SearchNode{2, 10, 3, 1}) == 10 + 3 + 4 + 5);
}

TEST_CASE("lower bound is admissible for monotone completions") {
  for (auto [n, k] : {std::pair{4u, 3u}, {4u, 2u}, {5u, 3u}, {5u, 4u}}) {
    CAPTURE(n);
    CAPTURE(k);
    const ProblemParams p(n, k);
    BoundAudit audit(p);
    std::uint32_t all = 0;
    for (Mask s = 0; s < (Mask{1} << n); ++s)
      if (static_cast<unsigned>(std::popcount(s)) >= k) all |= std::uint32_t{1} << s;
    const auto best = audit.walk(all, 0, 0, 0, std::uint64_t{1} << (n - k));
    CHECK(audit.violations == 0);
    CHECK(best == brute_force(p).best_score.total_time);
  }
}

TEST_CASE("brute force on small cases") {
  const auto r43 = brute_force(ProblemParams(4, 3));
  CHECK(r43.best_score == ExactScore{11, 5});
  CHECK(r43.optimal_count == 24);
  REQUIRE(r43.worst_score.has_value());
  CHECK(r43.worst_score->total_time == 11);

  const auto r33 = brute_force(ProblemParams(3, 3));
  CHECK(r33.best_score == ExactScore{1, 1});
  CHECK(r33.optimal_count == 1);
  CHECK(brute_force(ProblemParams(4, 4)).best_score == ExactScore{1, 1});

  try {
    brute_force(ProblemParams(6, 3));
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
}

TEST_CASE("brute force on (5,3)") {
  const ProblemParams p(5, 3);
  const auto r = brute_force(p);
  CHECK(r.best_score == ExactScore{65, 16});
  CHECK(score_by_elimination(r.best).score == r.best_score);
  REQUIRE(r.worst.has_value());
  const auto lex = score_by_elimination(generate(ReferenceSpec{}, p)).score;
  CHECK(r.worst_score == lex);
  CHECK(r.worst_score->total_time == 71);
  CHECK(score_by_elimination(*r.worst).score == lex);
  CHECK(r.optimal_count > 0);
}

TEST_CASE("branch and prune on (5,3)") {
  const ProblemParams p(5, 3);
  const auto r = branch_and_prune(p);
  CHECK(r.best_score == ExactScore{65, 16});
  CHECK(r.best.is_complete());
  CHECK(score_by_elimination(r.best).score == r.best_score);
  CHECK(check_monotonicity(score_by_elimination(r.best).profile));
  CHECK(r.nodes_expanded > 0);
}

TEST_CASE("branch and prune agrees with brute force") {
  for (unsigned n = 1; n <= kMaxExactSpikes; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const ProblemParams p(n, k);
      if (p.query_count() > 10) continue;
      CAPTURE(n);
      CAPTURE(k);
      const auto exact = brute_force(p).best_score;
      CHECK(branch_and_prune(p).best_score == exact);
      SearchOptions bare;
      bare.score_bound = bare.monotonicity = bare.canonical = bare.singleton_tail = false;
      bare.seed_with_greedy = false;
      CHECK(branch_and_prune(p, bare).best_score == exact);
    }
  }
}

TEST_CASE("each prune rule alone preserves the optimum") {
  const ProblemParams p(5, 3);
  for (int rule = 0; rule < 4; ++rule) {
    SearchOptions options;
    options.score_bound = rule == 0;
    options.monotonicity = rule == 1;
    options.canonical = rule == 2;
    options.singleton_tail = rule == 3;
    CAPTURE(rule);
    const auto r = branch_and_prune(p, options);
    CHECK(r.best_score.total_time == 65);
    CHECK(score_by_elimination(r.best).score == r.best_score);
  }
}

TEST_CASE("counting optima") {
  SearchOptions options;
  options.count_optima = true;
  options.canonical = false;
  const auto r43 = branch_and_prune(ProblemParams(4, 3), options);
  CHECK(r43.best_score == ExactScore{11, 5});
  CHECK(r43.optimal_count >= 24);

  const ProblemParams p(5, 3);
  CHECK(branch_and_prune(p, options).optimal_count == brute_force(p).optimal_count);

  options.canonical = true;
  const auto canonical = branch_and_prune(p, options);
  CHECK(canonical.best_score.total_time == 65);
  CHECK(canonical.optimal_count > 0);
  CHECK(canonical.optimal_count < brute_force(p).optimal_count);
}

TEST_CASE("branch and prune capacity") {
  try {
    branch_and_prune(ProblemParams(7, 3));
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
}

TEST_CASE("search result JSON") {
  const auto r = branch_and_prune(ProblemParams(5, 3));
  std::ostringstream out;
  write_search_json(out, r);
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc.at("n") == 5);
  CHECK(doc.at("k") == 3);
  CHECK(doc.at("optimal_U") == 65);
  CHECK(doc.at("scene_count") == 16);
  CHECK(doc.at("score").get<double>() == doctest::Approx(65.0 / 16.0));
  CHECK(doc.at("sequence").size() == 10);
  CHECK(doc.at("sequence")[0] == nlohmann::json::array({0, 1, 2}));
  CHECK(doc.at("nodes_expanded") == r.nodes_expanded);
  for (const char* key : {"p1", "p2", "p3", "p4"}) CHECK(doc.at("pruned").contains(key));
}
