#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "ksorder/cli/commands.hpp"
#include "ksorder/error.hpp"
#include "ksorder/generators.hpp"
#include "ksorder/goal_driven.hpp"
#include "ksorder/scoring.hpp"

namespace ksorder::cli {
namespace {

std::string where(const ProblemParams& p) {
  return "n=" + std::to_string(p.n()) + " k=" + std::to_string(p.k());
}

class Suite {
 public:
  CheckOutcome& check(const std::string& name) {
    for (auto& o : outcomes_) {
      if (o.name == name) return o;
    }
    outcomes_.push_back(CheckOutcome{name});
    return outcomes_.back();
  }

  // Records one case; `fail` is empty on success.
  void record(const std::string& name, const std::string& fail) {
    auto& o = check(name);
    ++o.cases;
    if (!fail.empty() && o.failures.size() < 10) o.failures.push_back(fail);
  }

  std::vector<CheckOutcome> take() { return std::move(outcomes_); }

 private:
  std::vector<CheckOutcome> outcomes_;
};

// The original k = 3 pattern-shifting loops.
QuerySequence triple_loop(const ProblemParams& p) {
  QuerySequence seq(p);
  const int n = static_cast<int>(p.n());
  for (int dy = 1; dy <= n - 2; ++dy) {
    for (int dz = 1; dz <= n - dy - 1; ++dz) {
      for (int x = 0; x <= n - dy - dz - 1; ++x) {
        const unsigned y = static_cast<unsigned>(x + dy);
        const unsigned z = y + static_cast<unsigned>(dz);
        seq.push_back(make_query({static_cast<unsigned>(x), y, z}));
      }
    }
  }
  return seq;
}

QuerySequence shuffled(const ProblemParams& p, std::mt19937_64& rng) {
  auto seq = generate(ReferenceSpec{}, p).queries();
  std::shuffle(seq.begin(), seq.end(), rng);
  return QuerySequence(p, std::move(seq));
}

void check_combinatorics(Suite& suite, const ProblemParams& p) {
  if (p.query_count() > 10000) return;
  for (auto order : {ReferenceOrder::lexicographic, ReferenceOrder::co_lexicographic,
                     ReferenceOrder::revolving_door}) {
    std::set<Mask> seen;
    std::string fail;
    Mask prev = 0;
    for (Rank r = 0; r < p.query_count() && fail.empty(); ++r) {
      const Mask q = unrank(order, r, p.n(), p.k());
      if (rank(order, q, p.n(), p.k()) != r) fail = "rank(unrank(r)) != r at r=" + std::to_string(r);
      if (!seen.insert(q).second) fail = "repeated subset at r=" + std::to_string(r);
      if (order == ReferenceOrder::revolving_door && r > 0 &&
          std::popcount(q ^ prev) != 2) {
        suite.record("revolving-door-minimal-change",
                     where(p) + ": ranks " + std::to_string(r - 1) + "," +
                         std::to_string(r) + " differ by more than one exchange");
      }
      prev = q;
    }
    suite.record("rank-unrank-round-trip",
                 fail.empty() ? "" : where(p) + " " + std::string(to_string(order)) + ": " + fail);
  }
  suite.record("revolving-door-minimal-change", "");

  for (std::uint64_t base : {2u, 3u, 10u}) {
    auto ranks = base_unrank_ranks(p, base);
    std::sort(ranks.begin(), ranks.end());
    bool ok = ranks.size() == p.query_count();
    for (std::size_t i = 0; ok && i < ranks.size(); ++i) ok = ranks[i] == i;
    suite.record("digit-reversal-permutation",
                 ok ? "" : where(p) + " base " + std::to_string(base));
  }
}

void check_sequence(Suite& suite, const std::string& label, const QuerySequence& seq) {
  const auto& p = seq.params();
  std::string fail;
  try {
    seq.require_complete();
  } catch (const Error& e) {
    fail = e.what();
  }
  suite.record("completeness", fail.empty() ? "" : label + " " + where(p) + ": " + fail);
  if (!fail.empty()) return;

  const auto by_scenes = score_by_scenes(seq);
  const auto by_elim = score_by_elimination(seq);
  suite.record("scene-and-elimination-scores-agree",
               by_scenes == by_elim.score
                   ? ""
                   : label + " " + where(p) + ": " + std::to_string(by_scenes.total_time) +
                         " vs " + std::to_string(by_elim.score.total_time));

  std::uint64_t total = 0;
  for (auto d : by_elim.profile.counts) total += d;
  suite.record("profile-partitions-scenes",
               total == by_elim.score.scene_count ? "" : label + " " + where(p));
  suite.record("first-query-law",
               by_elim.profile.counts.front() == (std::uint64_t{1} << (p.n() - p.k()))
                   ? ""
                   : label + " " + where(p));
}

}  // namespace

std::vector<CheckOutcome> run_verification(const VerifyOptions& options) {
  Suite suite;
  std::mt19937_64 rng(options.seed);

  for (unsigned n = options.n_min; n <= options.n_max; ++n) {
    for (unsigned k = std::max(1u, options.k_min); k <= std::min(n, options.k_max); ++k) {
      const ProblemParams p(n, k);
      check_combinatorics(suite, p);

      const std::vector<GeneratorSpec> specs{
          ReferenceSpec{ReferenceOrder::lexicographic},
          ReferenceSpec{ReferenceOrder::co_lexicographic},
          ReferenceSpec{ReferenceOrder::revolving_door},
          PatternShiftSpec{ShiftReference::lexicographic},
          PatternShiftSpec{ShiftReference::revolving_door},
          PatternShiftSpec{ShiftReference::self},
          BaseUnrankSpec{2, ReferenceOrder::revolving_door},
          BaseUnrankSpec{3, ReferenceOrder::lexicographic},
          PrngPermutationSpec{rng()},
      };
      for (const auto& spec : specs) check_sequence(suite, generator_name(spec), generate(spec, p));

      const auto greedy = gse(p);
      check_sequence(suite, "gse", greedy.sequence);
      suite.record("gse-monotone", check_monotonicity(greedy.profile) ? "" : where(p));
      suite.record("gse-profile-matches-rescoring",
                   score_by_elimination(greedy.sequence).profile == greedy.profile ? ""
                                                                                    : where(p));
      check_sequence(suite, "mis", mis(p));

      if (k == 3) {
        suite.record("pattern-shift-matches-triple-loop",
                     generate(PatternShiftSpec{}, p) == triple_loop(p) ? "" : where(p));
      }

      // Relabeling invariance and swap improvement on a random sequence.
      const auto random_seq = shuffled(p, rng);
      std::vector<unsigned> perm(n);
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto relabeled = relabel(random_seq, SpikeRelabeling(perm));
      suite.record("relabeling-invariance",
                   score_by_elimination(relabeled).score == score_by_elimination(random_seq).score
                       ? ""
                       : where(p));

      const auto profile = score_by_elimination(random_seq);
      for (std::size_t i = 1; i < random_seq.size(); ++i) {
        if (profile.profile.counts[i - 1] >= profile.profile.counts[i]) continue;
        const auto delta = swap_improvement(random_seq, i);
        suite.record("monotone-swap-improves",
                     delta.numerator > 0 ? "" : where(p) + " position " + std::to_string(i));
      }

      if (n <= 8) {
        std::string fail;
        const auto& qs = random_seq.queries();
        for (std::size_t a = 0; a < qs.size() && fail.empty(); ++a) {
          for (std::size_t b = a + 1; b < qs.size() && fail.empty(); ++b) {
            std::uint64_t common = 0;
            for_each_scene(p, [&](Scene s) {
              common += discovers(qs[a], s) && discovers(qs[b], s);
            });
            if (common != intersection_scene_count(qs[a], qs[b], p)) {
              fail = where(p) + " {" + format_query(qs[a]) + "} {" + format_query(qs[b]) + "}";
            }
          }
        }
        suite.record("intersection-scene-count", fail);
      }

      if (p.query_count() <= 8) {
        const double closed = sigma(p);
        const double enumerated = sigma_bruteforce(p).value();
        suite.record("sigma-closed-form-vs-enumeration",
                     std::abs(closed - enumerated) <= 1e-9 * std::max(1.0, enumerated)
                         ? ""
                         : where(p));
      }
    }
  }

  if (options.sequence_path) {
    std::string fail;
    try {
      const auto seq = read_sequence_file(*options.sequence_path);
      check_sequence(suite, *options.sequence_path, seq);
    } catch (const Error& e) {
      suite.record("completeness", *options.sequence_path + ": " + e.what());
    }
  }
  return suite.take();
}

}  // namespace ksorder::cli
