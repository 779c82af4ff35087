#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ksorder/combinatorics.hpp"
#include "ksorder/scene_model.hpp"

namespace ksorder::testing {

/// All k-subsets in lexicographic order, built by plain recursion rather than
/// through the rank/unrank code.
inline std::vector<Query> lex_subsets(unsigned n, unsigned k) {
  std::vector<Query> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned start) -> void {
    if (cur.size() == k) {
      out.push_back(make_query(cur));
      return;
    }
    for (unsigned e = start; e < n; ++e) {
      cur.push_back(e);
      self(self, e + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline QuerySequence random_sequence(const ProblemParams& p, std::mt19937_64& rng) {
  auto qs = lex_subsets(p.n(), p.k());
  std::shuffle(qs.begin(), qs.end(), rng);
  return QuerySequence(p, std::move(qs));
}

inline std::vector<unsigned> random_permutation(unsigned n, std::mt19937_64& rng) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// Per-scene objective over an explicit mask loop: for each
/// scene, the first position that covers it.
inline std::uint64_t naive_total_time(const QuerySequence& seq) {
  const auto& p = seq.params();
  std::uint64_t total = 0;
  for (Mask s = 0; s < (Mask{1} << p.n()); ++s) {
    if (static_cast<unsigned>(std::popcount(s)) < p.k()) continue;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if ((seq[i].mask & ~s) == 0) {
        total += i + 1;
        break;
      }
    }
  }
  return total;
}

/// The k = 3 pattern-shifting loops, transcribed as published.
inline QuerySequence triple_loop(const ProblemParams& p) {
  QuerySequence seq(p);
  const int n = static_cast<int>(p.n());
  for (int dy = 1; dy <= n - 2; ++dy) {
    for (int dz = 1; dz <= n - dy - 1; ++dz) {
      for (int x = 0; x <= n - dy - dz - 1; ++x) {
        const int y = x + dy;
        const int z = y + dz;
        seq.push_back(make_query({static_cast<unsigned>(x), static_cast<unsigned>(y),
                                  static_cast<unsigned>(z)}));
      }
    }
  }
  return seq;
}

inline QuerySequence sequence_of(const ProblemParams& p,
                                 std::initializer_list<std::initializer_list<unsigned>> qs) {
  QuerySequence seq(p);
  for (auto q : qs) seq.push_back(make_query(q));
  return seq;
}

}  // namespace ksorder::testing
