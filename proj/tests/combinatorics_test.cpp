#include <bit>
#include <set>

#include "doctest.h"
#include "ksorder/combinatorics.hpp"
#include "ksorder/error.hpp"
#include "test_support.hpp"

using namespace ksorder;

namespace {

// Pascal's rule, independent of the multiplicative formula.
std::uint64_t pascal(unsigned n, unsigned k) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return k > n ? 0 : t[n][k];
}

constexpr ReferenceOrder kOrders[] = {ReferenceOrder::lexicographic,
                                      ReferenceOrder::co_lexicographic,
                                      ReferenceOrder::revolving_door};

}  // namespace

TEST_CASE("binomial small values") {
  CHECK(binomial(5, 3) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(20, 10) == pascal(20, 10));
  CHECK(pascal(20, 10) == 184756);
  for (unsigned n = 0; n <= 40; ++n) {
    for (unsigned k = 0; k <= n + 1; ++k) CHECK(binomial(n, k) == pascal(n, k));
  }
}

TEST_CASE("binomial overflow is detected") {
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(binomial(67, 33) == 14226520737620288370ULL);
  try {
    binomial(68, 34);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::overflow);
  }
}

TEST_CASE("binomial_real tracks the integer version") {
  CHECK(binomial_real(100, 3) == doctest::Approx(161700.0));
  CHECK(binomial_real(20, 10) == doctest::Approx(184756.0));
  CHECK(binomial_real(3, 4) == 0.0);
}

TEST_CASE("lexicographic unrank examples") {
  CHECK(unrank_elements(ReferenceOrder::lexicographic, 0, 5, 3) == std::vector<unsigned>{0, 1, 2});
  CHECK(unrank_elements(ReferenceOrder::lexicographic, 1, 5, 3) == std::vector<unsigned>{0, 1, 3});
  CHECK(unrank_elements(ReferenceOrder::lexicographic, 2, 5, 3) == std::vector<unsigned>{0, 1, 4});
  CHECK(rank(ReferenceOrder::lexicographic, make_query({0, 1, 2}).mask, 5, 3) == 0);
  CHECK(rank(ReferenceOrder::lexicographic, make_query({2, 3, 4}).mask, 5, 3) == 9);
}

TEST_CASE("lexicographic order matches recursive enumeration") {
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned k = 0; k <= n; ++k) {
      const auto expected = testing::lex_subsets(n, k);
      REQUIRE(expected.size() == binomial(n, k));
      for (Rank r = 0; r < expected.size(); ++r) {
        CHECK(unrank(ReferenceOrder::lexicographic, r, n, k) == expected[r].mask);
      }
    }
  }
}

TEST_CASE("co-lexicographic order sorts by largest element first") {
  // Colex compares subsets by their reversed element lists.
  const auto subsets = testing::lex_subsets(7, 3);
  std::vector<std::vector<unsigned>> keys;
  for (const auto& q : subsets) {
    auto e = mask_to_elements(q.mask);
    std::reverse(e.begin(), e.end());
    keys.push_back(e);
  }
  std::sort(keys.begin(), keys.end());
  for (Rank r = 0; r < keys.size(); ++r) {
    auto e = keys[r];
    std::reverse(e.begin(), e.end());
    CHECK(unrank_elements(ReferenceOrder::co_lexicographic, r, 7, 3) == e);
  }
  const Mask q7 = unrank(ReferenceOrder::co_lexicographic, 7, 5, 3);
  CHECK(rank(ReferenceOrder::co_lexicographic, q7, 5, 3) == 7);
}

TEST_CASE("rank and unrank are inverse bijections for every order") {
  for (auto order : kOrders) {
    CAPTURE(to_string(order));
    for (unsigned n = 1; n <= 12; ++n) {
      for (unsigned k = 0; k <= n; ++k) {
        const std::uint64_t total = binomial(n, k);
        if (total > 10000) continue;
        std::set<Mask> seen;
        for (Rank r = 0; r < total; ++r) {
          const Mask q = unrank(order, r, n, k);
          CHECK(std::popcount(q) == static_cast<int>(k));
          CHECK((q >> n) == 0);
          CHECK(seen.insert(q).second);
          CHECK(rank(order, q, n, k) == r);
        }
        CHECK(seen.size() == total);
      }
    }
  }
}

TEST_CASE("revolving door neighbours differ by one exchange") {
  for (unsigned n = 2; n <= 12; ++n) {
    for (unsigned k = 1; k < n; ++k) {
      const std::uint64_t total = binomial(n, k);
      for (Rank r = 1; r < total; ++r) {
        const Mask a = unrank(ReferenceOrder::revolving_door, r - 1, n, k);
        const Mask b = unrank(ReferenceOrder::revolving_door, r, n, k);
        CHECK(std::popcount(a ^ b) == 2);
      }
    }
  }
}

TEST_CASE("rank/unrank error paths") {
  CHECK_THROWS_AS(unrank(ReferenceOrder::lexicographic, 10, 5, 3), Error);
  try {
    unrank(ReferenceOrder::revolving_door, 10, 5, 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_range);
  }
  try {
    rank(ReferenceOrder::lexicographic, make_query({0, 1}).mask, 5, 3);
    FAIL("expected invalid query");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
  CHECK_THROWS_AS(rank(ReferenceOrder::lexicographic, make_query({0, 1, 5}).mask, 5, 3), Error);
  const std::vector<unsigned> unsorted{2, 1, 3};
  CHECK_THROWS_AS(rank_elements(ReferenceOrder::co_lexicographic, unsorted, 5), Error);
}

TEST_CASE("digit reversed counting") {
  CHECK(digit_reversed_count(2, 4, 16) ==
        std::vector<std::uint64_t>{0, 8, 4, 12, 2, 10, 6, 14, 1, 9, 5, 13, 3, 11, 7, 15});
  CHECK(digit_reversed_count(2, 4, 10) ==
        std::vector<std::uint64_t>{0, 8, 4, 2, 6, 1, 9, 5, 3, 7});
  CHECK(digit_reversed_count(2, 1, 2) == std::vector<std::uint64_t>{0, 1});
  CHECK(digit_reversed_count(10, 1, 10) ==
        std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(digit_reversed_count(3, 2, 9) ==
        std::vector<std::uint64_t>{0, 3, 6, 1, 4, 7, 2, 5, 8});
  CHECK(digits_needed(2, 10) == 4);
  CHECK(digits_needed(2, 16) == 4);
  CHECK(digits_needed(2, 17) == 5);
  CHECK(digits_needed(10, 10) == 1);
  CHECK(digits_needed(7, 1) == 0);
}

TEST_CASE("digit reversed counting is a permutation") {
  for (std::uint64_t base = 2; base <= 7; ++base) {
    for (unsigned digits = 0; digits <= 5; ++digits) {
      std::uint64_t span = 1;
      for (unsigned i = 0; i < digits; ++i) span *= base;
      auto out = digit_reversed_count(base, digits, span);
      std::sort(out.begin(), out.end());
      REQUIRE(out.size() == span);
      for (std::uint64_t i = 0; i < span; ++i) CHECK(out[i] == i);
    }
  }
}

TEST_CASE("digit reversed counting rejects bad arguments") {
  try {
    digit_reversed_count(1, 4, 1);
    FAIL("expected invalid base");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
  CHECK_THROWS_AS(digit_reversed_count(2, 3, 9), Error);
}
