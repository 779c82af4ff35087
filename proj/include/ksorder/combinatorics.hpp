#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ksorder {

using Rank = std::uint64_t;
using Mask = std::uint64_t;

/// Total orders over the k-subsets of {0..n-1} that come with a rank/unrank
/// bijection.
enum class ReferenceOrder { lexicographic, co_lexicographic, revolving_door };

std::string_view to_string(ReferenceOrder order);
ReferenceOrder parse_reference_order(std::string_view name);

/// C(n, k), zero when k > n. Throws ErrorKind::overflow when the result does
/// not fit 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) in floating point, for counts that legitimately exceed 64 bits
/// (scene totals at n = 100).
double binomial_real(unsigned n, unsigned k);

/// Precomputed Pascal triangle up to n, used on the hot rank/unrank paths.
class BinomialTable {
 public:
  explicit BinomialTable(unsigned max_n);

  std::uint64_t operator()(unsigned n, unsigned k) const {
    return k > n || n > max_n_ ? 0 : rows_[n * (max_n_ + 1) + k];
  }
  unsigned max_n() const { return max_n_; }

 private:
  unsigned max_n_;
  std::vector<std::uint64_t> rows_;
};

// Subsets are passed as sorted element lists or as n-bit masks. Element lists
// are always ascending and zero-based.

std::vector<unsigned> unrank_elements(ReferenceOrder order, Rank r, unsigned n,
                                      unsigned k);
Rank rank_elements(ReferenceOrder order, std::span<const unsigned> elements,
                   unsigned n);

Mask unrank(ReferenceOrder order, Rank r, unsigned n, unsigned k);
Rank rank(ReferenceOrder order, Mask q, unsigned n, unsigned k);

std::vector<unsigned> mask_to_elements(Mask m);
Mask elements_to_mask(std::span<const unsigned> elements);

/// Smallest L with base^L >= count (L = 0 when count <= 1).
unsigned digits_needed(std::uint64_t base, std::uint64_t count);

/// Counts 0..base^L-1, reverses the L base-`base` digits of every count and
/// skips results >= limit. This is the van der Corput radical inverse scaled
/// by base^L.
class DigitReversedCounter {
 public:
  DigitReversedCounter(std::uint64_t base, unsigned num_digits,
                       std::uint64_t limit);

  /// Returns false once the stream is exhausted.
  bool next(std::uint64_t& value);

 private:
  std::uint64_t reverse(std::uint64_t count) const;

  std::uint64_t base_;
  unsigned digits_;
  std::uint64_t limit_;
  std::uint64_t span_;  // base^L
  std::uint64_t counter_ = 0;
};

std::vector<std::uint64_t> digit_reversed_count(std::uint64_t base,
                                                unsigned num_digits,
                                                std::uint64_t limit);

}  // namespace ksorder
