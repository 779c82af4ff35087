#include "ksorder/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ksorder/error.hpp"

namespace ksorder {
namespace {

// C(64, k) fits 64 bits for every k, so one table covers every mask width.
const BinomialTable& table() {
  static const BinomialTable t(64);
  return t;
}

void check_subset_args(unsigned n, unsigned k) {
  if (n > 63) {
    throw Error(ErrorKind::capacity,
                "subset masks support n <= 63, got n=" + std::to_string(n));
  }
  if (k > n) {
    throw Error(ErrorKind::invalid_argument, "k must not exceed n");
  }
}

void check_rank(Rank r, std::uint64_t total) {
  if (r >= total) {
    throw Error(ErrorKind::out_of_range, "rank " + std::to_string(r) +
                                             " outside 0.." +
                                             std::to_string(total - 1));
  }
}

// Colex: rank = sum_i C(b_i, i+1) over ascending elements b_i.
Rank colex_rank(std::span<const unsigned> e) {
  Rank r = 0;
  for (std::size_t i = 0; i < e.size(); ++i) r += table()(e[i], i + 1);
  return r;
}

std::vector<unsigned> colex_unrank(Rank r, unsigned n, unsigned k) {
  std::vector<unsigned> e(k);
  unsigned x = n;
  for (unsigned i = k; i >= 1; --i) {
    while (table()(x, i) > r) --x;
    e[i - 1] = x;
    r -= table()(x, i);
  }
  return e;
}

// Revolving door with 1-based elements t_1 < ... < t_k (Kreher & Stinson).
Rank revdoor_rank(std::span<const unsigned> e) {
  const auto k = static_cast<unsigned>(e.size());
  std::int64_t r = -static_cast<std::int64_t>(k % 2);
  std::int64_t sign = 1;
  for (unsigned i = k; i >= 1; --i) {
    r += sign * static_cast<std::int64_t>(table()(e[i - 1] + 1, i));
    sign = -sign;
  }
  return static_cast<Rank>(r);
}

std::vector<unsigned> revdoor_unrank(Rank r, unsigned n, unsigned k) {
  std::vector<unsigned> e(k);
  unsigned x = n;
  for (unsigned i = k; i >= 1; --i) {
    while (table()(x, i) > r) --x;
    e[i - 1] = x;  // t_i = x + 1, stored zero-based
    r = table()(x + 1, i) - r - 1;
  }
  return e;
}

void check_elements(std::span<const unsigned> e, unsigned n) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= n || (i > 0 && e[i] <= e[i - 1])) {
      throw Error(ErrorKind::invalid_argument,
                  "query elements must be strictly ascending and below n");
    }
  }
}

}  // namespace

std::string_view to_string(ReferenceOrder order) {
  switch (order) {
    case ReferenceOrder::lexicographic: return "lex";
    case ReferenceOrder::co_lexicographic: return "colex";
    case ReferenceOrder::revolving_door: return "revdoor";
  }
  return "?";
}

ReferenceOrder parse_reference_order(std::string_view name) {
  if (name == "lex" || name == "lexicographic") return ReferenceOrder::lexicographic;
  if (name == "colex" || name == "co-lexicographic") return ReferenceOrder::co_lexicographic;
  if (name == "revdoor" || name == "revolving-door") return ReferenceOrder::revolving_door;
  throw Error(ErrorKind::configuration,
              "unknown reference order '" + std::string(name) + "'");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // c * (n - k + i) / i is exact at every step.
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) {
      throw Error(ErrorKind::overflow, "C(" + std::to_string(n) + "," +
                                           std::to_string(k) +
                                           ") does not fit 64 bits");
    }
  }
  return static_cast<std::uint64_t>(c);
}

double binomial_real(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

BinomialTable::BinomialTable(unsigned max_n)
    : max_n_(max_n), rows_((max_n + 1) * (max_n + 1), 0) {
  const unsigned w = max_n + 1;
  for (unsigned n = 0; n <= max_n; ++n) {
    rows_[n * w] = 1;
    for (unsigned k = 1; k <= n; ++k) {
      rows_[n * w + k] = rows_[(n - 1) * w + k - 1] + rows_[(n - 1) * w + k];
    }
  }
}

std::vector<unsigned> unrank_elements(ReferenceOrder order, Rank r, unsigned n,
                                      unsigned k) {
  check_subset_args(n, k);
  const std::uint64_t total = table()(n, k);
  check_rank(r, total);
  switch (order) {
    case ReferenceOrder::lexicographic: {
      // Lex order on A is reverse colex order on {n-1-a : a in A}.
      auto e = colex_unrank(total - 1 - r, n, k);
      for (auto& x : e) x = n - 1 - x;
      std::reverse(e.begin(), e.end());
      return e;
    }
    case ReferenceOrder::co_lexicographic:
      return colex_unrank(r, n, k);
    case ReferenceOrder::revolving_door:
      return revdoor_unrank(r, n, k);
  }
  return {};
}

Rank rank_elements(ReferenceOrder order, std::span<const unsigned> elements,
                   unsigned n) {
  const auto k = static_cast<unsigned>(elements.size());
  check_subset_args(n, k);
  check_elements(elements, n);
  switch (order) {
    case ReferenceOrder::lexicographic: {
      std::vector<unsigned> mirrored(elements.rbegin(), elements.rend());
      for (auto& x : mirrored) x = n - 1 - x;
      return table()(n, k) - 1 - colex_rank(mirrored);
    }
    case ReferenceOrder::co_lexicographic:
      return colex_rank(elements);
    case ReferenceOrder::revolving_door:
      return revdoor_rank(elements);
  }
  return 0;
}

Mask unrank(ReferenceOrder order, Rank r, unsigned n, unsigned k) {
  return elements_to_mask(unrank_elements(order, r, n, k));
}

Rank rank(ReferenceOrder order, Mask q, unsigned n, unsigned k) {
  check_subset_args(n, k);
  if (static_cast<unsigned>(std::popcount(q)) != k || (n < 64 && (q >> n) != 0)) {
    throw Error(ErrorKind::invalid_argument,
                "query is not a " + std::to_string(k) + "-subset of 0.." +
                    std::to_string(n - 1));
  }
  return rank_elements(order, mask_to_elements(q), n);
}

std::vector<unsigned> mask_to_elements(Mask m) {
  std::vector<unsigned> e;
  e.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    e.push_back(static_cast<unsigned>(std::countr_zero(m)));
    m &= m - 1;
  }
  return e;
}

Mask elements_to_mask(std::span<const unsigned> elements) {
  Mask m = 0;
  for (unsigned e : elements) m |= Mask{1} << e;
  return m;
}

unsigned digits_needed(std::uint64_t base, std::uint64_t count) {
  if (base < 2) throw Error(ErrorKind::invalid_argument, "base must be >= 2");
  unsigned digits = 0;
  unsigned __int128 span = 1;
  while (span < count) {
    span *= base;
    ++digits;
  }
  return digits;
}

DigitReversedCounter::DigitReversedCounter(std::uint64_t base,
                                           unsigned num_digits,
                                           std::uint64_t limit)
    : base_(base), digits_(num_digits), limit_(limit) {
  if (base < 2) throw Error(ErrorKind::invalid_argument, "base must be >= 2");
  unsigned __int128 span = 1;
  for (unsigned i = 0; i < num_digits; ++i) {
    span *= base;
    if (span > UINT64_MAX) {
      throw Error(ErrorKind::overflow, "base^digits does not fit 64 bits");
    }
  }
  span_ = static_cast<std::uint64_t>(span);
  if (limit > span_) {
    throw Error(ErrorKind::invalid_argument, "limit exceeds base^digits");
  }
}

std::uint64_t DigitReversedCounter::reverse(std::uint64_t count) const {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < digits_; ++i) {
    out = out * base_ + count % base_;
    count /= base_;
  }
  return out;
}

bool DigitReversedCounter::next(std::uint64_t& value) {
  while (counter_ < span_) {
    const std::uint64_t r = reverse(counter_++);
    if (r < limit_) {
      value = r;
      return true;
    }
  }
  return false;
}

std::vector<std::uint64_t> digit_reversed_count(std::uint64_t base,
                                                unsigned num_digits,
                                                std::uint64_t limit) {
  DigitReversedCounter counter(base, num_digits, limit);
  std::vector<std::uint64_t> out;
  out.reserve(limit);
  for (std::uint64_t v; counter.next(v);) out.push_back(v);
  return out;
}

}  // namespace ksorder
