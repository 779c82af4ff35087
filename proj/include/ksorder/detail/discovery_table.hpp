#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "ksorder/scene_model.hpp"

namespace ksorder::detail {

/// Dense bitsets over scene indices: row q holds the scenes query q can
/// discover. Queries are indexed by lexicographic rank, scenes by ascending
/// mask. Meant for the small-n exhaustive searches.
class DiscoveryTable {
 public:
  explicit DiscoveryTable(const ProblemParams& params);

  std::size_t words() const { return words_; }
  std::size_t query_count() const { return queries_.size(); }
  std::size_t scene_count() const { return scene_count_; }
  Query query(std::size_t i) const { return queries_[i]; }
  std::span<const std::uint64_t> row(std::size_t q) const {
    return {bits_.data() + q * words_, words_};
  }

  /// Bitset with every scene set.
  std::vector<std::uint64_t> all_scenes() const;

  /// popcount(live & row(q)).
  std::uint64_t count(std::span<const std::uint64_t> live, std::size_t q) const {
    const std::uint64_t* r = bits_.data() + q * words_;
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(live[w] & r[w]);
    return c;
  }

  /// out = live & ~row(q); returns the number of scenes removed.
  std::uint64_t remove(std::span<const std::uint64_t> live, std::size_t q,
                       std::span<std::uint64_t> out) const {
    const std::uint64_t* r = bits_.data() + q * words_;
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      c += std::popcount(live[w] & r[w]);
      out[w] = live[w] & ~r[w];
    }
    return c;
  }

 private:
  std::size_t words_ = 0;
  std::size_t scene_count_ = 0;
  std::vector<Query> queries_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace ksorder::detail
