#include "ksorder/detail/discovery_table.hpp"

namespace ksorder::detail {

DiscoveryTable::DiscoveryTable(const ProblemParams& params) {
  const auto scenes = enumerate_scenes(params);
  scene_count_ = scenes.size();
  words_ = (scene_count_ + 63) / 64;
  const std::uint64_t n_queries = params.query_count();
  queries_.reserve(n_queries);
  bits_.assign(n_queries * words_, 0);
  for (Rank r = 0; r < n_queries; ++r) {
    const Query q{unrank(ReferenceOrder::lexicographic, r, params.n(), params.k())};
    queries_.push_back(q);
    std::uint64_t* row = bits_.data() + r * words_;
    for (std::size_t s = 0; s < scenes.size(); ++s) {
      if (discovers(q, scenes[s])) row[s / 64] |= std::uint64_t{1} << (s % 64);
    }
  }
}

std::vector<std::uint64_t> DiscoveryTable::all_scenes() const {
  std::vector<std::uint64_t> live(words_, ~std::uint64_t{0});
  if (scene_count_ % 64 != 0) {
    live.back() = (std::uint64_t{1} << (scene_count_ % 64)) - 1;
  }
  return live;
}

}  // namespace ksorder::detail
