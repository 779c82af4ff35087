#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ksorder/combinatorics.hpp"

namespace ksorder {

/// Largest n for which a scene universe is ever materialized. 2^30 masks is
/// the memory ceiling; the CLI applies a lower default.
inline constexpr unsigned kMaxSceneSpikes = 30;
/// Largest n representable by a single-word mask.
inline constexpr unsigned kMaxMaskSpikes = 63;

/// n spikes numbered 0..n-1, queries of size k.
class ProblemParams {
 public:
  ProblemParams(unsigned n, unsigned k);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  /// N = C(n, k).
  std::uint64_t query_count() const { return query_count_; }
  Mask universe() const { return n_ >= 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }

  /// Throws ErrorKind::capacity when n does not fit a mask word.
  void require_masks() const;
  /// Throws ErrorKind::capacity when n exceeds `max_n` for scene enumeration.
  void require_scene_enumeration(unsigned max_n = kMaxSceneSpikes) const;

  friend bool operator==(const ProblemParams&, const ProblemParams&) = default;

 private:
  unsigned n_;
  unsigned k_;
  std::uint64_t query_count_;
};

struct Query {
  Mask mask = 0;

  unsigned size() const { return static_cast<unsigned>(std::popcount(mask)); }
  friend auto operator<=>(const Query&, const Query&) = default;
};

/// Ground truth: the set of spikes that are real stars.
struct Scene {
  Mask mask = 0;

  unsigned size() const { return static_cast<unsigned>(std::popcount(mask)); }
  friend auto operator<=>(const Scene&, const Scene&) = default;
};

inline bool discovers(Query q, Scene s) { return (q.mask & s.mask) == q.mask; }

Query make_query(std::span<const unsigned> elements);
Query make_query(std::initializer_list<unsigned> elements);

class QuerySequence {
 public:
  explicit QuerySequence(ProblemParams params) : params_(params) {}
  QuerySequence(ProblemParams params, std::vector<Query> queries);

  const ProblemParams& params() const { return params_; }
  const std::vector<Query>& queries() const { return queries_; }
  std::size_t size() const { return queries_.size(); }
  const Query& operator[](std::size_t i) const { return queries_[i]; }
  auto begin() const { return queries_.begin(); }
  auto end() const { return queries_.end(); }

  void push_back(Query q) { queries_.push_back(q); }
  void swap_positions(std::size_t a, std::size_t b) {
    std::swap(queries_[a], queries_[b]);
  }

  /// True when every one of the N k-subsets appears exactly once.
  bool is_complete() const;
  /// Throws ErrorKind::incomplete_sequence naming the first missing,
  /// duplicated or malformed query.
  void require_complete() const;

  friend bool operator==(const QuerySequence&, const QuerySequence&) = default;

 private:
  ProblemParams params_;
  std::vector<Query> queries_;
};

/// A bijection on spike IDs; perm[i] is the new label of spike i.
class SpikeRelabeling {
 public:
  explicit SpikeRelabeling(std::vector<unsigned> perm);

  static SpikeRelabeling identity(unsigned n);

  unsigned size() const { return static_cast<unsigned>(perm_.size()); }
  unsigned operator()(unsigned spike) const { return perm_[spike]; }
  Mask apply(Mask m) const;

 private:
  std::vector<unsigned> perm_;
};

QuerySequence relabel(const QuerySequence& seq, const SpikeRelabeling& p);

/// |S| = sum_{t=k}^{n} C(n, t), without enumeration.
std::uint64_t scene_count(const ProblemParams& params);

/// Every n-bit mask with popcount >= k, ascending.
std::vector<Scene> enumerate_scenes(const ProblemParams& params,
                                    unsigned max_n = kMaxSceneSpikes);

template <typename Fn>
void for_each_scene(const ProblemParams& params, Fn&& fn) {
  params.require_scene_enumeration();
  const Mask end = Mask{1} << params.n();
  for (Mask m = 0; m < end; ++m) {
    if (static_cast<unsigned>(std::popcount(m)) >= params.k()) fn(Scene{m});
  }
}

/// Renders a query as ascending spike IDs joined by `sep`, e.g. "0,1,2".
std::string format_query(Query q, char sep = ',');

// Sequence files: a header line "n=<n> k=<k>" followed by one query per line
// as comma-separated ascending spike IDs.
void write_sequence(std::ostream& out, const QuerySequence& seq);
/// Parses a sequence file. Completeness is not required here; call
/// QuerySequence::require_complete when it matters.
QuerySequence read_sequence(std::istream& in);
QuerySequence read_sequence_file(const std::string& path);
void write_sequence_file(const std::string& path, const QuerySequence& seq);

}  // namespace ksorder
