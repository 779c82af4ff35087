#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "ksorder/combinatorics.hpp"
#include "ksorder/scene_model.hpp"

namespace ksorder {

/// Reference sequence for pattern shifting: one of the ranked orders, or
/// pattern shifting itself applied recursively down to k = 0.
enum class ShiftReference { lexicographic, co_lexicographic, revolving_door, self };

std::string_view to_string(ShiftReference ref);
ShiftReference parse_shift_reference(std::string_view name);

/// Emits the reference order itself (lex, colex or revolving door).
struct ReferenceSpec {
  ReferenceOrder order = ReferenceOrder::lexicographic;
};

struct PatternShiftSpec {
  ShiftReference reference = ShiftReference::lexicographic;
};

/// Ranks in van der Corput (digit-reversed) order, mapped through `reference`.
struct BaseUnrankSpec {
  std::uint64_t base = 2;
  ReferenceOrder reference = ReferenceOrder::revolving_door;
};

/// Full-period pseudorandom permutation of the ranks, mapped through lex.
struct PrngPermutationSpec {
  std::uint64_t seed = 0;
};

using GeneratorSpec =
    std::variant<ReferenceSpec, PatternShiftSpec, BaseUnrankSpec, PrngPermutationSpec>;

/// Short name used by the CLI and in reports ("lex", "base-unrank", ...).
std::string generator_name(const GeneratorSpec& spec);

/// Streaming producer of queries. Generators hold O(k) state (O(1) for the
/// permutation generator); they never store emitted queries.
class QueryGenerator {
 public:
  virtual ~QueryGenerator() = default;
  /// Next query, or nullopt once all N have been emitted.
  virtual std::optional<Query> next() = 0;
};

std::unique_ptr<QueryGenerator> make_generator(const GeneratorSpec& spec,
                                               const ProblemParams& params);

/// Materializes the full stream of `make_generator`.
QuerySequence generate(const GeneratorSpec& spec, const ProblemParams& params);

/// Pattern shifting over an explicit reference: `reference` must list every
/// (k-1)-subset of {0..n-2} exactly once. Throws ErrorKind::incomplete_sequence
/// otherwise.
QuerySequence pattern_shift(const ProblemParams& params,
                            std::span<const Query> reference);

QuerySequence base_unrank(const ProblemParams& params, std::uint64_t base,
                          ReferenceOrder reference = ReferenceOrder::revolving_door);

/// The rank stream behind `base_unrank`.
std::vector<Rank> base_unrank_ranks(const ProblemParams& params, std::uint64_t base);

QuerySequence prng_permutation(const ProblemParams& params, std::uint64_t seed);

}  // namespace ksorder
