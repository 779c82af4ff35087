#include "ksorder/generators.hpp"

#include <algorithm>
#include <bit>

#include "ksorder/error.hpp"

namespace ksorder {
namespace {

// Queries are built on raw (n, k) here because the pattern-shift recursion
// reaches k = 0, which ProblemParams rejects.

class RankedGenerator final : public QueryGenerator {
 public:
  RankedGenerator(ReferenceOrder order, unsigned n, unsigned k)
      : order_(order), n_(n), k_(k), total_(binomial(n, k)) {}

  std::optional<Query> next() override {
    if (next_rank_ >= total_) return std::nullopt;
    return Query{unrank(order_, next_rank_++, n_, k_)};
  }

 private:
  ReferenceOrder order_;
  unsigned n_;
  unsigned k_;
  std::uint64_t total_;
  Rank next_rank_ = 0;
};

std::unique_ptr<QueryGenerator> make_shift_reference(ShiftReference ref,
                                                     unsigned n, unsigned k);

class PatternShiftGenerator final : public QueryGenerator {
 public:
  PatternShiftGenerator(ShiftReference ref, unsigned n, unsigned k)
      : n_(n), reference_(make_shift_reference(ref, n - 1, k - 1)) {}

  std::optional<Query> next() override {
    const Mask last = Mask{1} << (n_ - 1);
    if (current_ && (current_->mask & last) == 0) {
      current_->mask <<= 1;
      return current_;
    }
    const auto seed = reference_->next();
    if (!seed) {
      current_.reset();
      return std::nullopt;
    }
    // Reference elements 0..n-2 stand for spikes 1..n-1; spike 0 is added.
    current_ = Query{(seed->mask << 1) | 1};
    return current_;
  }

 private:
  unsigned n_;
  std::unique_ptr<QueryGenerator> reference_;
  std::optional<Query> current_;
};

std::unique_ptr<QueryGenerator> make_shift_reference(ShiftReference ref,
                                                     unsigned n, unsigned k) {
  switch (ref) {
    case ShiftReference::lexicographic:
      return std::make_unique<RankedGenerator>(ReferenceOrder::lexicographic, n, k);
    case ShiftReference::co_lexicographic:
      return std::make_unique<RankedGenerator>(ReferenceOrder::co_lexicographic, n, k);
    case ShiftReference::revolving_door:
      return std::make_unique<RankedGenerator>(ReferenceOrder::revolving_door, n, k);
    case ShiftReference::self:
      if (k == 0) {
        return std::make_unique<RankedGenerator>(ReferenceOrder::lexicographic, n, 0);
      }
      return std::make_unique<PatternShiftGenerator>(ShiftReference::self, n, k);
  }
  return nullptr;
}

class BaseUnrankGenerator final : public QueryGenerator {
 public:
  BaseUnrankGenerator(const ProblemParams& params, std::uint64_t base,
                      ReferenceOrder reference)
      : params_(params),
        reference_(reference),
        counter_(base, digits_needed(base, params.query_count()),
                 params.query_count()) {}

  std::optional<Query> next() override {
    std::uint64_t r;
    if (!counter_.next(r)) return std::nullopt;
    return Query{unrank(reference_, r, params_.n(), params_.k())};
  }

 private:
  ProblemParams params_;
  ReferenceOrder reference_;
  DigitReversedCounter counter_;
};

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Full-period LCG on m bits (Hull-Dobell: c odd, a = 1 mod 4) whose state is
// passed through a keyed bijection of the m-bit space. Every value in
// 0..2^m-1 comes out exactly once per period; values >= N are skipped.
class PrngPermutationGenerator final : public QueryGenerator {
 public:
  PrngPermutationGenerator(const ProblemParams& params, std::uint64_t seed)
      : params_(params) {
    bits_ = static_cast<unsigned>(std::bit_width(params.query_count() - 1));
    // N <= C(63, 31) < 2^63, so the period always fits.
    period_ = std::uint64_t{1} << bits_;
    mask_ = period_ - 1;
    std::uint64_t s = seed;
    multiplier_ = (splitmix64(s) << 2) | 1;
    increment_ = splitmix64(s) | 1;
    state_ = splitmix64(s) & mask_;
    for (auto& round : rounds_) {
      round.multiplier = splitmix64(s) | 1;
      round.key = splitmix64(s);
    }
    shift_ = std::max(1u, bits_ / 2 + 1);
  }

  std::optional<Query> next() override {
    while (steps_ < period_) {
      const std::uint64_t r = mix(state_);
      state_ = (multiplier_ * state_ + increment_) & mask_;
      ++steps_;
      if (r < params_.query_count()) {
        return Query{unrank(ReferenceOrder::lexicographic, r, params_.n(),
                            params_.k())};
      }
    }
    return std::nullopt;
  }

 private:
  std::uint64_t mix(std::uint64_t x) const {
    for (const auto& round : rounds_) {
      x = (x * round.multiplier) & mask_;
      x ^= x >> shift_;
      x = (x + round.key) & mask_;
    }
    return x;
  }

  struct Round {
    std::uint64_t multiplier;
    std::uint64_t key;
  };

  ProblemParams params_;
  unsigned bits_ = 0;
  unsigned shift_ = 1;
  std::uint64_t mask_ = 0;
  std::uint64_t multiplier_ = 1;
  std::uint64_t increment_ = 1;
  std::uint64_t state_ = 0;
  std::uint64_t period_ = 1;
  std::uint64_t steps_ = 0;
  Round rounds_[3]{};
};

}  // namespace

std::string_view to_string(ShiftReference ref) {
  switch (ref) {
    case ShiftReference::lexicographic: return "lex";
    case ShiftReference::co_lexicographic: return "colex";
    case ShiftReference::revolving_door: return "revdoor";
    case ShiftReference::self: return "self";
  }
  return "?";
}

ShiftReference parse_shift_reference(std::string_view name) {
  if (name == "self") return ShiftReference::self;
  switch (parse_reference_order(name)) {
    case ReferenceOrder::lexicographic: return ShiftReference::lexicographic;
    case ReferenceOrder::co_lexicographic: return ShiftReference::co_lexicographic;
    case ReferenceOrder::revolving_door: return ShiftReference::revolving_door;
  }
  return ShiftReference::lexicographic;
}

std::string generator_name(const GeneratorSpec& spec) {
  struct Visitor {
    std::string operator()(const ReferenceSpec& s) const {
      return std::string(to_string(s.order));
    }
    std::string operator()(const PatternShiftSpec&) const { return "pattern-shift"; }
    std::string operator()(const BaseUnrankSpec&) const { return "base-unrank"; }
    std::string operator()(const PrngPermutationSpec&) const { return "prng-perm"; }
  };
  return std::visit(Visitor{}, spec);
}

std::unique_ptr<QueryGenerator> make_generator(const GeneratorSpec& spec,
                                               const ProblemParams& params) {
  params.require_masks();
  struct Visitor {
    const ProblemParams& params;
    std::unique_ptr<QueryGenerator> operator()(const ReferenceSpec& s) const {
      return std::make_unique<RankedGenerator>(s.order, params.n(), params.k());
    }
    std::unique_ptr<QueryGenerator> operator()(const PatternShiftSpec& s) const {
      return std::make_unique<PatternShiftGenerator>(s.reference, params.n(),
                                                     params.k());
    }
    std::unique_ptr<QueryGenerator> operator()(const BaseUnrankSpec& s) const {
      if (s.base < 2) {
        throw Error(ErrorKind::configuration, "base-unrank needs base >= 2");
      }
      return std::make_unique<BaseUnrankGenerator>(params, s.base, s.reference);
    }
    std::unique_ptr<QueryGenerator> operator()(const PrngPermutationSpec& s) const {
      return std::make_unique<PrngPermutationGenerator>(params, s.seed);
    }
  };
  return std::visit(Visitor{params}, spec);
}

QuerySequence generate(const GeneratorSpec& spec, const ProblemParams& params) {
  auto gen = make_generator(spec, params);
  std::vector<Query> queries;
  queries.reserve(params.query_count());
  while (auto q = gen->next()) queries.push_back(*q);
  return QuerySequence(params, std::move(queries));
}

QuerySequence pattern_shift(const ProblemParams& params,
                            std::span<const Query> reference) {
  params.require_masks();
  const unsigned n = params.n();
  const unsigned k = params.k();
  const std::uint64_t expected = binomial(n - 1, k - 1);
  std::vector<Mask> seen;
  seen.reserve(reference.size());
  for (const Query& q : reference) {
    if (q.size() != k - 1 || (q.mask >> (n - 1)) != 0) {
      throw Error(ErrorKind::incomplete_sequence,
                  "reference subset {" + format_query(q) + "} is not a " +
                      std::to_string(k - 1) + "-subset of 0.." +
                      std::to_string(n - 2));
    }
    seen.push_back(q.mask);
  }
  std::sort(seen.begin(), seen.end());
  if (seen.size() != expected ||
      std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw Error(ErrorKind::incomplete_sequence,
                "reference must list all " + std::to_string(expected) +
                    " subsets exactly once");
  }

  QuerySequence out(params);
  const Mask last = Mask{1} << (n - 1);
  for (const Query& q : reference) {
    Query cur{(q.mask << 1) | 1};
    out.push_back(cur);
    while ((cur.mask & last) == 0) {
      cur.mask <<= 1;
      out.push_back(cur);
    }
  }
  return out;
}

QuerySequence base_unrank(const ProblemParams& params, std::uint64_t base,
                          ReferenceOrder reference) {
  return generate(BaseUnrankSpec{base, reference}, params);
}

std::vector<Rank> base_unrank_ranks(const ProblemParams& params, std::uint64_t base) {
  return digit_reversed_count(base, digits_needed(base, params.query_count()),
                              params.query_count());
}

QuerySequence prng_permutation(const ProblemParams& params, std::uint64_t seed) {
  return generate(PrngPermutationSpec{seed}, params);
}

}  // namespace ksorder
