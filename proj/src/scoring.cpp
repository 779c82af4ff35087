#include "ksorder/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "ksorder/detail/discovery_table.hpp"
#include "ksorder/error.hpp"

namespace ksorder {
namespace {

void require_scoreable(const QuerySequence& seq) {
  seq.params().require_scene_enumeration();
  seq.require_complete();
}

unsigned clamp_threads(unsigned threads) { return std::max(1u, threads); }

// Runs fn(worker_index) on `threads` workers and joins them.
template <typename Fn>
void run_workers(unsigned threads, Fn&& fn) {
  if (threads == 1) {
    fn(0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(fn, w);
  for (auto& t : pool) t.join();
}

}  // namespace

Rational make_rational(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) {
    throw Error(ErrorKind::invalid_argument, "zero denominator");
  }
  const std::uint64_t g = std::gcd(numerator, denominator);
  return Rational{numerator / g, denominator / g};
}

std::size_t tau(const QuerySequence& seq, Scene s) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (discovers(seq[i], s)) return i + 1;
  }
  throw Error(ErrorKind::undiscoverable_scene,
              "no query discovers scene {" + format_query(Query{s.mask}) + "}");
}

ExactScore score_by_scenes(const QuerySequence& seq, unsigned threads) {
  require_scoreable(seq);
  const auto& p = seq.params();
  threads = clamp_threads(threads);
  const Mask end = Mask{1} << p.n();
  std::vector<std::uint64_t> partial(threads, 0);
  run_workers(threads, [&](unsigned w) {
    const Mask lo = end / threads * w;
    const Mask hi = w + 1 == threads ? end : end / threads * (w + 1);
    std::uint64_t sum = 0;
    for (Mask m = lo; m < hi; ++m) {
      if (static_cast<unsigned>(std::popcount(m)) >= p.k()) sum += tau(seq, Scene{m});
    }
    partial[w] = sum;
  });
  return ExactScore{std::accumulate(partial.begin(), partial.end(), std::uint64_t{0}),
                    scene_count(p)};
}

EliminationResult score_by_elimination(const QuerySequence& seq) {
  require_scoreable(seq);
  std::vector<Scene> live = enumerate_scenes(seq.params());
  EliminationResult result;
  result.score.scene_count = live.size();
  result.profile.counts.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Query q = seq[i];
    std::uint64_t found = 0;
    for (std::size_t j = 0; j < live.size();) {
      if (discovers(q, live[j])) {
        live[j] = live.back();
        live.pop_back();
        ++found;
      } else {
        ++j;
      }
    }
    result.profile.counts.push_back(found);
    result.score.total_time += (i + 1) * found;
  }
  return result;
}

double sigma(const ProblemParams& params) {
  const auto n_queries = static_cast<double>(params.query_count());
  double weighted = 0.0;
  double scenes = 0.0;
  for (unsigned t = params.k(); t <= params.n(); ++t) {
    const double with_t = binomial_real(params.n(), t);
    const double hits = binomial_real(t, params.k());
    // Expected position of the first discovering query given t true stars.
    double expected = 0.0;
    double undiscovered = 1.0;
    for (std::uint64_t i = 1; i <= params.query_count(); ++i) {
      const double p = hits / (n_queries - static_cast<double>(i) + 1.0);
      if (p >= 1.0) {
        // Every remaining query discovers the scene.
        expected += static_cast<double>(i) * undiscovered;
        break;
      }
      expected += static_cast<double>(i) * p * undiscovered;
      undiscovered *= 1.0 - p;
    }
    weighted += with_t * expected;
    scenes += with_t;
  }
  return weighted / scenes;
}

Rational sigma_bruteforce(const ProblemParams& params) {
  const std::uint64_t n_queries = params.query_count();
  if (n_queries > kMaxEnumeratedQueries) {
    throw Error(ErrorKind::capacity,
                "sigma enumeration needs N <= " +
                    std::to_string(kMaxEnumeratedQueries) + ", got N=" +
                    std::to_string(n_queries));
  }
  const detail::DiscoveryTable table(params);
  const std::size_t words = table.words();
  const std::size_t depth = n_queries;

  // Depth-first walk over all orderings; live scene sets per level.
  std::vector<std::uint64_t> live((depth + 1) * words);
  const auto all = table.all_scenes();
  std::copy(all.begin(), all.end(), live.begin());
  std::vector<bool> used(n_queries, false);
  std::uint64_t total = 0;
  std::uint64_t sequences = 0;

  auto walk = [&](auto&& self, std::size_t level, std::uint64_t partial) -> void {
    if (level == depth) {
      total += partial;
      ++sequences;
      return;
    }
    std::span<const std::uint64_t> cur(live.data() + level * words, words);
    std::span<std::uint64_t> next(live.data() + (level + 1) * words, words);
    for (std::size_t q = 0; q < n_queries; ++q) {
      if (used[q]) continue;
      used[q] = true;
      const std::uint64_t found = table.remove(cur, q, next);
      self(self, level + 1, partial + (level + 1) * found);
      used[q] = false;
    }
  };
  walk(walk, 0, 0);
  return make_rational(total, sequences * table.scene_count());
}

double expected_random_score(const ProblemParams& params) {
  const auto n_queries = static_cast<double>(params.query_count());
  double weighted = 0.0;
  double scenes = 0.0;
  for (unsigned t = params.k(); t <= params.n(); ++t) {
    const double with_t = binomial_real(params.n(), t);
    weighted += with_t * n_queries / binomial_real(t, params.k());
    scenes += with_t;
  }
  return weighted / scenes;
}

MonteCarloEstimate monte_carlo_random_score(const ProblemParams& params,
                                            std::uint64_t trials,
                                            std::uint64_t seed,
                                            std::uint64_t cutoff,
                                            unsigned threads) {
  if (trials == 0) throw Error(ErrorKind::invalid_argument, "trials must be >= 1");
  if (cutoff == 0) throw Error(ErrorKind::invalid_argument, "cutoff must be >= 1");
  params.require_masks();
  const unsigned n = params.n();
  const unsigned k = params.k();

  std::vector<double> size_weights;
  for (unsigned t = 0; t <= n; ++t) {
    size_weights.push_back(t < k ? 0.0 : binomial_real(n, t));
  }

  // Fixed-size blocks, each with its own stream, so the result does not
  // depend on how blocks are spread over threads.
  constexpr std::uint64_t kBlock = 1u << 14;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  struct BlockSum {
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
    std::uint64_t censored = 0;
  };
  std::vector<BlockSum> sums(blocks);

  auto run_block = [&](std::uint64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::discrete_distribution<unsigned> pick_size(size_weights.begin(),
                                                   size_weights.end());
    std::vector<unsigned> spikes(n);
    // Uniform random subset of `size` spikes via a partial Fisher-Yates.
    auto random_subset = [&](unsigned size) {
      std::iota(spikes.begin(), spikes.end(), 0u);
      Mask m = 0;
      for (unsigned i = 0; i < size; ++i) {
        std::uniform_int_distribution<unsigned> pick(i, n - 1);
        std::swap(spikes[i], spikes[pick(rng)]);
        m |= Mask{1} << spikes[i];
      }
      return m;
    };
    BlockSum& out = sums[b];
    const std::uint64_t first = b * kBlock;
    const std::uint64_t last = std::min(trials, first + kBlock);
    for (std::uint64_t trial = first; trial < last; ++trial) {
      const Scene scene{random_subset(pick_size(rng))};
      std::uint64_t draws = 0;
      bool found = false;
      while (draws < cutoff) {
        ++draws;
        if (discovers(Query{random_subset(k)}, scene)) {
          found = true;
          break;
        }
      }
      if (!found) ++out.censored;
      out.sum += draws;
      out.sum_sq += static_cast<unsigned __int128>(draws) * draws;
    }
  };

  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(clamp_threads(threads), blocks));
  run_workers(threads, [&](unsigned w) {
    for (std::uint64_t b = w; b < blocks; b += threads) run_block(b);
  });

  BlockSum total;
  for (const auto& s : sums) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
    total.censored += s.censored;
  }
  MonteCarloEstimate est;
  est.trials = trials;
  est.censored = total.censored;
  const auto count = static_cast<double>(trials);
  est.mean = static_cast<double>(total.sum) / count;
  if (trials > 1) {
    const double mean_sq = static_cast<double>(total.sum_sq) / count;
    const double var =
        std::max(0.0, (mean_sq - est.mean * est.mean) * count / (count - 1.0));
    est.standard_error = std::sqrt(var / count);
  }
  return est;
}

std::vector<double> expected_remaining_random(const ProblemParams& params) {
  const std::uint64_t n_queries = params.query_count();
  std::vector<double> remaining(n_queries + 1, 0.0);
  for (unsigned t = params.k(); t <= params.n(); ++t) {
    const double with_t = binomial_real(params.n(), t);
    const double hits = binomial_real(t, params.k());
    double undiscovered = 1.0;
    remaining[0] += with_t;
    for (std::uint64_t i = 1; i <= n_queries && undiscovered > 0.0; ++i) {
      const double p = hits / static_cast<double>(n_queries - i + 1);
      undiscovered = p >= 1.0 ? 0.0 : undiscovered * (1.0 - p);
      remaining[i] += with_t * undiscovered;
    }
  }
  return remaining;
}

bool check_monotonicity(const DiscoveryProfile& profile) {
  return std::is_sorted(profile.counts.rbegin(), profile.counts.rend());
}

ScoreDelta swap_improvement(const QuerySequence& seq, std::size_t position) {
  if (position < 1 || position >= seq.size()) {
    throw Error(ErrorKind::out_of_range,
                "swap position must lie in 1.." + std::to_string(seq.size() - 1));
  }
  require_scoreable(seq);
  // With A, B the scenes q_i, q_{i+1} can still discover, the swap changes U
  // by i|A| + (i+1)|B\A| - i|B| - (i+1)|A\B| = |B| - |A|.
  const Query qa = seq[position - 1];
  const Query qb = seq[position];
  std::int64_t delta = 0;
  for_each_scene(seq.params(), [&](Scene s) {
    for (std::size_t j = 0; j + 1 < position; ++j) {
      if (discovers(seq[j], s)) return;
    }
    delta += static_cast<std::int64_t>(discovers(qb, s)) -
             static_cast<std::int64_t>(discovers(qa, s));
  });
  return ScoreDelta{delta, scene_count(seq.params())};
}

void write_profile_csv(std::ostream& out, const QuerySequence& seq,
                       const EliminationResult& result) {
  out << "i,query,D,scenes_remaining,cumulative_U\n";
  std::uint64_t remaining = result.score.scene_count;
  std::uint64_t cumulative = 0;
  for (std::size_t i = 0; i < result.profile.counts.size(); ++i) {
    const std::uint64_t d = result.profile.counts[i];
    remaining -= d;
    cumulative += (i + 1) * d;
    out << i + 1 << ',' << format_query(seq[i], '-') << ',' << d << ','
        << remaining << ',' << cumulative << '\n';
  }
}

}  // namespace ksorder
