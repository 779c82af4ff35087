#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ksorder/error.hpp"
#include "ksorder/scene_model.hpp"
#include "test_support.hpp"

using namespace ksorder;

TEST_CASE("discovery is the subset relation") {
  const Scene se{make_query({1, 2, 3, 4}).mask};
  CHECK_FALSE(discovers(make_query({0, 1, 2}), se));
  CHECK(discovers(make_query({1, 2, 3}), se));
  const Query q = make_query({0, 2, 4});
  CHECK(discovers(q, Scene{q.mask}));
}

TEST_CASE("problem parameters validate") {
  CHECK(ProblemParams(5, 3).query_count() == 10);
  CHECK_THROWS_AS(ProblemParams(3, 4), Error);
  CHECK_THROWS_AS(ProblemParams(3, 0), Error);
  try {
    ProblemParams(70, 35);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::overflow);
  }
  try {
    ProblemParams(31, 3).require_scene_enumeration();
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
  CHECK_NOTHROW(ProblemParams(30, 3).require_scene_enumeration());
  CHECK_THROWS_AS(ProblemParams(25, 3).require_scene_enumeration(24), Error);
  CHECK_THROWS_AS(ProblemParams(64, 2).require_masks(), Error);
}

TEST_CASE("scene universe") {
  CHECK(enumerate_scenes(ProblemParams(5, 3)).size() == 16);
  CHECK(enumerate_scenes(ProblemParams(4, 4)).size() == 1);
  CHECK(enumerate_scenes(ProblemParams(6, 3)).size() == 42);
  CHECK(scene_count(ProblemParams(5, 3)) == 16);
  CHECK(scene_count(ProblemParams(7, 7)) == 1);
  CHECK(scene_count(ProblemParams(10, 3)) == 1024 - 1 - 10 - 45);

  // t-breakdown for (5,3): one with t=5, five with t=4, ten with t=3.
  std::map<unsigned, int> by_size;
  for (Scene s : enumerate_scenes(ProblemParams(5, 3))) ++by_size[s.size()];
  CHECK(by_size == std::map<unsigned, int>{{3, 10}, {4, 5}, {5, 1}});

  for (unsigned n = 3; n <= 12; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      const ProblemParams p(n, k);
      const auto scenes = enumerate_scenes(p);
      CHECK(scenes.size() == scene_count(p));
      CHECK(std::is_sorted(scenes.begin(), scenes.end()));
      CHECK(std::adjacent_find(scenes.begin(), scenes.end()) == scenes.end());
      for (Scene s : scenes) CHECK(s.size() >= k);
    }
  }
}

TEST_CASE("a single query discovers 2^(n-k) scenes") {
  for (unsigned n = 3; n <= 12; ++n) {
    for (unsigned k = 1; k <= n; k += 2) {
      const ProblemParams p(n, k);
      const auto scenes = enumerate_scenes(p);
      for (const Query q : {Query{(Mask{1} << k) - 1}, Query{((Mask{1} << k) - 1) << (n - k)}}) {
        std::uint64_t hits = 0;
        for (Scene s : scenes) hits += discovers(q, s);
        CHECK(hits == (std::uint64_t{1} << (n - k)));
      }
    }
  }
}

TEST_CASE("relabeling") {
  const ProblemParams p(5, 3);
  const auto seq = testing::sequence_of(p, {{0, 1, 2}, {1, 3, 4}});
  CHECK(relabel(seq, SpikeRelabeling::identity(5)) == seq);

  const auto swapped = relabel(testing::sequence_of(p, {{0, 1, 2}}),
                               SpikeRelabeling({4, 1, 2, 3, 0}));
  CHECK(swapped[0] == make_query({4, 1, 2}));

  CHECK_THROWS_AS(SpikeRelabeling({0, 0, 1}), Error);
  CHECK_THROWS_AS(SpikeRelabeling({0, 3, 1}), Error);
  CHECK_THROWS_AS(relabel(seq, SpikeRelabeling::identity(4)), Error);
}

TEST_CASE("completeness validation names the defect") {
  const ProblemParams p(4, 3);
  CHECK(testing::sequence_of(p, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}).is_complete());

  auto missing = testing::sequence_of(p, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
  CHECK_FALSE(missing.is_complete());
  try {
    missing.require_complete();
    FAIL("expected incomplete sequence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::incomplete_sequence);
    CHECK(std::string(e.what()).find("{1,2,3} is absent") != std::string::npos);
  }

  auto repeated = testing::sequence_of(p, {{0, 1, 2}, {0, 1, 3}, {0, 1, 2}, {1, 2, 3}});
  try {
    repeated.require_complete();
    FAIL("expected incomplete sequence");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("repeated") != std::string::npos);
  }
  CHECK_FALSE(testing::sequence_of(p, {{0, 1}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}).is_complete());
}

TEST_CASE("sequence files round-trip byte for byte") {
  std::mt19937_64 rng(7);
  for (auto [n, k] : {std::pair{5u, 3u}, {8u, 1u}, {9u, 4u}, {12u, 12u}}) {
    const ProblemParams p(n, k);
    const auto seq = testing::random_sequence(p, rng);
    std::ostringstream first;
    write_sequence(first, seq);
    std::istringstream in(first.str());
    const auto parsed = read_sequence(in);
    CHECK(parsed == seq);
    std::ostringstream second;
    write_sequence(second, parsed);
    CHECK(second.str() == first.str());
  }
  std::ostringstream out;
  write_sequence(out, testing::sequence_of(ProblemParams(5, 3), {{0, 1, 2}, {1, 2, 3}}));
  CHECK(out.str() == "n=5 k=3\n0,1,2\n1,2,3\n");
}

TEST_CASE("malformed sequence files are rejected") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_sequence(in);
  };
  auto kind_of = [&](const std::string& text) {
    try {
      parse(text);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected a parse failure for: " << text);
    return ErrorKind::parse;
  };
  CHECK(kind_of("") == ErrorKind::parse);
  CHECK(kind_of("n=5\n") == ErrorKind::parse);
  CHECK(kind_of("n=5 k=3\n0,1\n") == ErrorKind::parse);
  CHECK(kind_of("n=5 k=3\n0,2,1\n") == ErrorKind::parse);
  CHECK(kind_of("n=5 k=3\n0,1,5\n") == ErrorKind::parse);
  CHECK(kind_of("n=5 k=3\n0,1,x\n") == ErrorKind::parse);
  CHECK(kind_of("n=5 k=3\n0, 1,2\n") == ErrorKind::parse);
  CHECK(kind_of("n=3 k=5\n") == ErrorKind::invalid_argument);
  CHECK(parse("n=5 k=3\n").size() == 0);
}
