#include <doctest.h>

#include "tap/errors.hpp"
#include "tap/preprocess.hpp"
#include "tap/solvers.hpp"
#include "test_support.hpp"

using namespace tap;
using namespace tap::testing;

TEST_CASE("solve_separable takes exactly the all-blue exemplars") {
  const Instance instance(3, {1, 2}, {{1}, {2}, {3}});
  const SolverReport report = solve_separable(instance);
  CHECK(report.solution.selected == std::vector<int>{1, 2});
  CHECK(report.solution.margin == 2);
  CHECK(report.exact);
}

TEST_CASE("solve_separable on an all-red component returns the empty set") {
  const Instance instance(2, {}, {{1}, {2}});
  const SolverReport report = solve_separable(instance);
  CHECK(report.solution.selected.empty());
  CHECK(report.solution.margin == 0);
}

TEST_CASE("solve_separable handles 1-weight instances and rejects others") {
  const Instance one_weight(3, {1, 2}, {{1}, {2}, {3}});
  CHECK(solve_separable(one_weight).solution.margin == 2);
  const Instance purple(2, {1}, {{1, 2}});
  CHECK_THROWS_AS(solve_separable(purple), PreconditionError);
}

TEST_CASE("solve_one_occurrence keeps exemplars with positive margin") {
  const Instance instance(6, {1, 2, 3}, {{1, 2, 4}, {3, 5, 6}});
  const SolverReport report = solve_one_occurrence(instance);
  CHECK(report.solution.selected == std::vector<int>{1});
  CHECK(report.solution.margin == 1);
  CHECK(report.exact);
}

TEST_CASE("solve_one_occurrence skips balanced exemplars") {
  const Instance instance(4, {1, 3}, {{1, 2}, {3, 4}});
  const SolverReport report = solve_one_occurrence(instance);
  CHECK(report.solution.selected.empty());
  CHECK(report.solution.margin == 0);
  CHECK(report.solution.margin == oracle_best_margin(instance));
}

TEST_CASE("solve_one_occurrence rejects repeated features") {
  const Instance instance(2, {1}, {{1, 2}, {1, 2}});
  CHECK_THROWS_AS(solve_one_occurrence(instance), PreconditionError);
}

TEST_CASE("solve_two_two covers a 3-edge path with two reds") {
  const Instance instance = path_instance(3);
  const SolverReport report = solve_two_two(instance);
  CHECK(report.solution.margin == 1);
  CHECK(report.solution.margin == oracle_best_margin(instance));
  CHECK(report.exact);
}

TEST_CASE("solve_two_two covers a 4-cycle with two reds") {
  const Instance instance = cycle_instance(4);
  const SolverReport report = solve_two_two(instance);
  CHECK(report.solution.margin == 2);
  CHECK(report.solution.margin == oracle_best_margin(instance));
}

TEST_CASE("solve_two_two forces self-loop reds") {
  // One blue held twice by the same red: taking the red is the only cover.
  const Instance instance(2, {1}, {{1, 2}, {1, 2}});
  const SolverReport report = solve_two_two(instance);
  CHECK(report.solution.margin == 0);
  CHECK(report.solution.selected == std::vector<int>{1, 2});
}

TEST_CASE("solve_two_two handles parallel edges as a two-cycle") {
  // Two blues both between the same pair of reds: one red covers everything.
  const Instance instance(4, {1, 2}, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  const SolverReport report = solve_two_two(instance);
  CHECK(report.solution.margin == 1);
  CHECK(report.solution.margin == oracle_best_margin(instance));
}

TEST_CASE("solve_two_two path and cycle closed forms") {
  for (int edges = 1; edges <= 10; ++edges) {
    const Instance path = path_instance(edges);
    CHECK(solve_two_two(path).solution.margin == edges / 2);
  }
  for (int nodes = 3; nodes <= 10; ++nodes) {
    const Instance cycle = cycle_instance(nodes);
    CHECK(solve_two_two(cycle).solution.margin == nodes / 2);
  }
}

TEST_CASE("solve_two_two rejects unreduced or crowded instances") {
  const Instance not_reduced(3, {1, 2}, {{1, 2, 3}});
  CHECK_THROWS_AS(solve_two_two(not_reduced), PreconditionError);
  const Instance crowded(2, {1}, {{1, 2}, {1, 2}, {1, 2}});
  CHECK_THROWS_AS(solve_two_two(crowded), PreconditionError);
}

TEST_CASE("solve_brute_force matches the worked instance and the oracle") {
  const Instance instance = greedy_tightness_instance();
  const SolverReport report = solve_brute_force(instance);
  CHECK(report.solution.margin == 2);
  // {A,B,C,D} achieves the optimum; the returned set is the lex-least optimum.
  CHECK(margin(instance, {1, 2, 3, 4}) == report.solution.margin);
  CHECK(report.solution.selected == oracle_best_selection(instance));
  CHECK(report.exact);
  CHECK(report.work == 64);
}

TEST_CASE("solve_brute_force ties break toward the lexicographically least") {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    RandomInstanceParams params;
    params.seed = seed;
    params.n_features = 8;
    params.m_exemplars = 6;
    const Instance instance = random_instance(params);
    const SolverReport report = solve_brute_force(instance);
    CHECK(report.solution.margin == oracle_best_margin(instance));
    CHECK(report.solution.selected == oracle_best_selection(instance));
  }
}

TEST_CASE("solve_brute_force trivia") {
  const Instance purple(2, {1}, {{1, 2}});
  CHECK(solve_brute_force(purple).solution.margin == 0);

  // Disjoint red-heavy exemplars: nothing is worth taking.
  const Instance red_heavy(6, {1, 4}, {{1, 2, 3}, {4, 5, 6}});
  const SolverReport report = solve_brute_force(red_heavy);
  CHECK(report.solution.margin == 0);
  CHECK(report.solution.selected.empty());
}

TEST_CASE("solve_brute_force rejects oversized instances") {
  std::vector<std::vector<int>> exemplars(21, std::vector<int>{1});
  const Instance instance(1, {1}, exemplars);
  CHECK_THROWS_AS(solve_brute_force(instance), PreconditionError);
  CHECK_NOTHROW(solve_brute_force(instance, 21));
}

TEST_CASE("solve_one_red_enumeration is exact when unbounded") {
  const Instance instance = greedy_tightness_instance();
  const SolverReport report = solve_one_red_enumeration(instance);
  CHECK(report.solution.margin == 2);
  CHECK(report.exact);

  const SolverReport empty = solve_one_red_enumeration(instance, 0);
  CHECK(empty.solution.margin == 0);
  CHECK(empty.solution.selected.empty());
  CHECK_FALSE(empty.exact);
}

TEST_CASE("solve_one_red_enumeration with budget 1 finds a dominant red") {
  // Red 4 co-occurs with all three blues.
  const Instance instance(4, {1, 2, 3}, {{1, 4}, {2, 4}, {3, 4}});
  const SolverReport report = solve_one_red_enumeration(instance, 1);
  CHECK(report.solution.margin == 2);
  CHECK(report.solution.selected == std::vector<int>{1, 2, 3});
}

TEST_CASE("solve_one_red_enumeration rejects non-one-red instances") {
  const Instance instance(3, {1}, {{1, 2, 3}});
  CHECK_THROWS_AS(solve_one_red_enumeration(instance), PreconditionError);
}

TEST_CASE("solve_auto is exact on the worked instance") {
  const SolverReport report = solve_auto(greedy_tightness_instance(), 6);
  CHECK(report.solution.margin == 2);
  CHECK(report.exact);
}

TEST_CASE("solve_auto solves separable instances without search") {
  const Instance instance(4, {1, 2, 3}, {{1, 2}, {3}, {4}});
  const SolverReport report = solve_auto(instance);
  CHECK(report.solution.margin == 3);
  CHECK(report.exact);
  CHECK(report.work == 0);  // fully reduced away
}

TEST_CASE("solve_auto falls back to greedy on large one-red instances") {
  RandomInstanceParams params;
  params.seed = 7;
  params.n_features = 30;
  params.m_exemplars = 24;
  params.one_red = true;
  params.max_weight = 4;
  params.max_occurrence = 4;
  const Instance instance = random_instance(params);
  const SolverReport report = solve_auto(instance, 4);
  CHECK_FALSE(report.exact);
  CHECK(report.solution.margin == margin(instance, report.solution.selected));
}

TEST_CASE("solve_auto errors when nothing applies") {
  // One purple component of five exemplars, two reds each: no class solver
  // fits, greedy needs one-red, and the fallback limit is too small.
  std::vector<std::vector<int>> exemplars;
  for (int j = 1; j <= 5; ++j) {
    exemplars.push_back({j, j + 1, 5 + 2 * j, 6 + 2 * j});
  }
  const Instance instance(16, {1, 2, 3, 4, 5, 6}, exemplars);
  REQUIRE(validate(instance).empty());
  CHECK_THROWS_AS(solve_auto(instance, 2), PreconditionError);
  CHECK(solve_auto(instance, 5).exact);  // large enough limit, brute kicks in
}

TEST_CASE("class solvers agree with brute force on random instances") {
  RandomInstanceParams params;
  params.n_features = 10;
  params.m_exemplars = 7;

  SUBCASE("one-occurrence") {
    params.max_occurrence = 1;
    params.m_exemplars = 4;
    for (std::uint64_t seed = 400; seed < 450; ++seed) {
      params.seed = seed;
      const Instance instance = random_instance(params);
      CHECK(solve_one_occurrence(instance).solution.margin ==
            oracle_best_margin(instance));
    }
  }
  SUBCASE("two-two") {
    params.max_weight = 2;
    params.max_occurrence = 2;
    for (std::uint64_t seed = 400; seed < 450; ++seed) {
      params.seed = seed;
      const Instance instance = random_instance(params);
      const ReducedInstance reduced = reduce_pure(instance);
      CHECK(solve_two_two(reduced.residual).solution.margin ==
            oracle_best_margin(reduced.residual));
    }
  }
  SUBCASE("one-red enumeration") {
    params.one_red = true;
    for (std::uint64_t seed = 400; seed < 450; ++seed) {
      params.seed = seed;
      const Instance instance = random_instance(params);
      CHECK(solve_one_red_enumeration(instance).solution.margin ==
            oracle_best_margin(instance));
    }
  }
  SUBCASE("auto") {
    params.max_weight = 4;
    params.max_occurrence = 4;
    for (std::uint64_t seed = 400; seed < 450; ++seed) {
      params.seed = seed;
      const Instance instance = random_instance(params);
      const SolverReport report = solve_auto(instance, 12);
      CHECK(report.exact);
      CHECK(report.solution.margin == oracle_best_margin(instance));
    }
  }
}
