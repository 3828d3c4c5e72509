#include <doctest.h>

#include "helpers.hpp"
#include "rws/bench.hpp"
#include "rws/pipeline.hpp"
#include "rws/validator.hpp"

using namespace rws;
using testing::fixture;

namespace {

ScoredLayout scored(std::vector<BlockPair> pairs, WeekendScore s) { return {Layout(std::move(pairs)), s}; }

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("policy names") {
  for (Policy p : {Policy::first, Policy::most_optimal_blocks, Policy::best_weekends})
    CHECK(parse_policy(to_string(p)) == p);
  CHECK_THROWS_AS(parse_policy("best"), Error);
}

TEST_CASE("class choice") {
  const std::vector<ClassSolution> classes{ClassSolution({7, 7, 7, 5, 5}), ClassSolution({6, 5, 5, 5, 5, 5}),
                                           ClassSolution({7, 6, 5, 5, 4, 4})};
  Choices c;
  c.policy = Policy::first;
  CHECK(choose_class(classes, c) == 0u);
  c.policy = Policy::best_weekends;
  CHECK(choose_class(classes, c) == 0u);
  c.policy = Policy::most_optimal_blocks;
  CHECK(choose_class(classes, c) == 1u);
  c.preferred_length = 4;
  CHECK(choose_class(classes, c) == 2u);
  c.class_blocks = std::vector<int>{5, 5, 6, 4, 4, 7};
  CHECK(choose_class(classes, c) == 2u);
  c.class_blocks = std::vector<int>{9};
  CHECK_FALSE(choose_class(classes, c));
  CHECK_FALSE(choose_class({}, Choices{}));
}

TEST_CASE("layout choice") {
  const std::vector<ScoredLayout> layouts{
      scored({{6, 1}, {4, 3}, {4, 2}}, {2, 0, 1}),
      scored({{4, 2}, {6, 2}, {4, 2}}, {2, 0, 1}),
      scored({{6, 2}, {6, 2}, {2, 2}}, {1, 0, 1}),
  };
  Choices c;
  c.policy = Policy::first;
  CHECK(choose_layout(layouts, c) == 0u);
  c.policy = Policy::best_weekends;
  CHECK(choose_layout(layouts, c) == 1u);  // same score, no single-day bridge
  c.layout_order = std::vector<int>{6, 6, 2};
  CHECK(choose_layout(layouts, c) == 2u);
  c.layout_order = std::vector<int>{4, 4, 6};  // a rotation of 6 4 4
  CHECK(find_layout_by_order(layouts, *c.layout_order) == 0u);
  c.layout_order = std::vector<int>{6, 4, 6};
  CHECK_FALSE(choose_layout(layouts, c));
}

TEST_CASE("solve P1 with the pinned choices") {
  const auto bc = benchmark_case("p1");
  const auto inst = bc.instance();
  Choices c;
  c.class_blocks = parse_lengths(bc.choice("class"));
  c.layout_order = parse_lengths(bc.choice("layout"));
  SearchControl control;
  const auto r = solve(inst, c, budgets_from_json(bc.budgets()), control);
  REQUIRE(r.failure.empty());
  REQUIRE(r.assignment.schedules.size() == 1);
  CHECK(r.assignment.schedules[0] == canonical_rotation(bc.table(inst)));
  CHECK(r.layouts.size() == 6);
}

TEST_CASE("solve P1 by best-weekends policy with only a class") {
  const auto bc = benchmark_case("p1");
  const auto inst = bc.instance();
  Choices c;
  c.class_blocks = parse_lengths("6 6 4 4 2 2");
  SearchControl control;
  const auto r = solve(inst, c, {}, control);
  REQUIRE(r.failure.empty());
  REQUIRE(r.assignment.schedules.size() == 1);
  CHECK(r.assignment.schedules[0] == canonical_rotation(bc.table(inst)));
}

TEST_CASE("failures") {
  const auto p1 = fixture("p1");
  SearchControl control;
  Choices c;
  c.class_blocks = parse_lengths("6 6 6 6");
  auto r = solve(p1, c, {}, control);
  CHECK_FALSE(r.failure.empty());
  CHECK_FALSE(r.failure_on_budget);

  c.class_blocks = parse_lengths("6 6 4 4 2 2");
  c.layout_order = parse_lengths("6 6 4 4 2 3");
  r = solve(p1, c, {}, control);
  CHECK_FALSE(r.failure.empty());
  CHECK_FALSE(r.chosen_layout);
}

TEST_CASE("result documents are deterministic") {
  for (const auto& name : benchmark_names()) {
    CAPTURE(name);
    const auto bc = benchmark_case(name);
    const auto inst = bc.instance();
    Choices c;
    c.class_blocks = parse_lengths(bc.choice("class"));
    c.layout_order = parse_lengths(bc.choice("layout"));
    const auto budgets = budgets_from_json(bc.budgets());
    SearchControl a, b;
    const auto x = to_json(solve(inst, c, budgets, a), inst).dump();
    const auto y = to_json(solve(inst, c, budgets, b), inst).dump();
    CHECK(x == y);
  }
}

TEST_CASE("schedule score of a schedule equals the score of its layout") {
  const auto p1 = fixture("p1");
  const auto s = benchmark_case("p1").table(p1);
  const Layout l({{6, 3}, {4, 1}, {4, 3}, {6, 1}, {2, 2}, {2, 1}});
  CHECK(schedule_score(s, p1) == weekend_score(l, p1));
}

TEST_CASE("benchmark harness passes on P1 and P4") {
  for (const char* name : {"p1", "p4"}) {
    const auto out = run_benchmark(benchmark_case(name));
    for (const auto& c : out.checks) INFO(c.name, ": ", c.detail);
    CHECK(out.pass());
  }
}

}  // TEST_SUITE
