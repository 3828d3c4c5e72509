#include <doctest.h>

#include <random>

#include "../oracles/oracles.hpp"
#include "helpers.hpp"
#include "rws/partitions.hpp"

using namespace rws;
using testing::fixture;

namespace {

std::set<std::vector<int>> as_set(const std::vector<ClassSolution>& cs) {
  std::set<std::vector<int>> out;
  for (const auto& c : cs) out.insert(c.blocks());
  return out;
}

}  // namespace

TEST_SUITE("partitions") {

TEST_CASE("generator equals the filtered set of all partitions") {
  std::mt19937 rng(99);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 200; ++trial) {
    PartitionBounds b;
    b.total_work_days = pick(0, 30);
    b.min_block_length = pick(1, 4);
    b.max_block_length = b.min_block_length + pick(-1, 6);
    b.min_blocks = pick(0, 8);
    b.max_blocks = b.min_blocks + pick(-1, 8);
    CAPTURE(b.total_work_days);
    CAPTURE(b.min_blocks);
    CAPTURE(b.max_blocks);
    CAPTURE(b.min_block_length);
    CAPTURE(b.max_block_length);
    const auto stream = restricted_partitions(b);
    const std::set<std::vector<int>> got(stream.begin(), stream.end());
    CHECK(got.size() == stream.size());  // no duplicates
    for (const auto& p : stream) CHECK(std::is_sorted(p.begin(), p.end(), std::greater<>()));
    CHECK(got == oracle::restricted_partitions(b));
  }
}

TEST_CASE("stream order: smallest leading element first, then lexicographic") {
  PartitionBounds b{12, 2, 5, 2, 6, 0};
  const auto stream = restricted_partitions(b);
  REQUIRE(stream.size() > 3);
  CHECK(std::is_sorted(stream.begin(), stream.end()));
  CHECK(stream.front() == std::vector<int>{3, 3, 2, 2, 2});
}

TEST_CASE("empty total") {
  PartitionBounds zero{0, 0, 3, 1, 4, 0};
  const auto s = restricted_partitions(zero);
  REQUIRE(s.size() == 1);
  CHECK(s[0].empty());
  PartitionBounds none{0, 1, 3, 1, 4, 0};
  CHECK(restricted_partitions(none).empty());
}

TEST_CASE("visitor can stop the stream") {
  PartitionBounds b{20, 3, 8, 2, 7, 0};
  int seen = 0;
  const bool complete = restricted_partitions(b, [&](std::span<const int>) { return ++seen < 3; });
  CHECK_FALSE(complete);
  CHECK(seen == 3);
}

TEST_CASE("class solutions agree with brute-force feasibility") {
  std::mt19937 rng(314);
  int with_solutions = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    const auto inst = testing::random_instance(rng, 1 + trial % 2, n, 7);
    CAPTURE(instance_to_json(inst).dump());
    SearchControl control;
    const auto r = enumerate_class_solutions(inst, {}, control);
    CHECK(r.exhaustive);
    const auto expected = oracle::class_solutions(inst);
    CHECK(as_set(r.solutions) == expected);
    with_solutions += !expected.empty();
  }
  CHECK(with_solutions > 5);
}

TEST_CASE("feasibility witnesses are valid layouts") {
  const auto p4 = fixture("p4");
  for (const auto& p : oracle::restricted_partitions(compute_bounds(p4))) {
    const auto v = feasibility_test(p, p4, 100'000'000);
    REQUIRE(v.status != Verdict::budget_exhausted);
    CHECK((v.status == Verdict::feasible) == oracle::feasible(p, p4));
    if (v.witness) {
      CHECK(layout_problems(*v.witness, p4).empty());
      CHECK(ClassSolution(p) == v.witness->class_solution());
    }
  }
}

TEST_CASE("P1 and P2 class solutions") {
  SearchControl control;
  const auto p1 = enumerate_class_solutions(fixture("p1"), {}, control);
  CHECK(p1.exhaustive);
  CHECK(as_set(p1.solutions) == oracle::class_solutions(fixture("p1")));
  CHECK(p1.solutions.size() == 6);

  const auto p2 = enumerate_class_solutions(fixture("p2"), {}, control);
  const auto got = as_set(p2.solutions);
  for (const char* text : {"7 7 7 6 5 5 5 5 5 5", "7 7 7 7 7 7 5 5 5"}) CHECK(got.count(parse_lengths(text)) == 1);
}

TEST_CASE("tiny budgets defer partitions to later stages") {
  const auto p4 = fixture("p4");
  ClassSolutionOptions tight;
  tight.budgets.nodes = {1, 2, 3};
  SearchControl c1, c2;
  const auto r = enumerate_class_solutions(p4, tight, c1);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.unresolved > 0);
  const auto full = as_set(enumerate_class_solutions(p4, {}, c2).solutions);
  for (const auto& cs : r.solutions) CHECK(full.count(cs.blocks()) == 1);

  ClassSolutionOptions bad;
  bad.budgets.nodes = {10, 10, 20};
  CHECK_THROWS_AS(enumerate_class_solutions(p4, bad, c1), Error);
}

TEST_CASE("max_results caps the list") {
  ClassSolutionOptions o;
  o.max_results = 3;
  SearchControl control;
  const auto r = enumerate_class_solutions(fixture("p2"), o, control);
  CHECK(r.solutions.size() == 3);
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("enumeration is deterministic") {
  SearchControl a, b;
  const auto x = enumerate_class_solutions(fixture("p3"), {}, a);
  const auto y = enumerate_class_solutions(fixture("p3"), {}, b);
  CHECK(x.solutions == y.solutions);
  CHECK(x.nodes_explored == y.nodes_explored);
}

TEST_CASE("an all-work cycle has the single whole-cycle block") {
  const auto inst = instance_from_json(
      testing::small_doc(2, 7, {{2, 2, 2, 2, 2, 2, 2}}, Json::array(), {{1, 14}, {1, 2}}, {1, 14}));
  SearchControl control;
  const auto r = enumerate_class_solutions(inst, {}, control);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].blocks() == std::vector<int>{14});
}

}  // TEST_SUITE
