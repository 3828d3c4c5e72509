#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace rws;
using testing::fixture;

TEST_SUITE("documents") {

TEST_CASE("instance documents round trip") {
  for (const auto& name : benchmark_names()) {
    CAPTURE(name);
    const auto inst = fixture(name.c_str());
    const auto doc = instance_to_json(inst);
    CHECK(instance_from_json(doc) == inst);
    CHECK(instance_to_json(instance_from_json(doc)) == doc);
  }
  std::mt19937 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = testing::random_instance(rng, 1 + trial % 3, 3, 7);
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
  }
}

TEST_CASE("forbidden triples survive the round trip") {
  auto doc = testing::small_doc(4, 7, {{1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 1}},
                                Json::array({Json::array({"D", "A", "A"}), Json::array({"A", "D"})}),
                                {{1, 3}, {1, 3}, {1, 3}}, {2, 5});
  const auto inst = instance_from_json(doc);
  const auto back = instance_to_json(inst);
  CHECK(back.at("forbiddenSequences").size() == 2);
  CHECK(instance_from_json(back) == inst);
}

TEST_CASE("field errors name the offending field") {
  auto doc = benchmark_case("p2").document.at("instance");
  doc["forbiddenSequences"].push_back(Json::array({"X", "D"}));
  doc["runLength"]["Q"] = {{"min", 1}, {"max", 2}};
  doc.erase("workBlock");
  try {
    instance_from_json(doc);
    FAIL("expected InstanceError");
  } catch (const InstanceError& e) {
    std::set<std::string> fields;
    for (const auto& f : e.errors()) fields.insert(f.field);
    CHECK(fields.count("runLength.Q") == 1);
    CHECK(fields.count("workBlock") == 1);
    bool forbidden = false;
    for (const auto& f : fields) forbidden |= f.rfind("forbiddenSequences", 0) == 0;
    CHECK(forbidden);
  }
  CHECK_THROWS_AS(instance_from_json(Json::array()), InstanceError);
  // Shape errors stop the check early: later fields depend on n and w.
  auto shape = benchmark_case("p1").document.at("instance");
  shape["employees"] = 0;
  CHECK_THROWS_AS(instance_from_json(shape), InstanceError);
}

TEST_CASE("schedule JSON and grid round trip") {
  for (const auto& name : benchmark_names()) {
    CAPTURE(name);
    const auto bc = benchmark_case(name);
    const auto inst = bc.instance();
    const auto s = bc.table(inst);
    CHECK(schedule_from_json(schedule_to_json(s, inst.shifts()), inst) == s);
    const auto text = render_grid(s, inst.shifts());
    CHECK(parse_grid(text, inst) == s);
    CHECK(parse_schedule(text, inst) == s);
    CHECK(parse_schedule(schedule_to_json(s, inst.shifts()).dump(), inst) == s);
  }
}

TEST_CASE("grid layout") {
  const auto p1 = fixture("p1");
  const auto s = benchmark_case("p1").table(p1);
  const auto text = render_grid(s, p1.shifts());
  CHECK(text.rfind("Employee/day\tMon\tTue\tWed\tThu\tFri\tSat\tSun\n", 0) == 0);
  CHECK(text.find("1\tD\tD\tD\tD\tD\tD\t\n") != std::string::npos);
  // Trailing empty cells may be stripped by editors.
  CHECK(parse_grid("Employee/day\tMon\tTue\tWed\tThu\tFri\tSat\tSun\n"
                   "1\tD\tD\tD\tD\tD\tD\n2\t\t\tD\tD\tD\tD\n3\tD\tD\tD\tD\n4\tD\tD\tD\tD\tD\tD\n5\tD\tD\t\t\tD\tD\n",
                   p1) == s);
}

TEST_CASE("schedule parsing errors") {
  const auto p1 = fixture("p1");
  const auto rows = Json::parse(R"({"rows": [["D", "D"]]})");
  CHECK_THROWS_AS(schedule_from_json(rows, p1), DimensionError);
  auto doc = schedule_to_json(benchmark_case("p1").table(p1), p1.shifts());
  doc["rows"][0][0] = "Q";
  CHECK_THROWS_AS(schedule_from_json(doc, p1), Error);
}

TEST_CASE("choice ids are stable content hashes") {
  const ClassSolution a({6, 6, 4, 4, 2, 2}), b({2, 2, 4, 4, 6, 6});
  CHECK(choice_id(a) == choice_id(b));
  CHECK(choice_id(a).rfind("c-", 0) == 0);
  CHECK(choice_id(a) != choice_id(ClassSolution({6, 6, 6, 3, 3})));
  const Layout l({{6, 3}, {4, 1}});
  CHECK(choice_id(l).rfind("l-", 0) == 0);
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("report documents") {
  const auto p1 = fixture("p1");
  const auto s = benchmark_case("p1").table(p1);
  const auto v = to_json(validate(s, p1), p1.shape());
  CHECK(v.at("ok") == true);
  const auto cat = TermCatalog::build(std::vector<int>{2, 4, 6}, p1);
  const auto c = to_json(cat, p1.shifts());
  CHECK(c.at("byLength").at("6").at(0).at("term") == "DDDDDD");
  CHECK(c.at("byLength").at("6").at(0).at("id") == "6:0");
}

}  // TEST_SUITE
