// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Reference values come from the fixtures and the brute-force oracles.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "helpers.hpp"
#include "rws/pipeline.hpp"
#include "rws/validator.hpp"

using namespace rws;

namespace {

// Wall-clock limits, seconds.
constexpr double kP1ClassesLimit = 10;
constexpr double kP1EndToEndLimit = 5;
constexpr double kTermsLimit = 1;
constexpr double kP2Limit = 60;
constexpr double kP4Limit = 30;
constexpr double kP3FirstLimit = 5;
constexpr double kP3FiftyLimit = 60;
constexpr double kP5FirstClassLimit = 60;
constexpr double kP5FiftyLimit = 120;
constexpr std::size_t kMinSchedules = 50;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", secs);
  return buf;
}

// Collects failed sub-checks of one criterion.
struct Checks {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

int failed = 0;

void criterion(const char* name, const std::function<void(Checks&)>& body) {
  Checks v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.failures.push_back(std::string("exception: ") + e.what());
  }
  const bool ok = v.failures.empty();
  failed += !ok;
  std::string detail;
  for (const auto& s : ok ? v.notes : v.failures) detail += (detail.empty() ? "" : "; ") + s;
  std::printf("%s  %s  (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

std::set<std::vector<int>> blocks_of(const std::vector<ClassSolution>& cs) {
  std::set<std::vector<int>> out;
  for (const auto& c : cs) out.insert(c.blocks());
  return out;
}

Choices pinned(const BenchmarkCase& bc) {
  Choices c;
  c.class_blocks = parse_lengths(bc.choice("class"));
  c.layout_order = parse_lengths(bc.choice("layout"));
  return c;
}

std::size_t invalid_count(const std::vector<Schedule>& schedules, const ProblemInstance& inst) {
  std::size_t bad = 0;
  for (const auto& s : schedules) bad += !validate(s, inst).ok();
  return bad;
}

ClassSolutionOptions stage1_options(const BenchmarkCase& bc) {
  ClassSolutionOptions o;
  o.budgets = budgets_from_json(bc.budgets()).stage1;
  return o;
}

}  // namespace

int main() {
  criterion("P1 class solutions", [](Checks& v) {
    const auto bc = benchmark_case("p1");
    const auto inst = bc.instance();
    SearchControl control;
    const auto t0 = Clock::now();
    const auto r = enumerate_class_solutions(inst, stage1_options(bc), control);
    const double secs = since(t0);
    std::set<std::vector<int>> expected;
    for (const auto& s : bc.expected().at("classSolutions")) expected.insert(parse_lengths(s.get<std::string>()));
    v.require(blocks_of(r.solutions) == expected, "class set differs from the expected six");
    v.require(blocks_of(r.solutions) == oracle::class_solutions(inst), "class set differs from the oracle");
    v.require(r.exhaustive, "not exhaustive");
    v.require(secs < kP1ClassesLimit, "took " + fmt(secs));
    v.note(std::to_string(r.solutions.size()) + " classes, exhaustive, " + fmt(secs));
  });

  criterion("P1 end-to-end", [](Checks& v) {
    const auto bc = benchmark_case("p1");
    const auto inst = bc.instance();
    SearchControl control;
    const auto t0 = Clock::now();
    const auto r = solve(inst, pinned(bc), budgets_from_json(bc.budgets()), control);
    const double secs = since(t0);
    v.require(r.failure.empty(), "solve failed: " + r.failure);
    v.require(r.layouts.size() == 6, std::to_string(r.layouts.size()) + " layouts, expected 6");
    for (const auto& l : r.layouts) v.require(l.score.long_weekends >= 1, "layout without a long weekend");
    v.require(r.assignment.exhaustive, "stage 4 not exhaustive");
    v.require(r.assignment.schedules.size() == 1,
              std::to_string(r.assignment.schedules.size()) + " schedules, expected 1");
    if (r.assignment.schedules.size() == 1)
      v.require(r.assignment.schedules[0] == canonical_rotation(bc.table(inst)), "schedule is not the reference one");
    v.require(secs < kP1EndToEndLimit, "took " + fmt(secs));
    v.note("6 layouts with a long weekend, 1 schedule equal to the reference, " + fmt(secs));
  });

  criterion("Term catalog", [](Checks& v) {
    const auto inst = testing::term_example();
    const std::map<int, std::vector<std::string>> expected{
        {6, {"DDDDDD", "DDDDAA", "DDDDNN", "DDDAAA", "DDDNNN", "DDAAAA", "DDAANN", "DDNNNN", "AAAANN", "AAANNN",
             "AANNNN"}},
        {5, {"DDDDD", "DDDAA", "DDDNN", "DDAAA", "DDNNN", "AAAAA", "AAANN", "AANNN"}},
        {4, {"DDDD", "DDAA", "DDNN", "AAAA", "AANN", "NNNN"}},
    };
    const auto t0 = Clock::now();
    std::map<int, std::vector<std::string>> got;
    for (int len : {6, 5, 4}) got[len] = testing::term_strings(enumerate_terms(len, inst), inst.shifts());
    const double secs = since(t0);
    for (int len : {6, 5, 4})
      v.require(got[len] == expected.at(len), "length " + std::to_string(len) + ": " +
                                                  std::to_string(got[len].size()) + " terms differ from the list");
    v.require(secs < kTermsLimit, "took " + fmt(secs));
    v.note("11/8/6 terms for lengths 6/5/4, " + fmt(secs));
  });

  criterion("P2", [](Checks& v) {
    const auto bc = benchmark_case("p2");
    const auto inst = bc.instance();
    SearchControl control;
    const auto t0 = Clock::now();
    const auto classes = blocks_of(enumerate_class_solutions(inst, stage1_options(bc), control).solutions);
    for (const auto& s : bc.expected().at("classSolutionsInclude"))
      v.require(classes.count(parse_lengths(s.get<std::string>())) == 1, "class {" + s.get<std::string>() + "} missing");

    const auto r = solve(inst, pinned(bc), budgets_from_json(bc.budgets()), control);
    const double secs = since(t0);
    v.require(r.failure.empty(), "solve failed: " + r.failure);
    v.require(!r.layouts.empty() && r.layouts.front().score.weekends_off == 6, "best layout does not have 6 weekends off");
    bool four_long = false;
    for (const auto& l : r.layouts) four_long |= l.score.long_weekends == 4;
    v.require(four_long, "no layout with 4 long weekends");
    v.require(r.assignment.schedules.size() >= kMinSchedules,
              std::to_string(r.assignment.schedules.size()) + " schedules");
    v.require(invalid_count(r.assignment.schedules, inst) == 0, "invalid schedules");
    v.require(secs < kP2Limit, "took " + fmt(secs));
    v.note(std::to_string(classes.size()) + " classes incl. the 7 listed; best (6,_,_), a 4-long layout; " +
           std::to_string(r.assignment.schedules.size()) + " valid schedules, " + fmt(secs));
  });

  criterion("P4", [](Checks& v) {
    const auto bc = benchmark_case("p4");
    const auto inst = bc.instance();
    SearchControl control;
    const auto t0 = Clock::now();
    const auto classes = enumerate_class_solutions(inst, stage1_options(bc), control);
    auto budgets = budgets_from_json(bc.budgets());
    budgets.max_schedules = 1000;
    const auto r = solve(inst, pinned(bc), budgets, control);
    const double secs = since(t0);
    v.require(classes.solutions.size() == 23, std::to_string(classes.solutions.size()) + " classes, expected 23");
    v.require(classes.exhaustive, "stage 1 not exhaustive");
    v.require(blocks_of(classes.solutions) == oracle::class_solutions(inst), "class set differs from the oracle");
    v.require(r.failure.empty(), "solve failed: " + r.failure);
    v.require(r.assignment.exhaustive, "stage 4 not exhaustive");
    v.require(r.assignment.schedules.size() == 18, std::to_string(r.assignment.schedules.size()) + " schedules, expected 18");
    v.require(invalid_count(r.assignment.schedules, inst) == 0, "invalid schedules");
    v.require(secs < kP4Limit, "took " + fmt(secs));
    v.note("23 classes = oracle, 18 nonisomorphic schedules, " + fmt(secs));
  });

  criterion("P3", [](Checks& v) {
    const auto bc = benchmark_case("p3");
    const auto inst = bc.instance();
    SearchControl control;
    const auto classes = blocks_of(enumerate_class_solutions(inst, stage1_options(bc), control).solutions);
    v.require(classes == oracle::class_solutions(inst), "class set differs from the oracle");
    v.require(classes.count(parse_lengths("7 7 6 5 5 5 5 5")) == 1, "class {7 7 6 5 5 5 5 5} missing");

    // Stage 4 timing is measured on its own, after the layout is chosen.
    auto budgets = budgets_from_json(bc.budgets());
    budgets.max_schedules = 1;
    const auto chosen = solve(inst, pinned(bc), budgets, control);
    v.require(chosen.chosen_layout.has_value(), "layout not found: " + chosen.failure);
    if (!chosen.chosen_layout) return;
    const auto& layout = chosen.chosen_layout->layout;
    AssignmentOptions ao;
    ao.max_solutions = kMinSchedules;
    double first = -1;
    const auto t0 = Clock::now();
    const auto r = assign_shifts(layout, chosen.catalog, inst, ao, control, [&](const Schedule&) {
      if (first < 0) first = since(t0);
    });
    const double secs = since(t0);
    v.require(first >= 0 && first < kP3FirstLimit, "first schedule after " + fmt(first));
    v.require(r.schedules.size() >= kMinSchedules, std::to_string(r.schedules.size()) + " schedules");
    v.require(secs < kP3FiftyLimit, "50 schedules took " + fmt(secs));
    v.require(invalid_count(r.schedules, inst) == 0, "invalid schedules");
    v.note(std::to_string(classes.size()) + " classes = oracle; first schedule " + fmt(first) + ", " +
           std::to_string(r.schedules.size()) + " valid in " + fmt(secs));
  });

  criterion("P5 scale check", [](Checks& v) {
    const auto bc = benchmark_case("p5");
    const auto inst = bc.instance();
    SearchControl control;
    ClassSolutionOptions first_only = stage1_options(bc);
    first_only.max_results = 1;
    const auto t0 = Clock::now();
    const auto first = enumerate_class_solutions(inst, first_only, control);
    const double first_secs = since(t0);
    v.require(!first.solutions.empty() && first.solutions[0].to_string() == "6 6 5 5 5 5 5 5 5 5 5 5 5 5 5 5",
              "first class is not {6 6 5^14}");
    v.require(first_secs < kP5FirstClassLimit, "first class after " + fmt(first_secs));

    const auto t1 = Clock::now();
    const auto r = solve(inst, pinned(bc), budgets_from_json(bc.budgets()), control);
    const double secs = since(t1);
    v.require(r.failure.empty(), "solve failed: " + r.failure);
    v.require(r.assignment.schedules.size() >= kMinSchedules, std::to_string(r.assignment.schedules.size()) + " schedules");
    v.require(invalid_count(r.assignment.schedules, inst) == 0, "invalid schedules");
    v.require(secs < kP5FiftyLimit, "took " + fmt(secs));
    v.note("first class {6 6 5^14} after " + fmt(first_secs) + "; " + std::to_string(r.assignment.schedules.size()) +
           " valid schedules in " + fmt(secs));
  });

  criterion("Property suites", [](Checks& v) {
    std::mt19937 rng(20240601);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

    // (a) partition generator against the naive filter.
    int a_bad = 0;
    for (int i = 0; i < 200; ++i) {
      PartitionBounds b;
      b.total_work_days = pick(0, 30);
      b.min_block_length = pick(1, 4);
      b.max_block_length = b.min_block_length + pick(0, 6);
      b.min_blocks = pick(0, 8);
      b.max_blocks = b.min_blocks + pick(0, 8);
      const auto s = restricted_partitions(b);
      a_bad += std::set<std::vector<int>>(s.begin(), s.end()) != oracle::restricted_partitions(b) ||
               std::set<std::vector<int>>(s.begin(), s.end()).size() != s.size();
    }
    v.require(a_bad == 0, "(a) " + std::to_string(a_bad) + " bound sets differ");

    // (b) feasibility test against permutation x off-tuple enumeration, b <= 6.
    int b_checked = 0, b_bad = 0;
    for (int i = 0; i < 300 && b_checked < 500; ++i) {
      const auto inst = testing::random_instance(rng, 1 + i % 2, pick(2, 4), 7);
      for (const auto& p : oracle::restricted_partitions(compute_bounds(inst))) {
        if (p.size() > 6) continue;
        ++b_checked;
        const auto verdict = feasibility_test(p, inst, 100'000'000);
        b_bad += (verdict.status == rws::Verdict::feasible) != oracle::feasible(p, inst);
      }
    }
    v.require(b_bad == 0 && b_checked >= 100, "(b) " + std::to_string(b_bad) + " of " + std::to_string(b_checked));

    // (c) terms against the (m-1)^L filter, L <= 7, m <= 4.
    int c_bad = 0, c_checked = 0;
    for (int i = 0; i < 150; ++i) {
      const auto inst = testing::random_instance(rng, 1 + i % 3, 4, 7);
      for (int len = inst.work_block().min; len <= std::min(7, inst.work_block().max); ++len) {
        std::vector<std::vector<ShiftId>> got;
        for (const auto& t : enumerate_terms(len, inst)) got.push_back(t.seq);
        c_bad += got != oracle::terms(len, inst);
        ++c_checked;
      }
    }
    v.require(c_bad == 0, "(c) " + std::to_string(c_bad) + " of " + std::to_string(c_checked));

    // (d) every stage-4 schedule of every benchmark validates, and (g) two
    // identical runs give byte-identical result documents.
    std::size_t d_total = 0, d_bad = 0;
    int g_bad = 0;
    for (const auto& name : benchmark_names()) {
      const auto bc = benchmark_case(name);
      const auto inst = bc.instance();
      const auto budgets = budgets_from_json(bc.budgets());
      SearchControl c1, c2;
      const auto r1 = solve(inst, pinned(bc), budgets, c1);
      const auto r2 = solve(inst, pinned(bc), budgets, c2);
      d_total += r1.assignment.schedules.size();
      for (const auto& s : r1.assignment.schedules) d_bad += validate(s, inst).violations.size();
      g_bad += to_json(r1, inst).dump() != to_json(r2, inst).dump();
    }
    v.require(d_bad == 0 && d_total > 0, "(d) " + std::to_string(d_bad) + " violations");
    v.require(g_bad == 0, "(g) " + std::to_string(g_bad) + " benchmarks differ between runs");

    // (e) dominates is a strict order.
    int e_bad = 0;
    for (int i = 0; i < 10'000; ++i) {
      const WeekendScore x{pick(0, 4), pick(0, 4), pick(0, 4)}, y{pick(0, 4), pick(0, 4), pick(0, 4)},
          z{pick(0, 4), pick(0, 4), pick(0, 4)};
      e_bad += dominates(x, x);
      e_bad += dominates(x, y) && dominates(y, z) && !dominates(x, z);
      e_bad += dominates(x, y) && dominates(y, x);
    }
    v.require(e_bad == 0, "(e) " + std::to_string(e_bad) + " violations");

    // (f) canonical rotation is idempotent and rotation-stable.
    int f_bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const int n = pick(1, 8);
      std::vector<ShiftId> cells(static_cast<std::size_t>(n) * 7);
      for (auto& c : cells) c = static_cast<ShiftId>(pick(0, 3));
      const Schedule s(CycleShape{n, 7}, cells);
      const auto canon = canonical_rotation(s);
      f_bad += canonical_rotation(canon) != canon || canon != oracle::min_rotation(s);
      for (int r = 1; r < n; ++r) f_bad += canonical_rotation(rotate_rows(s, r)) != canon;
    }
    v.require(f_bad == 0, "(f) " + std::to_string(f_bad) + " violations");

    v.note("(a) 200 bound sets, (b) " + std::to_string(b_checked) + " partitions, (c) " + std::to_string(c_checked) +
           " lengths, (d) " + std::to_string(d_total) + " schedules valid, (e) 10^4 triples, (f) 1000 schedules, (g) " +
           std::to_string(benchmark_names().size()) + " benchmarks identical");
  });

  return failed ? 1 : 0;
}
