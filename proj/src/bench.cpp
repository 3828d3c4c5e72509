#include "rws/bench.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "rws/validator.hpp"

namespace rws {

bool BenchOutcome::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const BenchCheck& c) { return c.pass; });
}

namespace {

std::string join(const std::vector<ClassSolution>& v, std::size_t limit = 8) {
  std::string s;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) s += (i ? ", {" : "{") + v[i].to_string() + "}";
  if (v.size() > limit) s += ", ...";
  return s;
}

}  // namespace

BenchOutcome run_benchmark(const BenchmarkCase& bc) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  BenchOutcome out;
  out.name = bc.name;
  auto check = [&](std::string name, bool pass, std::string detail) {
    out.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  const ProblemInstance inst = bc.instance();
  const Json& ex = bc.expected();
  const Budgets budgets = budgets_from_json(bc.budgets());
  SearchControl control;

  const Schedule table = bc.table(inst);
  const auto table_report = validate(table, inst);
  check("table valid", table_report.ok(), std::to_string(table_report.violations.size()) + " violations");

  // Step 1 over the whole partition stream (only up to the first class when
  // that is all the case pins).
  if (ex.contains("classSolutions") || ex.contains("classSolutionCount") || ex.contains("classSolutionsInclude") ||
      ex.contains("firstClassSolution")) {
    ClassSolutionOptions opt{budgets.stage1, ex.contains("firstClassSolution") ? 1u : budgets.max_classes};
    auto r = enumerate_class_solutions(inst, opt, control);
    if (ex.contains("classSolutions")) {
      std::set<ClassSolution> want, got(r.solutions.begin(), r.solutions.end());
      for (const auto& c : ex["classSolutions"]) want.insert(ClassSolution(parse_lengths(c.get<std::string>())));
      check("class solutions", got == want && r.exhaustive && got.size() == r.solutions.size(),
            std::to_string(r.solutions.size()) + " found, exhaustive=" + (r.exhaustive ? "yes" : "no"));
    }
    if (ex.contains("classSolutionCount")) {
      const auto want = ex["classSolutionCount"].get<std::size_t>();
      check("class solution count", r.solutions.size() == want && r.exhaustive,
            std::to_string(r.solutions.size()) + " of " + std::to_string(want));
    }
    if (ex.contains("classSolutionsInclude")) {
      std::size_t found = 0, total = 0;
      for (const auto& c : ex["classSolutionsInclude"]) {
        ++total;
        found += std::count(r.solutions.begin(), r.solutions.end(), ClassSolution(parse_lengths(c.get<std::string>())));
      }
      check("listed class solutions present", found == total,
            std::to_string(found) + " of " + std::to_string(total) + " among " + std::to_string(r.solutions.size()));
    }
    if (ex.contains("firstClassSolution")) {
      const ClassSolution want(parse_lengths(ex["firstClassSolution"].get<std::string>()));
      check("first class solution", !r.solutions.empty() && r.solutions.front() == want, join(r.solutions, 1));
    }
  }

  Choices choices;
  choices.class_blocks = parse_lengths(bc.choice("class"));
  choices.layout_order = parse_lengths(bc.choice("layout"));
  const SolveReport rep = solve(inst, choices, budgets, control);
  check("pipeline", rep.failure.empty(), rep.failure.empty() ? "ok" : rep.failure);

  if (ex.contains("layoutCount"))
    check("layout count", rep.layouts.size() == ex["layoutCount"].get<std::size_t>() && rep.layouts_exhaustive,
          std::to_string(rep.layouts.size()));
  if (ex.contains("minLongWeekends")) {
    const int want = ex["minLongWeekends"].get<int>();
    const bool ok = !rep.layouts.empty() && std::all_of(rep.layouts.begin(), rep.layouts.end(), [&](const auto& l) {
      return l.score.long_weekends >= want;
    });
    check("long weekends in every layout", ok, ">= " + std::to_string(want));
  }
  if (ex.contains("bestWeekendsOff")) {
    const int got = rep.layouts.empty() ? -1 : rep.layouts.front().score.weekends_off;
    check("best weekends off", got == ex["bestWeekendsOff"].get<int>(), std::to_string(got));
  }
  if (ex.contains("someLongWeekends")) {
    const int want = ex["someLongWeekends"].get<int>();
    const int w = ex.value("bestWeekendsOff", 0);
    const bool ok = std::any_of(rep.layouts.begin(), rep.layouts.end(), [&](const auto& l) {
      return l.score.long_weekends == want && l.score.weekends_off >= w;
    });
    check("layout with long weekends", ok, std::to_string(want) + " long");
  }

  const auto& sched = rep.assignment.schedules;
  if (ex.contains("scheduleCount"))
    check("schedule count", sched.size() == ex["scheduleCount"].get<std::size_t>() && rep.assignment.exhaustive,
          std::to_string(sched.size()) + (rep.assignment.exhaustive ? " (exhaustive)" : " (stopped)"));
  if (ex.contains("minSchedules"))
    check("schedules found", sched.size() >= ex["minSchedules"].get<std::size_t>(), std::to_string(sched.size()));
  const bool all_valid =
      std::all_of(sched.begin(), sched.end(), [&](const Schedule& s) { return validate(s, inst).ok(); });
  check("schedules valid", all_valid && !sched.empty(), std::to_string(sched.size()) + " checked");
  if (ex.value("tableAmongSchedules", false)) {
    const bool found = std::find(sched.begin(), sched.end(), canonical_rotation(table)) != sched.end();
    check("table reproduced", found, found ? "canonical match" : "not among results");
  }

  out.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return out;
}

}  // namespace rws
