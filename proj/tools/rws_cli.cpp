// rws: batch front end for the rotating-workforce scheduling engine.
//
//   rws solve INSTANCE [--policy P] [--choose-class "..."] [--choose-layout "..."]
//   rws validate INSTANCE SCHEDULE
//   rws bench [p1..p5|all]
//   rws serve [--port N] [--data-dir DIR]

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rws/bench.hpp"
#include "rws/pipeline.hpp"
#include "rws/service/http.hpp"
#include "rws/validator.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitBudget = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rws::Json read_json(const std::string& path) {
  try {
    return rws::Json::parse(read_file(path));
  } catch (const rws::Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void print_instance_errors(const rws::InstanceError& e) {
  std::cerr << "invalid instance:\n";
  for (const auto& f : e.errors()) std::cerr << "  " << (f.field.empty() ? "(document)" : f.field) << ": " << f.message << "\n";
}

struct SolveArgs {
  std::string instance;
  std::string policy = "best-weekends";
  std::string choose_class, choose_layout;
  int preferred_length = 5;
  std::size_t max_schedules = 0;
  std::vector<std::int64_t> stage_budgets;
  std::int64_t layout_budget = 0, assign_budget = 0, deadline_ms = 0;
  std::string out, grid;
  std::size_t show = 1;
  bool no_pinned = false;
};

int cmd_solve(const SolveArgs& a) {
  rws::Json doc = read_json(a.instance);
  // A benchmark fixture carries the instance plus pinned budgets and choices.
  const bool fixture = doc.is_object() && doc.contains("instance");
  const rws::Json instance_doc = fixture ? doc["instance"] : doc;

  std::optional<rws::ProblemInstance> inst;
  try {
    inst.emplace(rws::instance_from_json(instance_doc));
  } catch (const rws::InstanceError& e) {
    print_instance_errors(e);
    return kExitInvalid;
  }

  rws::Choices choices;
  rws::Budgets budgets;
  if (fixture && doc.contains("budgets")) budgets = rws::budgets_from_json(doc["budgets"]);
  if (fixture && !a.no_pinned && doc.contains("choices")) {
    const auto& ch = doc["choices"];
    if (ch.contains("class")) choices.class_blocks = rws::parse_lengths(ch["class"].get<std::string>());
    if (ch.contains("layout")) choices.layout_order = rws::parse_lengths(ch["layout"].get<std::string>());
  }
  try {
    choices.policy = rws::parse_policy(a.policy);
    if (!a.choose_class.empty()) choices.class_blocks = rws::parse_lengths(a.choose_class);
    if (!a.choose_layout.empty()) choices.layout_order = rws::parse_lengths(a.choose_layout);
  } catch (const rws::Error& e) {
    throw UsageError(e.what());
  }
  choices.preferred_length = a.preferred_length;
  if (a.max_schedules) budgets.max_schedules = a.max_schedules;
  if (!a.stage_budgets.empty()) {
    if (a.stage_budgets.size() != 3) throw UsageError("--stage-budgets takes three node counts");
    std::copy(a.stage_budgets.begin(), a.stage_budgets.end(), budgets.stage1.nodes.begin());
  }
  if (a.layout_budget) budgets.layout_nodes_per_permutation = a.layout_budget;
  if (a.assign_budget) budgets.assignment_nodes = a.assign_budget;

  rws::SearchControl control =
      a.deadline_ms ? rws::SearchControl::with_timeout(std::chrono::milliseconds(a.deadline_ms)) : rws::SearchControl{};
  const auto t0 = std::chrono::steady_clock::now();
  const rws::SolveReport rep = rws::solve(*inst, choices, budgets, control);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!a.out.empty()) {
    std::ofstream out(a.out);
    out << rws::to_json(rep, *inst).dump(2) << "\n";
  }
  std::cerr << "step 1: " << rep.classes.solutions.size() << " class solution(s)"
            << (rep.chosen_class ? ", chose {" + rep.chosen_class->to_string() + "}" : "") << "\n";
  if (rep.chosen_class)
    std::cerr << "step 2: " << rep.layouts.size() << " layout(s)"
              << (rep.chosen_layout ? ", chose " + rep.chosen_layout->layout.to_string() : "") << "\n";
  if (rep.chosen_layout)
    std::cerr << "step 4: " << rep.assignment.schedules.size() << " schedule(s), " << rep.assignment.nodes_explored
              << " nodes, search space " << rep.assignment.search_space_size.str() << "\n";
  std::fprintf(stderr, "time: %.3f s\n", secs);

  if (!rep.failure.empty()) {
    std::cerr << "no solution: " << rep.failure << (rep.failure_on_budget ? " (budget exhausted)" : "") << "\n";
    return rep.failure_on_budget ? kExitBudget : kExitNoSolution;
  }
  std::string grids;
  for (std::size_t i = 0; i < rep.assignment.schedules.size() && i < a.show; ++i) {
    if (i) grids += "\n";
    grids += rws::render_grid(rep.assignment.schedules[i], inst->shifts());
  }
  std::cout << grids;
  if (!a.grid.empty()) std::ofstream(a.grid) << grids;
  return 0;
}

int cmd_validate(const std::string& instance_path, const std::string& schedule_path, bool json) {
  std::optional<rws::ProblemInstance> inst;
  try {
    rws::Json doc = read_json(instance_path);
    inst.emplace(rws::instance_from_json(doc.is_object() && doc.contains("instance") ? doc["instance"] : doc));
  } catch (const rws::InstanceError& e) {
    print_instance_errors(e);
    return kExitUsage;
  }
  rws::Schedule s;
  try {
    s = rws::parse_schedule(read_file(schedule_path), *inst);
  } catch (const rws::Error& e) {
    std::cerr << schedule_path << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const auto report = rws::validate(s, *inst);
  if (json) {
    std::cout << rws::to_json(report, inst->shape()).dump(2) << "\n";
  } else if (report.ok()) {
    std::cout << "ok\n";
  } else {
    for (const auto& v : report.violations) std::cout << rws::to_string(v.kind) << ": " << v.message << "\n";
    std::cout << report.violations.size() << " violation(s)\n";
  }
  return report.ok() ? 0 : kExitInvalid;
}

int cmd_bench(const std::string& which) {
  std::vector<std::string> names;
  if (which == "all")
    names = rws::benchmark_names();
  else
    names.push_back(which);
  bool all_pass = true;
  std::printf("%-5s %-6s %8s  %s\n", "case", "result", "seconds", "checks");
  for (const auto& name : names) {
    rws::BenchmarkCase bc;
    try {
      bc = rws::benchmark_case(name);
    } catch (const rws::Error& e) {
      throw UsageError(e.what());
    }
    const auto out = rws::run_benchmark(bc);
    all_pass = all_pass && out.pass();
    std::printf("%-5s %-6s %8.3f  ", out.name.c_str(), out.pass() ? "PASS" : "FAIL", out.seconds);
    std::string sep;
    for (const auto& c : out.checks) {
      std::printf("%s%s%s [%s]", sep.c_str(), c.pass ? "" : "!", c.name.c_str(), c.detail.c_str());
      sep = "; ";
    }
    std::printf("\n");
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotating workforce scheduling: class solutions, layouts, terms, assignment"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Run all four steps on an instance (or fixture) file");
  solve->add_option("instance", sa.instance, "Instance or fixture JSON")->required();
  solve->add_option("--policy", sa.policy, "first | most-optimal-blocks | best-weekends")->capture_default_str();
  solve->add_option("--choose-class", sa.choose_class, "Explicit class solution, e.g. \"6 6 4 4 2 2\"");
  solve->add_option("--choose-layout", sa.choose_layout, "Explicit block order, e.g. \"6 4 4 6 2 2\"");
  solve->add_option("--preferred-length", sa.preferred_length, "Block length favoured by most-optimal-blocks")
      ->capture_default_str();
  solve->add_option("--max", sa.max_schedules, "Maximum number of schedules (default 50)");
  solve->add_option("--stage-budgets", sa.stage_budgets, "Three step-1 node budgets")->expected(3);
  solve->add_option("--layout-budget", sa.layout_budget, "Step-2 node budget per block order");
  solve->add_option("--assign-budget", sa.assign_budget, "Step-4 node budget");
  solve->add_option("--deadline-ms", sa.deadline_ms, "Wall-clock cap for the whole solve");
  solve->add_option("--out", sa.out, "Write the result document here");
  solve->add_option("--grid", sa.grid, "Write the schedule grid(s) here");
  solve->add_option("--show", sa.show, "Number of schedules printed")->capture_default_str();
  solve->add_flag("--no-pinned", sa.no_pinned, "Ignore choices pinned in a fixture file");

  std::string v_instance, v_schedule;
  bool v_json = false;
  auto* validate = app.add_subcommand("validate", "Check a schedule (JSON or grid) against an instance");
  validate->add_option("instance", v_instance, "Instance or fixture JSON")->required();
  validate->add_option("schedule", v_schedule, "Schedule JSON or tab-separated grid")->required();
  validate->add_flag("--json", v_json, "Print the report as JSON");

  std::string bench_case = "all";
  auto* bench = app.add_subcommand("bench", "Reproduce the built-in benchmark cases");
  bench->add_option("case", bench_case, "p1..p5 or all")->capture_default_str();

  std::string host = "127.0.0.1", data_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the session service over HTTP");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Persist sessions here (event logs and snapshots)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(sa);
    if (*validate) return cmd_validate(v_instance, v_schedule, v_json);
    if (*bench) return cmd_bench(bench_case);
    if (*serve) {
      rws::service::SessionStore store(data_dir);
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      return rws::service::serve(store, host, port) ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitUsage;
}
