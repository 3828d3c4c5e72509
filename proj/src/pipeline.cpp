#include "rws/pipeline.hpp"

#include <algorithm>

#include "rws/validator.hpp"

namespace rws {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::first: return "first";
    case Policy::most_optimal_blocks: return "most-optimal-blocks";
    case Policy::best_weekends: return "best-weekends";
  }
  return "?";
}

Policy parse_policy(std::string_view text) {
  for (Policy p : {Policy::first, Policy::most_optimal_blocks, Policy::best_weekends})
    if (to_string(p) == text) return p;
  throw Error("unknown policy '" + std::string(text) + "' (first, most-optimal-blocks, best-weekends)");
}

std::optional<std::size_t> choose_class(const std::vector<ClassSolution>& classes, const Choices& choices) {
  if (classes.empty()) return std::nullopt;
  if (choices.class_blocks) {
    const ClassSolution want(*choices.class_blocks);
    auto it = std::find(classes.begin(), classes.end(), want);
    if (it == classes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes.begin());
  }
  if (choices.policy != Policy::most_optimal_blocks) return 0;
  std::size_t best = 0;
  long best_count = -1;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& b = classes[i].blocks();
    const long c = std::count(b.begin(), b.end(), choices.preferred_length);
    if (c > best_count) best = i, best_count = c;
  }
  return best;
}

std::optional<std::size_t> find_layout_by_order(const std::vector<ScoredLayout>& layouts, std::span<const int> order) {
  const std::vector<int> want(order.begin(), order.end());
  for (std::size_t i = 0; i < layouts.size(); ++i)
    if (layouts[i].layout.work_order() == want) return i;
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    auto w = layouts[i].layout.work_order();
    if (w.size() != want.size()) continue;
    for (std::size_t r = 0; r < w.size(); ++r) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      if (w == want) return i;
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> choose_layout(const std::vector<ScoredLayout>& layouts, const Choices& choices) {
  if (layouts.empty()) return std::nullopt;
  if (choices.layout_order) return find_layout_by_order(layouts, *choices.layout_order);
  if (choices.policy != Policy::best_weekends) return 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < layouts.size() && layouts[i].score == layouts[0].score; ++i)
    if (single_day_off_bridge(layouts[i].layout) < single_day_off_bridge(layouts[best].layout)) best = i;
  return best;
}

std::vector<int> distinct_lengths(const Layout& layout) {
  auto v = layout.work_order();
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

WeekendScore schedule_score(const Schedule& s, const ProblemInstance& inst) {
  if (!inst.weekend_scoring_enabled()) return {};
  std::vector<std::uint8_t> mask;
  mask.reserve(s.cells().size());
  for (ShiftId c : s.cells()) mask.push_back(inst.shifts().is_day_off(c) ? 1 : 0);
  return weekend_score(mask);
}

Budgets budgets_from_json(const Json& doc) {
  Budgets b;
  if (doc.contains("stage1")) {
    const auto& s = doc.at("stage1");
    for (std::size_t i = 0; i < 3; ++i) b.stage1.nodes[i] = s.at(i).get<std::int64_t>();
  }
  b.layout_nodes_per_permutation = doc.value("layoutNodesPerPermutation", b.layout_nodes_per_permutation);
  b.order_nodes = doc.value("orderNodes", b.order_nodes);
  b.assignment_nodes = doc.value("assignmentNodes", b.assignment_nodes);
  b.max_schedules = doc.value("maxSchedules", b.max_schedules);
  return b;
}

SolveReport solve(const ProblemInstance& inst, const Choices& choices, const Budgets& budgets, SearchControl& control) {
  SolveReport report;

  // Step 1.
  if (choices.class_blocks) {
    const ClassSolution cs(*choices.class_blocks);
    for (int stage = 1; stage <= 3; ++stage) {
      auto v = feasibility_test(cs.blocks(), inst, budgets.stage1.nodes[stage - 1], stage);
      report.classes.nodes_explored += v.nodes_explored;
      if (v.status == Verdict::feasible) {
        report.classes.solutions.push_back(cs);
        break;
      }
      if (v.status == Verdict::infeasible) break;
      if (stage == 3) report.classes.unresolved = 1;
    }
    report.classes.partitions_generated = 1;
    report.classes.exhaustive = report.classes.unresolved == 0;
  } else {
    ClassSolutionOptions opt{budgets.stage1, budgets.max_classes};
    report.classes = enumerate_class_solutions(inst, opt, control);
  }
  auto ci = choose_class(report.classes.solutions, choices);
  if (!ci) {
    report.failure = choices.class_blocks ? "class solution " + format_lengths(*choices.class_blocks) +
                                                (report.classes.unresolved ? " could not be confirmed within budget"
                                                                           : " is not feasible")
                                          : "no class solution";
    report.failure_on_budget = !report.classes.exhaustive;
    return report;
  }
  report.chosen_class = report.classes.solutions[*ci];

  // Step 2.
  LayoutSearchOptions lo;
  lo.node_budget_per_permutation = budgets.layout_nodes_per_permutation;
  auto layouts = enumerate_layouts(*report.chosen_class, inst, lo, control);
  report.layouts = std::move(layouts.layouts);
  report.layouts_exhaustive = layouts.exhaustive;
  report.layout_nodes = layouts.nodes_explored;
  auto li = choose_layout(report.layouts, choices);
  if (!li && choices.layout_order && !control.stopped()) {
    auto fixed = layouts_for_order(*choices.layout_order, inst, budgets.order_nodes, 1, control);
    report.layout_nodes += fixed.nodes_explored;
    if (!fixed.layouts.empty()) {
      report.layouts.push_back(fixed.layouts.front());
      li = report.layouts.size() - 1;
    } else {
      report.layouts_exhaustive = report.layouts_exhaustive && fixed.exhaustive;
    }
  }
  if (!li) {
    report.failure = choices.layout_order ? "no layout with block order " + format_lengths(*choices.layout_order)
                                          : "no layout";
    report.failure_on_budget = !report.layouts_exhaustive;
    return report;
  }
  report.chosen_layout = report.layouts[*li];

  // Steps 3 and 4.
  report.catalog = TermCatalog::build(distinct_lengths(report.chosen_layout->layout), inst);
  AssignmentOptions ao;
  ao.max_solutions = budgets.max_schedules;
  ao.node_budget = budgets.assignment_nodes;
  try {
    report.assignment = assign_shifts(report.chosen_layout->layout, report.catalog, inst, ao, control);
  } catch (const NoCandidateTermsError& e) {
    report.failure = e.what();
    return report;
  }
  if (report.assignment.schedules.empty()) {
    report.failure = "no schedule";
    report.failure_on_budget = !report.assignment.exhaustive;
  }
  return report;
}

Json to_json(const SolveReport& r, const ProblemInstance& inst) {
  Json doc;
  doc["ok"] = r.failure.empty();
  if (!r.failure.empty()) doc["failure"] = r.failure;
  Json classes = Json::array();
  for (const auto& c : r.classes.solutions) classes.push_back(c.to_string());
  doc["step1"] = {{"classSolutions", classes},
                  {"exhaustive", r.classes.exhaustive},
                  {"nodesExplored", r.classes.nodes_explored},
                  {"partitionsGenerated", r.classes.partitions_generated},
                  {"unresolved", r.classes.unresolved}};
  if (r.chosen_class) doc["step1"]["chosen"] = to_json(*r.chosen_class);
  if (r.chosen_class) {
    doc["step2"] = {{"layoutCount", r.layouts.size()},
                    {"exhaustive", r.layouts_exhaustive},
                    {"nodesExplored", r.layout_nodes}};
    if (r.chosen_layout) doc["step2"]["chosen"] = to_json(*r.chosen_layout);
  }
  if (r.chosen_layout) {
    Json counts = Json::object();
    for (const auto& [len, entries] : r.catalog.by_length()) counts[std::to_string(len)] = entries.size();
    doc["step3"] = {{"termCounts", counts}};
    Json schedules = Json::array();
    for (const auto& s : r.assignment.schedules) {
      Json item = schedule_to_json(s, inst.shifts());
      item["score"] = to_json(schedule_score(s, inst));
      item["validation"] = to_json(validate(s, inst), inst.shape());
      schedules.push_back(std::move(item));
    }
    doc["step4"] = {{"searchSpaceSize", r.assignment.search_space_size.str()},
                    {"nodesExplored", r.assignment.nodes_explored},
                    {"exhaustive", r.assignment.exhaustive},
                    {"schedules", schedules}};
  }
  return doc;
}

}  // namespace rws
