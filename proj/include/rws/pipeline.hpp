#pragma once

// Non-interactive use of the four steps: selection policies standing in for
// the human decision maker, and a one-call solve used by the CLI and the
// benchmark harness.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rws/assignment.hpp"
#include "rws/documents.hpp"
#include "rws/layouts.hpp"
#include "rws/partitions.hpp"
#include "rws/terms.hpp"

namespace rws {

enum class Policy { first, most_optimal_blocks, best_weekends };

std::string_view to_string(Policy p);
/// Accepts "first", "most-optimal-blocks", "best-weekends".
Policy parse_policy(std::string_view text);

struct Choices {
  Policy policy = Policy::best_weekends;
  std::optional<std::vector<int>> class_blocks;  // explicit step-1 choice
  std::optional<std::vector<int>> layout_order;  // explicit step-2 choice
  int preferred_length = 5;                      // for most-optimal-blocks
};

/// Index of the class solution the policy picks; nullopt on an empty list or
/// when an explicit class is not in the list.
std::optional<std::size_t> choose_class(const std::vector<ClassSolution>& classes, const Choices& choices);

/// Index of the layout the policy picks. `first` takes the head of the
/// (score-sorted) list; `best-weekends` takes, among layouts sharing the top
/// score, the one with the shortest work stretch bridged by a single day off.
/// An explicit order goes through find_layout_by_order.
std::optional<std::size_t> choose_layout(const std::vector<ScoredLayout>& layouts, const Choices& choices);

/// A layout whose block order is exactly `order`, or failing that, the first
/// whose block order is a rotation of it (the same cyclic sequence of blocks).
std::optional<std::size_t> find_layout_by_order(const std::vector<ScoredLayout>& layouts, std::span<const int> order);

/// Sorted distinct work-block lengths of a layout.
std::vector<int> distinct_lengths(const Layout& layout);

/// Weekend score of a schedule's day-off pattern (all zero when weekend
/// scoring is disabled).
WeekendScore schedule_score(const Schedule& s, const ProblemInstance& inst);

struct Budgets {
  StageBudgets stage1;
  std::size_t max_classes = std::numeric_limits<std::size_t>::max();
  std::int64_t layout_nodes_per_permutation = 10'000'000;
  std::int64_t order_nodes = 100'000'000;
  std::int64_t assignment_nodes = 100'000'000;
  std::size_t max_schedules = 50;
};

/// Budgets as stored in a fixture ("budgets" object); missing keys keep
/// their defaults.
Budgets budgets_from_json(const Json& doc);

struct SolveReport {
  ClassSolutionResult classes;
  std::optional<ClassSolution> chosen_class;
  std::vector<ScoredLayout> layouts;
  bool layouts_exhaustive = false;
  std::int64_t layout_nodes = 0;
  std::optional<ScoredLayout> chosen_layout;
  TermCatalog catalog;
  AssignmentResult assignment;
  /// Empty on success; otherwise which stage produced nothing to choose.
  std::string failure;
  /// True when the failing stage stopped on a budget rather than proving
  /// there is nothing to find.
  bool failure_on_budget = false;
};

/// Runs all four steps, choosing per `choices`. An explicit class is tested
/// directly with the three stage budgets instead of waiting for it in the
/// partition stream; an explicit order that matches no layout group falls
/// back to searching that fixed order.
SolveReport solve(const ProblemInstance& inst, const Choices& choices, const Budgets& budgets, SearchControl& control);

/// Result document: choices, stage statistics, and each schedule with its
/// score and validation report. Contains no timings, so equal inputs give
/// byte-identical documents.
Json to_json(const SolveReport& report, const ProblemInstance& inst);

}  // namespace rws
