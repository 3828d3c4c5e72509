#pragma once

// Step 1: class solutions. Restricted partitions of the total work days
// are generated with pruning, then each is tested for at least one
// days-off distribution that meets the whole-day staffing.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rws/model.hpp"
#include "rws/search_control.hpp"

namespace rws {

/// Streams every restricted partition once, as a non-increasing sequence,
/// in the order of the recursive generator (smallest first element first,
/// then lexicographically increasing). `visit` returns false to stop.
/// Returns true when the stream ran to completion.
bool restricted_partitions(const PartitionBounds& bounds, const std::function<bool(std::span<const int>)>& visit);
std::vector<std::vector<int>> restricted_partitions(const PartitionBounds& bounds);

enum class Verdict { feasible, infeasible, budget_exhausted };

struct FeasibilityVerdict {
  Verdict status = Verdict::infeasible;
  std::int64_t nodes_explored = 0;
  int stage_reached = 1;
  std::optional<Layout> witness;  // set when feasible
};

/// Backtracking over alternating work / days-off slots laid from cycle
/// position 1. Work slots try the distinct block lengths in decreasing order
/// (respecting multiplicities); days-off slots try lengths in increasing
/// order. Per-column work and off counts are pruned against D_j and n - D_j.
FeasibilityVerdict feasibility_test(std::span<const int> partition, const ProblemInstance& inst,
                                    std::int64_t node_budget, int stage = 1);

struct StageBudgets {
  std::array<std::int64_t, 3> nodes{10'000, 1'000'000, 100'000'000};
};

struct ClassSolutionOptions {
  StageBudgets budgets;
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
};

struct ClassSolutionResult {
  std::vector<ClassSolution> solutions;  // discovery order
  bool exhaustive = false;
  std::int64_t nodes_explored = 0;
  std::size_t partitions_generated = 0;
  std::size_t unresolved = 0;  // still budget-exhausted after the last stage
};

/// Three-stage test: each partition first gets the stage-1 budget; partitions
/// that exhaust it are retried with the stage-2 and then stage-3 budgets after
/// the cheaper pass over the whole stream. `on_found` sees each class solution
/// as it is discovered. Throws Error unless the budgets strictly increase.
ClassSolutionResult enumerate_class_solutions(const ProblemInstance& inst, const ClassSolutionOptions& options,
                                              SearchControl& control,
                                              const std::function<void(const ClassSolution&)>& on_found = {});

}  // namespace rws
