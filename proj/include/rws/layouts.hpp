#pragma once

// Step 2: for a chosen class solution, search block orders and days-off
// distributions, scoring each layout by its weekends off.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "rws/model.hpp"
#include "rws/search_control.hpp"

namespace rws {

/// Scores a day-off mask over the whole cycle (one entry per cell, nonzero =
/// day off). Weeks are consecutive 7-day spans from position 1, wrapping from
/// the last week to the first. Throws Error if the mask length is not a
/// multiple of 7.
WeekendScore weekend_score(std::span<const std::uint8_t> day_off_mask);
WeekendScore weekend_score(const Layout& layout, const ProblemInstance& inst);

/// Strict lexicographic preference: more weekends off, then fewer
/// consecutive weekends off, then more long weekends.
bool dominates(const WeekendScore& a, const WeekendScore& b);

struct ScoredLayout {
  Layout layout;
  WeekendScore score;
  friend bool operator==(const ScoredLayout&, const ScoredLayout&) = default;
};

/// Longest stretch of work days joined by a single day off (0 if the layout
/// has no single-day off block). Used as a secondary preference.
int single_day_off_bridge(const Layout& layout);

struct LayoutSearchOptions {
  std::int64_t node_budget_per_permutation = 10'000'000;
  /// Cap on the number of cyclic block orders reported.
  std::size_t max_results = std::numeric_limits<std::size_t>::max();
};

struct LayoutSearchResult {
  /// One best layout per cyclic block order, best score first.
  std::vector<ScoredLayout> layouts;
  bool exhaustive = false;
  std::int64_t nodes_explored = 0;
  std::size_t permutations_tested = 0;
  std::size_t permutations_over_budget = 0;
};

/// Every block order that is a rotation of another describes the same cyclic
/// sequence of blocks; the layouts of all its rotations compete and the best
/// one represents the group. Permutations are visited in decreasing
/// lexicographic order and each gets its own node budget; ties keep the
/// earliest layout found. `on_update` sees each new or improved group
/// representative.
LayoutSearchResult enumerate_layouts(const ClassSolution& cs, const ProblemInstance& inst,
                                     const LayoutSearchOptions& options, SearchControl& control,
                                     const std::function<void(const ScoredLayout&)>& on_update = {});

struct OrderSearchResult {
  std::vector<ScoredLayout> layouts;  // best first, ties in discovery order
  bool exhaustive = false;
  std::int64_t nodes_explored = 0;
};

/// All days-off distributions for one fixed block order, scored and sorted.
/// Keeps at most `max_results` layouts.
OrderSearchResult layouts_for_order(std::span<const int> order, const ProblemInstance& inst,
                                    std::int64_t node_budget, std::size_t max_results, SearchControl& control);

/// Orders two scored layouts for presentation: better score first.
bool better_score(const WeekendScore& a, const WeekendScore& b);

}  // namespace rws
