#pragma once

// Step 4: assign one term to every work block of a layout so that each
// (shift, day) staffing count is met exactly.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <vector>

#include "rws/model.hpp"
#include "rws/search_control.hpp"
#include "rws/terms.hpp"

namespace rws {

using BigCount = boost::multiprecision::cpp_int;

/// Product over work blocks of the number of usable terms for the block's
/// length. Zero if any block has none.
BigCount search_space_size(const Layout& layout, const TermCatalog& catalog);

struct AssignmentOptions {
  std::size_t max_solutions = 50;
  std::int64_t node_budget = 100'000'000;
  /// Testing hooks: disable staffing pruning and canonical de-duplication.
  bool prune = true;
  bool deduplicate = true;
};

struct AssignmentResult {
  std::vector<Schedule> schedules;  // canonical row rotation, discovery order
  std::int64_t nodes_explored = 0;
  std::int64_t leaves_visited = 0;
  bool exhaustive = false;
  BigCount search_space_size = 0;
};

/// Depth-first over blocks in layout order, terms in catalog order. After
/// each block the per-(shift, day) counts must not exceed the requirement; a
/// complete assignment is kept only if it meets every requirement exactly
/// and passes the full validator (including shift changes through days
/// off). Throws NoCandidateTermsError if some block length has no usable
/// term.
AssignmentResult assign_shifts(const Layout& layout, const TermCatalog& catalog, const ProblemInstance& inst,
                               const AssignmentOptions& options, SearchControl& control,
                               const std::function<void(const Schedule&)>& on_found = {});

}  // namespace rws
