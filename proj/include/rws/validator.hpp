#pragma once

// Hard-constraint checks for a cyclic schedule. Every check scans the whole
// cycle, so the last cell of row n is followed by the first cell of row 1.

#include <string>
#include <string_view>
#include <vector>

#include "rws/model.hpp"

namespace rws {

enum class ConstraintKind { requirement, shift_change, successive_shifts, work_block };

std::string_view to_string(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  std::vector<CyclicPosition> positions;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ConstraintKind kind) const;
};

/// A maximal run of cells sharing a property, on the cyclic sequence.
struct CyclicRun {
  int start = 0;  // 0-based
  int length = 0;
};

/// Decomposes the cyclic sequence into maximal runs of equal symbols. A
/// sequence with a single symbol yields one run covering the whole cycle.
std::vector<CyclicRun> cyclic_runs(std::span<const ShiftId> cells);

/// Per (shift, day) staffing must equal the requirement exactly. Throws
/// DimensionError on a shape mismatch.
std::vector<Violation> check_requirements(const Schedule& s, const ProblemInstance& inst);
std::vector<Violation> check_shift_changes(const Schedule& s, const ProblemInstance& inst);
/// Each maximal run of shift k (days off included) must have length in
/// [MINS(k), MAXS(k)].
std::vector<Violation> check_successive_shift_bounds(const Schedule& s, const ProblemInstance& inst);
/// Each maximal run of work days must have length in [MINW, MAXW].
std::vector<Violation> check_work_block_bounds(const Schedule& s, const ProblemInstance& inst);

ValidationReport validate(const Schedule& s, const ProblemInstance& inst);

}  // namespace rws
