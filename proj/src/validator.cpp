#include "rws/validator.hpp"

#include <algorithm>

namespace rws {

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::requirement: return "requirement";
    case ConstraintKind::shift_change: return "shift_change";
    case ConstraintKind::successive_shifts: return "successive_shifts";
    case ConstraintKind::work_block: return "work_block";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ConstraintKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

namespace {

std::string describe(CyclicPosition p, const CycleShape& shape) {
  return "(" + std::to_string(p.row(shape)) + "," + std::to_string(p.column(shape)) + ")";
}

template <typename Key>
std::vector<CyclicRun> runs_by(std::span<const ShiftId> cells, Key key) {
  const int len = static_cast<int>(cells.size());
  std::vector<CyclicRun> runs;
  if (len == 0) return runs;
  int start = -1;
  for (int p = 0; p < len; ++p) {
    if (key(cells[p]) != key(cells[(p + len - 1) % len])) {
      start = p;
      break;
    }
  }
  if (start < 0) return {{0, len}};
  int p = start;
  while (p < start + len) {
    int q = p + 1;
    while (q < start + len && key(cells[q % len]) == key(cells[p % len])) ++q;
    runs.push_back({p % len, q - p});
    p = q;
  }
  return runs;
}

}  // namespace

std::vector<CyclicRun> cyclic_runs(std::span<const ShiftId> cells) {
  return runs_by(cells, [](ShiftId s) { return s; });
}

std::vector<Violation> check_requirements(const Schedule& s, const ProblemInstance& inst) {
  check_dimensions(s, inst);
  std::vector<Violation> out;
  const int n = inst.employees();
  const int w = inst.week_length();
  const auto& shape = inst.shape();
  for (int j = 1; j <= w; ++j) {
    for (int k = 0; k < inst.shift_count() - 1; ++k) {
      int count = 0;
      for (int i = 1; i <= n; ++i) count += s.at(i, j) == k;
      const int required = inst.requirement(static_cast<ShiftId>(k), j - 1);
      if (count != required) {
        std::vector<CyclicPosition> column;
        for (int i = 1; i <= n; ++i) column.push_back(CyclicPosition::at(i, j, shape));
        out.push_back({ConstraintKind::requirement, std::move(column),
                       "day " + std::to_string(j) + ": shift " + inst.shifts().name(static_cast<ShiftId>(k)) +
                           " staffed " + std::to_string(count) + ", required " + std::to_string(required)});
      }
    }
  }
  return out;
}

std::vector<Violation> check_shift_changes(const Schedule& s, const ProblemInstance& inst) {
  check_dimensions(s, inst);
  std::vector<Violation> out;
  const auto cells = s.cells();
  const int len = static_cast<int>(cells.size());
  const auto& c = inst.changes();
  const auto& shifts = inst.shifts();
  for (int p = 0; p < len; ++p) {
    const ShiftId e = cells[p];
    const ShiftId f = cells[(p + 1) % len];
    const ShiftId g = cells[(p + 2) % len];
    if (!c.allowed(e, f, g)) {
      CyclicPosition pos(p + 1);
      out.push_back({ConstraintKind::shift_change,
                     {pos, next(pos, s.shape()), next_k(pos, 2, s.shape())},
                     "forbidden sequence " + shifts.name(e) + " " + shifts.name(f) + " " + shifts.name(g) +
                         " at " + describe(pos, s.shape())});
    }
  }
  return out;
}

std::vector<Violation> check_successive_shift_bounds(const Schedule& s, const ProblemInstance& inst) {
  check_dimensions(s, inst);
  std::vector<Violation> out;
  const auto cells = s.cells();
  for (const auto& run : cyclic_runs(cells)) {
    const ShiftId k = cells[run.start];
    const auto& bounds = inst.run_length(k);
    if (bounds.contains(run.length)) continue;
    CyclicPosition pos(run.start + 1);
    out.push_back({ConstraintKind::successive_shifts,
                   {pos},
                   "run of " + std::to_string(run.length) + " x " + inst.shifts().name(k) + " at " +
                       describe(pos, s.shape()) + " outside " + std::to_string(bounds.min) + ".." +
                       std::to_string(bounds.max)});
  }
  return out;
}

std::vector<Violation> check_work_block_bounds(const Schedule& s, const ProblemInstance& inst) {
  check_dimensions(s, inst);
  std::vector<Violation> out;
  const auto cells = s.cells();
  const ShiftId off = inst.shifts().day_off();
  const auto& bounds = inst.work_block();
  for (const auto& run : runs_by(cells, [off](ShiftId x) { return x != off; })) {
    if (cells[run.start] == off || bounds.contains(run.length)) continue;
    CyclicPosition pos(run.start + 1);
    out.push_back({ConstraintKind::work_block,
                   {pos},
                   "work block of " + std::to_string(run.length) + " days at " + describe(pos, s.shape()) +
                       " outside " + std::to_string(bounds.min) + ".." + std::to_string(bounds.max)});
  }
  return out;
}

ValidationReport validate(const Schedule& s, const ProblemInstance& inst) {
  ValidationReport report;
  auto append = [&](std::vector<Violation> v) {
    report.violations.insert(report.violations.end(), std::make_move_iterator(v.begin()),
                             std::make_move_iterator(v.end()));
  };
  append(check_requirements(s, inst));
  append(check_shift_changes(s, inst));
  append(check_successive_shift_bounds(s, inst));
  append(check_work_block_bounds(s, inst));
  return report;
}

}  // namespace rws
