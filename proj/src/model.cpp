#include "rws/model.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

namespace rws {

InstanceError::InstanceError(std::vector<FieldError> errors)
    : Error([&] {
        std::string msg = "invalid instance";
        for (const auto& e : errors) msg += "; " + e.field + ": " + e.message;
        return msg;
      }()),
      errors_(std::move(errors)) {}

NoCandidateTermsError::NoCandidateTermsError(int block_length)
    : Error("no usable term for work blocks of length " + std::to_string(block_length) +
            " (terms excluded, or run-length bounds too tight)"),
      block_length_(block_length) {}

// ---------------------------------------------------------------------------

ShiftAlphabet::ShiftAlphabet(std::vector<ShiftDescriptor> shifts) : shifts_(std::move(shifts)) {
  std::vector<FieldError> errors;
  if (shifts_.size() < 2) errors.push_back({"shifts", "at least one work shift and the day off are required"});
  if (shifts_.size() > 64) errors.push_back({"shifts", "at most 64 shifts are supported"});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto& s = shifts_[i];
    const std::string field = "shifts[" + std::to_string(i) + "]";
    if (s.name.empty()) errors.push_back({field + ".name", "must not be empty"});
    if (!seen.insert(s.name).second) errors.push_back({field + ".name", "duplicate name '" + s.name + "'"});
    const bool last = i + 1 == shifts_.size();
    if (s.day_off && !last) errors.push_back({field + ".dayOff", "only the last shift may be the day off"});
    if (!s.day_off && last) errors.push_back({field + ".dayOff", "the last shift must be the day off"});
  }
  if (!errors.empty()) throw InstanceError(std::move(errors));
}

std::optional<ShiftId> ShiftAlphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < shifts_.size(); ++i)
    if (shifts_[i].name == name) return static_cast<ShiftId>(i);
  return std::nullopt;
}

ShiftId ShiftAlphabet::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error("unknown shift '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

ShiftChangeMatrix::ShiftChangeMatrix(int shift_count)
    : m_(shift_count), allowed_(static_cast<std::size_t>(shift_count) * shift_count * shift_count, 1) {}

bool ShiftChangeMatrix::pair_allowed(ShiftId e, ShiftId f) const {
  for (int g = 0; g < m_; ++g)
    if (allowed(e, f, static_cast<ShiftId>(g))) return true;
  for (int x = 0; x < m_; ++x)
    if (allowed(static_cast<ShiftId>(x), e, f)) return true;
  return false;
}

bool ShiftChangeMatrix::all_allowed() const {
  return std::all_of(allowed_.begin(), allowed_.end(), [](std::uint8_t v) { return v != 0; });
}

ShiftChangeMatrix compile_constraints(std::span<const ForbiddenSequence> forbidden, int shift_count) {
  ShiftChangeMatrix c(shift_count);
  for (const auto& seq : forbidden) {
    if (seq.size() != 2 && seq.size() != 3)
      throw Error("forbidden sequences must have length 2 or 3, got " + std::to_string(seq.size()));
    for (ShiftId id : seq)
      if (id >= shift_count) throw Error("shift id " + std::to_string(id) + " out of range");
    if (seq.size() == 3) {
      c.forbid(seq[0], seq[1], seq[2]);
      continue;
    }
    for (int x = 0; x < shift_count; ++x) {
      const auto other = static_cast<ShiftId>(x);
      c.forbid(seq[0], seq[1], other);
      c.forbid(other, seq[0], seq[1]);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

CyclicPosition CyclicPosition::at(int row, int column, const CycleShape& shape) {
  return CyclicPosition((row - 1) * shape.week_length + column);
}

CyclicPosition next(CyclicPosition p, const CycleShape& shape) {
  return CyclicPosition(p.index() == shape.length() ? 1 : p.index() + 1);
}

CyclicPosition next_k(CyclicPosition p, long long k, const CycleShape& shape) {
  const long long len = shape.length();
  return CyclicPosition(static_cast<int>((p.index() - 1 + k % len) % len + 1));
}

CyclicPosition next(CyclicPosition p, const ProblemInstance& inst) { return next(p, inst.shape()); }
CyclicPosition next_k(CyclicPosition p, long long k, const ProblemInstance& inst) {
  return next_k(p, k, inst.shape());
}

// ---------------------------------------------------------------------------

ProblemInstance::ProblemInstance(ShiftAlphabet shifts, int employees, int week_length,
                                 Matrix<int> requirements, ShiftChangeMatrix changes,
                                 std::vector<RunBounds> run_length, RunBounds work_block)
    : shifts_(std::move(shifts)),
      shape_{employees, week_length},
      requirements_(std::move(requirements)),
      changes_(std::move(changes)),
      run_length_(std::move(run_length)),
      work_block_(work_block) {
  std::vector<FieldError> errors;
  const int m = shifts_.size();
  if (employees < 1) errors.push_back({"employees", "must be at least 1"});
  if (week_length < 1) errors.push_back({"weekLength", "must be at least 1"});
  if (requirements_.rows() != m - 1 || requirements_.cols() != week_length) {
    errors.push_back({"requirements", "expected " + std::to_string(m - 1) + " rows of " +
                                          std::to_string(week_length) + " values"});
  }
  if (changes_.shift_count() != m) errors.push_back({"forbiddenSequences", "shift-change matrix has the wrong size"});
  if (static_cast<int>(run_length_.size()) != m)
    errors.push_back({"runLength", "expected bounds for each of the " + std::to_string(m) + " shifts"});
  if (work_block_.min < 1 || work_block_.min > work_block_.max)
    errors.push_back({"workBlock", "need 1 <= min <= max"});

  if (errors.empty()) {
    for (int k = 0; k < m; ++k) {
      const auto& rb = run_length_[k];
      const std::string field = "runLength." + shifts_.name(static_cast<ShiftId>(k));
      if (rb.min < 1 || rb.min > rb.max) errors.push_back({field, "need 1 <= min <= max"});
      if (k < m - 1 && rb.min > work_block_.max)
        errors.push_back({field, "min exceeds the maximum work block length"});
    }
    daily_demand_.assign(week_length, 0);
    for (int j = 0; j < week_length; ++j) {
      for (int k = 0; k < m - 1; ++k) {
        const int r = requirements_(k, j);
        if (r < 0) {
          errors.push_back({"requirements[" + std::to_string(k) + "][" + std::to_string(j) + "]",
                            "must be non-negative"});
        }
        daily_demand_[j] += r;
      }
      if (daily_demand_[j] > employees) {
        errors.push_back({"requirements", "day " + std::to_string(j + 1) + " needs " +
                                              std::to_string(daily_demand_[j]) + " workers but only " +
                                              std::to_string(employees) + " employees exist"});
      }
    }
    // Every row of the cycle repeats the weekly requirement, so the total
    // work per cycle equals the sum of the requirement matrix.
    total_work_days_ = std::accumulate(daily_demand_.begin(), daily_demand_.end(), 0);
  }
  if (!errors.empty()) throw InstanceError(std::move(errors));
}

// ---------------------------------------------------------------------------

Schedule::Schedule(CycleShape shape, std::vector<ShiftId> cells) : shape_(shape), cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != shape_.length())
    throw DimensionError("schedule has " + std::to_string(cells_.size()) + " cells, expected " +
                         std::to_string(shape_.length()));
}

Schedule::Schedule(CycleShape shape, ShiftId fill)
    : shape_(shape), cells_(static_cast<std::size_t>(shape.length()), fill) {}

void check_dimensions(const Schedule& s, const ProblemInstance& inst) {
  if (s.shape() != inst.shape()) {
    throw DimensionError("schedule is " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) +
                         ", instance is " + std::to_string(inst.employees()) + "x" +
                         std::to_string(inst.week_length()));
  }
  for (ShiftId c : s.cells())
    if (c >= inst.shift_count()) throw DimensionError("schedule cell holds invalid shift id " + std::to_string(c));
}

Schedule rotate_rows(const Schedule& s, int offset) {
  const int n = s.rows();
  const int w = s.cols();
  if (n == 0) return s;
  const int shift = ((offset % n) + n) % n;
  std::vector<ShiftId> out(s.cells().size());
  for (int i = 0; i < n; ++i) {
    const int dst = (i + shift) % n;
    std::copy_n(s.cells().begin() + static_cast<std::ptrdiff_t>(i) * w, w,
                out.begin() + static_cast<std::ptrdiff_t>(dst) * w);
  }
  return Schedule(s.shape(), std::move(out));
}

Schedule canonical_rotation(const Schedule& s) {
  const auto cells = s.cells();
  const int n = s.rows();
  const int w = s.cols();
  const std::size_t len = cells.size();
  // Compare rotations starting at row r without materializing them.
  auto less = [&](int a, int b) {
    for (std::size_t t = 0; t < len; ++t) {
      const ShiftId x = cells[(static_cast<std::size_t>(a) * w + t) % len];
      const ShiftId y = cells[(static_cast<std::size_t>(b) * w + t) % len];
      if (x != y) return x < y;
    }
    return false;
  };
  int best = 0;
  for (int r = 1; r < n; ++r)
    if (less(r, best)) best = r;
  if (best == 0) return s;
  std::vector<ShiftId> out(len);
  for (std::size_t t = 0; t < len; ++t) out[t] = cells[(static_cast<std::size_t>(best) * w + t) % len];
  return Schedule(s.shape(), std::move(out));
}

// ---------------------------------------------------------------------------

PartitionBounds compute_bounds(const ProblemInstance& inst) {
  const auto& off = inst.days_off_block();
  if (off.min < 1) throw Error("days-off blocks must have minimum length >= 1");
  PartitionBounds b;
  b.total_work_days = inst.total_work_days();
  b.days_off_sum = inst.days_off_sum();
  if (b.days_off_sum == 0) {
    // All-work cycle: one block whose trailing days-off block is empty.
    b.min_blocks = b.max_blocks = 1;
  } else {
    b.min_blocks = (b.days_off_sum + off.max - 1) / off.max;
    b.max_blocks = b.days_off_sum / off.min;
  }
  b.min_block_length = inst.work_block().min;
  b.max_block_length = inst.work_block().max;
  return b;
}

ClassSolution::ClassSolution(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  std::sort(blocks_.begin(), blocks_.end(), std::greater<>());
}

ClassSolution ClassSolution::checked(std::vector<int> blocks, const PartitionBounds& bounds) {
  ClassSolution cs(std::move(blocks));
  const std::string text = "class solution {" + cs.to_string() + "}";
  if (cs.total() != bounds.total_work_days)
    throw Error(text + " sums to " + std::to_string(cs.total()) + ", expected " +
                std::to_string(bounds.total_work_days));
  for (int b : cs.blocks_) {
    if (b < bounds.min_block_length || b > bounds.max_block_length)
      throw Error(text + " has block " + std::to_string(b) + " outside the work-block bounds");
  }
  // The degenerate all-work cycle has one block and no days off.
  const bool all_work = bounds.days_off_sum == 0 && cs.block_count() == 1;
  if (!all_work && (cs.block_count() < bounds.min_blocks || cs.block_count() > bounds.max_blocks))
    throw Error(text + " has " + std::to_string(cs.block_count()) + " blocks, allowed " +
                std::to_string(bounds.min_blocks) + ".." + std::to_string(bounds.max_blocks));
  return cs;
}

int ClassSolution::total() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }

std::string ClassSolution::to_string() const { return format_lengths(blocks_); }

// ---------------------------------------------------------------------------

std::vector<int> Layout::work_order() const {
  std::vector<int> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.work);
  return out;
}

std::vector<int> Layout::off_lengths() const {
  std::vector<int> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.off);
  return out;
}

int Layout::total_length() const {
  int t = 0;
  for (const auto& p : pairs_) t += p.work + p.off;
  return t;
}

std::vector<int> Layout::work_starts() const {
  std::vector<int> out;
  int pos = 0;
  for (const auto& p : pairs_) {
    out.push_back(pos);
    pos += p.work + p.off;
  }
  return out;
}

std::vector<std::uint8_t> Layout::day_off_mask() const {
  std::vector<std::uint8_t> mask;
  mask.reserve(static_cast<std::size_t>(total_length()));
  for (const auto& p : pairs_) {
    mask.insert(mask.end(), static_cast<std::size_t>(p.work), 0);
    mask.insert(mask.end(), static_cast<std::size_t>(p.off), 1);
  }
  return mask;
}

std::string Layout::to_string() const {
  std::string s;
  for (const auto& p : pairs_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(p.work) + '/' + std::to_string(p.off);
  }
  return s;
}

std::vector<std::string> layout_problems(const Layout& layout, const ProblemInstance& inst) {
  std::vector<std::string> problems;
  if (layout.total_length() != inst.cycle_length())
    problems.push_back("layout covers " + std::to_string(layout.total_length()) + " days, cycle has " +
                       std::to_string(inst.cycle_length()));
  const bool all_work = layout.block_count() == 1 && layout.pairs()[0].off == 0 && inst.days_off_sum() == 0;
  for (const auto& p : layout.pairs()) {
    if (!inst.work_block().contains(p.work))
      problems.push_back("work block " + std::to_string(p.work) + " outside bounds");
    if (!all_work && !inst.days_off_block().contains(p.off))
      problems.push_back("days-off block " + std::to_string(p.off) + " outside bounds");
  }
  if (problems.empty()) {
    const int w = inst.week_length();
    std::vector<int> work(w, 0);
    const auto mask = layout.day_off_mask();
    for (std::size_t p = 0; p < mask.size(); ++p)
      if (!mask[p]) ++work[p % w];
    for (int j = 0; j < w; ++j) {
      if (work[j] != inst.daily_demand(j))
        problems.push_back("day " + std::to_string(j + 1) + " has " + std::to_string(work[j]) +
                           " workers, demand is " + std::to_string(inst.daily_demand(j)));
    }
  }
  return problems;
}

std::string term_string(const Term& t, const ShiftAlphabet& shifts) {
  std::string s;
  bool multi = false;
  for (ShiftId id : t.seq) multi = multi || shifts.name(id).size() > 1;
  for (ShiftId id : t.seq) {
    if (multi && !s.empty()) s += ' ';
    s += shifts.name(id);
  }
  return s;
}

std::vector<int> parse_lengths(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
    if (i == text.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc() || v <= 0) throw Error("cannot parse block lengths '" + std::string(text) + "'");
    i = static_cast<std::size_t>(ptr - text.data());
    out.push_back(v);
  }
  return out;
}

std::string format_lengths(std::span<const int> lengths) {
  std::string s;
  for (int v : lengths) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v);
  }
  return s;
}

}  // namespace rws
