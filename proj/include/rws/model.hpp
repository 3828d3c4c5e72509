#pragma once

// Domain types shared by every stage of the rotating-workforce engine.
//
// Conventions:
//   * Shifts are identified by a ShiftId, the 0-based index into the
//     ShiftAlphabet. The day-off shift is always the last id.
//   * Schedules are n x w matrices. Row/column accessors that take (i, j)
//     are 1-based; flat cell spans are 0-based and row-major.
//   * Column j of the matrix is a fixed weekday when w == 7 (column 1 is
//     Monday). Weekend features use the absolute cycle position modulo 7.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rws/error.hpp"

namespace rws {

using ShiftId = std::uint8_t;

struct ShiftDescriptor {
  std::string name;
  bool day_off = false;
  friend bool operator==(const ShiftDescriptor&, const ShiftDescriptor&) = default;
};

class ShiftAlphabet {
 public:
  /// Throws InstanceError unless there are at least two shifts, names are
  /// unique and non-empty, and exactly the last descriptor is the day off.
  explicit ShiftAlphabet(std::vector<ShiftDescriptor> shifts);

  int size() const noexcept { return static_cast<int>(shifts_.size()); }
  int work_shift_count() const noexcept { return size() - 1; }
  ShiftId day_off() const noexcept { return static_cast<ShiftId>(size() - 1); }
  bool is_day_off(ShiftId id) const noexcept { return id == day_off(); }

  const ShiftDescriptor& operator[](ShiftId id) const { return shifts_.at(id); }
  const std::string& name(ShiftId id) const { return shifts_.at(id).name; }
  std::optional<ShiftId> find(std::string_view name) const;
  ShiftId id_of(std::string_view name) const;

  const std::vector<ShiftDescriptor>& descriptors() const noexcept { return shifts_; }
  friend bool operator==(const ShiftAlphabet&, const ShiftAlphabet&) = default;

 private:
  std::vector<ShiftDescriptor> shifts_;
};

/// Dense row-major matrix with 0-based access.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::span<const T> row(int r) const {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(r) * cols_, cols_);
  }
  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

struct RunBounds {
  int min = 1;
  int max = 1;
  bool contains(int length) const noexcept { return length >= min && length <= max; }
  friend bool operator==(const RunBounds&, const RunBounds&) = default;
};

/// A forbidden shift sequence of length 2 or 3.
using ForbiddenSequence = std::vector<ShiftId>;

/// The m x m x m matrix of allowed shift triples.
class ShiftChangeMatrix {
 public:
  ShiftChangeMatrix() = default;
  explicit ShiftChangeMatrix(int shift_count);  // all triples allowed

  int shift_count() const noexcept { return m_; }
  bool allowed(ShiftId e, ShiftId f, ShiftId g) const { return allowed_[index(e, f, g)] != 0; }
  void forbid(ShiftId e, ShiftId f, ShiftId g) { allowed_[index(e, f, g)] = 0; }

  /// A pair is unconditionally forbidden when no triple through it, in either
  /// position, is allowed. Pairs compiled from forbidden pairs satisfy this.
  bool pair_allowed(ShiftId e, ShiftId f) const;
  bool all_allowed() const;

  friend bool operator==(const ShiftChangeMatrix&, const ShiftChangeMatrix&) = default;

 private:
  std::size_t index(ShiftId e, ShiftId f, ShiftId g) const {
    return (static_cast<std::size_t>(e) * m_ + f) * m_ + g;
  }
  int m_ = 0;
  std::vector<std::uint8_t> allowed_;
};

/// C[e][f][g] = 0 iff (e,f) or (f,g) is a forbidden pair or (e,f,g) a
/// forbidden triple. Throws Error on an id outside [0, m) or a sequence whose
/// length is not 2 or 3.
ShiftChangeMatrix compile_constraints(std::span<const ForbiddenSequence> forbidden, int shift_count);

/// n rows of w days; the cycle has n * w cells.
struct CycleShape {
  int employees = 0;
  int week_length = 0;
  int length() const noexcept { return employees * week_length; }
  friend bool operator==(const CycleShape&, const CycleShape&) = default;
};

/// A 1-based row-major cell index in [1, n*w].
class CyclicPosition {
 public:
  constexpr explicit CyclicPosition(int index) : index_(index) {}
  static CyclicPosition at(int row, int column, const CycleShape& shape);

  constexpr int index() const noexcept { return index_; }
  int row(const CycleShape& shape) const { return (index_ - 1) / shape.week_length + 1; }
  int column(const CycleShape& shape) const { return (index_ - 1) % shape.week_length + 1; }
  /// 1 = Monday ... 7 = Sunday, counted along the whole cycle.
  int weekday() const noexcept { return (index_ - 1) % 7 + 1; }

  friend constexpr auto operator<=>(CyclicPosition, CyclicPosition) = default;

 private:
  int index_;
};

class ProblemInstance;

CyclicPosition next(CyclicPosition p, const CycleShape& shape);
CyclicPosition next_k(CyclicPosition p, long long k, const CycleShape& shape);
CyclicPosition next(CyclicPosition p, const ProblemInstance& inst);
CyclicPosition next_k(CyclicPosition p, long long k, const ProblemInstance& inst);

class ProblemInstance {
 public:
  /// `requirements` is (m-1) x w; `run_length` has one entry per shift, the
  /// last being the days-off block bounds. Throws InstanceError listing every
  /// violated invariant.
  ProblemInstance(ShiftAlphabet shifts, int employees, int week_length, Matrix<int> requirements,
                  ShiftChangeMatrix changes, std::vector<RunBounds> run_length,
                  RunBounds work_block);

  const ShiftAlphabet& shifts() const noexcept { return shifts_; }
  int shift_count() const noexcept { return shifts_.size(); }
  int employees() const noexcept { return shape_.employees; }
  int week_length() const noexcept { return shape_.week_length; }
  const CycleShape& shape() const noexcept { return shape_; }
  int cycle_length() const noexcept { return shape_.length(); }

  const Matrix<int>& requirements() const noexcept { return requirements_; }
  int requirement(ShiftId shift, int column0) const { return requirements_(shift, column0); }
  const ShiftChangeMatrix& changes() const noexcept { return changes_; }
  const RunBounds& run_length(ShiftId shift) const { return run_length_.at(shift); }
  const std::vector<RunBounds>& run_lengths() const noexcept { return run_length_; }
  const RunBounds& days_off_block() const { return run_length_.back(); }
  const RunBounds& work_block() const noexcept { return work_block_; }

  /// Whole-day staffing D_j of 0-based column j.
  int daily_demand(int column0) const { return daily_demand_.at(column0); }
  const std::vector<int>& daily_demand() const noexcept { return daily_demand_; }
  int total_work_days() const noexcept { return total_work_days_; }
  int days_off_sum() const noexcept { return cycle_length() - total_work_days_; }
  bool weekend_scoring_enabled() const noexcept { return cycle_length() % 7 == 0; }

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

 private:
  ShiftAlphabet shifts_;
  CycleShape shape_;
  Matrix<int> requirements_;
  ShiftChangeMatrix changes_;
  std::vector<RunBounds> run_length_;
  RunBounds work_block_;
  std::vector<int> daily_demand_;
  int total_work_days_ = 0;
};

class Schedule {
 public:
  Schedule() = default;
  Schedule(CycleShape shape, std::vector<ShiftId> cells);
  Schedule(CycleShape shape, ShiftId fill);

  const CycleShape& shape() const noexcept { return shape_; }
  int rows() const noexcept { return shape_.employees; }
  int cols() const noexcept { return shape_.week_length; }

  /// 1-based (employee, day).
  ShiftId at(int i, int j) const { return cells_.at(flat_index(i, j)); }
  void set(int i, int j, ShiftId s) { cells_.at(flat_index(i, j)) = s; }
  ShiftId operator[](CyclicPosition p) const { return cells_.at(p.index() - 1); }

  std::span<const ShiftId> cells() const noexcept { return cells_; }
  std::span<ShiftId> cells() noexcept { return cells_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;
  friend auto operator<=>(const Schedule& a, const Schedule& b) { return a.cells_ <=> b.cells_; }

 private:
  std::size_t flat_index(int i, int j) const {
    return static_cast<std::size_t>(i - 1) * shape_.week_length + (j - 1);
  }
  CycleShape shape_;
  std::vector<ShiftId> cells_;
};

/// Throws DimensionError unless the schedule's shape matches and every cell
/// holds a valid shift id.
void check_dimensions(const Schedule& s, const ProblemInstance& inst);

/// Schedule whose rows are shifted down by `offset` (row i moves to row i+offset).
Schedule rotate_rows(const Schedule& s, int offset);

/// Lexicographically smallest of the n row rotations.
Schedule canonical_rotation(const Schedule& s);

/// Bounds that restrict which integer partitions of the total work days can
/// be class solutions.
struct PartitionBounds {
  int total_work_days = 0;
  int min_blocks = 0;
  int max_blocks = 0;
  int min_block_length = 1;
  int max_block_length = 1;
  int days_off_sum = 0;
  friend bool operator==(const PartitionBounds&, const PartitionBounds&) = default;
};

/// MINB = ceil(DaysOffSum / MAXS(off)), MAXB = floor(DaysOffSum / MINS(off)).
PartitionBounds compute_bounds(const ProblemInstance& inst);

/// A multiset of work-block lengths kept in non-increasing order.
class ClassSolution {
 public:
  ClassSolution() = default;
  /// Sorts into canonical order; does not check instance bounds.
  explicit ClassSolution(std::vector<int> blocks);
  /// Canonicalizes and throws Error unless the sum, element bounds and block
  /// count fit `bounds`.
  static ClassSolution checked(std::vector<int> blocks, const PartitionBounds& bounds);

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  int total() const;
  std::string to_string() const;

  friend auto operator<=>(const ClassSolution&, const ClassSolution&) = default;

 private:
  std::vector<int> blocks_;
};

struct BlockPair {
  int work = 0;
  int off = 0;
  friend auto operator<=>(const BlockPair&, const BlockPair&) = default;
};

/// Alternating work / days-off blocks; the first work block starts at
/// cycle position 1.
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<BlockPair> pairs) : pairs_(std::move(pairs)) {}

  const std::vector<BlockPair>& pairs() const noexcept { return pairs_; }
  int block_count() const noexcept { return static_cast<int>(pairs_.size()); }
  std::vector<int> work_order() const;
  std::vector<int> off_lengths() const;
  int total_length() const;
  /// 0-based start position of each work block.
  std::vector<int> work_starts() const;
  /// One entry per cycle cell, 1 where the cell is a day off.
  std::vector<std::uint8_t> day_off_mask() const;
  ClassSolution class_solution() const { return ClassSolution(work_order()); }
  std::string to_string() const;

  friend auto operator<=>(const Layout&, const Layout&) = default;

 private:
  std::vector<BlockPair> pairs_;
};

/// Returns a description of every violated Layout invariant (sum, block
/// bounds, per-column work counts); empty when the layout is valid.
std::vector<std::string> layout_problems(const Layout& layout, const ProblemInstance& inst);

struct WeekendScore {
  int weekends_off = 0;
  int neg_points = 0;
  int long_weekends = 0;
  friend auto operator<=>(const WeekendScore&, const WeekendScore&) = default;
};

/// A shift sequence for one work block; never contains the day off.
struct Term {
  std::vector<ShiftId> seq;
  int length() const noexcept { return static_cast<int>(seq.size()); }
  friend auto operator<=>(const Term&, const Term&) = default;
};

std::string term_string(const Term& t, const ShiftAlphabet& shifts);

/// Parses a space-separated list of positive integers such as "6 6 4 4 2 2".
std::vector<int> parse_lengths(std::string_view text);
std::string format_lengths(std::span<const int> lengths);

}  // namespace rws
