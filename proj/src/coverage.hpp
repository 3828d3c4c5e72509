#pragma once

#include <vector>

#include "rws/model.hpp"

namespace rws::detail {

/// Per-column counts of work and days-off cells laid so far, checked against
/// the whole-day demand D_j (work) and n - D_j (off).
class ColumnCoverage {
 public:
  explicit ColumnCoverage(const ProblemInstance& inst)
      : w_(inst.week_length()), work_(w_, 0), off_(w_, 0), work_cap_(inst.daily_demand()), off_cap_(w_, 0) {
    for (int j = 0; j < w_; ++j) off_cap_[j] = inst.employees() - work_cap_[j];
  }

  /// Adds [pos, pos+len); returns false if any touched column exceeds its cap.
  /// The counts are updated either way so remove_* always undoes add_*.
  bool add_work(int pos, int len) { return add(work_, work_cap_, pos, len, 1); }
  void remove_work(int pos, int len) { add(work_, work_cap_, pos, len, -1); }
  bool add_off(int pos, int len) { return add(off_, off_cap_, pos, len, 1); }
  void remove_off(int pos, int len) { add(off_, off_cap_, pos, len, -1); }

 private:
  bool add(std::vector<int>& counts, const std::vector<int>& caps, int pos, int len, int delta) {
    bool ok = true;
    int col = pos % w_;
    for (int t = 0; t < len; ++t) {
      counts[col] += delta;
      ok = ok && counts[col] <= caps[col];
      if (++col == w_) col = 0;
    }
    return ok;
  }

  int w_;
  std::vector<int> work_, off_, work_cap_, off_cap_;
};

}  // namespace rws::detail
