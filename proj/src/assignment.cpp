#include "rws/assignment.hpp"

#include <set>

#include "rws/validator.hpp"

namespace rws {

BigCount search_space_size(const Layout& layout, const TermCatalog& catalog) {
  BigCount product = 1;
  for (const auto& p : layout.pairs()) product *= catalog.candidates(p.work).size();
  return product;
}

namespace {

class AssignmentSearch {
 public:
  AssignmentSearch(const Layout& layout, const TermCatalog& catalog, const ProblemInstance& inst,
                   const AssignmentOptions& options, SearchControl& control,
                   const std::function<void(const Schedule&)>& on_found, AssignmentResult& result)
      : inst_(inst),
        options_(options),
        control_(control),
        on_found_(on_found),
        result_(result),
        w_(inst.week_length()),
        cells_(static_cast<std::size_t>(inst.cycle_length()), inst.shifts().day_off()),
        counts_(static_cast<std::size_t>(inst.shift_count() - 1) * w_, 0) {
    starts_ = layout.work_starts();
    for (const auto& p : layout.pairs()) {
      auto c = catalog.candidates(p.work);
      if (c.empty()) throw NoCandidateTermsError(p.work);
      candidates_.push_back(std::move(c));
    }
  }

  void run() {
    stopped_ = false;
    if (!candidates_.empty()) block(0);
    result_.exhaustive = !stopped_;
  }

 private:
  int& count(ShiftId s, int col) { return counts_[static_cast<std::size_t>(s) * w_ + col]; }

  // Places the term and reports whether every touched count is still within
  // its requirement.
  bool place(const Term& t, int start) {
    bool ok = true;
    int col = start % w_;
    for (std::size_t x = 0; x < t.seq.size(); ++x) {
      const ShiftId s = t.seq[x];
      cells_[start + x] = s;
      ok = ++count(s, col) <= inst_.requirement(s, col) && ok;
      if (++col == w_) col = 0;
    }
    return ok;
  }

  void unplace(const Term& t, int start) {
    int col = start % w_;
    for (std::size_t x = 0; x < t.seq.size(); ++x) {
      --count(t.seq[x], col);
      cells_[start + x] = inst_.shifts().day_off();
      if (++col == w_) col = 0;
    }
  }

  void block(std::size_t i) {
    const bool last = i + 1 == candidates_.size();
    for (const Term* t : candidates_[i]) {
      if (++result_.nodes_explored > options_.node_budget || control_.should_stop()) {
        stopped_ = true;
        return;
      }
      const bool ok = place(*t, starts_[i]);
      if (ok || !options_.prune) {
        if (last) {
          leaf();
        } else {
          block(i + 1);
        }
      }
      unplace(*t, starts_[i]);
      if (stopped_) return;
    }
  }

  void leaf() {
    ++result_.leaves_visited;
    for (int s = 0; s < inst_.shift_count() - 1; ++s)
      for (int j = 0; j < w_; ++j)
        if (count(static_cast<ShiftId>(s), j) != inst_.requirement(static_cast<ShiftId>(s), j)) return;
    Schedule schedule(inst_.shape(), cells_);
    if (!validate(schedule, inst_).ok()) return;
    Schedule canonical = options_.deduplicate ? canonical_rotation(schedule) : schedule;
    if (options_.deduplicate && !seen_.insert(canonical).second) return;
    result_.schedules.push_back(std::move(canonical));
    if (on_found_) on_found_(result_.schedules.back());
    if (result_.schedules.size() >= options_.max_solutions) stopped_ = true;
  }

  const ProblemInstance& inst_;
  const AssignmentOptions& options_;
  SearchControl& control_;
  const std::function<void(const Schedule&)>& on_found_;
  AssignmentResult& result_;
  int w_;
  std::vector<int> starts_;
  std::vector<std::vector<const Term*>> candidates_;
  std::vector<ShiftId> cells_;
  std::vector<int> counts_;
  std::set<Schedule> seen_;
  bool stopped_ = false;
};

}  // namespace

AssignmentResult assign_shifts(const Layout& layout, const TermCatalog& catalog, const ProblemInstance& inst,
                               const AssignmentOptions& options, SearchControl& control,
                               const std::function<void(const Schedule&)>& on_found) {
  if (layout.total_length() != inst.cycle_length()) throw Error("layout does not cover the cycle");
  AssignmentResult result;
  result.search_space_size = search_space_size(layout, catalog);
  AssignmentSearch(layout, catalog, inst, options, control, on_found, result).run();
  return result;
}

}  // namespace rws
