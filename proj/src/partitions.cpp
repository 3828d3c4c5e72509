#include "rws/partitions.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "coverage.hpp"

namespace rws {

namespace {

class PartitionGenerator {
 public:
  PartitionGenerator(const PartitionBounds& b, const std::function<bool(std::span<const int>)>& visit)
      : b_(b), visit_(visit) {}

  bool run() {
    if (b_.total_work_days == 0) {
      // The recursive generator never produces the empty partition.
      return b_.min_blocks == 0 ? visit_({}) : true;
    }
    if (b_.max_block_length < b_.min_block_length) return true;
    return recurse(1, b_.max_block_length);
  }

 private:
  // Returns false when the visitor asked to stop.
  bool recurse(int pos, int max_value) {
    for (int i = b_.min_block_length; i <= max_value; ++i) {
      part_.push_back(i);
      sum_ += i;
      bool keep_going = true;
      bool completed = false;
      if (sum_ == b_.total_work_days && pos >= b_.min_blocks && pos <= b_.max_blocks) {
        completed = true;
        keep_going = visit_(part_);
      } else if (pos < b_.max_blocks && sum_ <= b_.total_work_days - b_.min_block_length) {
        // Skip prefixes that cannot reach N with at most MAXB elements <= i.
        const long long reach = sum_ + static_cast<long long>(b_.max_blocks - pos) * i;
        if (reach >= b_.total_work_days) keep_going = recurse(pos + 1, i);
      }
      const bool overshoot = sum_ > b_.total_work_days;
      sum_ -= i;
      part_.pop_back();
      if (!keep_going) return false;
      if (completed || overshoot) break;
    }
    return true;
  }

  const PartitionBounds& b_;
  const std::function<bool(std::span<const int>)>& visit_;
  std::vector<int> part_;
  int sum_ = 0;
};

class FeasibilitySearch {
 public:
  FeasibilitySearch(std::span<const int> partition, const ProblemInstance& inst, std::int64_t budget,
                    SearchControl* control)
      : inst_(inst), cov_(inst), budget_(budget), control_(control) {
    std::map<int, int, std::greater<>> counts;
    for (int v : partition) ++counts[v];
    for (auto [v, c] : counts) {
      values_.push_back(v);
      remaining_.push_back(c);
    }
    blocks_left_ = static_cast<int>(partition.size());
    for (int v : partition) work_left_ += v;
    cycle_ = inst.cycle_length();
    min_off_ = inst.days_off_block().min;
    max_off_ = inst.days_off_block().max;
  }

  FeasibilityVerdict run(int stage) {
    FeasibilityVerdict v;
    v.stage_reached = stage;
    const bool found = blocks_left_ > 0 && work_slot(0);
    v.nodes_explored = nodes_;
    if (found) {
      v.status = Verdict::feasible;
      v.witness = Layout(pairs_);
    } else {
      v.status = exhausted_ ? Verdict::budget_exhausted : Verdict::infeasible;
    }
    return v;
  }

 private:
  bool tick() {
    if (++nodes_ > budget_ || (control_ && control_->should_stop())) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  bool work_slot(int pos) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (remaining_[k] == 0) continue;
      if (!tick()) return false;
      const int v = values_[k];
      const int work_after = work_left_ - v;
      // This block is followed by blocks_left_ days-off blocks in total.
      const long long end = pos + v + work_after;
      if (end + static_cast<long long>(blocks_left_) * min_off_ > cycle_) continue;
      if (end + static_cast<long long>(blocks_left_) * max_off_ < cycle_) continue;
      const bool ok = cov_.add_work(pos, v);
      if (ok) {
        --remaining_[k];
        --blocks_left_;
        work_left_ -= v;
        pairs_.push_back({v, 0});
        if (off_slot(pos + v)) return true;
        pairs_.pop_back();
        work_left_ += v;
        ++blocks_left_;
        ++remaining_[k];
      }
      cov_.remove_work(pos, v);
      if (exhausted_) return false;
    }
    return false;
  }

  bool off_slot(int pos) {
    const bool last = blocks_left_ == 0;
    for (int o = min_off_; o <= max_off_; ++o) {
      if (!tick()) return false;
      if (last) {
        // All work is placed and every column is within its demand, so an
        // exact fit of the cycle means every column meets it exactly.
        if (pos + o == cycle_) {
          pairs_.back().off = o;
          return true;
        }
        continue;
      }
      const long long end = pos + o + work_left_;
      if (end + static_cast<long long>(blocks_left_) * min_off_ > cycle_) break;
      if (end + static_cast<long long>(blocks_left_) * max_off_ < cycle_) continue;
      const bool ok = cov_.add_off(pos, o);
      if (ok) {
        pairs_.back().off = o;
        if (work_slot(pos + o)) return true;
      }
      cov_.remove_off(pos, o);
      if (exhausted_) return false;
    }
    return false;
  }

  const ProblemInstance& inst_;
  detail::ColumnCoverage cov_;
  std::int64_t budget_;
  SearchControl* control_;
  std::vector<int> values_;
  std::vector<int> remaining_;
  std::vector<BlockPair> pairs_;
  int blocks_left_ = 0;
  int work_left_ = 0;
  int cycle_ = 0;
  int min_off_ = 1;
  int max_off_ = 1;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

FeasibilityVerdict test_partition(std::span<const int> partition, const ProblemInstance& inst,
                                  std::int64_t node_budget, int stage, SearchControl* control) {
  int sum = 0;
  for (int v : partition) sum += v;
  if (sum != inst.total_work_days()) return {Verdict::infeasible, 0, stage, std::nullopt};
  if (inst.days_off_sum() == 0) {
    // Degenerate all-work cycle: one block covering everything, no days off.
    if (partition.size() == 1 && inst.work_block().contains(partition[0]))
      return {Verdict::feasible, 1, stage, Layout({{partition[0], 0}})};
    return {Verdict::infeasible, 1, stage, std::nullopt};
  }
  return FeasibilitySearch(partition, inst, node_budget, control).run(stage);
}

}  // namespace

bool restricted_partitions(const PartitionBounds& bounds, const std::function<bool(std::span<const int>)>& visit) {
  return PartitionGenerator(bounds, visit).run();
}

std::vector<std::vector<int>> restricted_partitions(const PartitionBounds& bounds) {
  std::vector<std::vector<int>> out;
  restricted_partitions(bounds, [&](std::span<const int> p) {
    out.emplace_back(p.begin(), p.end());
    return true;
  });
  return out;
}

FeasibilityVerdict feasibility_test(std::span<const int> partition, const ProblemInstance& inst,
                                    std::int64_t node_budget, int stage) {
  return test_partition(partition, inst, node_budget, stage, nullptr);
}

ClassSolutionResult enumerate_class_solutions(const ProblemInstance& inst, const ClassSolutionOptions& options,
                                              SearchControl& control,
                                              const std::function<void(const ClassSolution&)>& on_found) {
  const auto& budgets = options.budgets.nodes;
  if (!(budgets[0] < budgets[1] && budgets[1] < budgets[2]) || budgets[0] < 1)
    throw Error("stage budgets must be positive and strictly increasing");

  ClassSolutionResult result;
  const PartitionBounds bounds = compute_bounds(inst);
  std::deque<std::vector<int>> pending;
  bool stopped = false;

  auto accept = [&](std::span<const int> p) {
    result.solutions.push_back(ClassSolution(std::vector<int>(p.begin(), p.end())));
    if (on_found) on_found(result.solutions.back());
    return result.solutions.size() < options.max_results;
  };

  const bool stream_complete = restricted_partitions(bounds, [&](std::span<const int> p) {
    ++result.partitions_generated;
    if (control.should_stop()) {
      stopped = true;
      return false;
    }
    const auto v = test_partition(p, inst, budgets[0], 1, &control);
    result.nodes_explored += v.nodes_explored;
    if (control.stopped()) {
      stopped = true;
      return false;
    }
    if (v.status == Verdict::feasible) {
      if (!accept(p)) {
        stopped = true;
        return false;
      }
    } else if (v.status == Verdict::budget_exhausted) {
      pending.emplace_back(p.begin(), p.end());
    }
    return true;
  });

  for (int stage = 2; stage <= 3 && !stopped && !pending.empty(); ++stage) {
    std::deque<std::vector<int>> next_round;
    while (!pending.empty()) {
      auto p = std::move(pending.front());
      pending.pop_front();
      const auto v = test_partition(p, inst, budgets[stage - 1], stage, &control);
      result.nodes_explored += v.nodes_explored;
      if (control.stopped()) {
        stopped = true;
        next_round.push_back(std::move(p));
        break;
      }
      if (v.status == Verdict::feasible) {
        if (!accept(p)) {
          stopped = true;
          break;
        }
      } else if (v.status == Verdict::budget_exhausted) {
        next_round.push_back(std::move(p));
      }
    }
    for (auto& p : pending) next_round.push_back(std::move(p));
    pending = std::move(next_round);
  }

  result.unresolved = pending.size();
  result.exhaustive = stream_complete && !stopped && pending.empty();
  return result;
}

}  // namespace rws
