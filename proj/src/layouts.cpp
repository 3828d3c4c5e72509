#include "rws/layouts.hpp"

#include <algorithm>
#include <map>

#include "coverage.hpp"

namespace rws {

WeekendScore weekend_score(std::span<const std::uint8_t> mask) {
  if (mask.size() % 7 != 0) throw Error("weekend scoring needs a cycle length that is a multiple of 7");
  const int weeks = static_cast<int>(mask.size() / 7);
  auto off = [&](int week, int day) { return mask[static_cast<std::size_t>(week) * 7 + day] != 0; };
  std::vector<bool> weekend(weeks);
  for (int r = 0; r < weeks; ++r) weekend[r] = off(r, 5) && off(r, 6);

  WeekendScore s;
  for (int r = 0; r < weeks; ++r) {
    if (!weekend[r]) continue;
    const int following = (r + 1) % weeks;
    ++s.weekends_off;
    if (weekend[following]) ++s.neg_points;
    if (off(r, 4) || off(following, 0)) ++s.long_weekends;
  }
  return s;
}

WeekendScore weekend_score(const Layout& layout, const ProblemInstance& inst) {
  if (!inst.weekend_scoring_enabled()) throw Error("weekend scoring is disabled: n*w is not a multiple of 7");
  if (layout.total_length() != inst.cycle_length()) throw Error("layout does not cover the cycle");
  return weekend_score(layout.day_off_mask());
}

bool dominates(const WeekendScore& a, const WeekendScore& b) {
  if (a.weekends_off != b.weekends_off) return a.weekends_off > b.weekends_off;
  if (a.neg_points != b.neg_points) return a.neg_points < b.neg_points;
  return a.long_weekends > b.long_weekends;
}

bool better_score(const WeekendScore& a, const WeekendScore& b) { return dominates(a, b); }

int single_day_off_bridge(const Layout& layout) {
  const auto& p = layout.pairs();
  const int b = static_cast<int>(p.size());
  int best = 0;
  for (int i = 0; i < b; ++i)
    if (p[i].off == 1) best = std::max(best, p[i].work + p[(i + 1) % b].work);
  return best;
}

namespace {

/// Enumerates every days-off distribution of one fixed block order.
class OrderSearch {
 public:
  OrderSearch(std::span<const int> order, const ProblemInstance& inst, std::int64_t budget,
              SearchControl& control)
      : order_(order.begin(), order.end()), inst_(inst), cov_(inst), budget_(budget), control_(control) {
    cycle_ = inst.cycle_length();
    min_off_ = inst.days_off_block().min;
    max_off_ = inst.days_off_block().max;
    suffix_work_.assign(order_.size() + 1, 0);
    for (int i = static_cast<int>(order_.size()) - 1; i >= 0; --i) suffix_work_[i] = suffix_work_[i + 1] + order_[i];
    pairs_.resize(order_.size());
  }

  /// Calls `found` for each complete layout; `found` returns false to stop.
  /// Returns true when the search space was fully explored.
  template <typename F>
  bool run(F&& found) {
    if (order_.empty()) return true;
    if (inst_.days_off_sum() == 0) {
      if (order_.size() == 1 && order_[0] == cycle_) found(Layout({{cycle_, 0}}));
      return true;
    }
    stop_ = false;
    block(0, 0, found);
    return !exhausted_ && !stop_;
  }

  std::int64_t nodes() const noexcept { return nodes_; }
  bool exhausted() const noexcept { return exhausted_; }

 private:
  bool tick() {
    if (++nodes_ > budget_ || control_.should_stop()) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  template <typename F>
  void block(std::size_t i, int pos, F& found) {
    if (!tick()) return;
    const int v = order_[i];
    const int blocks_left = static_cast<int>(order_.size() - i);
    const long long end = pos + suffix_work_[i];
    if (end + static_cast<long long>(blocks_left) * min_off_ > cycle_) return;
    if (end + static_cast<long long>(blocks_left) * max_off_ < cycle_) return;
    if (cov_.add_work(pos, v)) {
      pairs_[i].work = v;
      off(i, pos + v, found);
    }
    cov_.remove_work(pos, v);
  }

  template <typename F>
  void off(std::size_t i, int pos, F& found) {
    const bool last = i + 1 == order_.size();
    for (int o = min_off_; o <= max_off_ && !exhausted_ && !stop_; ++o) {
      if (!tick()) return;
      if (last) {
        if (pos + o == cycle_) {
          pairs_[i].off = o;
          if (!found(Layout(pairs_))) stop_ = true;
        }
        continue;
      }
      const int blocks_left = static_cast<int>(order_.size() - i - 1);
      const long long end = pos + o + suffix_work_[i + 1];
      if (end + static_cast<long long>(blocks_left) * min_off_ > cycle_) break;
      if (end + static_cast<long long>(blocks_left) * max_off_ < cycle_) continue;
      if (cov_.add_off(pos, o)) {
        pairs_[i].off = o;
        block(i + 1, pos + o, found);
      }
      cov_.remove_off(pos, o);
    }
  }

  std::vector<int> order_;
  const ProblemInstance& inst_;
  detail::ColumnCoverage cov_;
  std::int64_t budget_;
  SearchControl& control_;
  std::vector<int> suffix_work_;
  std::vector<BlockPair> pairs_;
  int cycle_ = 0;
  int min_off_ = 1;
  int max_off_ = 1;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
  bool stop_ = false;
};

WeekendScore score_or_zero(const Layout& layout, const ProblemInstance& inst) {
  return inst.weekend_scoring_enabled() ? weekend_score(layout.day_off_mask()) : WeekendScore{};
}

/// Lexicographically largest rotation: identifies the cyclic block order.
std::vector<int> necklace_key(const std::vector<int>& order) {
  std::vector<int> best = order;
  std::vector<int> rot = order;
  for (std::size_t r = 1; r < order.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot > best) best = rot;
  }
  return best;
}

}  // namespace

OrderSearchResult layouts_for_order(std::span<const int> order, const ProblemInstance& inst,
                                    std::int64_t node_budget, std::size_t max_results, SearchControl& control) {
  OrderSearchResult result;
  OrderSearch search(order, inst, node_budget, control);
  std::vector<ScoredLayout> all;
  result.exhaustive = search.run([&](Layout layout) {
    WeekendScore s = score_or_zero(layout, inst);
    all.push_back({std::move(layout), s});
    return true;
  });
  result.nodes_explored = search.nodes();
  std::stable_sort(all.begin(), all.end(),
                   [](const ScoredLayout& a, const ScoredLayout& b) { return better_score(a.score, b.score); });
  if (all.size() > max_results) all.resize(max_results);
  result.layouts = std::move(all);
  return result;
}

LayoutSearchResult enumerate_layouts(const ClassSolution& cs, const ProblemInstance& inst,
                                     const LayoutSearchOptions& options, SearchControl& control,
                                     const std::function<void(const ScoredLayout&)>& on_update) {
  struct Group {
    std::size_t first_seen = 0;  // enumeration index of the representative's permutation
    ScoredLayout best;
  };
  LayoutSearchResult result;
  std::map<std::vector<int>, Group> groups;
  std::vector<int> perm = cs.blocks();  // non-increasing = lexicographically largest
  bool complete = true;
  bool capped = false;
  std::size_t index = 0;

  do {
    if (control.should_stop()) {
      complete = false;
      break;
    }
    const auto key = necklace_key(perm);
    auto it = groups.find(key);
    if (it == groups.end() && groups.size() >= options.max_results) {
      // Only orders of already reported groups may still improve.
      capped = true;
      ++index;
      continue;
    }
    OrderSearch search(perm, inst, options.node_budget_per_permutation, control);
    search.run([&](Layout layout) {
      const WeekendScore s = score_or_zero(layout, inst);
      if (it == groups.end()) {
        it = groups.emplace(key, Group{index, {std::move(layout), s}}).first;
        if (on_update) on_update(it->second.best);
      } else if (better_score(s, it->second.best.score)) {
        it->second = Group{index, {std::move(layout), s}};
        if (on_update) on_update(it->second.best);
      }
      return true;
    });
    result.nodes_explored += search.nodes();
    ++result.permutations_tested;
    if (search.exhausted()) {
      if (control.stopped()) {
        complete = false;
        break;
      }
      ++result.permutations_over_budget;
    }
    ++index;
  } while (std::prev_permutation(perm.begin(), perm.end()));

  std::vector<Group> ordered;
  ordered.reserve(groups.size());
  for (auto& [key, g] : groups) ordered.push_back(std::move(g));
  std::sort(ordered.begin(), ordered.end(), [](const Group& a, const Group& b) {
    if (better_score(a.best.score, b.best.score)) return true;
    if (better_score(b.best.score, a.best.score)) return false;
    return a.first_seen < b.first_seen;
  });
  for (auto& g : ordered) result.layouts.push_back(std::move(g.best));
  result.exhaustive = complete && !capped && result.permutations_over_budget == 0;
  return result;
}

}  // namespace rws
