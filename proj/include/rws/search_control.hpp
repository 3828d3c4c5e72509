#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>

namespace rws {

/// Cooperative cancellation shared by all search stages: an optional stop
/// token (session cancel) and an optional wall-clock deadline. Node budgets
/// are per-call options and stay the primary, reproducible limit.
class SearchControl {
 public:
  using Clock = std::chrono::steady_clock;

  SearchControl() = default;
  explicit SearchControl(std::stop_token stop, std::optional<Clock::time_point> deadline = std::nullopt)
      : stop_(std::move(stop)), deadline_(deadline) {}

  static SearchControl with_timeout(std::chrono::milliseconds timeout) {
    return SearchControl(std::stop_token{}, Clock::now() + timeout);
  }

  /// Cheap enough to call at every search node; the clock is read once per
  /// 1024 calls.
  bool should_stop() {
    if (stopped_) return true;
    if (stop_.stop_requested()) return stopped_ = true;
    if (deadline_ && (++calls_ & 1023u) == 0 && Clock::now() >= *deadline_) return stopped_ = true;
    return false;
  }
  bool stopped() const noexcept { return stopped_; }

 private:
  std::stop_token stop_;
  std::optional<Clock::time_point> deadline_;
  std::uint32_t calls_ = 0;
  bool stopped_ = false;
};

}  // namespace rws
