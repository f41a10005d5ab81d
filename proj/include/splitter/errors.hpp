#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace splitter {

/// Precondition or argument violation (unknown element, overlapping minor
/// sets, parameters out of range).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search ran out of its time or step budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::int64_t partial = -1)
      : std::runtime_error(what), partial_(partial) {}
  /// Partial progress (items found so far, best bound), or -1 if not meaningful.
  std::int64_t partial() const { return partial_; }

 private:
  std::int64_t partial_;
};

/// Malformed textual input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Thread-local deadline consulted by the exhaustive searches. Install one with
/// ScopedBudget; without it searches run unbounded.
class Budget {
 public:
  using Clock = std::chrono::steady_clock;

  static void tick() {
    auto& s = state();
    if (!s.deadline) return;
    if ((++s.counter & 0x3ff) != 0) return;
    if (Clock::now() > *s.deadline) throw ResourceError("time budget exhausted");
  }

  static bool active() { return state().deadline.has_value(); }

 private:
  friend class ScopedBudget;
  struct State {
    std::optional<Clock::time_point> deadline;
    std::uint64_t counter = 0;
  };
  static State& state() {
    thread_local State s;
    return s;
  }
};

class ScopedBudget {
 public:
  explicit ScopedBudget(double seconds) : saved_(Budget::state().deadline) {
    auto proposed = Budget::Clock::now() +
                    std::chrono::duration_cast<Budget::Clock::duration>(std::chrono::duration<double>(seconds));
    // Nested scopes may only tighten the deadline.
    if (!saved_ || proposed < *saved_) Budget::state().deadline = proposed;
  }
  ~ScopedBudget() { Budget::state().deadline = saved_; }
  ScopedBudget(const ScopedBudget&) = delete;
  ScopedBudget& operator=(const ScopedBudget&) = delete;

 private:
  std::optional<Budget::Clock::time_point> saved_;
};

}  // namespace splitter
