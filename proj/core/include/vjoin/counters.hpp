#pragma once

#include <chrono>
#include <cstdint>

namespace vjoin {

/// Instrumentation for one join run. Counts only grow while the run is in
/// progress; the three phase timings sum to the measured join time.
struct Counters {
  using Duration = std::chrono::nanoseconds;

  std::uint64_t distance_computations = 0;
  std::uint64_t greedy_pops = 0;
  std::uint64_t bfs_pops = 0;
  std::uint64_t hybrid_evictions = 0;
  std::uint64_t cache_entries = 0;
  Duration greedy_time{0};
  Duration bfs_time{0};
  Duration other_time{0};

  Duration total_time() const { return greedy_time + bfs_time + other_time; }

  Counters& operator+=(const Counters& other);

  /// Equality of the machine-independent counts, ignoring timings.
  bool same_counts(const Counters& other) const;
};

/// Steady-clock stopwatch that charges elapsed time to a phase slot.
class PhaseTimer {
 public:
  using Clock = std::chrono::steady_clock;

  PhaseTimer() : last_(Clock::now()) {}

  /// Adds the time since the previous lap (or construction) to `slot`.
  void lap(Counters::Duration& slot) {
    const auto now = Clock::now();
    slot += std::chrono::duration_cast<Counters::Duration>(now - last_);
    last_ = now;
  }

 private:
  Clock::time_point last_;
};

}  // namespace vjoin
