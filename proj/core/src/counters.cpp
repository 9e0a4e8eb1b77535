#include "vjoin/counters.hpp"

namespace vjoin {

Counters& Counters::operator+=(const Counters& other) {
  distance_computations += other.distance_computations;
  greedy_pops += other.greedy_pops;
  bfs_pops += other.bfs_pops;
  hybrid_evictions += other.hybrid_evictions;
  cache_entries += other.cache_entries;
  greedy_time += other.greedy_time;
  bfs_time += other.bfs_time;
  other_time += other.other_time;
  return *this;
}

bool Counters::same_counts(const Counters& other) const {
  return distance_computations == other.distance_computations &&
         greedy_pops == other.greedy_pops && bfs_pops == other.bfs_pops &&
         hybrid_evictions == other.hybrid_evictions &&
         cache_entries == other.cache_entries;
}

}  // namespace vjoin
