#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "vjoin/counters.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

enum class MethodVariant {
  Naive,      // nested-loop scan
  Index,      // greedy + BFS per query from the data entry point
  ES,         // Index with early stopping
  ES_HWS,     // ES + MST ordering, children seeded with the parent's matches
  ES_SWS,     // ES + MST ordering, children seeded with the parent's closest
  ES_MI,      // merged index, BFS from the query node
  ES_MI_Adapt // merged index, BFS or hybrid per predicted distribution
};

inline constexpr MethodVariant kAllVariants[] = {
    MethodVariant::Naive,  MethodVariant::Index,  MethodVariant::ES,
    MethodVariant::ES_HWS, MethodVariant::ES_SWS, MethodVariant::ES_MI,
    MethodVariant::ES_MI_Adapt};

std::string_view to_string(MethodVariant variant);
/// Accepts the enumerator names; throws ConfigError otherwise.
MethodVariant parse_variant(std::string_view name);

enum class CachePolicy { None, Hard, Soft };

/// Overrides the OOD classifier of ES_MI_Adapt.
enum class HybridForce { Auto, AlwaysBFS, AlwaysBBFS };

std::string_view to_string(HybridForce force);
/// Accepts auto, bfs, bbfs.
HybridForce parse_hybrid_force(std::string_view name);

struct JoinConfig {
  float theta = 0.0f;
  MethodVariant variant = MethodVariant::ES_SWS;
  std::size_t max_queue = 256;      // L
  std::size_t es_patience = 10;     // greedy pops without a better distance
  std::size_t hybrid_patience = 1;  // hybrid pops without a smaller queue max
  double ood_factor = 1.5;
  HybridForce hybrid_force = HybridForce::Auto;

  void validate() const;  // throws ConfigError
};

struct JoinPair {
  VectorId query = 0;
  VectorId data = 0;
  float distance = 0.0f;

  friend bool operator==(const JoinPair&, const JoinPair&) = default;
};

struct JoinOutcome {
  /// Sorted by (query, data); no duplicates.
  std::vector<JoinPair> pairs;
  /// Run totals: setup plus the sum of per_query.
  Counters counters;
  /// Work done before the first query, e.g. query ordering.
  Counters setup;
  std::vector<Counters> per_query;
  /// Seed cache left behind by each query (empty lists without sharing).
  std::vector<std::vector<VectorId>> cache;
  /// Classifier verdict per query, ES_MI_Adapt only.
  std::optional<std::vector<bool>> per_query_ood;
};

}  // namespace vjoin
