#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vjoin/vector_store.hpp"

namespace vjoin {

/// A candidate edge endpoint. Ordered by distance, then by id.
struct Neighbor {
  VectorId id = 0;
  float distance = 0.0f;

  friend bool operator<(const Neighbor& a, const Neighbor& b) noexcept {
    return a.distance < b.distance ||
           (a.distance == b.distance && a.id < b.id);
  }
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

enum class NodeRole : std::uint8_t { Query = 0, Data = 1 };

struct IndexBuildParams {
  std::size_t k_nn = 100;        // candidate pool per node
  std::size_t max_degree = 70;   // R
  bool connectivity_repair = true;
  std::size_t threads = 0;       // 0: hardware concurrency

  void validate() const;  // throws ConfigError
};

/// Directed proximity graph over one vector set (or over queries ∪ data for
/// a merged index). Vectors live in a separate VectorStore.
struct ProximityGraph {
  std::size_t dimension = 0;
  VectorId entry_point = 0;
  std::vector<std::vector<VectorId>> adjacency;
  std::vector<NodeRole> roles;
  /// Mean distance from each node to its Data-role neighbors (0 if none).
  std::vector<float> avg_data_neighbor_dist;
  /// True when the graph mixes query and data nodes.
  bool has_roles = false;

  std::size_t size() const noexcept { return adjacency.size(); }
  std::span<const VectorId> neighbors(VectorId v) const noexcept {
    return adjacency[v];
  }
  bool is_data(VectorId v) const noexcept {
    return roles[v] == NodeRole::Data;
  }
  /// Number of leading Query-role nodes in a merged graph, 0 otherwise.
  std::size_t query_count() const noexcept;

  friend bool operator==(const ProximityGraph&,
                         const ProximityGraph&) = default;
};

}  // namespace vjoin
