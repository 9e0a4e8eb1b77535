#pragma once

#include <limits>
#include <span>
#include <vector>

#include "vjoin/counters.hpp"
#include "vjoin/graph.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

/// Parent value standing for the data entry point s_Y.
inline constexpr VectorId kSentinel = std::numeric_limits<VectorId>::max();

struct OrderEntry {
  VectorId query = 0;
  VectorId parent = kSentinel;
  float weight = 0.0f;  // MST edge weight to the parent
};

/// Processing sequence where every non-sentinel parent precedes its child.
using QueryOrder = std::vector<OrderEntry>;

/// Prim MST over the undirected closure of the query graph plus a sentinel
/// linked to every query with weight dist(query, entry_vector); emitted as a
/// preorder walk from the sentinel, children in ascending id order.
QueryOrder order_queries(const VectorStore& queries,
                         const ProximityGraph& query_graph,
                         std::span<const float> entry_vector,
                         Counters& counters);

}  // namespace vjoin
