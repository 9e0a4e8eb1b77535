#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vjoin/graph.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

using CandidateLists = std::vector<std::vector<Neighbor>>;

/// Exact k nearest other nodes for every node, ascending.
/// Requires 2 <= store.size() and k_nn < store.size().
CandidateLists build_knn_candidates(const VectorStore& store, std::size_t k_nn,
                                    std::size_t threads = 0);

/// Occlusion pruning: walks `candidates` nearest-first and keeps v unless an
/// already kept w lies in the lune of (u, v). Stops at `max_degree` edges.
std::vector<VectorId> rng_prune(const VectorStore& store, VectorId u,
                                std::span<const Neighbor> candidates,
                                std::size_t max_degree);

/// Row nearest to the centroid of rows [first, store.size()); ties go to the
/// smaller id.
VectorId choose_entry_point(const VectorStore& store, VectorId first = 0);

/// Makes every node reachable from the entry point. Each pass takes the
/// smallest unreached node and links it from its nearest reached node; that
/// edge may exceed the degree cap. Returns the number of edges added.
std::size_t repair_connectivity(ProximityGraph& graph,
                                const VectorStore& store);

/// Recomputes avg_data_neighbor_dist from the adjacency and roles.
void compute_neighbor_stats(ProximityGraph& graph, const VectorStore& store);

ProximityGraph build_index(const VectorStore& store,
                           const IndexBuildParams& params);

/// Graph over queries followed by data. Node v < queries.size() is a query;
/// the entry point is picked among the data nodes.
ProximityGraph build_merged_index(const VectorStore& queries,
                                  const VectorStore& data,
                                  const IndexBuildParams& params);

/// Most frequent out-degree, smaller degree on ties. 0 for an empty graph.
std::size_t degree_mode(const ProximityGraph& graph);

/// Out-degree histogram indexed by degree.
std::vector<std::size_t> degree_histogram(const ProximityGraph& graph);

}  // namespace vjoin
