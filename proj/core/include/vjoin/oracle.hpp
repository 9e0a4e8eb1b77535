#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "vjoin/join_types.hpp"
#include "vjoin/vector_store.hpp"

// Exact reference implementations. Nothing here shares code with the join
// engine or the index builder beyond the VectorStore container.
namespace vjoin::oracle {

/// Euclidean distance, float accumulation in index order, then sqrt. Written
/// out separately from the engine's kernel; both must agree bit for bit.
float exact_distance(std::span<const float> a, std::span<const float> b);

struct GroundTruth {
  float theta = 0.0f;
  /// Every pair with distance < theta, query-major then data id.
  std::vector<JoinPair> pairs;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

/// Exhaustive nested-loop join. With exclude_identity, (i, i) is skipped.
GroundTruth nlj_exact(const VectorStore& queries, const VectorStore& data,
                      float theta, bool exclude_identity = false);

inline constexpr std::size_t kRngOracleLimit = 2000;

/// Undirected relative-neighborhood graph by the full lune test, as (u, v)
/// pairs with u < v in lexicographic order. Throws ConfigError above
/// kRngOracleLimit vectors.
std::vector<std::pair<VectorId, VectorId>> exact_rng_edges(
    const VectorStore& store);

/// The k stored vectors nearest to `query`, ascending, ties by id.
std::vector<VectorId> exact_topk(const VectorStore& store,
                                 std::span<const float> query, std::size_t k);

struct WeightedEdge {
  VectorId u = 0;
  VectorId v = 0;
  double weight = 0.0;
};

struct SpanningTree {
  double total_weight = 0.0;
  /// parent[root] == root; the root is node 0.
  std::vector<VectorId> parent;
};

/// Kruskal with (weight, u, v) tie-breaking. Throws ConfigError when the
/// edges do not connect all `node_count` nodes.
SpanningTree mst_reference(std::span<const WeightedEdge> edges,
                           std::size_t node_count);

inline constexpr std::uint32_t kGroundTruthFormatVersion = 1;

// Little-endian: "VJGT" u32 version f32 theta u64 count, then per pair
// u32 query u32 data f32 distance.
void write_ground_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth read_ground_truth(std::istream& in);
void save_ground_truth(const std::filesystem::path& path,
                       const GroundTruth& truth);
GroundTruth load_ground_truth(const std::filesystem::path& path);

}  // namespace vjoin::oracle
