#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vjoin/counters.hpp"
#include "vjoin/graph.hpp"
#include "vjoin/join_types.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

/// Maps graph node ids to vectors. For a graph over the data alone node v is
/// data row v; for a merged graph the query rows come first.
class NodeVectors {
 public:
  explicit NodeVectors(const VectorStore& data) : data_(&data) {}
  NodeVectors(const VectorStore& queries, const VectorStore& data)
      : queries_(&queries), data_(&data), data_offset_(queries.size()) {}

  std::span<const float> operator[](VectorId node) const noexcept {
    return node < data_offset_ ? (*queries_)[node]
                               : (*data_)[static_cast<VectorId>(node - data_offset_)];
  }
  std::size_t size() const noexcept { return data_offset_ + data_->size(); }
  std::size_t dimension() const noexcept { return data_->dimension(); }
  bool is_data(VectorId node) const noexcept { return node >= data_offset_; }
  VectorId data_id(VectorId node) const noexcept {
    return static_cast<VectorId>(node - data_offset_);
  }
  VectorId node_of_data(VectorId data) const noexcept {
    return static_cast<VectorId>(data + data_offset_);
  }

 private:
  const VectorStore* queries_ = nullptr;
  const VectorStore* data_ = nullptr;
  std::size_t data_offset_ = 0;
};

/// A graph node within the threshold, with its distance to the query.
struct Match {
  VectorId node = 0;
  float distance = 0.0f;
};

struct SingleQueryResult {
  std::vector<Match> matches;   // emission order
  std::vector<VectorId> cache;  // node ids handed to children
};

struct SearchParams {
  float theta = 0.0f;
  std::size_t max_queue = 256;      // L
  std::size_t es_patience = 0;      // 0 disables early stopping
  std::size_t hybrid_patience = 1;
  CachePolicy cache = CachePolicy::None;
  std::optional<VectorId> exclude;  // node that never forms a pair
};

struct OodEstimate {
  double query_to_data = 0.0;     // d1: mean distance to data neighbors
  double data_to_data = 0.0;      // d2: mean of their stored neighbor averages
  std::size_t data_neighbors = 0;
  bool ood = false;
};

/// Per-graph search state reused across queries. Each call handles one
/// query: the visited set is shared by all phases of that call and a node's
/// distance to the query is computed at most once.
class QuerySearcher {
 public:
  QuerySearcher(const ProximityGraph& graph, NodeVectors nodes);

  /// Seed scan, greedy search toward any in-range node, then BFS over
  /// in-range nodes.
  SingleQueryResult join_single_query(std::span<const float> query,
                                      std::span<const VectorId> seeds,
                                      const SearchParams& params,
                                      Counters& counters);

  /// Seed scan and greedy search as above, then a best-first traversal that
  /// admits up to L out-range nodes to bridge separated in-range regions.
  SingleQueryResult join_single_query_hybrid(std::span<const float> query,
                                             std::span<const VectorId> seeds,
                                             const SearchParams& params,
                                             Counters& counters);

  /// Merged graph: BFS from the query's own node, pushing in-range data
  /// nodes only.
  SingleQueryResult join_merged_bfs(VectorId query_node,
                                    const SearchParams& params,
                                    Counters& counters);

  /// Merged graph: hybrid traversal from the query's own node; query nodes
  /// act as out-range bridges.
  SingleQueryResult join_merged_hybrid(VectorId query_node,
                                       const SearchParams& params,
                                       Counters& counters);

  /// Merged graph: OOD classification followed by BFS (in-distribution) or
  /// the hybrid traversal (OOD), within one query scope.
  SingleQueryResult join_merged_adaptive(VectorId query_node,
                                         const SearchParams& params,
                                         double ood_factor, HybridForce force,
                                         Counters& counters,
                                         OodEstimate* estimate = nullptr);

  /// Merged graph: compares d1 with ood_factor * d2.
  OodEstimate predict_ood(VectorId query_node, double ood_factor,
                          Counters& counters);

  /// Every node whose distance was computed by the last call, in order.
  std::span<const Match> visit_log() const noexcept { return log_; }

 private:
  struct Closest {
    float distance;
    VectorId node;
    bool any;
  };

  void begin(std::span<const float> query);
  bool visited(VectorId v) const noexcept { return visited_[v] == epoch_; }
  void mark_visited(VectorId v) noexcept { visited_[v] = epoch_; }
  float node_distance(VectorId v, Counters& counters);
  bool emits(VectorId v, float d, const SearchParams& params) const noexcept;
  void emit(VectorId v, float d, const SearchParams& params,
            SingleQueryResult& out) const;
  void note(Closest& closest, VectorId v, float d) const noexcept;

  /// Seed scan plus greedy phase. Returns false when no in-range node was
  /// found; `queue` is left sorted ascending.
  bool greedy_phase(std::span<const VectorId> seeds, const SearchParams& params,
                    std::vector<Neighbor>& queue, Closest& closest,
                    Counters& counters);
  void bfs_phase(std::vector<VectorId> frontier, const SearchParams& params,
                 Closest& closest, SingleQueryResult& out, Counters& counters);
  void hybrid_phase(std::span<const Neighbor> initial,
                    const SearchParams& params, Closest& closest,
                    SingleQueryResult& out, Counters& counters);
  OodEstimate classify(VectorId query_node, double ood_factor,
                       Counters& counters);
  static void fill_cache(const SearchParams& params, const Closest& closest,
                         SingleQueryResult& out);

  const ProximityGraph* graph_;
  NodeVectors nodes_;
  std::span<const float> query_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> visited_;
  std::vector<std::uint32_t> computed_;
  std::vector<float> memo_;
  std::vector<Match> log_;
};

}  // namespace vjoin
