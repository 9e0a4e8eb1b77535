#pragma once

#include "vjoin/graph.hpp"
#include "vjoin/join_types.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

/// Indexes a join run may use. Which ones are required depends on the
/// variant: Index/ES need data_graph, ES_HWS/ES_SWS also query_graph, the
/// merged variants merged_graph (built over queries then data).
struct JoinIndexes {
  const ProximityGraph* data_graph = nullptr;
  const ProximityGraph* query_graph = nullptr;
  const ProximityGraph* merged_graph = nullptr;
};

/// Threshold join of `queries` against `data`. Passing the same store object
/// twice makes it a self-join in which (x, x) pairs are skipped; the merged
/// variants reject self-joins. Throws ConfigError before doing any work when
/// the config or the indexes do not fit the variant.
JoinOutcome vector_join(const VectorStore& queries, const VectorStore& data,
                        const JoinIndexes& indexes, const JoinConfig& config);

/// Fraction of `truth` pairs present in `found`, keyed by (query, data).
/// Both must be sorted by (query, data). 1.0 when truth is empty.
double recall(std::span<const JoinPair> found, std::span<const JoinPair> truth);

inline double recall(const JoinOutcome& found, const JoinOutcome& truth) {
  return recall(found.pairs, truth.pairs);
}

}  // namespace vjoin
