#include "vjoin/join.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "vjoin/distance.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/query_order.hpp"
#include "vjoin/single_query.hpp"

namespace vjoin {

namespace {

constexpr std::array<std::string_view, 7> kVariantNames = {
    "Naive", "Index", "ES", "ES_HWS", "ES_SWS", "ES_MI", "ES_MI_Adapt"};

bool uses_merged(MethodVariant v) {
  return v == MethodVariant::ES_MI || v == MethodVariant::ES_MI_Adapt;
}

bool uses_order(MethodVariant v) {
  return v == MethodVariant::ES_HWS || v == MethodVariant::ES_SWS;
}

void check_indexes(const VectorStore& queries, const VectorStore& data,
                   const JoinIndexes& indexes, MethodVariant variant,
                   bool self_join) {
  const std::string name(to_string(variant));
  if (variant == MethodVariant::Naive) return;
  if (uses_merged(variant)) {
    if (self_join) {
      throw ConfigError(name + " does not support self-joins");
    }
    const ProximityGraph* merged = indexes.merged_graph;
    if (merged == nullptr) throw ConfigError(name + " needs a merged index");
    if (!merged->has_roles || merged->size() != queries.size() + data.size() ||
        merged->query_count() != queries.size() ||
        merged->dimension != data.dimension()) {
      throw ConfigError(name + ": merged index does not match the inputs");
    }
    return;
  }
  const ProximityGraph* data_graph = indexes.data_graph;
  if (data_graph == nullptr) throw ConfigError(name + " needs a data index");
  if (data_graph->size() != data.size() ||
      data_graph->dimension != data.dimension()) {
    throw ConfigError(name + ": data index does not match the data set");
  }
  if (data.empty()) throw ConfigError(name + " needs a non-empty data set");
  if (uses_order(variant)) {
    const ProximityGraph* query_graph = indexes.query_graph;
    if (query_graph == nullptr) {
      throw ConfigError(name + " needs a query index");
    }
    if (query_graph->size() != queries.size() ||
        query_graph->dimension != queries.dimension()) {
      throw ConfigError(name + ": query index does not match the query set");
    }
  }
}

void append_pairs(VectorId query, const SingleQueryResult& result,
                  const NodeVectors& nodes, std::vector<JoinPair>& pairs) {
  for (const Match& m : result.matches) {
    pairs.push_back({query, nodes.data_id(m.node), m.distance});
  }
}

void finish_query_timing(Counters& c, Counters::Duration total) {
  const auto phases = c.greedy_time + c.bfs_time;
  c.other_time = total > phases ? total - phases : Counters::Duration{0};
}

void nested_loop(const VectorStore& queries, const VectorStore& data,
                 float theta, bool self_join, JoinOutcome& outcome) {
  for (std::size_t q = 0; q < queries.size(); ++q) {
    PhaseTimer timer;
    Counters& c = outcome.per_query[q];
    const auto qid = static_cast<VectorId>(q);
    for (std::size_t y = 0; y < data.size(); ++y) {
      const auto yid = static_cast<VectorId>(y);
      if (self_join && qid == yid) continue;
      const float d = distance(queries, qid, data, yid, c);
      if (threshold_check(d, theta)) outcome.pairs.push_back({qid, yid, d});
    }
    timer.lap(c.other_time);
  }
}

}  // namespace

std::string_view to_string(MethodVariant variant) {
  return kVariantNames[static_cast<std::size_t>(variant)];
}

MethodVariant parse_variant(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<MethodVariant>(i);
  }
  throw ConfigError("unknown method variant '" + std::string(name) + "'");
}

std::string_view to_string(HybridForce force) {
  switch (force) {
    case HybridForce::Auto:
      return "auto";
    case HybridForce::AlwaysBFS:
      return "bfs";
    case HybridForce::AlwaysBBFS:
      return "bbfs";
  }
  return "auto";
}

HybridForce parse_hybrid_force(std::string_view name) {
  if (name == "auto") return HybridForce::Auto;
  if (name == "bfs") return HybridForce::AlwaysBFS;
  if (name == "bbfs") return HybridForce::AlwaysBBFS;
  throw ConfigError("unknown hybrid mode '" + std::string(name) +
                    "' (expected auto, bfs or bbfs)");
}

void JoinConfig::validate() const {
  if (!(theta >= 0.0f)) throw ConfigError("theta must be >= 0");
  if (max_queue < 1) throw ConfigError("max queue size L must be >= 1");
  if (es_patience < 1) throw ConfigError("es_patience must be >= 1");
  if (hybrid_patience < 1) throw ConfigError("hybrid_patience must be >= 1");
  if (!(ood_factor > 0.0)) throw ConfigError("ood_factor must be > 0");
}

JoinOutcome vector_join(const VectorStore& queries, const VectorStore& data,
                        const JoinIndexes& indexes, const JoinConfig& config) {
  config.validate();
  if (queries.dimension() != data.dimension() && !queries.empty() &&
      !data.empty()) {
    throw ConfigError("queries have dimension " +
                      std::to_string(queries.dimension()) + " but data has " +
                      std::to_string(data.dimension()));
  }
  const bool self_join = &queries == &data;
  const MethodVariant variant = config.variant;
  check_indexes(queries, data, indexes, variant, self_join);

  const auto run_start = PhaseTimer::Clock::now();
  JoinOutcome outcome;
  outcome.per_query.resize(queries.size());
  outcome.cache.resize(queries.size());

  SearchParams params;
  params.theta = config.theta;
  params.max_queue = config.max_queue;
  params.hybrid_patience = config.hybrid_patience;

  if (variant == MethodVariant::Naive) {
    nested_loop(queries, data, config.theta, self_join, outcome);
  } else if (uses_merged(variant)) {
    const ProximityGraph& merged = *indexes.merged_graph;
    const NodeVectors nodes(queries, data);
    QuerySearcher searcher(merged, nodes);
    if (variant == MethodVariant::ES_MI_Adapt) {
      outcome.per_query_ood.emplace(queries.size(), false);
    }
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto qid = static_cast<VectorId>(q);
      Counters& c = outcome.per_query[q];
      const auto start = PhaseTimer::Clock::now();
      SingleQueryResult result;
      if (variant == MethodVariant::ES_MI) {
        result = searcher.join_merged_bfs(qid, params, c);
      } else {
        OodEstimate est;
        result = searcher.join_merged_adaptive(qid, params, config.ood_factor,
                                               config.hybrid_force, c, &est);
        (*outcome.per_query_ood)[q] = est.ood;
      }
      std::sort(result.matches.begin(), result.matches.end(),
                [](const Match& a, const Match& b) { return a.node < b.node; });
      append_pairs(qid, result, nodes, outcome.pairs);
      finish_query_timing(c, PhaseTimer::Clock::now() - start);
    }
  } else {
    const ProximityGraph& data_graph = *indexes.data_graph;
    const NodeVectors nodes(data);
    QuerySearcher searcher(data_graph, nodes);
    const VectorId entry = data_graph.entry_point;

    params.es_patience =
        variant == MethodVariant::Index ? 0 : config.es_patience;
    params.cache = variant == MethodVariant::ES_HWS   ? CachePolicy::Hard
                   : variant == MethodVariant::ES_SWS ? CachePolicy::Soft
                                                      : CachePolicy::None;

    QueryOrder order;
    if (uses_order(variant)) {
      PhaseTimer order_timer;
      order = order_queries(queries, *indexes.query_graph, data[entry],
                            outcome.setup);
      order_timer.lap(outcome.setup.other_time);
    } else {
      order.reserve(queries.size());
      for (std::size_t q = 0; q < queries.size(); ++q) {
        order.push_back({static_cast<VectorId>(q), kSentinel, 0.0f});
      }
    }

    const std::array<VectorId, 1> entry_seed{entry};
    for (const OrderEntry& item : order) {
      const VectorId qid = item.query;
      Counters& c = outcome.per_query[qid];
      const auto start = PhaseTimer::Clock::now();
      std::span<const VectorId> seeds = entry_seed;
      if (item.parent != kSentinel && !outcome.cache[item.parent].empty()) {
        seeds = outcome.cache[item.parent];
      }
      if (self_join) {
        params.exclude = qid;
      }
      SingleQueryResult result =
          searcher.join_single_query(queries[qid], seeds, params, c);
      std::sort(result.matches.begin(), result.matches.end(),
                [](const Match& a, const Match& b) { return a.node < b.node; });
      append_pairs(qid, result, nodes, outcome.pairs);
      outcome.cache[qid] = std::move(result.cache);
      c.cache_entries = outcome.cache[qid].size();
      finish_query_timing(c, PhaseTimer::Clock::now() - start);
    }
  }

  std::sort(outcome.pairs.begin(), outcome.pairs.end(),
            [](const JoinPair& a, const JoinPair& b) {
              return a.query < b.query || (a.query == b.query && a.data < b.data);
            });

  outcome.counters = outcome.setup;
  for (const Counters& c : outcome.per_query) outcome.counters += c;
  const auto total = PhaseTimer::Clock::now() - run_start;
  finish_query_timing(outcome.counters,
                      std::chrono::duration_cast<Counters::Duration>(total));
  return outcome;
}

double recall(std::span<const JoinPair> found, std::span<const JoinPair> truth) {
  if (truth.empty()) return 1.0;
  std::size_t hits = 0;
  auto it = found.begin();
  for (const JoinPair& t : truth) {
    while (it != found.end() &&
           (it->query < t.query || (it->query == t.query && it->data < t.data))) {
      ++it;
    }
    if (it != found.end() && it->query == t.query && it->data == t.data) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace vjoin
