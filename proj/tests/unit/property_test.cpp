// Randomized invariants checked across many small instances.

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "test_util.hpp"
#include "vjoin/distance.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/join.hpp"
#include "vjoin/oracle.hpp"
#include "vjoin/single_query.hpp"

namespace vjoin {
namespace {

struct Case {
  VectorStore queries;
  VectorStore data;
  ProximityGraph data_graph;
  ProximityGraph query_graph;
  ProximityGraph merged_graph;
  float theta = 0.0f;
};

Case make_case(std::uint64_t seed) {
  Case c;
  const std::size_t dim = 2 + seed % 5;
  c.queries = testing::random_gaussian(40 + seed % 30, dim, seed * 3 + 1);
  c.data = testing::random_gaussian(300 + (seed % 7) * 40, dim, seed * 3 + 2);
  IndexBuildParams p;
  p.k_nn = 24;
  p.max_degree = 12;
  c.data_graph = build_index(c.data, p);
  c.query_graph = build_index(c.queries, p);
  c.merged_graph = build_merged_index(c.queries, c.data, p);
  c.theta = 0.3f + 0.1f * static_cast<float>(seed % 6);
  return c;
}

JoinOutcome run(const Case& c, MethodVariant v, std::size_t L = 64) {
  JoinConfig cfg;
  cfg.variant = v;
  cfg.theta = c.theta;
  cfg.max_queue = L;
  return vector_join(c.queries, c.data, {&c.data_graph, &c.query_graph, &c.merged_graph}, cfg);
}

class Randomized : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(Randomized, EveryVariantIsSoundAndOrdered) {
  const Case c = make_case(GetParam());
  const auto truth = oracle::nlj_exact(c.queries, c.data, c.theta);
  for (MethodVariant v : kAllVariants) {
    SCOPED_TRACE(std::string(to_string(v)));
    const JoinOutcome out = run(c, v);
    std::set<std::pair<VectorId, VectorId>> seen;
    for (const JoinPair& p : out.pairs) {
      ASSERT_LT(p.query, c.queries.size());
      ASSERT_LT(p.data, c.data.size());
      EXPECT_EQ(p.distance, oracle::exact_distance(c.queries[p.query], c.data[p.data]));
      EXPECT_LT(p.distance, c.theta);
      EXPECT_TRUE(seen.insert({p.query, p.data}).second) << "duplicate pair";
    }
    EXPECT_TRUE(std::is_sorted(out.pairs.begin(), out.pairs.end(),
                               [](const JoinPair& a, const JoinPair& b) {
                                 return a.query < b.query ||
                                        (a.query == b.query && a.data < b.data);
                               }));
    const double r = recall(out.pairs, truth.pairs);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    if (v == MethodVariant::Naive) EXPECT_EQ(out.pairs, truth.pairs);
  }
}

TEST_P(Randomized, CountersAddUp) {
  const Case c = make_case(GetParam());
  for (MethodVariant v : kAllVariants) {
    SCOPED_TRACE(std::string(to_string(v)));
    const JoinOutcome out = run(c, v);
    ASSERT_EQ(out.per_query.size(), c.queries.size());
    Counters sum = out.setup;
    for (const Counters& q : out.per_query) sum += q;
    EXPECT_EQ(sum.distance_computations, out.counters.distance_computations);
    EXPECT_EQ(sum.greedy_pops, out.counters.greedy_pops);
    EXPECT_EQ(sum.bfs_pops, out.counters.bfs_pops);
    EXPECT_EQ(sum.hybrid_evictions, out.counters.hybrid_evictions);
    EXPECT_EQ(sum.cache_entries, out.counters.cache_entries);
    for (const Counters& q : out.per_query) {
      // Each query computes a distance at most once per node.
      EXPECT_LE(q.distance_computations, c.data.size() + c.queries.size());
    }
  }
}

TEST_P(Randomized, RunsAreDeterministic) {
  const Case c = make_case(GetParam());
  for (MethodVariant v : kAllVariants) {
    const JoinOutcome a = run(c, v);
    const JoinOutcome b = run(c, v);
    EXPECT_EQ(a.pairs, b.pairs);
    EXPECT_EQ(a.counters.distance_computations, b.counters.distance_computations);
    EXPECT_EQ(a.counters.bfs_pops, b.counters.bfs_pops);
    EXPECT_EQ(a.cache, b.cache);
  }
}

TEST_P(Randomized, CachesFollowTheirPolicy) {
  const Case c = make_case(GetParam());
  const NodeVectors nodes(c.data);
  QuerySearcher searcher(c.data_graph, nodes);
  const VectorId entry = c.data_graph.entry_point;
  for (CachePolicy policy : {CachePolicy::Soft, CachePolicy::Hard}) {
    SearchParams params;
    params.theta = c.theta;
    params.max_queue = 32;
    params.cache = policy;
    for (std::size_t q = 0; q < c.queries.size(); ++q) {
      Counters counters;
      const SingleQueryResult r = searcher.join_single_query(
          c.queries[static_cast<VectorId>(q)], {&entry, 1}, params, counters);
      const auto log = searcher.visit_log();
      std::set<VectorId> logged;
      for (const Match& m : log) EXPECT_TRUE(logged.insert(m.node).second);
      EXPECT_EQ(log.size(), counters.distance_computations);
      if (policy == CachePolicy::Soft) {
        ASSERT_EQ(r.cache.size(), 1u);
        float best = log.front().distance;
        float cached = -1.0f;
        for (const Match& m : log) {
          best = std::min(best, m.distance);
          if (m.node == r.cache[0]) cached = m.distance;
        }
        EXPECT_EQ(cached, best);
      } else {
        ASSERT_EQ(r.cache.size(), r.matches.size());
        for (std::size_t i = 0; i < r.cache.size(); ++i) {
          EXPECT_EQ(r.cache[i], r.matches[i].node);
        }
      }
    }
  }
}

TEST_P(Randomized, MergedVariantsSkipGreedyAndQueryNodes) {
  const Case c = make_case(GetParam());
  for (MethodVariant v : {MethodVariant::ES_MI, MethodVariant::ES_MI_Adapt}) {
    const JoinOutcome out = run(c, v);
    EXPECT_EQ(out.counters.greedy_pops, 0u);
    EXPECT_EQ(out.per_query_ood.has_value(), v == MethodVariant::ES_MI_Adapt);
  }
}

TEST_P(Randomized, HybridFindsSupersetOfBfsWithLargePool) {
  const Case c = make_case(GetParam());
  const NodeVectors nodes(c.queries, c.data);
  QuerySearcher searcher(c.merged_graph, nodes);
  SearchParams params;
  params.theta = c.theta;
  params.max_queue = c.merged_graph.size();
  for (std::size_t q = 0; q < c.queries.size(); ++q) {
    Counters counters;
    const auto qid = static_cast<VectorId>(q);
    std::set<VectorId> bfs;
    for (const Match& m : searcher.join_merged_bfs(qid, params, counters).matches) bfs.insert(m.node);
    std::set<VectorId> hybrid;
    for (const Match& m : searcher.join_merged_hybrid(qid, params, counters).matches) {
      hybrid.insert(m.node);
    }
    EXPECT_TRUE(std::includes(hybrid.begin(), hybrid.end(), bfs.begin(), bfs.end()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, Randomized, ::testing::Range<std::uint64_t>(1, 13));

}  // namespace
}  // namespace vjoin
