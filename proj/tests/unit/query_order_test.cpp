#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/oracle.hpp"
#include "vjoin/query_order.hpp"

namespace vjoin {
namespace {

TEST(OrderQueries, Empty) {
  Counters c;
  const std::vector<float> entry{0.0f};
  EXPECT_TRUE(order_queries(VectorStore(1, {}), ProximityGraph{}, entry, c).empty());
}

TEST(OrderQueries, SingleQuery) {
  const VectorStore q = testing::from_rows({{1, 1}});
  const ProximityGraph g = build_index(q, {});
  const std::vector<float> entry{0, 0};
  Counters c;
  const QueryOrder order = order_queries(q, g, entry, c);
  ASSERT_EQ(order.size(), 1u);
  EXPECT_EQ(order[0].query, 0u);
  EXPECT_EQ(order[0].parent, kSentinel);
  EXPECT_EQ(c.distance_computations, 1u);
}

TEST(OrderQueries, CloseQueriesChain) {
  const VectorStore q = testing::from_rows({{100, 0}, {100.1f, 0}});
  const ProximityGraph g = build_index(q, {});
  const std::vector<float> entry{0, 0};
  Counters c;
  const QueryOrder order = order_queries(q, g, entry, c);
  ASSERT_EQ(order.size(), 2u);
  EXPECT_EQ(order[0].query, 0u);
  EXPECT_EQ(order[0].parent, kSentinel);
  EXPECT_EQ(order[1].query, 1u);
  EXPECT_EQ(order[1].parent, 0u);
  EXPECT_NEAR(order[1].weight, 0.1f, 1e-4f);
}

TEST(OrderQueries, RejectsMismatchedInputs) {
  const VectorStore q = testing::random_uniform(5, 2, 1);
  const ProximityGraph g = build_index(testing::random_uniform(4, 2, 1), {});
  const std::vector<float> entry{0, 0};
  Counters c;
  EXPECT_THROW(order_queries(q, g, entry, c), ConfigError);
  const std::vector<float> bad_entry{0, 0, 0};
  EXPECT_THROW(order_queries(q, build_index(q, {}), bad_entry, c), ConfigError);
}

TEST(OrderQueries, PrimMatchesKruskalWeight) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const VectorStore q = testing::random_gaussian(50, 6, seed);
    IndexBuildParams p;
    p.max_degree = 5;
    p.k_nn = 10;
    const ProximityGraph g = build_index(q, p);
    const std::vector<float> entry(6, 0.5f);
    Counters c;
    const QueryOrder order = order_queries(q, g, entry, c);

    // Oracle node 0 is the sentinel, query i is node i + 1.
    std::vector<oracle::WeightedEdge> edges;
    std::set<std::pair<VectorId, VectorId>> seen;
    std::size_t undirected = 0;
    for (VectorId u = 0; u < q.size(); ++u) {
      for (VectorId v : g.adjacency[u]) {
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (!seen.insert(key).second) continue;
        ++undirected;
        edges.push_back({u + 1, v + 1, oracle::exact_distance(q[u], q[v])});
      }
      edges.push_back({0, u + 1, oracle::exact_distance(q[u], entry)});
    }
    const oracle::SpanningTree tree = oracle::mst_reference(edges, q.size() + 1);

    double total = 0.0;
    for (const OrderEntry& e : order) total += e.weight;
    EXPECT_NEAR(total, tree.total_weight, 1e-4 * tree.total_weight) << "seed " << seed;
    EXPECT_EQ(c.distance_computations, undirected + q.size());

    // Preorder: a permutation in which parents come first.
    std::vector<bool> done(q.size(), false);
    for (const OrderEntry& e : order) {
      ASSERT_FALSE(done[e.query]);
      if (e.parent != kSentinel) {
        ASSERT_TRUE(done[e.parent]);
      }
      done[e.query] = true;
    }
    EXPECT_EQ(std::count(done.begin(), done.end(), true), 50);
  }
}

TEST(OrderQueries, Deterministic) {
  const VectorStore q = testing::random_uniform(80, 3, 12);
  const ProximityGraph g = build_index(q, {});
  const std::vector<float> entry{0.5f, 0.5f, 0.5f};
  Counters a;
  Counters b;
  const QueryOrder x = order_queries(q, g, entry, a);
  const QueryOrder y = order_queries(q, g, entry, b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i].query, y[i].query);
    EXPECT_EQ(x[i].parent, y[i].parent);
  }
}

}  // namespace
}  // namespace vjoin
