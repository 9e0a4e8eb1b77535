#include "vjoin/query_order.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "vjoin/distance.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

namespace {

struct WeightedEdge {
  VectorId to;
  float weight;
};

}  // namespace

QueryOrder order_queries(const VectorStore& queries,
                         const ProximityGraph& query_graph,
                         std::span<const float> entry_vector,
                         Counters& counters) {
  const std::size_t n = queries.size();
  if (n == 0) return {};
  if (query_graph.size() != n) {
    throw ConfigError("query graph does not cover the query set");
  }
  if (entry_vector.size() != queries.dimension()) {
    throw ConfigError("entry vector dimension differs from queries");
  }

  // Undirected closure of the query graph; each undirected edge is weighed once.
  std::vector<std::vector<WeightedEdge>> adj(n + 1);
  {
    std::vector<std::pair<VectorId, VectorId>> undirected;
    for (std::size_t u = 0; u < n; ++u) {
      for (VectorId v : query_graph.adjacency[u]) {
        const auto a = static_cast<VectorId>(std::min<std::size_t>(u, v));
        const auto b = static_cast<VectorId>(std::max<std::size_t>(u, v));
        if (a != b) undirected.emplace_back(a, b);
      }
    }
    std::sort(undirected.begin(), undirected.end());
    undirected.erase(std::unique(undirected.begin(), undirected.end()),
                     undirected.end());
    for (auto [a, b] : undirected) {
      const float w = distance(queries, a, queries, b, counters);
      adj[a].push_back({b, w});
      adj[b].push_back({a, w});
    }
  }
  const auto sentinel = static_cast<VectorId>(n);
  for (std::size_t q = 0; q < n; ++q) {
    ++counters.distance_computations;
    const float w = l2_distance(queries[static_cast<VectorId>(q)], entry_vector);
    adj[sentinel].push_back({static_cast<VectorId>(q), w});
    adj[q].push_back({sentinel, w});
  }

  // Lazy Prim from the sentinel; ties resolved by (weight, to, from).
  using Item = std::tuple<float, VectorId, VectorId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<char> in_tree(n + 1, 0);
  std::vector<VectorId> parent(n + 1, kSentinel);
  std::vector<float> weight(n + 1, 0.0f);
  std::vector<std::vector<VectorId>> children(n + 1);
  in_tree[sentinel] = 1;
  for (const auto& e : adj[sentinel]) heap.emplace(e.weight, e.to, sentinel);
  while (!heap.empty()) {
    const auto [w, to, from] = heap.top();
    heap.pop();
    if (in_tree[to]) continue;
    in_tree[to] = 1;
    parent[to] = from;
    weight[to] = w;
    children[from].push_back(to);
    for (const auto& e : adj[to]) {
      if (!in_tree[e.to]) heap.emplace(e.weight, e.to, to);
    }
  }

  QueryOrder order;
  order.reserve(n);
  std::vector<VectorId> stack{sentinel};
  while (!stack.empty()) {
    const VectorId u = stack.back();
    stack.pop_back();
    if (u != sentinel) {
      order.push_back({u, parent[u] == sentinel ? kSentinel : parent[u],
                       weight[u]});
    }
    auto& kids = children[u];
    std::sort(kids.begin(), kids.end());
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

}  // namespace vjoin
