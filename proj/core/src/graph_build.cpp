#include "vjoin/graph_build.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "vjoin/distance.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

void IndexBuildParams::validate() const {
  if (max_degree < 1) throw ConfigError("max_degree must be at least 1");
  if (max_degree > k_nn) {
    throw ConfigError("max_degree (" + std::to_string(max_degree) +
                      ") must not exceed k_nn (" + std::to_string(k_nn) + ")");
  }
}

std::size_t ProximityGraph::query_count() const noexcept {
  if (!has_roles) return 0;
  std::size_t n = 0;
  while (n < roles.size() && roles[n] == NodeRole::Query) ++n;
  return n;
}

CandidateLists build_knn_candidates(const VectorStore& store, std::size_t k_nn,
                                    std::size_t threads) {
  const std::size_t n = store.size();
  if (n < 2) {
    throw ConfigError("kNN candidates need at least 2 vectors, got " +
                      std::to_string(n));
  }
  if (k_nn == 0 || k_nn >= n) {
    throw ConfigError("k_nn must be in [1, " + std::to_string(n - 1) +
                      "], got " + std::to_string(k_nn));
  }
  CandidateLists lists(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    std::vector<Neighbor> all;
    all.reserve(n - 1);
    const auto row = store[static_cast<VectorId>(i)];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      all.push_back({static_cast<VectorId>(j),
                     l2_distance(row, store[static_cast<VectorId>(j)])});
    }
    std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k_nn - 1),
                     all.end());
    all.resize(k_nn);
    std::sort(all.begin(), all.end());
    lists[i] = std::move(all);
  });
  return lists;
}

std::vector<VectorId> rng_prune(const VectorStore& store, VectorId u,
                                std::span<const Neighbor> candidates,
                                std::size_t max_degree) {
  std::vector<Neighbor> kept;
  kept.reserve(std::min(max_degree, candidates.size()));
  for (const Neighbor& cand : candidates) {
    if (kept.size() >= max_degree) break;
    if (cand.id == u) continue;
    const auto v_row = store[cand.id];
    bool occluded = false;
    for (const Neighbor& w : kept) {
      if (w.id == cand.id) {
        occluded = true;  // duplicate candidate
        break;
      }
      if (w.distance < cand.distance &&
          l2_distance(v_row, store[w.id]) < cand.distance) {
        occluded = true;
        break;
      }
    }
    if (!occluded) kept.push_back(cand);
  }
  std::vector<VectorId> ids;
  ids.reserve(kept.size());
  for (const Neighbor& k : kept) ids.push_back(k.id);
  return ids;
}

VectorId choose_entry_point(const VectorStore& store, VectorId first) {
  if (first >= store.size()) {
    throw ConfigError("cannot choose an entry point from an empty range");
  }
  const std::size_t dim = store.dimension();
  std::vector<double> sum(dim, 0.0);
  for (std::size_t v = first; v < store.size(); ++v) {
    const auto row = store[static_cast<VectorId>(v)];
    for (std::size_t k = 0; k < dim; ++k) sum[k] += row[k];
  }
  const double count = static_cast<double>(store.size() - first);
  std::vector<float> centroid(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    centroid[k] = static_cast<float>(sum[k] / count);
  }
  VectorId best = first;
  float best_dist = std::numeric_limits<float>::infinity();
  for (std::size_t v = first; v < store.size(); ++v) {
    const float d = l2_squared(store[static_cast<VectorId>(v)], centroid);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<VectorId>(v);
    }
  }
  return best;
}

namespace {

// Marks everything reachable from `start` that was not reached before.
void mark_reachable(const ProximityGraph& graph, VectorId start,
                    std::vector<char>& reached) {
  std::deque<VectorId> frontier{start};
  reached[start] = 1;
  while (!frontier.empty()) {
    const VectorId u = frontier.front();
    frontier.pop_front();
    for (VectorId v : graph.adjacency[u]) {
      if (!reached[v]) {
        reached[v] = 1;
        frontier.push_back(v);
      }
    }
  }
}

}  // namespace

std::size_t repair_connectivity(ProximityGraph& graph,
                                const VectorStore& store) {
  const std::size_t n = graph.size();
  if (n == 0) return 0;
  std::vector<char> reached(n, 0);
  mark_reachable(graph, graph.entry_point, reached);

  std::size_t added = 0;
  for (std::size_t next = 0; next < n; ++next) {
    if (reached[next]) continue;
    const auto target = static_cast<VectorId>(next);
    const auto row = store[target];
    VectorId source = graph.entry_point;
    float best = std::numeric_limits<float>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
      if (!reached[r]) continue;
      const float d = l2_distance(row, store[static_cast<VectorId>(r)]);
      if (d < best) {
        best = d;
        source = static_cast<VectorId>(r);
      }
    }
    graph.adjacency[source].push_back(target);
    ++added;
    mark_reachable(graph, target, reached);
  }
  return added;
}

void compute_neighbor_stats(ProximityGraph& graph, const VectorStore& store) {
  graph.avg_data_neighbor_dist.assign(graph.size(), 0.0f);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto row = store[static_cast<VectorId>(v)];
    double sum = 0.0;
    std::size_t count = 0;
    for (VectorId w : graph.adjacency[v]) {
      if (!graph.is_data(w)) continue;
      sum += l2_distance(row, store[w]);
      ++count;
    }
    graph.avg_data_neighbor_dist[v] =
        count == 0 ? 0.0f : static_cast<float>(sum / static_cast<double>(count));
  }
}

namespace {

ProximityGraph build_over(const VectorStore& store,
                          const IndexBuildParams& params,
                          std::vector<NodeRole> roles, VectorId entry_first) {
  params.validate();
  ProximityGraph graph;
  graph.dimension = store.dimension();
  graph.adjacency.resize(store.size());
  graph.roles = std::move(roles);
  if (store.empty()) return graph;

  if (store.size() >= 2) {
    const std::size_t k_nn = std::min(params.k_nn, store.size() - 1);
    const std::size_t degree = std::min(params.max_degree, k_nn);
    const CandidateLists candidates =
        build_knn_candidates(store, k_nn, params.threads);
    detail::parallel_for(store.size(), params.threads, [&](std::size_t v) {
      graph.adjacency[v] =
          rng_prune(store, static_cast<VectorId>(v), candidates[v], degree);
    });
  }
  graph.entry_point = choose_entry_point(store, entry_first);
  if (params.connectivity_repair) repair_connectivity(graph, store);
  compute_neighbor_stats(graph, store);
  return graph;
}

}  // namespace

ProximityGraph build_index(const VectorStore& store,
                           const IndexBuildParams& params) {
  return build_over(store, params,
                    std::vector<NodeRole>(store.size(), NodeRole::Data), 0);
}

ProximityGraph build_merged_index(const VectorStore& queries,
                                  const VectorStore& data,
                                  const IndexBuildParams& params) {
  if (queries.dimension() != data.dimension()) {
    throw ConfigError("merged index needs equal dimensions, got " +
                      std::to_string(queries.dimension()) + " and " +
                      std::to_string(data.dimension()));
  }
  if (data.empty()) throw ConfigError("merged index needs data vectors");
  std::vector<NodeRole> roles(queries.size(), NodeRole::Query);
  roles.resize(queries.size() + data.size(), NodeRole::Data);
  ProximityGraph graph =
      build_over(VectorStore::concat(queries, data), params, std::move(roles),
                 static_cast<VectorId>(queries.size()));
  graph.has_roles = true;
  return graph;
}

std::vector<std::size_t> degree_histogram(const ProximityGraph& graph) {
  std::vector<std::size_t> histogram;
  for (const auto& list : graph.adjacency) {
    if (list.size() >= histogram.size()) histogram.resize(list.size() + 1, 0);
    ++histogram[list.size()];
  }
  return histogram;
}

std::size_t degree_mode(const ProximityGraph& graph) {
  const auto histogram = degree_histogram(graph);
  if (histogram.empty()) return 0;
  std::size_t mode = 0;
  for (std::size_t d = 0; d < histogram.size(); ++d) {
    if (histogram[d] > histogram[mode]) mode = d;
  }
  return mode;
}

}  // namespace vjoin
