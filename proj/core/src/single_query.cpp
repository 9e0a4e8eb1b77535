#include "vjoin/single_query.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "vjoin/distance.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

namespace {

constexpr float kInf = std::numeric_limits<float>::infinity();

void insert_sorted(std::vector<Neighbor>& queue, Neighbor entry) {
  queue.insert(std::upper_bound(queue.begin(), queue.end(), entry), entry);
}

}  // namespace

QuerySearcher::QuerySearcher(const ProximityGraph& graph, NodeVectors nodes)
    : graph_(&graph),
      nodes_(nodes),
      visited_(graph.size(), 0),
      computed_(graph.size(), 0),
      memo_(graph.size(), 0.0f) {
  if (graph.size() != nodes.size()) {
    throw ConfigError("graph has " + std::to_string(graph.size()) +
                      " nodes but " + std::to_string(nodes.size()) +
                      " vectors were supplied");
  }
}

void QuerySearcher::begin(std::span<const float> query) {
  query_ = query;
  log_.clear();
  if (++epoch_ == 0) {
    // Stamp wrap-around: clear so stale stamps cannot alias the new epoch.
    std::fill(visited_.begin(), visited_.end(), 0);
    std::fill(computed_.begin(), computed_.end(), 0);
    epoch_ = 1;
  }
}

float QuerySearcher::node_distance(VectorId v, Counters& counters) {
  if (computed_[v] == epoch_) return memo_[v];
  ++counters.distance_computations;
  const float d = l2_distance(query_, nodes_[v]);
  computed_[v] = epoch_;
  memo_[v] = d;
  log_.push_back({v, d});
  return d;
}

bool QuerySearcher::emits(VectorId v, float d,
                          const SearchParams& params) const noexcept {
  return threshold_check(d, params.theta) && nodes_.is_data(v) &&
         params.exclude != v;
}

void QuerySearcher::emit(VectorId v, float d, const SearchParams& params,
                         SingleQueryResult& out) const {
  if (params.exclude != v) out.matches.push_back({v, d});
}

void QuerySearcher::note(Closest& closest, VectorId v,
                         float d) const noexcept {
  if (!nodes_.is_data(v)) return;
  if (!closest.any || d < closest.distance) closest = {d, v, true};
}

void QuerySearcher::fill_cache(const SearchParams& params,
                               const Closest& closest,
                               SingleQueryResult& out) {
  switch (params.cache) {
    case CachePolicy::Hard:
      for (const Match& m : out.matches) out.cache.push_back(m.node);
      break;
    case CachePolicy::Soft:
      if (closest.any) out.cache.push_back(closest.node);
      break;
    case CachePolicy::None:
      break;
  }
}

bool QuerySearcher::greedy_phase(std::span<const VectorId> seeds,
                                 const SearchParams& params,
                                 std::vector<Neighbor>& queue,
                                 Closest& closest, Counters& counters) {
  for (VectorId s : seeds) {
    if (visited(s)) continue;
    const float d = node_distance(s, counters);
    mark_visited(s);
    insert_sorted(queue, {s, d});
    note(closest, s, d);
    if (threshold_check(d, params.theta)) break;
  }
  if (queue.empty()) return false;
  if (threshold_check(queue.front().distance, params.theta)) return true;

  std::size_t stale = 0;
  while (!queue.empty()) {
    if (threshold_check(queue.front().distance, params.theta)) return true;
    const Neighbor top = queue.front();
    queue.erase(queue.begin());
    ++counters.greedy_pops;
    const float before = closest.any ? closest.distance : kInf;
    for (VectorId v : graph_->neighbors(top.id)) {
      if (visited(v)) continue;
      const float dv = node_distance(v, counters);
      mark_visited(v);
      note(closest, v, dv);
      if (dv < top.distance) insert_sorted(queue, {v, dv});
    }
    if (queue.size() > params.max_queue) queue.resize(params.max_queue);
    if (params.es_patience > 0) {
      const bool improved = closest.any && closest.distance < before;
      stale = improved ? 0 : stale + 1;
      if (stale >= params.es_patience) return false;
    }
  }
  return false;
}

void QuerySearcher::bfs_phase(std::vector<VectorId> frontier,
                              const SearchParams& params, Closest& closest,
                              SingleQueryResult& out, Counters& counters) {
  std::deque<VectorId> fifo(frontier.begin(), frontier.end());
  while (!fifo.empty()) {
    const VectorId u = fifo.front();
    fifo.pop_front();
    ++counters.bfs_pops;
    for (VectorId v : graph_->neighbors(u)) {
      if (visited(v) || !nodes_.is_data(v)) continue;
      const float dv = node_distance(v, counters);
      mark_visited(v);
      note(closest, v, dv);
      if (threshold_check(dv, params.theta)) {
        emit(v, dv, params, out);
        fifo.push_back(v);
      }
    }
  }
}

// Best-first loop over two ordered sets. In-range data nodes are always
// admitted; everything else shares a pool of at most L entries in which a
// closer newcomer replaces the farthest member. Stops once no in-range entry
// is pending and a full pool has not lowered its maximum for
// hybrid_patience consecutive pops.
void QuerySearcher::hybrid_phase(std::span<const Neighbor> initial,
                                 const SearchParams& params, Closest& closest,
                                 SingleQueryResult& out, Counters& counters) {
  std::set<Neighbor> in_range;
  std::set<Neighbor> out_range;
  const std::size_t cap = params.max_queue;

  auto admit_out = [&](Neighbor entry) {
    if (out_range.size() < cap) {
      out_range.insert(entry);
    } else if (entry < *out_range.rbegin()) {
      out_range.erase(std::prev(out_range.end()));
      out_range.insert(entry);
      ++counters.hybrid_evictions;
    }
  };

  for (const Neighbor& entry : initial) {
    if (emits(entry.id, entry.distance, params)) {
      in_range.insert(entry);
      emit(entry.id, entry.distance, params, out);
    } else {
      admit_out(entry);
    }
  }

  float last_full_max = kInf;
  std::size_t stale = 0;
  while (!in_range.empty() || !out_range.empty()) {
    Neighbor top;
    if (!in_range.empty() &&
        (out_range.empty() || *in_range.begin() < *out_range.begin())) {
      top = *in_range.begin();
      in_range.erase(in_range.begin());
    } else {
      top = *out_range.begin();
      out_range.erase(out_range.begin());
    }
    ++counters.bfs_pops;

    for (VectorId v : graph_->neighbors(top.id)) {
      if (visited(v)) continue;
      const float dv = node_distance(v, counters);
      mark_visited(v);
      note(closest, v, dv);
      if (emits(v, dv, params)) {
        in_range.insert({v, dv});
        emit(v, dv, params, out);
      } else {
        admit_out({v, dv});
      }
    }

    if (!in_range.empty()) {
      stale = 0;
      last_full_max = kInf;
    } else if (out_range.size() >= cap) {
      const float current_max = out_range.rbegin()->distance;
      stale = current_max < last_full_max ? 0 : stale + 1;
      last_full_max = current_max;
      if (stale >= params.hybrid_patience) break;
    }
  }
}

SingleQueryResult QuerySearcher::join_single_query(
    std::span<const float> query, std::span<const VectorId> seeds,
    const SearchParams& params, Counters& counters) {
  begin(query);
  PhaseTimer timer;
  SingleQueryResult out;
  Closest closest{kInf, 0, false};
  std::vector<Neighbor> queue;
  const bool found = greedy_phase(seeds, params, queue, closest, counters);
  timer.lap(counters.greedy_time);
  if (found) {
    std::vector<VectorId> frontier;
    for (const Neighbor& entry : queue) {
      if (!threshold_check(entry.distance, params.theta)) break;
      frontier.push_back(entry.id);
      emit(entry.id, entry.distance, params, out);
    }
    bfs_phase(std::move(frontier), params, closest, out, counters);
    timer.lap(counters.bfs_time);
  }
  fill_cache(params, closest, out);
  return out;
}

SingleQueryResult QuerySearcher::join_single_query_hybrid(
    std::span<const float> query, std::span<const VectorId> seeds,
    const SearchParams& params, Counters& counters) {
  begin(query);
  PhaseTimer timer;
  SingleQueryResult out;
  Closest closest{kInf, 0, false};
  std::vector<Neighbor> queue;
  const bool found = greedy_phase(seeds, params, queue, closest, counters);
  timer.lap(counters.greedy_time);
  if (found) {
    hybrid_phase(queue, params, closest, out, counters);
    timer.lap(counters.bfs_time);
  }
  fill_cache(params, closest, out);
  return out;
}

SingleQueryResult QuerySearcher::join_merged_bfs(VectorId query_node,
                                                 const SearchParams& params,
                                                 Counters& counters) {
  begin(nodes_[query_node]);
  PhaseTimer timer;
  SingleQueryResult out;
  Closest closest{kInf, 0, false};
  mark_visited(query_node);
  bfs_phase({query_node}, params, closest, out, counters);
  timer.lap(counters.bfs_time);
  return out;
}

SingleQueryResult QuerySearcher::join_merged_hybrid(VectorId query_node,
                                                    const SearchParams& params,
                                                    Counters& counters) {
  begin(nodes_[query_node]);
  PhaseTimer timer;
  SingleQueryResult out;
  Closest closest{kInf, 0, false};
  mark_visited(query_node);
  const Neighbor self{query_node, 0.0f};
  hybrid_phase({&self, 1}, params, closest, out, counters);
  timer.lap(counters.bfs_time);
  return out;
}

OodEstimate QuerySearcher::classify(VectorId query_node, double ood_factor,
                                    Counters& counters) {
  OodEstimate est;
  double to_data = 0.0;
  double data_to_data = 0.0;
  for (VectorId v : graph_->neighbors(query_node)) {
    if (!nodes_.is_data(v)) continue;
    to_data += node_distance(v, counters);
    data_to_data += graph_->avg_data_neighbor_dist[v];
    ++est.data_neighbors;
  }
  if (est.data_neighbors == 0) {
    est.ood = true;
    return est;
  }
  const auto count = static_cast<double>(est.data_neighbors);
  est.query_to_data = to_data / count;
  est.data_to_data = data_to_data / count;
  if (est.data_to_data == 0.0) {
    est.ood = est.query_to_data > 0.0;
  } else {
    est.ood = est.query_to_data > ood_factor * est.data_to_data;
  }
  return est;
}

OodEstimate QuerySearcher::predict_ood(VectorId query_node, double ood_factor,
                                       Counters& counters) {
  begin(nodes_[query_node]);
  return classify(query_node, ood_factor, counters);
}

SingleQueryResult QuerySearcher::join_merged_adaptive(
    VectorId query_node, const SearchParams& params, double ood_factor,
    HybridForce force, Counters& counters, OodEstimate* estimate) {
  begin(nodes_[query_node]);
  PhaseTimer timer;
  bool hybrid = force == HybridForce::AlwaysBBFS;
  if (force == HybridForce::Auto) {
    const OodEstimate est = classify(query_node, ood_factor, counters);
    if (estimate != nullptr) *estimate = est;
    hybrid = est.ood;
  } else if (estimate != nullptr) {
    *estimate = OodEstimate{};
    estimate->ood = hybrid;
  }
  Counters::Duration classification{0};
  timer.lap(classification);  // reported by the caller as other time

  SingleQueryResult out;
  Closest closest{kInf, 0, false};
  mark_visited(query_node);
  if (hybrid) {
    const Neighbor self{query_node, 0.0f};
    hybrid_phase({&self, 1}, params, closest, out, counters);
  } else {
    bfs_phase({query_node}, params, closest, out, counters);
  }
  timer.lap(counters.bfs_time);
  return out;
}

}  // namespace vjoin
