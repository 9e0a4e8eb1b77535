#include "vjoin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <tuple>

#include "binary_io.hpp"
#include "vjoin/errors.hpp"

namespace vjoin::oracle {

float exact_distance(std::span<const float> a, std::span<const float> b) {
  float acc = 0.0f;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += (a[k] - b[k]) * (a[k] - b[k]);
  }
  return std::sqrt(acc);
}

GroundTruth nlj_exact(const VectorStore& queries, const VectorStore& data,
                      float theta, bool exclude_identity) {
  if (!queries.empty() && !data.empty() &&
      queries.dimension() != data.dimension()) {
    throw ConfigError("nlj_exact: dimension mismatch");
  }
  GroundTruth truth;
  truth.theta = theta;
  for (VectorId q = 0; q < queries.size(); ++q) {
    for (VectorId y = 0; y < data.size(); ++y) {
      if (exclude_identity && q == y) continue;
      const float d = exact_distance(queries[q], data[y]);
      if (d < theta) truth.pairs.push_back({q, y, d});
    }
  }
  return truth;
}

std::vector<std::pair<VectorId, VectorId>> exact_rng_edges(
    const VectorStore& store) {
  const std::size_t n = store.size();
  if (n > kRngOracleLimit) {
    throw ConfigError("exact_rng_edges: " + std::to_string(n) +
                      " vectors exceeds the oracle limit");
  }
  std::vector<float> dist(n * n, 0.0f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = exact_distance(store[static_cast<VectorId>(i)],
                                       store[static_cast<VectorId>(j)]);
    }
  }
  std::vector<std::pair<VectorId, VectorId>> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const float duv = dist[u * n + v];
      bool empty_lune = true;
      for (std::size_t w = 0; w < n && empty_lune; ++w) {
        if (w == u || w == v) continue;
        if (dist[u * n + w] < duv && dist[v * n + w] < duv) empty_lune = false;
      }
      if (empty_lune) {
        edges.emplace_back(static_cast<VectorId>(u), static_cast<VectorId>(v));
      }
    }
  }
  return edges;
}

std::vector<VectorId> exact_topk(const VectorStore& store,
                                 std::span<const float> query, std::size_t k) {
  std::vector<std::pair<float, VectorId>> all;
  all.reserve(store.size());
  for (VectorId i = 0; i < store.size(); ++i) {
    all.emplace_back(exact_distance(query, store[i]), i);
  }
  std::sort(all.begin(), all.end());
  std::vector<VectorId> ids;
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) {
    ids.push_back(all[i].second);
  }
  return ids;
}

SpanningTree mst_reference(std::span<const WeightedEdge> edges,
                           std::size_t node_count) {
  std::vector<WeightedEdge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return std::tie(a.weight, a.u, a.v) < std::tie(b.weight, b.u, b.v);
            });
  std::vector<std::size_t> root(node_count);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](std::size_t x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };

  SpanningTree tree;
  std::vector<std::vector<std::pair<VectorId, double>>> adj(node_count);
  std::size_t joined = 0;
  for (const WeightedEdge& e : sorted) {
    const std::size_t a = find(e.u);
    const std::size_t b = find(e.v);
    if (a == b) continue;
    root[a] = b;
    tree.total_weight += e.weight;
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
    ++joined;
  }
  if (node_count > 0 && joined + 1 != node_count) {
    throw ConfigError("mst_reference: input graph is disconnected");
  }

  // Orient the tree away from node 0.
  tree.parent.assign(node_count, 0);
  std::vector<char> seen(node_count, 0);
  std::vector<VectorId> stack;
  if (node_count > 0) {
    stack.push_back(0);
    seen[0] = 1;
  }
  while (!stack.empty()) {
    const VectorId u = stack.back();
    stack.pop_back();
    for (auto [v, w] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      tree.parent[v] = u;
      stack.push_back(v);
    }
  }
  return tree;
}

namespace {
constexpr std::string_view kMagic = "VJGT";
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  detail::write_bytes(out, kMagic);
  detail::write_le<std::uint32_t>(out, kGroundTruthFormatVersion);
  detail::write_f32(out, truth.theta);
  detail::write_le<std::uint64_t>(out, truth.pairs.size());
  for (const JoinPair& p : truth.pairs) {
    detail::write_le<std::uint32_t>(out, p.query);
    detail::write_le<std::uint32_t>(out, p.data);
    detail::write_f32(out, p.distance);
  }
  if (!out) throw FormatError("ground truth: write failed");
}

GroundTruth read_ground_truth(std::istream& in) {
  detail::Reader reader(in, "ground truth");
  reader.expect_magic(kMagic);
  const auto version = reader.le<std::uint32_t>("version");
  if (version != kGroundTruthFormatVersion) {
    throw VersionError("ground truth: unsupported version " +
                       std::to_string(version));
  }
  GroundTruth truth;
  truth.theta = reader.f32("theta");
  const auto count = reader.le<std::uint64_t>("pair count");
  for (std::uint64_t i = 0; i < count; ++i) {
    JoinPair p;
    p.query = reader.le<std::uint32_t>("query id");
    p.data = reader.le<std::uint32_t>("data id");
    p.distance = reader.f32("distance");
    truth.pairs.push_back(p);
  }
  reader.expect_end();
  return truth;
}

void save_ground_truth(const std::filesystem::path& path,
                       const GroundTruth& truth) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_ground_truth(out, truth);
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_ground_truth(in);
}

}  // namespace vjoin::oracle
