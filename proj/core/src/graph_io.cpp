#include "vjoin/graph_io.hpp"

#include <fstream>
#include <limits>
#include <string>

#include "binary_io.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

namespace {
constexpr std::string_view kMagic = "VJIX";
}

void write_index(std::ostream& out, const ProximityGraph& graph) {
  if (graph.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("graph too large for index format");
  }
  detail::write_bytes(out, kMagic);
  detail::write_le<std::uint32_t>(out, kIndexFormatVersion);
  detail::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(graph.size()));
  detail::write_le<std::uint32_t>(out,
                                  static_cast<std::uint32_t>(graph.dimension));
  detail::write_le<std::uint32_t>(out, graph.entry_point);
  detail::write_le<std::uint8_t>(out, graph.has_roles ? 1 : 0);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    if (graph.has_roles) {
      detail::write_le<std::uint8_t>(out,
                                     static_cast<std::uint8_t>(graph.roles[v]));
    }
    detail::write_f32(out, graph.avg_data_neighbor_dist[v]);
    detail::write_le<std::uint32_t>(
        out, static_cast<std::uint32_t>(graph.adjacency[v].size()));
    for (VectorId w : graph.adjacency[v]) detail::write_le<std::uint32_t>(out, w);
  }
  if (!out) throw FormatError("index: write failed");
}

ProximityGraph read_index(std::istream& in) {
  detail::Reader reader(in, "index");
  reader.expect_magic(kMagic);
  const auto version = reader.le<std::uint32_t>("version");
  if (version != kIndexFormatVersion) {
    throw VersionError("index: unsupported version " + std::to_string(version));
  }
  const auto node_count = reader.le<std::uint32_t>("node_count");
  ProximityGraph graph;
  graph.dimension = reader.le<std::uint32_t>("dimension");
  graph.entry_point = reader.le<std::uint32_t>("entry_point");
  const auto has_roles = reader.le<std::uint8_t>("has_roles");
  if (has_roles > 1) throw FormatError("index: has_roles must be 0 or 1");
  graph.has_roles = has_roles == 1;
  if (node_count > 0 && graph.entry_point >= node_count) {
    throw FormatError("index: entry point out of range");
  }

  // Grow incrementally so a corrupt count cannot trigger a huge allocation.
  for (std::uint32_t v = 0; v < node_count; ++v) {
    NodeRole role = NodeRole::Data;
    if (graph.has_roles) {
      const auto raw = reader.le<std::uint8_t>("role");
      if (raw > 1) throw FormatError("index: invalid node role");
      role = static_cast<NodeRole>(raw);
    }
    graph.roles.push_back(role);
    graph.avg_data_neighbor_dist.push_back(reader.f32("avg_data_neighbor_dist"));
    const auto degree = reader.le<std::uint32_t>("degree");
    if (degree >= node_count && degree > 0) {
      throw FormatError("index: degree exceeds node count");
    }
    std::vector<VectorId> list;
    list.reserve(degree);
    for (std::uint32_t k = 0; k < degree; ++k) {
      const auto w = reader.le<std::uint32_t>("neighbor id");
      if (w >= node_count) throw FormatError("index: neighbor id out of range");
      list.push_back(w);
    }
    graph.adjacency.push_back(std::move(list));
  }
  reader.expect_end();
  return graph;
}

void save_index(const std::filesystem::path& path,
                const ProximityGraph& graph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_index(out, graph);
}

ProximityGraph load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_index(in);
}

void check_index_matches(const ProximityGraph& graph,
                         const VectorStore& store) {
  if (graph.size() != store.size() || graph.dimension != store.dimension()) {
    throw ConfigError("index (" + std::to_string(graph.size()) + " nodes, dim " +
                      std::to_string(graph.dimension) +
                      ") does not match store (" + std::to_string(store.size()) +
                      " vectors, dim " + std::to_string(store.dimension()) + ")");
  }
}

}  // namespace vjoin
