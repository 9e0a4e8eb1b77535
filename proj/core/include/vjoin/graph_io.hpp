#pragma once

#include <filesystem>
#include <iosfwd>

#include "vjoin/graph.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Little-endian layout:
//   "VJIX" u32 version u32 node_count u32 dimension u32 entry_point u8 has_roles
//   per node: [u8 role] f32 avg_data_neighbor_dist u32 degree u32 ids[degree]
// Vectors are stored separately.

void write_index(std::ostream& out, const ProximityGraph& graph);
ProximityGraph read_index(std::istream& in);

void save_index(const std::filesystem::path& path, const ProximityGraph& graph);
ProximityGraph load_index(const std::filesystem::path& path);

/// Throws ConfigError unless the graph was built over a store of this shape.
void check_index_matches(const ProximityGraph& graph, const VectorStore& store);

}  // namespace vjoin
