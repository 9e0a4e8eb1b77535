#pragma once

#include <filesystem>
#include <iosfwd>

#include "vjoin/vector_store.hpp"

namespace vjoin {

// ANN corpus formats. Every record is an i32 little-endian dimension
// followed by that many components: f32 for fvecs, u8 for bvecs (widened to
// float on load). All records of a file share one dimension.

VectorStore read_fvecs(std::istream& in);
VectorStore read_bvecs(std::istream& in);
VectorStore load_fvecs(const std::filesystem::path& path);
VectorStore load_bvecs(const std::filesystem::path& path);

void write_fvecs(std::ostream& out, const VectorStore& store);
void save_fvecs(const std::filesystem::path& path, const VectorStore& store);

/// Fails with ConfigError if a component is not an integer in [0, 255].
void write_bvecs(std::ostream& out, const VectorStore& store);
void save_bvecs(const std::filesystem::path& path, const VectorStore& store);

/// Picks the reader from the extension (.fvecs or .bvecs).
VectorStore load_vectors(const std::filesystem::path& path);

}  // namespace vjoin
