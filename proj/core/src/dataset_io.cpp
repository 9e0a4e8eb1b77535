#include "vjoin/dataset_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <type_traits>

#include "binary_io.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

namespace {

template <typename Component>
VectorStore read_vecs(std::istream& in, const char* what) {
  std::vector<float> values;
  std::int64_t dimension = -1;
  detail::Reader reader(in, what);
  while (in.peek() != std::char_traits<char>::eof()) {
    const auto dim =
        static_cast<std::int32_t>(reader.le<std::uint32_t>("record dimension"));
    if (dim <= 0) {
      throw FormatError(std::string(what) + ": non-positive dimension " +
                        std::to_string(dim));
    }
    if (dimension >= 0 && dim != dimension) {
      throw FormatError(std::string(what) + ": inconsistent dimension " +
                        std::to_string(dim) + " after " +
                        std::to_string(dimension));
    }
    dimension = dim;
    for (std::int32_t k = 0; k < dim; ++k) {
      if constexpr (std::is_same_v<Component, float>) {
        values.push_back(reader.f32("component"));
      } else {
        values.push_back(static_cast<float>(reader.le<std::uint8_t>("component")));
      }
    }
  }
  if (dimension < 0) return VectorStore();
  return VectorStore(static_cast<std::size_t>(dimension), std::move(values));
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

VectorStore read_fvecs(std::istream& in) { return read_vecs<float>(in, "fvecs"); }
VectorStore read_bvecs(std::istream& in) {
  return read_vecs<std::uint8_t>(in, "bvecs");
}

VectorStore load_fvecs(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_fvecs(in);
}

VectorStore load_bvecs(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_bvecs(in);
}

void write_fvecs(std::ostream& out, const VectorStore& store) {
  for (VectorId v = 0; v < store.size(); ++v) {
    detail::write_le<std::uint32_t>(out,
                                    static_cast<std::uint32_t>(store.dimension()));
    for (float x : store[v]) detail::write_f32(out, x);
  }
  if (!out) throw FormatError("fvecs: write failed");
}

void write_bvecs(std::ostream& out, const VectorStore& store) {
  for (VectorId v = 0; v < store.size(); ++v) {
    detail::write_le<std::uint32_t>(out,
                                    static_cast<std::uint32_t>(store.dimension()));
    for (float x : store[v]) {
      if (!(x >= 0.0f && x <= 255.0f) || std::floor(x) != x) {
        throw ConfigError("bvecs components must be integers in [0, 255]");
      }
      detail::write_le<std::uint8_t>(out, static_cast<std::uint8_t>(x));
    }
  }
  if (!out) throw FormatError("bvecs: write failed");
}

void save_fvecs(const std::filesystem::path& path, const VectorStore& store) {
  auto out = open_out(path);
  write_fvecs(out, store);
}

void save_bvecs(const std::filesystem::path& path, const VectorStore& store) {
  auto out = open_out(path);
  write_bvecs(out, store);
}

VectorStore load_vectors(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".fvecs") return load_fvecs(path);
  if (ext == ".bvecs") return load_bvecs(path);
  throw ConfigError("unrecognized vector file extension '" + ext +
                    "' (expected .fvecs or .bvecs)");
}

}  // namespace vjoin
