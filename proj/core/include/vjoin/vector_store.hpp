#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vjoin {

/// Position of a vector inside one VectorStore.
using VectorId = std::uint32_t;

/// Flat, immutable row-major collection of float vectors sharing one
/// dimension. Ids are row positions and are never reused.
class VectorStore {
 public:
  VectorStore() = default;

  /// Takes ownership of `values`, which must hold a whole number of rows.
  /// Throws ConfigError if dimension is zero or the size is not a multiple.
  VectorStore(std::size_t dimension, std::vector<float> values);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  std::span<const float> operator[](VectorId id) const noexcept {
    return {values_.data() + static_cast<std::size_t>(id) * dimension_,
            dimension_};
  }

  std::span<const float> values() const noexcept { return values_; }

  /// Rows of `first` followed by rows of `second`.
  static VectorStore concat(const VectorStore& first,
                            const VectorStore& second);

  friend bool operator==(const VectorStore&, const VectorStore&) = default;

 private:
  std::size_t dimension_ = 0;
  std::size_t count_ = 0;
  std::vector<float> values_;
};

}  // namespace vjoin
