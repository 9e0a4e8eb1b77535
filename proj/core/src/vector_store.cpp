#include "vjoin/vector_store.hpp"

#include <string>

#include "vjoin/errors.hpp"

namespace vjoin {

VectorStore::VectorStore(std::size_t dimension, std::vector<float> values)
    : dimension_(dimension), values_(std::move(values)) {
  if (dimension_ == 0) {
    throw ConfigError("vector dimension must be positive");
  }
  if (values_.size() % dimension_ != 0) {
    throw ConfigError("value count " + std::to_string(values_.size()) +
                      " is not a multiple of dimension " +
                      std::to_string(dimension_));
  }
  count_ = values_.size() / dimension_;
}

VectorStore VectorStore::concat(const VectorStore& first,
                                const VectorStore& second) {
  if (first.dimension() != second.dimension()) {
    throw ConfigError("cannot concatenate stores of dimension " +
                      std::to_string(first.dimension()) + " and " +
                      std::to_string(second.dimension()));
  }
  std::vector<float> values;
  values.reserve(first.values_.size() + second.values_.size());
  values.insert(values.end(), first.values_.begin(), first.values_.end());
  values.insert(values.end(), second.values_.begin(), second.values_.end());
  return VectorStore(first.dimension(), std::move(values));
}

}  // namespace vjoin
