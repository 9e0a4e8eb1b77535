#include "vjoin/distance.hpp"

#include <cmath>

#include "vjoin/errors.hpp"

namespace vjoin {

float l2_squared(std::span<const float> a, std::span<const float> b) noexcept {
  float sum = 0.0f;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const float diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

float l2_distance(std::span<const float> a, std::span<const float> b) noexcept {
  return std::sqrt(l2_squared(a, b));
}

float distance(const VectorStore& store_a, VectorId a,
               const VectorStore& store_b, VectorId b, Counters& counters) {
  if (store_a.dimension() != store_b.dimension()) {
    throw ConfigError("distance between stores of different dimension");
  }
  ++counters.distance_computations;
  return l2_distance(store_a[a], store_b[b]);
}

}  // namespace vjoin
