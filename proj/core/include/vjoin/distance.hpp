#pragma once

#include <span>

#include "vjoin/counters.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

/// Euclidean distance. Accumulates squared differences in float, in index
/// order, then takes one sqrt; every component of the project uses this
/// kernel so a pair's distance is bit-identical wherever it is computed.
/// Spans must have equal length.
float l2_distance(std::span<const float> a, std::span<const float> b) noexcept;

/// Same kernel without the final sqrt.
float l2_squared(std::span<const float> a, std::span<const float> b) noexcept;

/// Distance between a row of `store_a` and a row of `store_b`; counts one
/// distance computation. Throws ConfigError on dimension mismatch.
float distance(const VectorStore& store_a, VectorId a,
               const VectorStore& store_b, VectorId b, Counters& counters);

/// Join predicate: strictly below the threshold.
constexpr bool threshold_check(float d, float theta) noexcept {
  return d < theta;
}

}  // namespace vjoin
