#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "vjoin/key_value.hpp"
#include "vjoin/vector_store.hpp"

namespace vjoin {

enum class Generator { GaussianClusters, UniformCube, OodDisplaced, SelfJoin, FileBacked };

std::string_view to_string(Generator generator);
Generator parse_generator(std::string_view name);

/// Fully determines a synthetic instance.
///
/// GaussianClusters: centers uniform in a cube of side
/// cluster_separation * cluster_radius; each point is its center plus an
/// isotropic Gaussian with per-axis sigma cluster_radius / sqrt(dim), so
/// points sit about cluster_radius from their center. Queries come from the
/// same mixture.
///
/// OodDisplaced: cluster k is centered at k * cluster_separation *
/// cluster_radius on axis 0. Queries are assigned round-robin to adjacent
/// cluster pairs and placed ood_displacement * cluster_radius from the
/// pair's midpoint along axis 1, jittered by query_spread * cluster_radius.
///
/// SelfJoin: one Gaussian mixture serving as both sides.
/// UniformCube: uniform in [0, 1)^dim. FileBacked: loads the two paths.
struct WorkloadSpec {
  std::string name = "synthetic";
  Generator generator = Generator::GaussianClusters;
  std::size_t dim = 16;
  std::size_t data_count = 10000;
  std::size_t query_count = 1000;
  std::size_t cluster_count = 10;
  double cluster_radius = 1.0;
  double cluster_separation = 4.0;
  double ood_displacement = 10.0;
  double query_spread = 0.25;
  std::uint64_t rng_seed = 42;
  std::string queries_path;
  std::string data_path;

  void validate() const;  // throws ConfigError

  /// Reads the workload keys it knows; leaves other keys untouched.
  static WorkloadSpec from_keys(const KeyValues& kv);
};

struct Workload {
  VectorStore queries;
  VectorStore data;
  /// Queries and data are the same set; join with `data` on both sides.
  bool self_join = false;

  const VectorStore& query_side() const { return self_join ? data : queries; }
};

Workload generate(const WorkloadSpec& spec);

}  // namespace vjoin
