#include "vjoin/workload.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "vjoin/dataset_io.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {

namespace {

constexpr std::array<std::string_view, 5> kGeneratorNames = {
    "GaussianClusters", "UniformCube", "OodDisplaced", "SelfJoin", "FileBacked"};

// Portable samplers on top of the engine's raw 64-bit output, so instances
// do not depend on the standard library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {  // Box-Muller, one draw per call
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<std::vector<double>> cube_centers(const WorkloadSpec& spec,
                                              Sampler& rng) {
  const double side = spec.cluster_separation * spec.cluster_radius;
  std::vector<std::vector<double>> centers(spec.cluster_count,
                                           std::vector<double>(spec.dim));
  for (auto& c : centers) {
    for (double& x : c) x = (rng.uniform() - 0.5) * side;
  }
  return centers;
}

void gaussian_point(const std::vector<double>& center, double sigma,
                    Sampler& rng, std::vector<float>& out) {
  for (double c : center) out.push_back(static_cast<float>(c + sigma * rng.normal()));
}

VectorStore mixture(const WorkloadSpec& spec,
                    const std::vector<std::vector<double>>& centers,
                    std::size_t count, Sampler& rng) {
  const double sigma =
      spec.cluster_radius / std::sqrt(static_cast<double>(spec.dim));
  std::vector<float> values;
  values.reserve(count * spec.dim);
  for (std::size_t i = 0; i < count; ++i) {
    gaussian_point(centers[rng.below(centers.size())], sigma, rng, values);
  }
  return VectorStore(spec.dim, std::move(values));
}

Workload ood_displaced(const WorkloadSpec& spec, Sampler& rng) {
  const double step = spec.cluster_separation * spec.cluster_radius;
  std::vector<std::vector<double>> centers(spec.cluster_count,
                                           std::vector<double>(spec.dim, 0.0));
  for (std::size_t k = 0; k < spec.cluster_count; ++k) {
    centers[k][0] = static_cast<double>(k) * step;
  }
  const double sigma =
      spec.cluster_radius / std::sqrt(static_cast<double>(spec.dim));

  // Data: equal-sized clusters, assigned round-robin.
  std::vector<float> data;
  data.reserve(spec.data_count * spec.dim);
  for (std::size_t i = 0; i < spec.data_count; ++i) {
    gaussian_point(centers[i % spec.cluster_count], sigma, rng, data);
  }

  const double lift = spec.ood_displacement * spec.cluster_radius;
  const double jitter =
      spec.query_spread * spec.cluster_radius / std::sqrt(static_cast<double>(spec.dim));
  std::vector<float> queries;
  queries.reserve(spec.query_count * spec.dim);
  const std::size_t pairs = spec.cluster_count - 1;
  for (std::size_t i = 0; i < spec.query_count; ++i) {
    const std::size_t k = i % pairs;
    std::vector<double> anchor(spec.dim, 0.0);
    for (std::size_t d = 0; d < spec.dim; ++d) {
      anchor[d] = 0.5 * (centers[k][d] + centers[k + 1][d]);
    }
    anchor[1] += lift;
    gaussian_point(anchor, jitter, rng, queries);
  }
  return {VectorStore(spec.dim, std::move(queries)),
          VectorStore(spec.dim, std::move(data)), false};
}

}  // namespace

std::string_view to_string(Generator generator) {
  return kGeneratorNames[static_cast<std::size_t>(generator)];
}

Generator parse_generator(std::string_view name) {
  for (std::size_t i = 0; i < kGeneratorNames.size(); ++i) {
    if (kGeneratorNames[i] == name) return static_cast<Generator>(i);
  }
  throw ConfigError("unknown generator '" + std::string(name) + "'");
}

void WorkloadSpec::validate() const {
  if (generator == Generator::FileBacked) {
    if (data_path.empty() || queries_path.empty()) {
      throw ConfigError("FileBacked workload needs queries_path and data_path");
    }
    return;
  }
  if (dim == 0) throw ConfigError("dim must be positive");
  if (data_count == 0) throw ConfigError("data_count must be positive");
  if (!(cluster_radius > 0.0)) throw ConfigError("cluster_radius must be > 0");
  if (!(cluster_separation >= 0.0)) {
    throw ConfigError("cluster_separation must be >= 0");
  }
  if (generator == Generator::GaussianClusters ||
      generator == Generator::SelfJoin) {
    if (cluster_count == 0) throw ConfigError("cluster_count must be positive");
  }
  if (generator == Generator::OodDisplaced) {
    if (cluster_count < 2) {
      throw ConfigError("OodDisplaced needs at least 2 clusters");
    }
    if (dim < 2) throw ConfigError("OodDisplaced needs dim >= 2");
    if (!(query_spread >= 0.0)) throw ConfigError("query_spread must be >= 0");
  }
}

WorkloadSpec WorkloadSpec::from_keys(const KeyValues& kv) {
  WorkloadSpec spec;
  spec.name = kv.get_string("workload", spec.name);
  spec.generator = parse_generator(
      kv.get_string("generator", std::string(to_string(spec.generator))));
  spec.dim = kv.get_size("dim", spec.dim);
  spec.data_count = kv.get_size("data_count", spec.data_count);
  spec.query_count = kv.get_size("query_count", spec.query_count);
  spec.cluster_count = kv.get_size("cluster_count", spec.cluster_count);
  spec.cluster_radius = kv.get_double("cluster_radius", spec.cluster_radius);
  spec.cluster_separation =
      kv.get_double("cluster_separation", spec.cluster_separation);
  spec.ood_displacement = kv.get_double("ood_displacement", spec.ood_displacement);
  spec.query_spread = kv.get_double("query_spread", spec.query_spread);
  spec.rng_seed = kv.get_u64("rng_seed", spec.rng_seed);
  spec.queries_path = kv.get_string("queries_path", spec.queries_path);
  spec.data_path = kv.get_string("data_path", spec.data_path);
  spec.validate();
  return spec;
}

Workload generate(const WorkloadSpec& spec) {
  spec.validate();
  Sampler rng(spec.rng_seed);
  switch (spec.generator) {
    case Generator::GaussianClusters: {
      const auto centers = cube_centers(spec, rng);
      VectorStore data = mixture(spec, centers, spec.data_count, rng);
      VectorStore queries = mixture(spec, centers, spec.query_count, rng);
      return {std::move(queries), std::move(data), false};
    }
    case Generator::SelfJoin: {
      const auto centers = cube_centers(spec, rng);
      Workload w;
      w.data = mixture(spec, centers, spec.data_count, rng);
      w.queries = w.data;
      w.self_join = true;
      return w;
    }
    case Generator::UniformCube: {
      auto cube = [&](std::size_t count) {
        std::vector<float> values(count * spec.dim);
        for (float& x : values) x = static_cast<float>(rng.uniform());
        return VectorStore(spec.dim, std::move(values));
      };
      VectorStore data = cube(spec.data_count);
      VectorStore queries = cube(spec.query_count);
      return {std::move(queries), std::move(data), false};
    }
    case Generator::OodDisplaced:
      return ood_displaced(spec, rng);
    case Generator::FileBacked:
      return {load_vectors(spec.queries_path), load_vectors(spec.data_path),
              false};
  }
  throw ConfigError("unhandled generator");
}

}  // namespace vjoin
