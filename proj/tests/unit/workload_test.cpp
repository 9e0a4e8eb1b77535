#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "test_util.hpp"
#include "vjoin/dataset_io.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/oracle.hpp"
#include "vjoin/workload.hpp"

namespace vjoin {
namespace {

WorkloadSpec small(Generator g) {
  WorkloadSpec s;
  s.generator = g;
  s.dim = 8;
  s.data_count = 600;
  s.query_count = 60;
  s.cluster_count = 3;
  return s;
}

TEST(Workload, SameSeedSameInstance) {
  for (Generator g : {Generator::GaussianClusters, Generator::UniformCube,
                      Generator::OodDisplaced, Generator::SelfJoin}) {
    const Workload a = generate(small(g));
    const Workload b = generate(small(g));
    EXPECT_EQ(a.queries, b.queries) << to_string(g);
    EXPECT_EQ(a.data, b.data) << to_string(g);
    WorkloadSpec other = small(g);
    other.rng_seed = 7;
    EXPECT_NE(generate(other).data, a.data) << to_string(g);
  }
}

TEST(Workload, ShapesAndRoles) {
  const Workload w = generate(small(Generator::GaussianClusters));
  EXPECT_EQ(w.data.size(), 600u);
  EXPECT_EQ(w.queries.size(), 60u);
  EXPECT_EQ(w.data.dimension(), 8u);
  EXPECT_FALSE(w.self_join);
  const Workload s = generate(small(Generator::SelfJoin));
  EXPECT_TRUE(s.self_join);
  EXPECT_EQ(&s.query_side(), &s.data);
  const Workload u = generate(small(Generator::UniformCube));
  for (float x : u.data.values()) {
    EXPECT_GE(x, 0.0f);
    EXPECT_LT(x, 1.0f);
  }
}

TEST(Workload, SingleClusterStaysWithinFourRadii) {
  WorkloadSpec s = small(Generator::GaussianClusters);
  s.cluster_count = 1;
  s.cluster_radius = 2.0;
  s.data_count = 5000;
  const Workload w = generate(s);
  std::vector<float> mean(s.dim, 0.0f);
  for (VectorId i = 0; i < w.data.size(); ++i) {
    for (std::size_t j = 0; j < s.dim; ++j) mean[j] += w.data[i][j] / 5000.0f;
  }
  std::size_t inside = 0;
  double radius_sum = 0.0;
  for (VectorId i = 0; i < w.data.size(); ++i) {
    const double d = testing::reference_distance(w.data[i], mean);
    inside += d <= 4.0 * s.cluster_radius;
    radius_sum += d;
  }
  EXPECT_GE(inside * 100, w.data.size() * 99);
  EXPECT_NEAR(radius_sum / 5000.0, s.cluster_radius, 0.2 * s.cluster_radius);
}

TEST(Workload, OodQueriesFarFromData) {
  WorkloadSpec s = small(Generator::OodDisplaced);
  s.ood_displacement = 10.0;
  const Workload w = generate(s);
  std::vector<double> nn;
  for (VectorId i = 0; i < w.data.size(); ++i) {
    const auto top = oracle::exact_topk(w.data, w.data[i], 2);
    nn.push_back(testing::reference_distance(w.data[i], w.data[top[1]]));
  }
  std::nth_element(nn.begin(), nn.begin() + nn.size() / 2, nn.end());
  const double median = nn[nn.size() / 2];
  for (VectorId x = 0; x < w.queries.size(); ++x) {
    const auto top = oracle::exact_topk(w.data, w.queries[x], 1);
    EXPECT_GT(testing::reference_distance(w.queries[x], w.data[top[0]]), 3.0 * median);
  }
}

TEST(Workload, FromKeysAndValidation) {
  std::istringstream text(
      "workload = demo\ngenerator = UniformCube\ndim = 3\ndata_count = 10\n"
      "query_count = 2\nrng_seed = 9\n");
  const auto kv = KeyValues::parse(text);
  const WorkloadSpec s = WorkloadSpec::from_keys(kv);
  EXPECT_NO_THROW(kv.reject_unused());
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(s.generator, Generator::UniformCube);
  EXPECT_EQ(s.rng_seed, 9u);

  WorkloadSpec bad = small(Generator::OodDisplaced);
  bad.cluster_count = 1;
  EXPECT_THROW(generate(bad), ConfigError);
  bad = small(Generator::GaussianClusters);
  bad.dim = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_THROW(parse_generator("Blobs"), ConfigError);
  bad = small(Generator::FileBacked);
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Workload, FileBacked) {
  const auto dir = std::filesystem::temp_directory_path();
  const VectorStore q(2, {1, 2});
  const VectorStore d(2, {3, 4, 5, 6});
  save_fvecs(dir / "vjoin_wl_q.fvecs", q);
  save_bvecs(dir / "vjoin_wl_d.bvecs", d);
  WorkloadSpec s;
  s.generator = Generator::FileBacked;
  s.queries_path = (dir / "vjoin_wl_q.fvecs").string();
  s.data_path = (dir / "vjoin_wl_d.bvecs").string();
  const Workload w = generate(s);
  EXPECT_EQ(w.queries, q);
  EXPECT_EQ(w.data, d);
  std::filesystem::remove(dir / "vjoin_wl_q.fvecs");
  std::filesystem::remove(dir / "vjoin_wl_d.bvecs");
}

}  // namespace
}  // namespace vjoin
