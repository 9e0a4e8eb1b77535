#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "test_util.hpp"
#include "vjoin/counters.hpp"
#include "vjoin/distance.hpp"
#include "vjoin/errors.hpp"

namespace vjoin {
namespace {

TEST(Distance, IdenticalVectorsAreZero) {
  const std::array<float, 3> a{0, 0, 0};
  EXPECT_EQ(l2_distance(a, a), 0.0f);
}

TEST(Distance, RightTriangle) {
  const std::array<float, 2> a{3, 4};
  const std::array<float, 2> b{0, 0};
  EXPECT_EQ(l2_distance(a, b), 5.0f);
  EXPECT_EQ(l2_squared(a, b), 25.0f);
}

TEST(Distance, MatchesScalarReference) {
  const VectorStore s = testing::random_gaussian(200, 8, 7);
  for (VectorId i = 0; i < 100; ++i) {
    const double expected = testing::reference_distance(s[2 * i], s[2 * i + 1]);
    const double got = l2_distance(s[2 * i], s[2 * i + 1]);
    EXPECT_NEAR(got, expected, 1e-5 * expected) << "pair " << i;
  }
}

TEST(Distance, Symmetric) {
  const VectorStore s = testing::random_uniform(20, 13, 3);
  for (VectorId i = 0; i + 1 < s.size(); ++i) {
    EXPECT_EQ(l2_distance(s[i], s[i + 1]), l2_distance(s[i + 1], s[i]));
  }
}

TEST(Distance, StoreOverloadCountsOnce) {
  const VectorStore s = testing::random_uniform(4, 3, 1);
  Counters c;
  const float d = distance(s, 0, s, 1, c);
  EXPECT_EQ(c.distance_computations, 1u);
  EXPECT_EQ(d, l2_distance(s[0], s[1]));
}

TEST(Distance, StoreOverloadRejectsDimensionMismatch) {
  const VectorStore a = testing::random_uniform(2, 3, 1);
  const VectorStore b = testing::random_uniform(2, 4, 1);
  Counters c;
  EXPECT_THROW(distance(a, 0, b, 0, c), ConfigError);
}

TEST(ThresholdCheck, StrictInequality) {
  EXPECT_FALSE(threshold_check(0.0f, 0.0f));
  EXPECT_TRUE(threshold_check(0.0f, 0.1f));
  EXPECT_FALSE(threshold_check(0.25f, 0.25f));
  EXPECT_TRUE(threshold_check(std::nextafter(0.25f, 0.0f), 0.25f));
}

TEST(Counters, AccumulateAndCompare) {
  Counters a;
  a.distance_computations = 3;
  a.greedy_pops = 1;
  a.bfs_time = Counters::Duration{5};
  Counters b;
  b.distance_computations = 4;
  b.cache_entries = 2;
  b.bfs_time = Counters::Duration{7};
  a += b;
  EXPECT_EQ(a.distance_computations, 7u);
  EXPECT_EQ(a.cache_entries, 2u);
  EXPECT_EQ(a.bfs_time.count(), 12);
  Counters c = a;
  c.other_time = Counters::Duration{100};
  EXPECT_TRUE(a.same_counts(c));
  c.bfs_pops = 1;
  EXPECT_FALSE(a.same_counts(c));
}

}  // namespace
}  // namespace vjoin
