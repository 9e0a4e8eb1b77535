#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "vjoin/errors.hpp"
#include "vjoin/graph_build.hpp"
#include "vjoin/graph_io.hpp"

namespace vjoin {
namespace {

std::string serialize(const ProximityGraph& g) {
  std::ostringstream out(std::ios::binary);
  write_index(out, g);
  return out.str();
}

ProximityGraph parse(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  return read_index(in);
}

TEST(IndexIo, RoundTripPlain) {
  const VectorStore s = testing::random_uniform(120, 5, 1);
  const ProximityGraph g = build_index(s, {});
  const std::string bytes = serialize(g);
  const ProximityGraph back = parse(bytes);
  EXPECT_EQ(back, g);
  EXPECT_EQ(serialize(back), bytes);
}

TEST(IndexIo, RoundTripMerged) {
  const VectorStore d = testing::random_uniform(80, 3, 2);
  const VectorStore q = testing::random_uniform(15, 3, 3);
  const ProximityGraph g = build_merged_index(q, d, {});
  const ProximityGraph back = parse(serialize(g));
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.query_count(), 15u);
}

TEST(IndexIo, RoundTripEmpty) {
  ProximityGraph g;
  g.dimension = 7;
  EXPECT_EQ(parse(serialize(g)), g);
}

TEST(IndexIo, HeaderLayout) {
  const ProximityGraph g = build_index(testing::from_rows({{0}, {1}}), {});
  const std::string b = serialize(g);
  ASSERT_GE(b.size(), 21u);
  EXPECT_EQ(b.substr(0, 4), "VJIX");
  EXPECT_EQ(b[4], 1);  // version, little-endian
  EXPECT_EQ(b[8], 2);  // node count
  EXPECT_EQ(b[12], 1);  // dimension
  EXPECT_EQ(b[20], 0);  // has_roles
}

TEST(IndexIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "vjoin_graph_io_test.vjix";
  const VectorStore s = testing::random_uniform(50, 4, 6);
  const ProximityGraph g = build_index(s, {});
  save_index(path, g);
  EXPECT_EQ(load_index(path), g);
  EXPECT_NO_THROW(check_index_matches(g, s));
  EXPECT_THROW(check_index_matches(g, testing::random_uniform(49, 4, 6)), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_index(path), FormatError);
}

TEST(IndexIo, TruncationIsFormatError) {
  const std::string b = serialize(build_index(testing::random_uniform(40, 3, 4), {}));
  for (std::size_t n = 0; n < b.size(); ++n) {
    EXPECT_THROW(parse(b.substr(0, n)), FormatError) << "prefix " << n;
  }
}

TEST(IndexIo, TrailingBytesRejected) {
  const std::string b = serialize(build_index(testing::random_uniform(10, 3, 4), {}));
  EXPECT_THROW(parse(b + "x"), FormatError);
}

TEST(IndexIo, BadMagicIsVersionError) {
  std::string b = serialize(build_index(testing::random_uniform(10, 3, 4), {}));
  b[0] = 'X';
  EXPECT_THROW(parse(b), VersionError);
}

TEST(IndexIo, UnknownVersionIsVersionError) {
  std::string b = serialize(build_index(testing::random_uniform(10, 3, 4), {}));
  b[4] = 9;
  EXPECT_THROW(parse(b), VersionError);
}

TEST(IndexIo, CorruptFieldsAreFormatErrors) {
  const std::string good = serialize(build_index(testing::random_uniform(10, 3, 4), {}));
  std::string b = good;
  b[16] = 50;  // entry point beyond node count
  EXPECT_THROW(parse(b), FormatError);
  b = good;
  b[20] = 7;  // has_roles
  EXPECT_THROW(parse(b), FormatError);
}

TEST(IndexIo, RandomCorruptionNeverCrashes) {
  const std::string good = serialize(build_index(testing::random_uniform(30, 3, 4), {}));
  std::mt19937 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string b = good;
    const int flips = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < flips; ++i) {
      b[rng() % b.size()] = static_cast<char>(rng() & 0xFF);
    }
    try {
      const ProximityGraph g = parse(b);
      for (const auto& adj : g.adjacency) {
        for (VectorId v : adj) ASSERT_LT(v, g.size());
      }
    } catch (const FormatError&) {
    }
  }
}

}  // namespace
}  // namespace vjoin
