#include <gtest/gtest.h>

#include <cmath>

#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"

using namespace rdiv;

TEST(Generators, UniformCubeDeterministicAndInRange) {
  const auto a = uniform_cube(50, 3, 9);
  const auto b = generate(GenKind::UniformCube, 50, 3, 9);
  const auto c = uniform_cube(50, 3, 10);
  bool differs = false;
  for (Index i = 0; i < 50; ++i) {
    for (std::size_t d = 0; d < 3; ++d) {
      EXPECT_EQ(a.coords(i)[d], b.coords(i)[d]);
      EXPECT_GE(a.coords(i)[d], 0.0);
      EXPECT_LT(a.coords(i)[d], 1.0);
      differs |= a.coords(i)[d] != c.coords(i)[d];
    }
  }
  EXPECT_TRUE(differs);
}

TEST(Generators, ClustersLayout) {
  const auto ps = generate(GenKind::Clusters, 12, 2, 1, "c=3,sep=50,width=2");
  for (Index i = 0; i < 12; ++i) {
    const double cx = static_cast<double>(i % 3) * 50.0;
    EXPECT_LE(std::abs(ps.coords(i)[0] - cx), 1.0);
    EXPECT_LE(std::abs(ps.coords(i)[1]), 1.0);
  }
  EXPECT_THROW(generate(GenKind::Clusters, 5, 2, 1, "c=0"), PreconditionError);
  EXPECT_THROW(generate(GenKind::Clusters, 5, 2, 1, "q=1"), PreconditionError);
  EXPECT_THROW(generate(GenKind::Clusters, 5, 2, 1, "c=x"), PreconditionError);
}

TEST(Generators, GridRowMajor) {
  const auto ps = generate(GenKind::Grid, 5, 2, 0);
  ASSERT_EQ(ps.size(), 5u);
  EXPECT_DOUBLE_EQ(ps.distance(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(ps.distance(0, 3), 1.0);
  EXPECT_DOUBLE_EQ(ps.distance(0, 4), std::sqrt(2.0));
}

TEST(Generators, LinePositions) {
  const auto ps = generate(GenKind::Line, 0, 1, 0, "0, 1,10");
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_DOUBLE_EQ(ps.distance(1, 2), 9.0);
  EXPECT_THROW(generate(GenKind::Line, 4, 1, 0, "0,1,10"), PreconditionError);
  EXPECT_THROW(generate(GenKind::Line, 0, 1, 0, ""), PreconditionError);
}

TEST(Generators, Names) {
  for (auto k : {GenKind::UniformCube, GenKind::Clusters, GenKind::Grid, GenKind::Line}) {
    EXPECT_EQ(parse_gen_kind(gen_kind_name(k)), k);
  }
  EXPECT_THROW(parse_gen_kind("spiral"), PreconditionError);
  EXPECT_THROW(uniform_cube(0, 2, 0), PreconditionError);
  EXPECT_THROW(uniform_cube(3, 0, 0), PreconditionError);
}
