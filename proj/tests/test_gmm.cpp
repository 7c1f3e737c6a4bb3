#include <gtest/gtest.h>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/gmm.hpp"
#include "remote_div/rng.hpp"
#include "test_util.hpp"

using namespace rdiv;
using testutil::line;

TEST(Gmm, LineExample) {
  const auto ps = line({0, 10, 3, 6});
  const auto g = gmm(ps, 3);
  EXPECT_EQ(g.centers, (IndexList{0, 1, 3}));
  EXPECT_DOUBLE_EQ(g.radius, 3.0);
  EXPECT_EQ(g.step_radii, (std::vector<double>{10.0, 4.0, 3.0}));
}

TEST(Gmm, TiesGoToLowestIndex) {
  const auto ps = line({0, 5, -5, 5});
  EXPECT_EQ(gmm(ps, 2).centers, (IndexList{0, 1}));
  EXPECT_EQ(gmm(ps, 3).centers, (IndexList{0, 1, 2}));
}

TEST(Gmm, SingleCenterAndAllPoints) {
  const auto ps = line({0, 2, 9});
  const auto one = gmm(ps, 1, 1);
  EXPECT_EQ(one.centers, (IndexList{1}));
  EXPECT_DOUBLE_EQ(one.radius, 7.0);
  const auto all = gmm(ps, 3);
  EXPECT_DOUBLE_EQ(all.radius, 0.0);
}

TEST(Gmm, CoincidentPointsAreNotRepeated) {
  const auto ps = line({1, 1, 1});
  const auto g = gmm(ps, 3);
  EXPECT_EQ(g.centers, (IndexList{0, 1, 2}));
  EXPECT_DOUBLE_EQ(g.radius, 0.0);
}

TEST(Gmm, Errors) {
  const auto ps = line({0, 1});
  EXPECT_THROW(gmm(ps, 0), PreconditionError);
  EXPECT_THROW(gmm(ps, 3), PreconditionError);
  EXPECT_THROW(gmm(ps, 1, 2), PreconditionError);
}

TEST(Gmm, CentersSeparatedAndCoverRadius) {
  for (std::uint64_t t = 0; t < 500; ++t) {
    CounterRng rng(21, t);
    const std::size_t n = 2 + rng.below(40);
    const std::size_t k = 1 + rng.below(n);
    const auto ps = uniform_cube(n, 1 + rng.below(3), rng());
    const Index start = rng.below(n);
    const auto g = gmm(ps, k, start);
    ASSERT_EQ(g.centers.size(), k);
    EXPECT_EQ(g.centers[0], start);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        ASSERT_GE(ps(g.centers[a], g.centers[b]), g.radius - 1e-12);
      }
    }
    for (Index x = 0; x < n; ++x) {
      double best = ps(x, g.centers[0]);
      for (Index c : g.centers) best = std::min(best, ps(x, c));
      ASSERT_LE(best, g.radius + 1e-12);
    }
    for (std::size_t p = 1; p < g.step_radii.size(); ++p) {
      ASSERT_LE(g.step_radii[p], g.step_radii[p - 1]);
    }
    if (k >= 2) {
      IndexList sorted = g.centers;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_GE(pf_value(ps, sorted), static_cast<double>(k) * g.radius - 1e-9);
    }
  }
}

TEST(Gmm, Deterministic) {
  const auto ps = uniform_cube(200, 3, 4);
  const auto a = gmm(ps, 12, 7);
  const auto b = gmm(ps, 12, 7);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_EQ(a.radius, b.radius);
}

TEST(Voronoi, LineExample) {
  const auto ps = line({0, 10, 3, 6});
  const auto v = voronoi_partition(ps, IndexList{0, 1});
  EXPECT_EQ(v.cell_of, (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_EQ(v.cells[0], (IndexList{0, 2}));
  EXPECT_EQ(v.cells[1], (IndexList{1, 3}));
}

TEST(Voronoi, TiesGoToLowerRank) {
  const auto ps = line({0, 10, 5});
  const auto v = voronoi_partition(ps, IndexList{1, 0});
  EXPECT_EQ(v.cell_of[2], 0u);
}

TEST(Voronoi, Errors) {
  const auto ps = line({0, 1});
  EXPECT_THROW(voronoi_partition(ps, IndexList{}), PreconditionError);
  EXPECT_THROW(voronoi_partition(ps, IndexList{0, 0}), PreconditionError);
  EXPECT_THROW(voronoi_partition(ps, IndexList{3}), PreconditionError);
}

TEST(Voronoi, EachPointInNearestCell) {
  const auto ps = uniform_cube(300, 2, 9);
  const auto g = gmm(ps, 10);
  const auto v = voronoi_partition(ps, g.centers);
  std::size_t total = 0;
  for (const auto& c : v.cells) total += c.size();
  EXPECT_EQ(total, 300u);
  for (Index x = 0; x < 300; ++x) {
    const double mine = ps(x, g.centers[v.cell_of[x]]);
    for (Index c : g.centers) EXPECT_LE(mine, ps(x, c));
    EXPECT_LE(mine, g.radius + 1e-12);
  }
}
