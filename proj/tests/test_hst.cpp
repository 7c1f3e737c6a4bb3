#include <gtest/gtest.h>

#include <cmath>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/hst.hpp"
#include "remote_div/rng.hpp"
#include "remote_div/verify.hpp"
#include "test_util.hpp"

using namespace rdiv;
using testutil::line;

TEST(HstBuild, SplitsWhereThresholdDrops) {
  const auto ps = line({0, 0.6});
  const auto h = build_hst(ps, IndexList{0, 1}, 2);
  EXPECT_EQ(h.count, (std::vector<std::size_t>{1, 2, 2}));
  EXPECT_DOUBLE_EQ(hst_distance(h, 0, 1), 2.0 * (1.0 - 0.25));
  EXPECT_DOUBLE_EQ(hst_distance(h, 1, 1), 0.0);
  EXPECT_EQ(h.parent[1], (std::vector<std::size_t>{0, 0}));
}

TEST(HstBuild, RootLcaWithDepthOne) {
  const auto h = build_hst(line({0, 0.6}), IndexList{0, 1}, 1);
  EXPECT_DOUBLE_EQ(hst_distance(h, 0, 1), 1.0);
}

TEST(HstBuild, SinglePoint) {
  const auto h = embed_hst(line({3}), IndexList{0});
  EXPECT_EQ(h.points, (IndexList{0}));
  EXPECT_DOUBLE_EQ(h.scale, 1.0);
  for (std::size_t c : h.count) EXPECT_EQ(c, 1u);
}

TEST(HstBuild, Errors) {
  const auto ps = line({0, 2});
  EXPECT_THROW(build_hst(ps, IndexList{0, 1}, 0), PreconditionError);
  EXPECT_THROW(build_hst(ps, IndexList{}, 3), PreconditionError);
  EXPECT_THROW(build_hst(ps, IndexList{0, 1}, 3), PreconditionError);
  EXPECT_THROW(build_hst(ps, IndexList{0, 0}, 3, 0.1), PreconditionError);
  const auto h = build_hst(ps, IndexList{0, 1}, 3, 0.5);
  EXPECT_THROW(h.position(7), PreconditionError);
}

TEST(HstBuild, LevelsRefine) {
  const auto ps = uniform_cube(30, 2, 4);
  IndexList all(30);
  for (Index i = 0; i < 30; ++i) all[i] = i;
  const auto h = embed_hst(ps, all, 12);
  EXPECT_EQ(h.count[0], 1u);
  for (std::size_t t = 1; t <= h.depth; ++t) {
    EXPECT_GE(h.count[t], h.count[t - 1]);
    for (std::size_t a = 0; a < 30; ++a) {
      EXPECT_EQ(h.parent[t][h.component[t][a]], h.component[t - 1][a]);
    }
  }
}

TEST(HstDistance, WithinFourTimesScaledMetric) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(61, t);
    const std::size_t n = 2 + rng.below(15);
    const auto ps = uniform_cube(n, 2, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto h = embed_hst(ps, all);
    for (Index a = 0; a < n; ++a) {
      for (Index b = a + 1; b < n; ++b) {
        const double rho = h.scale * ps(a, b);
        EXPECT_LE(hst_distance(h, a, b), 4.0 * rho + 1e-12);
      }
    }
  }
}

TEST(OddCount, SmallCases) {
  const auto h = build_hst(line({0, 0.6}), IndexList{0, 1}, 1);
  EXPECT_DOUBLE_EQ(hst_mwm_odd_count(h, IndexList{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(hst_mwm_odd_count(h, IndexList{}), 0.0);
  EXPECT_EQ(hst_odd_counts(h, IndexList{0, 1}), (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(hst_mwm_odd_count(h, IndexList{0}), PreconditionError);
}

TEST(OddCount, EqualsMatchingUnderTreeMetric) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(62, t);
    const std::size_t n = 2 + rng.below(7);
    const auto ps = uniform_cube(n, 2, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto h = embed_hst(ps, all, 20);
    std::vector<double> tree(n * n);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) tree[a * n + b] = hst_distance(h, a, b);
    }
    const auto tree_ps = PointSet::from_matrix(n, tree);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      IndexList z;
      for (Index i = 0; i < n; ++i) {
        if (mask >> i & 1u) z.push_back(i);
      }
      if (z.size() % 2) continue;
      EXPECT_NEAR(hst_mwm_odd_count(h, z), testutil::matching_by_permutations(tree_ps, z),
                  1e-9);
    }
  }
}

TEST(RandomSubset, TwoPointsGiveQuarter) {
  const auto s = verify_random_subset_bound(line({0, 2}), IndexList{0, 1}, 20000, 5);
  EXPECT_DOUBLE_EQ(s.max_even, 2.0);
  EXPECT_NEAR(s.mean, 0.5, 4.0 * s.stderr_);
  EXPECT_NEAR(s.ratio, 0.25, 0.02);
  EXPECT_LE(s.max_m_drop, 1u);
}

TEST(RandomSubset, CoincidentPointsGiveZero) {
  const auto s = verify_random_subset_bound(line({1, 1, 1, 1}), IndexList{0, 1, 2, 3}, 200, 1);
  EXPECT_DOUBLE_EQ(s.mean, 0.0);
  EXPECT_DOUBLE_EQ(s.ratio, 1.0);
}

TEST(RandomSubset, ThreadCountDoesNotMatter) {
  const auto ps = uniform_cube(9, 2, 3);
  IndexList y{0, 1, 2, 3, 4, 5, 6, 7, 8};
  const auto a = verify_random_subset_bound(ps, y, 500, 8, 1);
  const auto b = verify_random_subset_bound(ps, y, 500, 8, 3);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.max_m_drop, b.max_m_drop);
  EXPECT_THROW(verify_random_subset_bound(ps, IndexList{}, 5, 0), PreconditionError);
  EXPECT_THROW(verify_random_subset_bound(ps, y, 0, 0), PreconditionError);
}

TEST(Suites, PassOnFreshSeeds) {
  for (const auto& r : run_verify("all", 2024, 30, 400)) {
    EXPECT_EQ(r.failures, 0u) << r.suite;
    EXPECT_GT(r.checks, 0u) << r.suite;
  }
  EXPECT_THROW(run_verify("nope", 0, 1, 1), PreconditionError);
}
