#include <gtest/gtest.h>

#include <cmath>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/rng.hpp"
#include "test_util.hpp"

using namespace rdiv;
using testutil::line;

namespace {

double witness_total(const PointSet& ps, const SubsetCostReport& r) {
  double v = 0.0;
  for (auto [a, b] : r.witness) v += ps(a, b);
  return v;
}

}  // namespace

TEST(Matching, FourPointsOnLine) {
  const auto ps = line({0, 1, 10, 11});
  const IndexList all{0, 1, 2, 3};
  const auto r = mwm_exact(ps, all);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  ASSERT_EQ(r.witness.size(), 2u);
  std::vector<Edge> sorted = r.witness;
  for (auto& e : sorted) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<Edge>{{0, 1}, {2, 3}}));
  EXPECT_EQ(r.objective, CostKind::Mwm);
}

TEST(Matching, EmptyAndErrors) {
  const auto ps = line({0, 1, 10});
  EXPECT_DOUBLE_EQ(mwm_exact(ps, IndexList{}).value, 0.0);
  EXPECT_THROW(mwm_exact(ps, IndexList{0, 1, 2}), PreconditionError);
  EXPECT_THROW(mwm_exact(ps, IndexList{0, 0}), PreconditionError);
  EXPECT_THROW(mwm_exact(ps, IndexList{0, 7}), PreconditionError);
  const auto big = uniform_cube(22, 2, 1);
  IndexList all(22);
  for (Index i = 0; i < 22; ++i) all[i] = i;
  EXPECT_THROW(mwm_exact(big, all), PreconditionError);
}

TEST(Matching, DpAgreesWithPermutations) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng(11, t);
    const std::size_t n = 2 * (1 + rng.below(4));
    const auto ps = uniform_cube(n, 1 + rng.below(3), rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto r = mwm_exact(ps, all);
    EXPECT_NEAR(r.value, testutil::matching_by_permutations(ps, all), 1e-9) << "t=" << t;
    EXPECT_EQ(witness_total(ps, r), r.value);
  }
}

TEST(Matching, TableCoversEveryEvenMask) {
  const auto ps = uniform_cube(8, 2, 5);
  IndexList all(8);
  for (Index i = 0; i < 8; ++i) all[i] = i;
  const auto dist = dense_distances(ps, all);
  const auto table = matching_table(dist, 8);
  ASSERT_EQ(table.size(), 256u);
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    IndexList s;
    for (Index i = 0; i < 8; ++i) {
      if (mask >> i & 1u) s.push_back(i);
    }
    if (s.size() % 2) {
      EXPECT_TRUE(std::isinf(table[mask]));
    } else {
      EXPECT_NEAR(table[mask], testutil::matching_by_permutations(ps, s), 1e-9);
    }
  }
}

TEST(Spanning, ThreePointsOnLine) {
  const auto ps = line({0, 1, 10});
  const auto r = mst_cost(ps, IndexList{0, 1, 2});
  EXPECT_DOUBLE_EQ(r.value, 10.0);
  EXPECT_EQ(r.witness.size(), 2u);
  EXPECT_DOUBLE_EQ(mst_cost(ps, IndexList{2}).value, 0.0);
  EXPECT_THROW(mst_cost(ps, IndexList{}), PreconditionError);
}

TEST(Spanning, AgreesWithKruskal) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng(12, t);
    const std::size_t n = 2 + rng.below(30);
    const auto ps = uniform_cube(n, 1 + rng.below(4), rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto r = mst_cost(ps, all);
    EXPECT_NEAR(r.value, testutil::mst_by_kruskal(ps, all), 1e-9);
    EXPECT_EQ(witness_total(ps, r), r.value);
  }
}

TEST(Pseudoforest, ThreePointsOnLine) {
  const auto ps = line({0, 1, 10});
  const auto r = pf_cost(ps, IndexList{0, 1, 2});
  EXPECT_DOUBLE_EQ(r.value, 11.0);
  EXPECT_DOUBLE_EQ(pf_value(ps, IndexList{0, 1, 2}), 11.0);
  EXPECT_EQ(r.witness.size(), 3u);
  EXPECT_THROW(pf_cost(ps, IndexList{1}), PreconditionError);
}

TEST(Pseudoforest, CoincidentPointsCostNothing) {
  const auto ps = line({3, 3, 8});
  EXPECT_DOUBLE_EQ(pf_cost(ps, IndexList{0, 1}).value, 0.0);
  EXPECT_DOUBLE_EQ(pf_cost(ps, IndexList{0, 1, 2}).value, 5.0);
}

TEST(Pseudoforest, AgreesWithScan) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng(13, t);
    const std::size_t n = 2 + rng.below(30);
    const auto ps = uniform_cube(n, 2, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const auto r = pf_cost(ps, all);
    EXPECT_NEAR(r.value, testutil::pf_by_scan(ps, all), 1e-9);
    EXPECT_EQ(witness_total(ps, r), r.value);
  }
}

TEST(CostRelations, MatchingBelowSpanningTree) {
  for (std::uint64_t t = 0; t < 30; ++t) {
    CounterRng rng(14, t);
    const std::size_t n = 2 * (1 + rng.below(5));
    const auto ps = uniform_cube(n, 2, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    EXPECT_LE(mwm_exact(ps, all).value, mst_cost(ps, all).value + 1e-9);
  }
}

TEST(CostRelations, SubsetSpanningTreeAtMostTwiceWhole) {
  const auto ps = uniform_cube(9, 2, 77);
  IndexList all(9);
  for (Index i = 0; i < 9; ++i) all[i] = i;
  const double whole = mst_cost(ps, all).value;
  for (std::size_t k = 1; k <= 9; ++k) {
    testutil::for_each_subset(9, k, [&](const IndexList& z) {
      EXPECT_LE(mst_cost(ps, z).value, 2.0 * whole + 1e-9);
    });
  }
}

TEST(CostRelations, DuplicatingAPointLeavesSpanningTreeUnchanged) {
  const auto ps = line({0, 2, 7, 2});
  EXPECT_DOUBLE_EQ(mst_cost(ps, IndexList{0, 1, 2}).value,
                   mst_cost(ps, IndexList{0, 1, 2, 3}).value);
}

TEST(Threshold, ComponentsOnLine) {
  const auto ps = line({0, 1, 10, 11, 30});
  const IndexList all{0, 1, 2, 3, 4};
  const auto c = threshold_components(ps, all, 1.0);
  EXPECT_EQ(c.count, 3u);
  EXPECT_EQ(c.component_of, (std::vector<std::size_t>{0, 0, 1, 1, 2}));
  EXPECT_EQ(threshold_components(ps, all, 0.5).count, 5u);
  EXPECT_EQ(threshold_components(ps, all, 19.0).count, 1u);
  EXPECT_THROW(threshold_components(ps, IndexList{}, 1.0), PreconditionError);
}

TEST(ComponentSum, UnitPair) {
  EXPECT_DOUBLE_EQ(mst_component_sum(line({0, 1}), IndexList{0, 1}), 1.0);
  EXPECT_DOUBLE_EQ(mst_component_sum(line({0, 3}), IndexList{0, 1}), 4.0);
}

TEST(ComponentSum, Errors) {
  EXPECT_THROW(mst_component_sum(line({0, 0, 1}), IndexList{0, 1, 2}), PreconditionError);
  EXPECT_THROW(mst_component_sum(line({0, 1}), IndexList{0}), PreconditionError);
}

TEST(ComponentSum, BracketsSpanningTree) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    CounterRng rng(15, t);
    const std::size_t n = 2 + rng.below(20);
    const auto ps = uniform_cube(n, 2, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    const double s = mst_component_sum(ps, all);
    const double m = testutil::mst_by_kruskal(ps, all);
    EXPECT_LE(m, s * (1 + 1e-12));
    EXPECT_LT(s, 2.0 * m);
  }
}

TEST(ComponentSum, MatchesPowerOfTwoRounding) {
  // Each spanning-tree edge w contributes the smallest power of two >= w.
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(16, t);
    const std::size_t n = 2 + rng.below(10);
    const auto ps = uniform_cube(n, 3, rng());
    IndexList all(n);
    for (Index i = 0; i < n; ++i) all[i] = i;
    double expect = 0.0;
    for (auto [a, b] : mst_cost(ps, all).witness) {
      expect += std::exp2(std::ceil(std::log2(ps(a, b))));
    }
    EXPECT_NEAR(mst_component_sum(ps, all), expect, 1e-9 * expect);
  }
}
