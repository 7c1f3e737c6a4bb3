#include <gtest/gtest.h>

#include <string>

#include "remote_div/costs.hpp"
#include "remote_div/error.hpp"
#include "remote_div/generators.hpp"
#include "remote_div/metric.hpp"
#include "remote_div/rng.hpp"
#include "test_util.hpp"

using namespace rdiv;
using testutil::line;

namespace {

std::string parse_error_of(const std::string& doc, PointFormat f) {
  try {
    load_pointset(doc, f);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Distance, EuclideanThreeFourFive) {
  const auto ps = PointSet::euclidean(2, {0, 0, 3, 4});
  EXPECT_DOUBLE_EQ(ps.distance(0, 1), 5.0);
  EXPECT_DOUBLE_EQ(ps.distance(1, 0), 5.0);
  EXPECT_DOUBLE_EQ(ps.distance(1, 1), 0.0);
}

TEST(Distance, MatrixReadback) {
  const auto ps = PointSet::from_matrix(3, {0, 1, 7, 1, 0, 7.25, 7, 7.25, 0});
  EXPECT_DOUBLE_EQ(ps.distance(1, 2), 7.25);
  EXPECT_EQ(ps.kind(), PointSet::Kind::Matrix);
}

TEST(Distance, OutOfRange) {
  const auto ps = line({0, 1});
  EXPECT_THROW(ps.distance(0, 2), PreconditionError);
  EXPECT_THROW(ps.distance(5, 0), PreconditionError);
}

TEST(Diameter, Examples) {
  EXPECT_DOUBLE_EQ(diameter(line({0, 1, 10})), 10.0);
  EXPECT_DOUBLE_EQ(diameter(line({4})), 0.0);
  EXPECT_DOUBLE_EQ(diameter(line({2, 5.5})), 3.5);
  EXPECT_FALSE(min_pairwise_distance(line({4})).has_value());
  EXPECT_DOUBLE_EQ(*min_pairwise_distance(line({0, 1, 10})), 1.0);
}

TEST(Load, JsonPoints) {
  const auto ps = load_pointset(R"({"dim":1,"points":[[0],[5]]})", PointFormat::Json);
  EXPECT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps.kind(), PointSet::Kind::Euclidean);
  EXPECT_DOUBLE_EQ(ps.distance(0, 1), 5.0);
}

TEST(Load, CsvWithHeaderAndComments) {
  const auto ps = load_pointset("# dim=2\n0,0\n# a comment\n3, 4\n", PointFormat::Csv);
  EXPECT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps.dim(), 2u);
  EXPECT_DOUBLE_EQ(ps.distance(0, 1), 5.0);
}

TEST(Load, AsymmetricMatrixNamesIndices) {
  const auto msg = parse_error_of("0,3\n4,0\n", PointFormat::MatrixCsv);
  EXPECT_NE(msg.find("symmetric"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(0,1)"), std::string::npos) << msg;
}

TEST(Load, TriangleViolationNamesIndices) {
  const auto msg = parse_error_of("0,1,10\n1,0,2\n10,2,0\n", PointFormat::MatrixCsv);
  EXPECT_NE(msg.find("triangle"), std::string::npos) << msg;
  EXPECT_NE(msg.find("d(0,2) = 10"), std::string::npos) << msg;
  EXPECT_NE(msg.find("= 3"), std::string::npos) << msg;
}

TEST(Load, OtherMatrixErrors) {
  EXPECT_NE(parse_error_of("0,-1\n-1,0\n", PointFormat::MatrixCsv).find("negative"),
            std::string::npos);
  EXPECT_NE(parse_error_of("1,2\n2,0\n", PointFormat::MatrixCsv).find("diagonal"),
            std::string::npos);
  EXPECT_NE(parse_error_of("0,1\n1,0,3\n", PointFormat::MatrixCsv).find("row 1"),
            std::string::npos);
  EXPECT_NE(parse_error_of("0,x\nx,0\n", PointFormat::MatrixCsv).find("bad number"),
            std::string::npos);
}

TEST(Load, JsonErrors) {
  EXPECT_FALSE(parse_error_of("{", PointFormat::Json).empty());
  EXPECT_FALSE(parse_error_of(R"({"dim":2,"points":[[0,1],[2]]})", PointFormat::Json).empty());
  EXPECT_FALSE(parse_error_of(R"({"pts":[]})", PointFormat::Json).empty());
}

TEST(Load, ToleranceSnapsNoise) {
  const auto ps = PointSet::from_matrix(2, {0, 1, 1 + 1e-12, 1e-13});
  EXPECT_EQ(ps.distance(0, 1), ps.distance(1, 0));
  EXPECT_EQ(ps.distance(1, 1), 0.0);
}

TEST(Load, FormatNames) {
  EXPECT_EQ(guess_point_format("a/b.json"), PointFormat::Json);
  EXPECT_EQ(guess_point_format("x.matrix.csv"), PointFormat::MatrixCsv);
  EXPECT_EQ(guess_point_format("x.dm.csv"), PointFormat::MatrixCsv);
  EXPECT_EQ(guess_point_format("x.csv"), PointFormat::Csv);
  EXPECT_EQ(parse_point_format("matrix-csv"), PointFormat::MatrixCsv);
  EXPECT_THROW(parse_point_format("xml"), PreconditionError);
}

TEST(RoundTrip, EuclideanIsExact) {
  const auto ps = uniform_cube(25, 3, 8);
  for (auto f : {PointFormat::Json, PointFormat::Csv, PointFormat::MatrixCsv}) {
    const auto back = load_pointset(serialize_pointset(ps, f), f);
    ASSERT_EQ(back.size(), ps.size());
    for (Index i = 0; i < ps.size(); ++i) {
      for (Index j = 0; j < ps.size(); ++j) {
        if (f == PointFormat::MatrixCsv) {
          EXPECT_EQ(back(i, j), ps(i, j));
        } else {
          EXPECT_NEAR(back(i, j), ps(i, j), 1e-12);
        }
      }
    }
  }
}

TEST(RoundTrip, MatrixIsBitExact) {
  const auto ps = uniform_cube(12, 2, 1).materialized(1.0 / 3.0);
  const auto text = serialize_pointset(ps, PointFormat::MatrixCsv);
  const auto back = load_pointset(text, PointFormat::MatrixCsv);
  for (Index i = 0; i < ps.size(); ++i) {
    for (Index j = 0; j < ps.size(); ++j) EXPECT_EQ(back(i, j), ps(i, j));
  }
  EXPECT_EQ(serialize_pointset(back, PointFormat::MatrixCsv), text);
  EXPECT_THROW(serialize_pointset(ps, PointFormat::Json), PreconditionError);
}

TEST(Subset, ViewKeepsIdentity) {
  const auto ps = line({0, 1, 10, 11, 20});
  const IndexList pick{1, 3, 4};
  const auto v = ps.subset(pick);
  EXPECT_TRUE(v.is_view());
  EXPECT_EQ(v.size(), 3u);
  EXPECT_EQ(v.global_id(2), 4u);
  EXPECT_DOUBLE_EQ(v(0, 1), 10.0);
  const IndexList inner{0, 2};
  const auto vv = v.subset(inner);
  EXPECT_EQ(vv.global_id(1), 4u);
  EXPECT_DOUBLE_EQ(vv(0, 1), 19.0);
  const auto m = vv.materialized();
  EXPECT_FALSE(m.is_view());
  EXPECT_EQ(m.global_id(1), 1u);
}

TEST(Triangle, HoldsOnRandomSets) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto ps = uniform_cube(50, 3, t);
    for (Index i = 0; i < 50; ++i) {
      for (Index j = 0; j < 50; ++j) {
        for (Index l = 0; l < 50; ++l) {
          ASSERT_LE(ps(i, l), ps(i, j) + ps(j, l) + 1e-9);
        }
      }
    }
  }
}

TEST(Clamp, Examples) {
  const auto ps = line({0, 0.001, 5.001});
  const auto c = clamp_metric(ps, 0.4, 4);
  EXPECT_DOUBLE_EQ(c.floor(), 0.1);
  EXPECT_DOUBLE_EQ(c(0, 1), 0.1);
  EXPECT_DOUBLE_EQ(c(1, 2), 5.0);
  EXPECT_DOUBLE_EQ(c(2, 2), 0.0);
  EXPECT_THROW(clamp_metric(ps, 0.0, 4), PreconditionError);
  EXPECT_THROW(clamp_metric(ps, 1.0, 0), PreconditionError);
}

TEST(Clamp, PreservesTriangleInequality) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    CounterRng rng(3, t);
    const auto ps = uniform_cube(50, 2, rng());
    const auto c = clamp_metric(ps, 0.5 + rng.uniform(), 3);
    for (Index i = 0; i < 50; ++i) {
      for (Index j = 0; j < 50; ++j) {
        for (Index l = 0; l < 50; ++l) ASSERT_LE(c(i, l), c(i, j) + c(j, l) + 1e-9);
      }
    }
    const auto m = c.to_pointset();
    EXPECT_DOUBLE_EQ(m(4, 9), c(4, 9));
  }
}

TEST(Clamp, PseudoforestChangesByAtMostC) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    CounterRng rng(4, t);
    const std::size_t n = 6 + rng.below(5);
    const std::size_t k = 2 + rng.below(n - 2);
    const auto ps = uniform_cube(n, 2, rng());
    const double c = 0.05 + rng.uniform() * 0.2;
    const auto clamped = clamp_metric(ps, c, k).to_pointset();
    testutil::for_each_subset(n, k, [&](const IndexList& s) {
      const double base = pf_value(ps, s);
      const double after = pf_value(clamped, s);
      EXPECT_GE(after, base - 1e-12);
      EXPECT_LE(after, base + c + 1e-12);
    });
  }
}

TEST(RunConfig, Validation) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.epsilon = 0.0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.epsilon = 1.0;
  cfg.k = 0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
  cfg.k = 2;
  cfg.repeats = 0;
  EXPECT_THROW(cfg.validate(), PreconditionError);
}

TEST(RunConfig, GmmStartResolution) {
  RunConfig cfg;
  cfg.gmm_start = Index{3};
  EXPECT_EQ(resolve_gmm_start(cfg, 10), 3u);
  EXPECT_THROW(resolve_gmm_start(cfg, 3), PreconditionError);
  cfg.gmm_start.reset();
  cfg.seed = 42;
  const Index a = resolve_gmm_start(cfg, 10);
  EXPECT_LT(a, 10u);
  EXPECT_EQ(resolve_gmm_start(cfg, 10), a);
}

TEST(Objective, Names) {
  EXPECT_EQ(parse_objective("matching"), Objective::RemoteMatching);
  EXPECT_EQ(parse_objective("pseudoforest"), Objective::RemotePseudoforest);
  EXPECT_EQ(objective_name(Objective::RemotePseudoforest), "pseudoforest");
  EXPECT_THROW(parse_objective("clique"), PreconditionError);
}
