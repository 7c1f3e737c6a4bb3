#include <gtest/gtest.h>

#include "remote_div/costs.hpp"
#include "remote_div/pseudoforest_offline.hpp"
#include "remote_div/report.hpp"
#include "test_util.hpp"

using namespace rdiv;
using testutil::line;

TEST(Report, FrameOrder) {
  Json body;
  body["zeta"] = 1;
  body["alpha"] = 2;
  const auto r = make_report("solve", Json{{"k", 2}}, body);
  std::vector<std::string> keys;
  for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "command", "flags", "zeta", "alpha"}));
  EXPECT_EQ(r["schema_version"], kSchemaVersion);
  EXPECT_EQ(r["command"], "solve");
}

TEST(Report, CanonicalizeDropsTimingAtAnyDepth) {
  Json j = Json::parse(
      R"({"elapsed_ms":3,"a":{"timings":{"x":1},"b":[{"elapsed_ms":2,"c":5}]},"d":1})");
  const auto c = canonicalize(j);
  EXPECT_EQ(c.dump(), R"({"a":{"b":[{"c":5}]},"d":1})");
}

TEST(Report, SolutionAndCostJson) {
  DiversitySolution s;
  s.indices = {1, 4};
  s.value = 2.5;
  s.algorithm = "brute_force";
  s.objective = Objective::RemotePseudoforest;
  const auto j = to_json(s);
  EXPECT_EQ(j["objective"], "pseudoforest");
  EXPECT_EQ(j["indices"], Json::array({1, 4}));
  const auto m = to_json(mwm_exact(line({0, 1, 10, 11}), IndexList{0, 1, 2, 3}));
  EXPECT_EQ(m["value"], 2.0);
  EXPECT_EQ(m["witness"].size(), 2u);
}

TEST(Report, NetTreeJsonKeys) {
  const auto tree = make_tree({3, 3, 5}, {0, 1, 1}, {kNoParent, 0, 0});
  const auto j = net_tree_json(tree);
  EXPECT_EQ(j["parents"]["5@1"], "3@0");
  EXPECT_EQ(j["parents"]["3@1"], "3@0");
  EXPECT_EQ(j["levels"][1], Json::array({3, 5}));
}

TEST(Report, BoundKindNames) {
  EXPECT_EQ(bound_kind_name(BoundKind::Exact), "exact");
  EXPECT_EQ(bound_kind_name(BoundKind::LowerBound), "lower_bound");
}

TEST(Report, SchemaShape) {
  const auto s = report_schema();
  EXPECT_EQ(s["$schema"], "http://json-schema.org/draft-07/schema#");
  EXPECT_EQ(s["required"], Json::array({"schema_version", "command", "flags"}));
  EXPECT_TRUE(s["properties"].contains("suites"));
}
