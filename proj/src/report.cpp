#include "remote_div/report.hpp"

#include <string>

namespace rdiv {

std::string_view bound_kind_name(BoundKind b) noexcept {
  return b == BoundKind::Exact ? "exact" : "lower_bound";
}

namespace {

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [a, b] : edges) out.push_back(Json::array({a, b}));
  return out;
}

std::string node_key(const NetTree& tree, std::size_t u) {
  return std::to_string(tree.nodes[u].point) + "@" + std::to_string(tree.nodes[u].level);
}

}  // namespace

Json to_json(const DiversitySolution& s) {
  Json j;
  j["algorithm"] = s.algorithm;
  j["objective"] = objective_name(s.objective);
  j["indices"] = s.indices;
  j["value"] = s.value;
  j["seed"] = s.seed;
  j["elapsed_ms"] = s.elapsed_ms;
  return j;
}

Json to_json(const SubsetCostReport& r) {
  Json j;
  j["objective"] = cost_kind_name(r.objective);
  j["value"] = r.value;
  j["subset"] = r.subset;
  j["witness"] = edges_json(r.witness);
  return j;
}

Json to_json(const GmmResult& g) {
  Json j;
  j["centers"] = g.centers;
  j["radius"] = g.radius;
  j["step_radii"] = g.step_radii;
  return j;
}

Json to_json(const Coreset& c) {
  Json j;
  j["part"] = c.part;
  j["k"] = c.k;
  j["objective"] = c.kind == CoresetKind::Matching ? "matching" : "pseudoforest";
  j["passthrough"] = c.passthrough;
  j["indices"] = c.indices;
  j["global_ids"] = c.global_ids;
  Json blocks = Json::object();
  for (const auto& [name, list] : c.blocks) blocks[name] = list;
  j["blocks"] = std::move(blocks);
  return j;
}

Json to_json(const MatchingOfflineTrace& t) {
  Json j;
  j["gmm"] = to_json(t.gmm);
  j["cells"] = t.partition.cells;
  j["z_subset"] = t.z_subset;
  j["w_set"] = t.w_set;
  j["chosen"] = t.chosen == MatchingChoice::Centers ? "Y" : "W";
  j["centers_value"] = t.centers_value;
  j["filled_value"] = t.filled_value;
  j["value"] = t.value;
  j["best_trial"] = t.best_trial;
  return j;
}

Json to_json(const PipelineReport& r) {
  Json j;
  j["objective"] = objective_name(r.objective);
  j["k"] = r.k;
  j["m"] = r.m;
  j["epsilon"] = r.epsilon;
  j["strategy"] = split_strategy_name(r.strategy);
  j["seed"] = r.seed;
  j["parts"] = r.parts;
  Json cs = Json::array();
  for (const auto& c : r.coresets) cs.push_back(to_json(c));
  j["coresets"] = std::move(cs);
  j["coreset_sizes"] = r.coreset_sizes;
  j["union_size"] = r.union_ids.size();
  j["union"] = r.union_ids;
  j["value_on_union"] = r.on_union.value;
  j["union_solution"] = to_json(r.on_union);
  j["lower_bound"] = r.lower_bound;
  j["bound_kind"] = bound_kind_name(r.lower_bound ? BoundKind::LowerBound : BoundKind::Exact);
  if (r.oracle) {
    j["oracle_value"] = r.oracle->value;
    j["oracle_solution"] = to_json(*r.oracle);
    j["ratio"] = *r.ratio;
  } else {
    j["oracle_value"] = nullptr;
    j["ratio"] = nullptr;
  }
  j["timings"] = r.timings;
  return j;
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["suite"] = r.suite;
  j["instances"] = r.instances;
  j["checks"] = r.checks;
  j["failures"] = r.failures;
  j["passed"] = r.failures == 0;
  j["metrics"] = r.metrics;
  j["notes"] = r.notes;
  return j;
}

Json net_tree_json(const NetTree& tree) {
  Json j;
  j["levels"] = tree.levels;
  Json parents = Json::object();
  for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
    if (tree.nodes[u].parent == kNoParent) continue;
    parents[node_key(tree, u)] = node_key(tree, tree.nodes[u].parent);
  }
  j["parents"] = std::move(parents);
  return j;
}

Json make_report(std::string_view command, const Json& flags, const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["flags"] = flags;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json report_schema() {
  const Json index_list = {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 0}}}};
  const Json solution = {
      {"type", "object"},
      {"required", {"algorithm", "objective", "indices", "value"}},
      {"properties",
       {{"algorithm", {{"type", "string"}}},
        {"objective", {{"enum", {"matching", "pseudoforest"}}}},
        {"indices", index_list},
        {"value", {{"type", "number"}}},
        {"seed", {{"type", "integer"}}},
        {"elapsed_ms", {{"type", "number"}}}}}};
  const Json coreset = {
      {"type", "object"},
      {"required", {"part", "k", "objective", "indices", "blocks"}},
      {"properties",
       {{"part", {{"type", "integer"}}},
        {"k", {{"type", "integer"}}},
        {"objective", {{"enum", {"matching", "pseudoforest"}}}},
        {"passthrough", {{"type", "boolean"}}},
        {"indices", index_list},
        {"global_ids", index_list},
        {"blocks", {{"type", "object"}, {"additionalProperties", index_list}}}}}};
  const Json suite = {
      {"type", "object"},
      {"required", {"suite", "instances", "checks", "failures", "passed"}},
      {"properties",
       {{"suite", {{"enum", {"hst", "mstcc", "lemma42"}}}},
        {"instances", {{"type", "integer"}}},
        {"checks", {{"type", "integer"}}},
        {"failures", {{"type", "integer"}}},
        {"passed", {{"type", "boolean"}}},
        {"metrics", {{"type", "object"}}},
        {"notes", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}};
  Json s;
  s["$schema"] = "http://json-schema.org/draft-07/schema#";
  s["title"] = "remote-div report";
  s["type"] = "object";
  s["required"] = {"schema_version", "command", "flags"};
  s["properties"] = {
      {"schema_version", {{"const", kSchemaVersion}}},
      {"command", {{"enum", {"gen", "solve", "coreset", "compose", "eval", "verify"}}}},
      {"flags", {{"type", "object"}}},
      {"elapsed_ms", {{"type", "number"}}},
      {"timings", {{"type", "object"}, {"additionalProperties", {{"type", "number"}}}}},
      {"bound_kind", {{"enum", {"exact", "lower_bound"}}}},
      {"lower_bound", {{"type", "boolean"}}},
      {"value", {{"type", "number"}}},
      {"solution", solution},
      {"union_solution", solution},
      {"oracle_solution", solution},
      {"oracle_value", {{"type", {"number", "null"}}}},
      {"ratio", {{"type", {"number", "null"}}}},
      {"coreset", coreset},
      {"coresets", {{"type", "array"}, {"items", coreset}}},
      {"coreset_sizes", index_list},
      {"union", index_list},
      {"union_size", {{"type", "integer"}}},
      {"suites", {{"type", "array"}, {"items", suite}}},
      {"passed", {{"type", "boolean"}}}};
  return s;
}

Json canonicalize(Json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    j.erase("timings");
    for (auto& el : j.items()) el.value() = canonicalize(std::move(el.value()));
  } else if (j.is_array()) {
    for (auto& value : j) value = canonicalize(std::move(value));
  }
  return j;
}

}  // namespace rdiv
