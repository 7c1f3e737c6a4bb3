#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "remote_div/composition.hpp"
#include "remote_div/coresets.hpp"
#include "remote_div/costs.hpp"
#include "remote_div/gmm.hpp"
#include "remote_div/matching_offline.hpp"
#include "remote_div/pseudoforest_offline.hpp"
#include "remote_div/solution.hpp"
#include "remote_div/verify.hpp"

namespace rdiv {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class BoundKind { Exact, LowerBound };
std::string_view bound_kind_name(BoundKind b) noexcept;

Json to_json(const DiversitySolution& s);
Json to_json(const SubsetCostReport& r);
Json to_json(const GmmResult& g);
Json to_json(const Coreset& c);
Json to_json(const MatchingOfflineTrace& t);
Json to_json(const PipelineReport& r);
Json to_json(const SuiteResult& r);

// {"levels": [[...]], "parents": {"<point>@<level>": "<point>@<level>"}}
Json net_tree_json(const NetTree& tree);

// Common report frame: schema_version, command and the flag echo, then
// the fields of body in order.
Json make_report(std::string_view command, const Json& flags, const Json& body);

// JSON schema of every report this library emits.
Json report_schema();

// Drops every "elapsed_ms" and "timings" member at any depth.
Json canonicalize(Json j);

}  // namespace rdiv
