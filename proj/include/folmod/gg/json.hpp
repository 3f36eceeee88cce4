#pragma once

#include "folmod/abgroup/json.hpp"
#include "folmod/gg/finite.hpp"
#include "folmod/gg/group_graph.hpp"

#include <variant>

namespace folmod::gg {

using abgroup::Json;
inline constexpr int kSchemaVersion = 1;

// Group-graph document:
// {"schema_version": 1, "kind": "group-graph" | "finite-group-graph",
//  "symbols": [...], "vertices": [names], "edges": [{"name", "ends": [u, v]}],
//  "groups": {element: payload}, "rho": [{"vertex", "edge", "side"?, "map"}]}
// Presented payloads follow abgroup's shape; finite payloads are
// {"table": [[...]]} or {"named": "Z4" | "Z2xZ2" | "S3" | "D4" | "Q8"}, with
// "map" an element array.
using AnyGroupGraph = std::variant<GroupGraph, FiniteGroupGraph>;

AnyGroupGraph group_graph_from_json(const Json& j);
Json group_graph_to_json(const GroupGraph& g);
Json group_graph_to_json(const FiniteGroupGraph& g);

FiniteGroup named_group(const std::string& name);
Json graph_to_json(const Graph& g);

}  // namespace folmod::gg
