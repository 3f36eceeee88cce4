#pragma once

#include "folmod/abgroup/classify.hpp"
#include "folmod/abgroup/group.hpp"

#include <json.hpp>

namespace folmod::abgroup {

using Json = nlohmann::ordered_json;

struct JsonShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbols: array of names or {"name", "display"} objects; tau_i is implicit.
exactnum::SymbolTablePtr symbols_from_json(const Json& j);
Json symbols_to_json(const exactnum::SymbolTablePtr& t);

BigInt bigint_from_json(const Json& j);
Json bigint_to_json(const BigInt& v);
Scalar scalar_from_json(const Json& j, const exactnum::SymbolTablePtr& t);

// {"cont": a, "disc": b, "relations": [{"cont": [...], "disc": [...]}], "atoms": [...]}
GroupPtr group_from_json(const Json& j, const exactnum::SymbolTablePtr& t);
Json group_to_json(const Group& g);

// {"cc": rows, "dc": rows, "dd": rows, "atoms": [[dom, cod]], "unresolved": [...]}
GroupHom hom_from_json(const Json& j, GroupPtr dom, GroupPtr cod);
Json hom_to_json(const GroupHom& h);

Json report_to_json(const NormalFormReport& r);

}  // namespace folmod::abgroup
