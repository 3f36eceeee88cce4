#pragma once

#include "folmod/folmod/analysis.hpp"
#include "folmod/gg/sequences.hpp"

namespace folmod {

using abgroup::GroupHom;
using abgroup::GroupPtr;

struct NonAbelianRedSym : InvalidInput {
  using InvalidInput::InvalidInput;
};
struct TypeHeterogeneity : InvalidInput {
  using InvalidInput::InvalidInput;
};

// C(h)/<h> for the local holonomy of one side, in that side's coordinates.
GroupPtr side_model(const SideData& s, const SymbolTablePtr& t);
// Image of exp in side_model: C/τ(Z+cZ) (L1), C/p'Z (R1), 0 otherwise.
GroupPtr exp_side_model(const SideData& s, const SymbolTablePtr& t);
GroupHom exp_side_inclusion(const SideData& s, const GroupPtr& exp, const GroupPtr& sym);

// Map from the side model of the non-preferred side of a corner to the
// preferred side's model.
GroupHom cross_side(const SideData& other, const SideData& pref, const SymbolTablePtr& t);

// Sym, Exp and Dis over a closed subgraph of R, with 0 -> Exp -> Sym -> Dis -> 0.
// The edge group of a corner is written in the lower-index component's
// presentation.
struct RedGroupGraphs {
  gg::Restriction red;  // ids of the subgraph -> dual graph
  gg::GroupGraph sym, exp, dis;
  gg::GroupGraphMorphism incl, proj;
};
RedGroupGraphs build_red_group_graphs(const FoliationInput& in, const Analysis& an, const Subgraph& over);

gg::GroupGraph build_sym_graph(const FoliationInput& in, const Analysis& an);
gg::GroupGraph build_exp_graph(const FoliationInput& in, const Analysis& an);
gg::GroupGraph build_dis_graph(const FoliationInput& in, const Analysis& an);

// g with i∘g = f, for i injective on continuous coordinates and a domain of f
// without discrete generators.
GroupHom lift_through(const GroupHom& f, const GroupHom& i);

}  // namespace folmod
