#pragma once

#include "folmod/gg/group_graph.hpp"

#include <array>
#include <string>

namespace folmod::gg {

struct CoverMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotShortExact : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 0 -> X0 -> X1 -> X2 -> X3 -> X4 -> X5 -> 0
struct SixTermSequence {
  std::array<GroupPtr, 6> groups;
  std::array<GroupHom, 5> maps;
  std::array<std::string, 6> names;
  std::array<bool, 6> exact_at{};
  std::array<bool, 5> maps_valid{};

  bool exact() const;
  void evaluate();
  std::string text() const;
};

SixTermSequence mayer_vietoris(const GroupGraph& g, const Subgraph& a0, const Subgraph& a1);

// Elementwise homs F_x -> G_x over the same graph, commuting with restrictions.
struct GroupGraphMorphism {
  std::vector<GroupHom> vmap, emap;
};

// Throws NotShortExact unless each 0 -> F_x -> G_x -> J_x -> 0 is exact and
// both morphisms commute with the restriction maps.
void check_short_exact(const GroupGraph& f, const GroupGraph& g, const GroupGraph& j,
                       const GroupGraphMorphism& i, const GroupGraphMorphism& p);

// Induced maps on cochains.
GroupHom c0_map(const Coboundary& src, const Coboundary& dst, const GroupGraphMorphism& m);
GroupHom c1_map(const Coboundary& src, const Coboundary& dst, const GroupGraphMorphism& m);

SixTermSequence long_exact_sequence(const GroupGraph& f, const GroupGraph& g, const GroupGraph& j,
                                    const GroupGraphMorphism& i, const GroupGraphMorphism& p);

}  // namespace folmod::gg
