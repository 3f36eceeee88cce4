#pragma once

#include "folmod/abgroup/classify.hpp"
#include "folmod/abgroup/group.hpp"
#include "folmod/gg/graph.hpp"

#include <stdexcept>
#include <vector>

namespace folmod::gg {

using abgroup::GroupHom;
using abgroup::GroupPtr;

struct NotRepulsive : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidGroupGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Abelian group-graph: groups on vertices and edges, one restriction hom per
// endpoint of each edge (a loop carries two).
struct GroupGraph {
  Graph graph;
  std::vector<GroupPtr> vgroup, egroup;
  std::vector<GroupHom> rho_tail, rho_head;  // indexed by edge

  const GroupHom& rho(size_t v, size_t e) const;
  // Throws InvalidGroupGraph on shape mismatch or a failing check_hom.
  void validate() const;
};

struct RestrictedGroupGraph {
  GroupGraph gg;
  std::vector<size_t> vertex_from, edge_from;
};
RestrictedGroupGraph restrict_to(const GroupGraph& g, const Subgraph& s);

// Copy with every edge reversed (tail/head swapped, vertex ids reversed).
GroupGraph reversed_orientation(const GroupGraph& g);

// ⊕_v G_v -> ⊕_e G_e, head minus tail.
struct Coboundary {
  abgroup::DirectSum c0, c1;
  GroupHom d0;
};
Coboundary coboundary0(const GroupGraph& g);

// C¹ = ⊕_{oriented} G_e -> C² = ⊕_e G_e, (x⁺, x⁻) ↦ x⁺ + x⁻; together with the
// map C⁰ -> C¹ whose image lies in its kernel.
struct CochainComplex {
  abgroup::DirectSum c0, c1, c2;
  GroupHom d0, d1;
};
CochainComplex cochain_complex(const GroupGraph& g);

struct CohomologyResult {
  Coboundary cob;
  abgroup::Kernel h0;
  abgroup::Cokernel h1;
  abgroup::NormalFormReport h0_report, h1_report;
};
CohomologyResult cohomology(const GroupGraph& g);
GroupPtr h0(const GroupGraph& g);
abgroup::NormalFormReport h1(const GroupGraph& g);

struct ComponentH1 {
  Subgraph component;
  abgroup::NormalFormReport h1;
};
std::vector<ComponentH1> h1_components(const GroupGraph& g);

// Outward restrictions along the first `length` edges of the branch (the
// whole branch when length is npos) are surjective.
bool is_repulsive(const GroupGraph& g, const DeadBranch& b, size_t length = static_cast<size_t>(-1));

// Sub-branch of the first `length` edges, attached at the next vertex.
DeadBranch prefix(const DeadBranch& b, size_t length);

// Removes the branch vertices and edges; throws NotRepulsive.
RestrictedGroupGraph prune(const GroupGraph& g, const DeadBranch& b);

struct PruneResult {
  Subgraph kept;                 // in the input graph
  std::vector<DeadBranch> pruned;
  RestrictedGroupGraph result;
};
// Repeatedly removes the longest repulsive prefix of a partial dead branch.
// Vertices flagged in `protect` are never removed and stop branch walks.
PruneResult prune_all(const GroupGraph& g, const std::vector<bool>& protect = {});

}  // namespace folmod::gg
