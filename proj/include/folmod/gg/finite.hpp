#pragma once

#include "folmod/gg/group_graph.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmod::gg {

struct InvalidTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite group given by its multiplication table (possibly non-abelian).
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(cyclic(1)) {}
  // Throws InvalidTable unless the table is a group.
  static FiniteGroup from_table(std::string name, std::vector<std::vector<size_t>> table);
  static FiniteGroup cyclic(size_t n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric3();
  static FiniteGroup dihedral8();
  static FiniteGroup quaternion8();

  const std::string& name() const { return name_; }
  size_t order() const { return table_.size(); }
  size_t identity() const { return id_; }
  size_t mul(size_t x, size_t y) const { return table_[x][y]; }
  size_t inv(size_t x) const { return inv_[x]; }
  const std::vector<std::vector<size_t>>& table() const { return table_; }
  bool is_abelian() const;
  // Deterministic small generating set.
  const std::vector<size_t>& generators() const { return gens_; }
  size_t conjugacy_class_count() const;

 private:
  FiniteGroup(std::string name, std::vector<std::vector<size_t>> table, size_t id);
  std::string name_;
  std::vector<std::vector<size_t>> table_;
  size_t id_ = 0;
  std::vector<size_t> inv_, gens_;
};

using ElementMap = std::vector<size_t>;

bool is_homomorphism(const FiniteGroup& a, const FiniteGroup& b, const ElementMap& f);
bool is_surjective(const FiniteGroup& b, const ElementMap& f);
// All homomorphisms a -> b, in a deterministic order.
std::vector<ElementMap> all_homomorphisms(const FiniteGroup& a, const FiniteGroup& b);

struct FiniteGroupGraph {
  Graph graph;
  std::vector<FiniteGroup> vgroup, egroup;
  std::vector<ElementMap> rho_tail, rho_head;

  const ElementMap& rho(size_t v, size_t e) const;
  // Shapes and homomorphism property, checked exhaustively.
  void validate() const;
  bool is_abelian() const;
  // ∏_e |G_e| · ∏_v |G_v|, saturating at UINT64_MAX.
  uint64_t state_space() const;
};

struct BruteH1 {
  uint64_t orbits = 0;
  // One cocycle per orbit (tail-side value on each edge), smallest index first.
  std::vector<std::vector<size_t>> representatives;
};
inline constexpr uint64_t kDefaultBound = 10'000'000;

// Orbits of C⁰ acting on Z¹ ≅ ∏_e G_e; throws BoundExceeded.
BruteH1 brute_force_h1(const FiniteGroupGraph& g, uint64_t bound = kDefaultBound);

// Presentation on a generating set, with coordinates for every element.
struct PresentedTable {
  GroupPtr group;
  std::vector<std::vector<abgroup::BigInt>> coords;  // per element
};
PresentedTable present(const FiniteGroup& g);
// Abelian FiniteGroupGraph as a presented group-graph.
GroupGraph to_group_graph(const FiniteGroupGraph& g);

struct RestrictedFiniteGroupGraph {
  FiniteGroupGraph gg;
  std::vector<size_t> vertex_from, edge_from;
};
RestrictedFiniteGroupGraph restrict_to(const FiniteGroupGraph& g, const Subgraph& s);
bool is_repulsive(const FiniteGroupGraph& g, const DeadBranch& b);
RestrictedFiniteGroupGraph prune(const FiniteGroupGraph& g, const DeadBranch& b);

}  // namespace folmod::gg
