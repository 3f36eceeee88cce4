#pragma once

#include "folmod/gg/finite.hpp"
#include "folmod/gg/sequences.hpp"

#include <cstdint>
#include <map>
#include <random>

namespace folmod::gg {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  // Uniform-ish in [0, n); modulo reduction keeps results identical across
  // standard libraries.
  size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(eng_() % n); }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<size_t>(hi - lo + 1))); }
  bool chance(size_t num, size_t den) { return below(den) < num; }
  template <class T>
  const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }

 private:
  std::mt19937_64 eng_;
};

// Every group of order <= 8 up to isomorphism, with cached hom sets.
class GroupLibrary {
 public:
  GroupLibrary();
  size_t size() const { return groups_.size(); }
  const FiniteGroup& group(size_t i) const { return groups_[i]; }
  const std::vector<size_t>& abelian() const { return abelian_; }
  const std::vector<ElementMap>& homs(size_t a, size_t b);
  std::vector<size_t> surjections(size_t a, size_t b);

 private:
  std::vector<FiniteGroup> groups_;
  std::vector<size_t> abelian_;
  std::map<std::pair<size_t, size_t>, std::vector<ElementMap>> homs_;
};

struct FiniteInstanceOptions {
  size_t max_vertices = 6;
  size_t max_edges = 7;
  bool abelian_only = true;
  bool loops = true;
  uint64_t max_space = 200'000;
};
FiniteGroupGraph random_finite_group_graph(Rng& rng, GroupLibrary& lib, const FiniteInstanceOptions& opt);

// Random graph plus a constructed repulsive chain hanging off one vertex.
struct BranchInstance {
  FiniteGroupGraph gg;
  DeadBranch branch;
};
BranchInstance random_branch_instance(Rng& rng, GroupLibrary& lib, const FiniteInstanceOptions& opt);

// Abelian group-graph mixing continuous, elliptic and finite groups.
GroupGraph random_abelian_group_graph(Rng& rng, const exactnum::SymbolTablePtr& t, size_t max_vertices = 5,
                                      size_t max_edges = 6);
std::pair<Subgraph, Subgraph> random_cover(Rng& rng, const Graph& g);

struct ShortExactInstance {
  GroupGraph f, g, j;
  GroupGraphMorphism i, p;
};
ShortExactInstance random_short_exact(Rng& rng, const exactnum::SymbolTablePtr& t);

}  // namespace folmod::gg
