#pragma once

#include "folmod/folmod/input.hpp"
#include "folmod/gg/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace folmod {

using gg::Graph;
using gg::Subgraph;

// Vertices are components (input order), edges are corners (input order).
struct DualGraph {
  Graph graph;
  std::vector<size_t> val_sigma;  // number of Σ points per component
};
// Throws DisconnectedDivisor when the divisor is not connected.
DualGraph build_dual_graph(const MarkedDivisor& d);

// Every connected component of the invariant part has a component with
// val_Σ != 2.
bool check_tc(const MarkedDivisor& d);

// Invariant components and the non-nodal corners between them.
Subgraph build_cut_graph(const FoliationInput& in, const DualGraph& g);

struct Coloring {
  std::vector<bool> vred, ered;  // over the dual graph; only cut-graph elements are colored
  Subgraph R, R0, R1;
};
Coloring color(const FoliationInput& in, const DualGraph& g, const Subgraph& cut);

enum class ChainKind { Lambda, Nu, Mu, Beta, Periodic };
std::string to_string(ChainKind k);

// Maximal chain between components of valency >= 3 through valency-2 ones.
struct SingularChain {
  std::vector<size_t> vertices;  // from start to end, both of valency >= 3
  std::vector<size_t> edges;
  ChainKind kind = ChainKind::Lambda;
};
std::vector<SingularChain> singular_chains(const FoliationInput& in, const DualGraph& g, const Subgraph& cut);

struct ChainCounts {
  size_t lambda = 0, nu = 0, mu = 0, beta = 0, periodic = 0;
};
ChainCounts count_chains(const std::vector<SingularChain>& cs);

// First Betti number of R with R0 collapsed to a point.
size_t tau(const Graph& g, const Subgraph& R, const Subgraph& R0);

struct Verdict {
  bool holds = true;
  std::string witness;  // empty when holds
};
Verdict is_non_degenerate(const FoliationInput& in, const DualGraph& g, const Subgraph& cut);
Verdict is_finite_type(const FoliationInput& in, const DualGraph& g, const Subgraph& cut, const Coloring& col);

// Outward restriction of a green component at a Σ point is onto: n_{D,s} = n_D.
bool green_onto(const FoliationInput& in, size_t comp, const std::string& point);

// Repeatedly removes green dead branches of the cut graph whose outward
// restrictions are onto; red vertices are never removed.
Subgraph prune_to_red(const FoliationInput& in, const DualGraph& g, const Subgraph& cut, const Coloring& col);

struct Violation {
  std::string code, message;
};
// Structural checks (tree shape, data completeness, type constraints).
std::vector<Violation> validate(const FoliationInput& in);

// Everything derived from the input that the pipelines need.
struct Analysis {
  DualGraph dual;
  bool tc = false;
  Subgraph cut;
  Coloring col;
  std::vector<SingularChain> chains;
  ChainCounts counts;
  size_t tau = 0;
  Verdict non_degenerate, finite_type;
};
Analysis analyze(const FoliationInput& in);

}  // namespace folmod
