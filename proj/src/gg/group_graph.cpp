#include "folmod/gg/group_graph.hpp"

#include <map>

namespace folmod::gg {

using namespace abgroup;

const GroupHom& GroupGraph::rho(size_t v, size_t e) const {
  const Edge& ed = graph.edge(e);
  if (ed.tail == v) return rho_tail.at(e);
  if (ed.head == v) return rho_head.at(e);
  throw InvalidGroupGraph("vertex " + graph.vertex_name(v) + " is not an end of edge " + ed.name);
}

void GroupGraph::validate() const {
  if (vgroup.size() != graph.vertex_count() || egroup.size() != graph.edge_count() ||
      rho_tail.size() != graph.edge_count() || rho_head.size() != graph.edge_count())
    throw InvalidGroupGraph("group-graph arrays do not match the graph");
  for (size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    for (int side = 0; side < 2; ++side) {
      const GroupHom& r = side == 0 ? rho_tail[e] : rho_head[e];
      size_t v = side == 0 ? ed.tail : ed.head;
      if (r.dom != vgroup[v] || r.cod != egroup[e])
        throw InvalidGroupGraph("restriction " + graph.vertex_name(v) + "->" + ed.name +
                                " has wrong domain or codomain");
      auto c = check_hom(r);
      if (!c.ok)
        throw InvalidGroupGraph("restriction " + graph.vertex_name(v) + "->" + ed.name +
                                " is not a homomorphism: " + c.violation);
    }
  }
}

RestrictedGroupGraph restrict_to(const GroupGraph& g, const Subgraph& s) {
  auto r = restrict_graph(g.graph, s);
  RestrictedGroupGraph out;
  out.gg.graph = std::move(r.graph);
  out.vertex_from = std::move(r.vertex_from);
  out.edge_from = std::move(r.edge_from);
  for (auto v : out.vertex_from) out.gg.vgroup.push_back(g.vgroup[v]);
  for (auto e : out.edge_from) {
    out.gg.egroup.push_back(g.egroup[e]);
    out.gg.rho_tail.push_back(g.rho_tail[e]);
    out.gg.rho_head.push_back(g.rho_head[e]);
  }
  return out;
}

GroupGraph reversed_orientation(const GroupGraph& g) {
  GroupGraph r;
  size_t n = g.graph.vertex_count();
  for (size_t i = 0; i < n; ++i) {
    r.graph.add_vertex(g.graph.vertex_name(n - 1 - i));
    r.vgroup.push_back(g.vgroup[n - 1 - i]);
  }
  for (size_t e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& ed = g.graph.edge(e);
    r.graph.add_edge(n - 1 - ed.head, n - 1 - ed.tail, ed.name);
    r.egroup.push_back(g.egroup[e]);
    r.rho_tail.push_back(g.rho_head[e]);
    r.rho_head.push_back(g.rho_tail[e]);
  }
  return r;
}

Coboundary coboundary0(const GroupGraph& g) {
  Coboundary c;
  c.c0 = direct_sum(g.vgroup);
  c.c1 = direct_sum(g.egroup);
  size_t nv = g.graph.vertex_count(), ne = g.graph.edge_count();
  std::vector<std::vector<std::optional<GroupHom>>> blocks(ne, std::vector<std::optional<GroupHom>>(nv));
  for (size_t e = 0; e < ne; ++e) {
    const Edge& ed = g.graph.edge(e);
    if (ed.is_loop()) {
      blocks[e][ed.tail] = add(g.rho_head[e], negate(g.rho_tail[e]));
    } else {
      blocks[e][ed.tail] = negate(g.rho_tail[e]);
      blocks[e][ed.head] = g.rho_head[e];
    }
  }
  c.d0 = block_hom(c.c0, c.c1, blocks);
  return c;
}

CochainComplex cochain_complex(const GroupGraph& g) {
  CochainComplex cc;
  size_t nv = g.graph.vertex_count(), ne = g.graph.edge_count();
  cc.c0 = direct_sum(g.vgroup);
  std::vector<GroupPtr> oriented;
  for (size_t e = 0; e < ne; ++e) {
    oriented.push_back(g.egroup[e]);
    oriented.push_back(g.egroup[e]);
  }
  cc.c1 = direct_sum(oriented);
  cc.c2 = direct_sum(g.egroup);
  // Coordinate 2e is the pair (tail, e), 2e+1 the pair (head, e).
  std::vector<std::vector<std::optional<GroupHom>>> b0(2 * ne, std::vector<std::optional<GroupHom>>(nv));
  auto put = [&](size_t row, size_t v, const GroupHom& h) {
    b0[row][v] = b0[row][v] ? add(*b0[row][v], h) : h;
  };
  for (size_t e = 0; e < ne; ++e) {
    const Edge& ed = g.graph.edge(e);
    put(2 * e, ed.tail, negate(g.rho_tail[e]));
    put(2 * e, ed.head, g.rho_head[e]);
    put(2 * e + 1, ed.head, negate(g.rho_head[e]));
    put(2 * e + 1, ed.tail, g.rho_tail[e]);
  }
  cc.d0 = block_hom(cc.c0, cc.c1, b0);
  std::vector<std::vector<std::optional<GroupHom>>> b1(ne, std::vector<std::optional<GroupHom>>(2 * ne));
  for (size_t e = 0; e < ne; ++e) {
    b1[e][2 * e] = identity_hom(g.egroup[e]);
    b1[e][2 * e + 1] = identity_hom(g.egroup[e]);
  }
  cc.d1 = block_hom(cc.c1, cc.c2, b1);
  return cc;
}

CohomologyResult cohomology(const GroupGraph& g) {
  CohomologyResult r;
  r.cob = coboundary0(g);
  r.h0 = kernel(r.cob.d0);
  r.h1 = cokernel(r.cob.d0);
  r.h0_report = classify(*r.h0.group);
  r.h1_report = classify(*r.h1.group);
  return r;
}

GroupPtr h0(const GroupGraph& g) { return kernel(coboundary0(g).d0).group; }

NormalFormReport h1(const GroupGraph& g) { return classify(*cokernel(coboundary0(g).d0).group); }

std::vector<ComponentH1> h1_components(const GroupGraph& g) {
  std::vector<ComponentH1> out;
  for (auto& comp : component_subgraphs(g.graph, Subgraph::full(g.graph)))
    out.push_back({comp, h1(restrict_to(g, comp).gg)});
  return out;
}

DeadBranch prefix(const DeadBranch& b, size_t length) {
  if (length > b.edges.size()) length = b.edges.size();
  DeadBranch p;
  p.vertices.assign(b.vertices.begin(), b.vertices.begin() + length);
  p.edges.assign(b.edges.begin(), b.edges.begin() + length);
  p.attach = length < b.vertices.size() ? b.vertices[length] : b.attach;
  return p;
}

bool is_repulsive(const GroupGraph& g, const DeadBranch& b, size_t length) {
  size_t n = std::min(length, b.edges.size());
  for (size_t j = 0; j < n; ++j)
    if (!is_surjective(g.rho(b.vertices[j], b.edges[j]))) return false;
  return true;
}

namespace {

Subgraph without(const Graph& gr, Subgraph s, const DeadBranch& b) {
  for (auto v : b.vertices) s.vertices[v] = false;
  for (auto e : b.edges) s.edges[e] = false;
  if (!s.is_closed(gr)) throw GraphError("branch removal leaves a dangling edge");
  return s;
}

}  // namespace

RestrictedGroupGraph prune(const GroupGraph& g, const DeadBranch& b) {
  if (!is_repulsive(g, b)) throw NotRepulsive("dead branch ending at " + g.graph.vertex_name(b.vertices.at(0)) +
                                              " is not repulsive");
  return restrict_to(g, without(g.graph, Subgraph::full(g.graph), b));
}

PruneResult prune_all(const GroupGraph& g, const std::vector<bool>& protect) {
  PruneResult out;
  out.kept = Subgraph::full(g.graph);
  std::map<std::pair<size_t, size_t>, bool> surj;
  auto outward_surjective = [&](size_t v, size_t e) {
    auto key = std::make_pair(v, e);
    auto it = surj.find(key);
    if (it != surj.end()) return it->second;
    return surj[key] = is_surjective(g.rho(v, e));
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& b : find_partial_dead_branches(g.graph, out.kept, protect)) {
      size_t j = 0;
      while (j < b.edges.size() && outward_surjective(b.vertices[j], b.edges[j])) ++j;
      if (j == 0) continue;
      DeadBranch p = prefix(b, j);
      out.kept = without(g.graph, out.kept, p);
      out.pruned.push_back(std::move(p));
      changed = true;
      break;
    }
  }
  out.result = restrict_to(g, out.kept);
  return out;
}

}  // namespace folmod::gg
