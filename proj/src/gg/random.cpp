#include "folmod/gg/random.hpp"

#include <algorithm>

namespace folmod::gg {

using namespace abgroup;
using exactnum::Scalar;

GroupLibrary::GroupLibrary() {
  auto Z = [](size_t n) { return FiniteGroup::cyclic(n); };
  groups_ = {Z(1), Z(2), Z(3), Z(4), FiniteGroup::product(Z(2), Z(2)), Z(5), Z(6), FiniteGroup::symmetric3(), Z(7), Z(8),
             FiniteGroup::product(Z(2), Z(4)), FiniteGroup::product(FiniteGroup::product(Z(2), Z(2)), Z(2)),
             FiniteGroup::dihedral8(), FiniteGroup::quaternion8()};
  for (size_t i = 0; i < groups_.size(); ++i)
    if (groups_[i].is_abelian()) abelian_.push_back(i);
}

const std::vector<ElementMap>& GroupLibrary::homs(size_t a, size_t b) {
  auto key = std::make_pair(a, b);
  auto it = homs_.find(key);
  if (it != homs_.end()) return it->second;
  return homs_[key] = all_homomorphisms(groups_[a], groups_[b]);
}

std::vector<size_t> GroupLibrary::surjections(size_t a, size_t b) {
  std::vector<size_t> out;
  const auto& hs = homs(a, b);
  for (size_t i = 0; i < hs.size(); ++i)
    if (is_surjective(groups_[b], hs[i])) out.push_back(i);
  return out;
}

namespace {

Graph random_graph(Rng& rng, size_t max_vertices, size_t max_edges, bool loops) {
  Graph g;
  size_t nv = 1 + rng.below(max_vertices);
  // Half of the graphs get at least as many edges as vertices, so cycles
  // are common.
  size_t ne = rng.chance(1, 2) ? rng.below(max_edges + 1) : std::min(max_edges, nv + rng.below(3));
  for (size_t v = 0; v < nv; ++v) g.add_vertex("v" + std::to_string(v));
  for (size_t e = 0; e < ne; ++e) {
    bool loop = nv == 1 || (loops && rng.chance(1, 8));
    if (loop && !loops) break;
    size_t u = rng.below(nv), w = u;
    if (!loop)
      while (w == u) w = rng.below(nv);
    g.add_edge(u, w, "e" + std::to_string(e));
  }
  return g;
}

size_t pick_group(Rng& rng, GroupLibrary& lib, bool abelian_only) {
  return abelian_only ? rng.pick(lib.abelian()) : rng.below(lib.size());
}

size_t image_size(const ElementMap& f) {
  std::vector<size_t> s = f;
  std::sort(s.begin(), s.end());
  return std::unique(s.begin(), s.end()) - s.begin();
}

// Uniform hom half of the time, otherwise one with the largest image; most
// homs between unrelated small groups are trivial.
const ElementMap& pick_hom(Rng& rng, GroupLibrary& lib, size_t a, size_t b) {
  const auto& hs = lib.homs(a, b);
  if (rng.chance(1, 2)) return rng.pick(hs);
  size_t best = 0;
  for (const auto& h : hs) best = std::max(best, image_size(h));
  std::vector<size_t> top;
  for (size_t i = 0; i < hs.size(); ++i)
    if (image_size(hs[i]) == best) top.push_back(i);
  return hs[rng.pick(top)];
}

}  // namespace

FiniteGroupGraph random_finite_group_graph(Rng& rng, GroupLibrary& lib, const FiniteInstanceOptions& opt) {
  for (;;) {
    FiniteGroupGraph f;
    f.graph = random_graph(rng, opt.max_vertices, opt.max_edges, opt.loops);
    std::vector<size_t> vi, ei;
    for (size_t v = 0; v < f.graph.vertex_count(); ++v) vi.push_back(pick_group(rng, lib, opt.abelian_only));
    for (size_t e = 0; e < f.graph.edge_count(); ++e) {
      const Edge& ed = f.graph.edge(e);
      ei.push_back(rng.chance(1, 2) ? vi[rng.chance(1, 2) ? ed.tail : ed.head] : pick_group(rng, lib, opt.abelian_only));
    }
    for (auto i : vi) f.vgroup.push_back(lib.group(i));
    for (auto i : ei) f.egroup.push_back(lib.group(i));
    if (f.state_space() > opt.max_space) continue;
    for (size_t e = 0; e < f.graph.edge_count(); ++e) {
      const Edge& ed = f.graph.edge(e);
      f.rho_tail.push_back(pick_hom(rng, lib, vi[ed.tail], ei[e]));
      f.rho_head.push_back(pick_hom(rng, lib, vi[ed.head], ei[e]));
    }
    return f;
  }
}

BranchInstance random_branch_instance(Rng& rng, GroupLibrary& lib, const FiniteInstanceOptions& opt) {
  FiniteInstanceOptions base_opt = opt;
  base_opt.max_vertices = std::max<size_t>(1, opt.max_vertices > 3 ? opt.max_vertices - 3 : 1);
  for (;;) {
    BranchInstance out;
    FiniteGroupGraph& f = out.gg;
    f = random_finite_group_graph(rng, lib, base_opt);
    size_t len = 1 + rng.below(3);
    size_t v0 = rng.below(f.graph.vertex_count());
    // Library index of the group on the inner end of each new edge.
    size_t inner_vertex = v0;
    std::optional<size_t> inner_lib;
    for (size_t i = 1; i <= len; ++i) {
      size_t h = pick_group(rng, lib, opt.abelian_only);
      size_t k = pick_group(rng, lib, opt.abelian_only);
      auto surj = lib.surjections(k, h);
      if (surj.empty()) {
        k = h;
        surj = lib.surjections(k, h);
      }
      size_t w = f.graph.add_vertex("w" + std::to_string(i));
      size_t e = f.graph.add_edge(inner_vertex, w, "b" + std::to_string(i));
      f.vgroup.push_back(lib.group(k));
      f.egroup.push_back(lib.group(h));
      const FiniteGroup& inner = f.vgroup[inner_vertex];
      // Inner side: any hom; the library index of the base group is not
      // tracked, so homs are enumerated directly.
      std::vector<ElementMap> inner_homs =
          inner_lib ? lib.homs(*inner_lib, h) : all_homomorphisms(inner, lib.group(h));
      f.rho_tail.push_back(rng.pick(inner_homs));
      f.rho_head.push_back(lib.homs(k, h)[rng.pick(surj)]);
      out.branch.vertices.insert(out.branch.vertices.begin(), w);
      out.branch.edges.insert(out.branch.edges.begin(), e);
      inner_vertex = w;
      inner_lib = k;
    }
    out.branch.attach = v0;
    if (f.state_space() > opt.max_space) continue;
    return out;
  }
}

namespace {

GroupPtr random_presented_group(Rng& rng, const exactnum::SymbolTablePtr& t) {
  Scalar tau = Scalar::tau(t), mu = Scalar::symbol(t, "mu");
  Group g;
  g.symbols = t;
  switch (rng.below(9)) {
    case 0:
      break;
    case 1:
    case 2:
    case 3:
      g.b = 1;
      g.add_relation({}, {BigInt(static_cast<long>(rng.below(3) + 2))});
      break;
    case 4:
      g.b = 1;
      break;
    case 5:
      g.a = 1;
      break;
    case 6:
      g.a = 1;
      g.add_relation({tau}, {});
      break;
    case 7:
      g.a = 1;
      g.add_relation({tau}, {});
      g.add_relation({tau * mu}, {});
      break;
    default:
      g.a = 1;
      g.b = 1;
      g.add_relation({Scalar()}, {BigInt(2)});
      break;
  }
  return make_group(std::move(g));
}

GroupHom random_hom(Rng& rng, const GroupPtr& a, const GroupPtr& b, const exactnum::SymbolTablePtr& t) {
  Scalar tau = Scalar::tau(t), mu = Scalar::symbol(t, "mu");
  const std::vector<Scalar> cc_pool = {Scalar(0), Scalar(1), Scalar(-1), Scalar(2), Scalar(Rational(1, 2))};
  const std::vector<Scalar> dc_pool = {Scalar(0), tau / Scalar(2), tau / Scalar(3), tau / Scalar(4), tau * mu / Scalar(2),
                                       tau, Scalar(1), mu};
  for (int attempt = 0; attempt < 40; ++attempt) {
    GroupHom h = zero_hom(a, b);
    for (size_t i = 0; i < b->a; ++i) {
      for (size_t k = 0; k < a->a; ++k) h.cc[i][k] = rng.pick(cc_pool);
      for (size_t k = 0; k < a->b; ++k) h.dc[i][k] = rng.pick(dc_pool);
    }
    for (size_t i = 0; i < b->b; ++i)
      for (size_t k = 0; k < a->b; ++k) h.dd(i, k) = rng.between(-2, 2);
    if (check_hom(h).ok) return h;
  }
  return zero_hom(a, b);
}

GroupGraph random_groups_over(Rng& rng, const exactnum::SymbolTablePtr& t, const Graph& gr) {
  GroupGraph g;
  g.graph = gr;
  for (size_t v = 0; v < gr.vertex_count(); ++v) g.vgroup.push_back(random_presented_group(rng, t));
  for (size_t e = 0; e < gr.edge_count(); ++e) {
    g.egroup.push_back(random_presented_group(rng, t));
    g.rho_tail.push_back(random_hom(rng, g.vgroup[gr.edge(e).tail], g.egroup[e], t));
    g.rho_head.push_back(random_hom(rng, g.vgroup[gr.edge(e).head], g.egroup[e], t));
  }
  return g;
}

}  // namespace

GroupGraph random_abelian_group_graph(Rng& rng, const exactnum::SymbolTablePtr& t, size_t max_vertices,
                                      size_t max_edges) {
  return random_groups_over(rng, t, random_graph(rng, max_vertices, max_edges, true));
}

std::pair<Subgraph, Subgraph> random_cover(Rng& rng, const Graph& g) {
  Subgraph a0 = Subgraph::empty(g), a1 = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    size_t k = rng.below(3);
    a0.vertices[v] = k != 1;
    a1.vertices[v] = k != 0;
  }
  for (size_t e = 0; e < g.edge_count(); ++e) {
    size_t u = g.edge(e).tail, w = g.edge(e).head;
    bool in0 = a0.vertices[u] && a0.vertices[w];
    bool in1 = a1.vertices[u] && a1.vertices[w];
    if (!in0 && !in1) {
      a0.vertices[u] = a0.vertices[w] = true;
      in0 = true;
    }
    if (in0 && in1) {
      size_t k = rng.below(3);
      a0.edges[e] = k != 1;
      a1.edges[e] = k != 0;
    } else {
      (in0 ? a0 : a1).edges[e] = true;
    }
  }
  return {a0, a1};
}

ShortExactInstance random_short_exact(Rng& rng, const exactnum::SymbolTablePtr& t) {
  Graph gr = random_graph(rng, 4, 5, true);
  ShortExactInstance s;
  size_t nv = gr.vertex_count(), ne = gr.edge_count();
  size_t variant = rng.below(3);
  if (variant == 0) {
    // G = F ⊕ J with an off-diagonal term J_v -> F_e in the restrictions.
    s.f = random_groups_over(rng, t, gr);
    s.j = random_groups_over(rng, t, gr);
    s.g.graph = gr;
    std::vector<DirectSum> vs, es;
    for (size_t v = 0; v < nv; ++v) {
      vs.push_back(direct_sum({s.f.vgroup[v], s.j.vgroup[v]}));
      s.g.vgroup.push_back(vs.back().group);
      s.i.vmap.push_back(vs.back().injections[0]);
      s.p.vmap.push_back(vs.back().projections[1]);
    }
    for (size_t e = 0; e < ne; ++e) {
      es.push_back(direct_sum({s.f.egroup[e], s.j.egroup[e]}));
      s.g.egroup.push_back(es.back().group);
      s.i.emap.push_back(es.back().injections[0]);
      s.p.emap.push_back(es.back().projections[1]);
    }
    for (size_t e = 0; e < ne; ++e) {
      const Edge& ed = gr.edge(e);
      for (int side = 0; side < 2; ++side) {
        size_t v = side ? ed.head : ed.tail;
        const GroupHom& rf = side ? s.f.rho_head[e] : s.f.rho_tail[e];
        const GroupHom& rj = side ? s.j.rho_head[e] : s.j.rho_tail[e];
        GroupHom kappa = random_hom(rng, s.j.vgroup[v], s.f.egroup[e], t);
        GroupHom r = block_hom(vs[v], es[e], {{rf, kappa}, {std::nullopt, rj}});
        (side ? s.g.rho_head : s.g.rho_tail).push_back(r);
      }
    }
    return s;
  }
  // 0 -> Z -(×n)-> Z -> Z/n -> 0, or 0 -> Z -> C -> C* -> 0, with integer
  // restriction factors.
  GroupPtr F, G, J;
  GroupHom i, p;
  long n = static_cast<long>(rng.below(3) + 2);
  Scalar tau = Scalar::tau(t);
  if (variant == 1) {
    F = cyclic_sum({BigInt(0)}, t);
    G = F;
    J = cyclic_sum({BigInt(n)}, t);
    i = zero_hom(F, G);
    i.dd(0, 0) = n;
    p = zero_hom(G, J);
    p.dd(0, 0) = 1;
  } else {
    F = cyclic_sum({BigInt(0)}, t);
    Group c;
    c.symbols = t;
    c.a = 1;
    G = make_group(c);
    c.add_relation({tau}, {});
    J = make_group(c);
    i = zero_hom(F, G);
    i.dc[0][0] = tau;
    p = zero_hom(G, J);
    p.cc[0][0] = Scalar(1);
  }
  for (GroupGraph* x : {&s.f, &s.g, &s.j}) x->graph = gr;
  for (size_t v = 0; v < nv; ++v) {
    s.f.vgroup.push_back(F);
    s.g.vgroup.push_back(G);
    s.j.vgroup.push_back(J);
    s.i.vmap.push_back(i);
    s.p.vmap.push_back(p);
  }
  for (size_t e = 0; e < ne; ++e) {
    s.f.egroup.push_back(F);
    s.g.egroup.push_back(G);
    s.j.egroup.push_back(J);
    s.i.emap.push_back(i);
    s.p.emap.push_back(p);
    for (int side = 0; side < 2; ++side) {
      long c = rng.between(-2, 2);
      GroupHom rf = zero_hom(F, F), rg = zero_hom(G, G), rj = zero_hom(J, J);
      if (variant == 1) {
        rf.dd(0, 0) = c;
        rg.dd(0, 0) = c;
        rj.dd(0, 0) = c;
      } else {
        rf.dd(0, 0) = c;
        rg.cc[0][0] = Scalar(c);
        rj.cc[0][0] = Scalar(c);
      }
      (side ? s.f.rho_head : s.f.rho_tail).push_back(rf);
      (side ? s.g.rho_head : s.g.rho_tail).push_back(rg);
      (side ? s.j.rho_head : s.j.rho_tail).push_back(rj);
    }
  }
  return s;
}

}  // namespace folmod::gg
