#include "folmod/gg/sequences.hpp"

#include <functional>
#include <sstream>

namespace folmod::gg {

using namespace abgroup;

bool SixTermSequence::exact() const {
  for (bool b : exact_at)
    if (!b) return false;
  for (bool b : maps_valid)
    if (!b) return false;
  return true;
}

void SixTermSequence::evaluate() {
  for (size_t k = 0; k < 5; ++k) maps_valid[k] = check_hom(maps[k]).ok;
  auto guarded = [](auto&& f) {
    try {
      return f();
    } catch (const NonFiniteTypeKernel&) {
      return false;
    } catch (const UnsupportedAtomMap&) {
      return false;
    }
  };
  exact_at[0] = guarded([&] { return is_injective(maps[0]); });
  for (size_t k = 1; k < 5; ++k)
    exact_at[k] = guarded([&] {
      return composite_is_zero(maps[k], maps[k - 1]) && kernel_in_image(maps[k], maps[k - 1]);
    });
  exact_at[5] = guarded([&] { return is_surjective(maps[4]); });
}

std::string SixTermSequence::text() const {
  std::ostringstream os;
  for (size_t k = 0; k < 6; ++k)
    os << names[k] << " = " << classify(*groups[k]).text() << (exact_at[k] ? "  [exact]" : "  [NOT exact]")
       << "\n";
  os << "verdict: " << (exact() ? "exact" : "not exact") << "\n";
  return os.str();
}

namespace {

// A group-graph piece with original element ids and its cohomology.
struct Piece {
  GroupGraph gg;
  std::vector<size_t> vfrom, efrom;
  Coboundary cob;
  Kernel h0;
  Cokernel h1;
};

Piece make_piece(GroupGraph gg, std::vector<size_t> vfrom, std::vector<size_t> efrom) {
  Piece p{std::move(gg), std::move(vfrom), std::move(efrom), {}, {}, {}};
  p.cob = coboundary0(p.gg);
  p.h0 = kernel(p.cob.d0);
  p.h1 = cokernel(p.cob.d0);
  return p;
}

Piece piece_of(const GroupGraph& g, const Subgraph& s) {
  auto r = restrict_to(g, s);
  return make_piece(std::move(r.gg), std::move(r.vertex_from), std::move(r.edge_from));
}

// Disjoint union; original ids are kept so restrictions can be matched.
Piece disjoint_union(const Piece& a, const Piece& b) {
  GroupGraph u;
  std::vector<size_t> vf, ef;
  for (const Piece* p : {&a, &b}) {
    size_t base = u.graph.vertex_count();
    for (size_t v = 0; v < p->gg.graph.vertex_count(); ++v) {
      u.graph.add_vertex(p->gg.graph.vertex_name(v));
      u.vgroup.push_back(p->gg.vgroup[v]);
      vf.push_back(p->vfrom[v]);
    }
    for (size_t e = 0; e < p->gg.graph.edge_count(); ++e) {
      const Edge& ed = p->gg.graph.edge(e);
      u.graph.add_edge(base + ed.tail, base + ed.head, ed.name);
      u.egroup.push_back(p->gg.egroup[e]);
      u.rho_tail.push_back(p->gg.rho_tail[e]);
      u.rho_head.push_back(p->gg.rho_head[e]);
      ef.push_back(p->efrom[e]);
    }
  }
  return make_piece(std::move(u), std::move(vf), std::move(ef));
}

using Blocks = std::vector<std::vector<std::optional<GroupHom>>>;

// Coordinate selection between sums indexed by original ids: summand j of
// `from` feeds summand i of `to` with the given sign when ids agree and the
// filter accepts j.
GroupHom select(const DirectSum& from, const std::vector<size_t>& from_ids, const DirectSum& to,
                const std::vector<size_t>& to_ids, const std::vector<GroupPtr>& groups,
                const std::function<int(size_t from_idx, size_t to_idx)>& sign) {
  Blocks b(to_ids.size(), std::vector<std::optional<GroupHom>>(from_ids.size()));
  for (size_t i = 0; i < to_ids.size(); ++i)
    for (size_t j = 0; j < from_ids.size(); ++j) {
      if (from_ids[j] != to_ids[i]) continue;
      int s = sign(j, i);
      if (s == 0) continue;
      GroupHom id = identity_hom(groups[i]);
      b[i][j] = s > 0 ? id : negate(id);
    }
  return block_hom(from, to, b);
}

std::vector<size_t> iota(size_t n) {
  std::vector<size_t> r(n);
  for (size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

}  // namespace

SixTermSequence mayer_vietoris(const GroupGraph& g, const Subgraph& a0, const Subgraph& a1) {
  if (!a0.is_closed(g.graph) || !a1.is_closed(g.graph)) throw CoverMismatch("cover pieces must be subgraphs");
  if (!(unite(a0, a1) == Subgraph::full(g.graph))) throw CoverMismatch("A0 ∪ A1 is not the whole graph");
  Subgraph a01 = intersect(a0, a1);

  Piece A = make_piece(g, iota(g.graph.vertex_count()), iota(g.graph.edge_count()));
  Piece P0 = piece_of(g, a0), P1 = piece_of(g, a1), P01 = piece_of(g, a01);
  Piece D = disjoint_union(P0, P1);
  const size_t split_v = P0.vfrom.size(), split_e = P0.efrom.size();

  auto plus = [](size_t, size_t) { return 1; };
  auto diff_v = [&](size_t j, size_t) { return j < split_v ? 1 : -1; };
  auto diff_e = [&](size_t j, size_t) { return j < split_e ? 1 : -1; };

  GroupHom r0_A_D = select(A.cob.c0, A.vfrom, D.cob.c0, D.vfrom, D.gg.vgroup, plus);
  GroupHom r1_A_D = select(A.cob.c1, A.efrom, D.cob.c1, D.efrom, D.gg.egroup, plus);
  GroupHom r0_D_01 = select(D.cob.c0, D.vfrom, P01.cob.c0, P01.vfrom, P01.gg.vgroup, diff_v);
  GroupHom r1_D_01 = select(D.cob.c1, D.efrom, P01.cob.c1, P01.efrom, P01.gg.egroup, diff_e);

  // Connecting map: extend a 0-cocycle on A0 ∩ A1 by zero over A0, apply ∂⁰,
  // keep the edges of A0 outside the intersection, read it in H¹(A).
  GroupHom ext = select(P01.cob.c0, P01.vfrom, P0.cob.c0, P0.vfrom, P0.gg.vgroup, plus);
  std::vector<bool> in01(g.graph.edge_count(), false);
  for (auto e : P01.efrom) in01[e] = true;
  GroupHom keep = select(P0.cob.c1, P0.efrom, A.cob.c1, A.efrom, A.gg.egroup,
                         [&](size_t j, size_t) { return in01[P0.efrom[j]] ? 0 : 1; });
  GroupHom delta = compose(A.h1.projection, compose(keep, compose(P0.cob.d0, compose(ext, P01.h0.inclusion))));

  SixTermSequence s;
  s.groups = {A.h0.group, D.h0.group, P01.h0.group, A.h1.group, D.h1.group, P01.h1.group};
  s.names = {"H0(A)", "H0(A0)+H0(A1)", "H0(A0∩A1)", "H1(A)", "H1(A0)+H1(A1)", "H1(A0∩A1)"};
  s.maps[0] = lift_into_kernel(compose(r0_A_D, A.h0.inclusion), D.h0);
  s.maps[1] = lift_into_kernel(compose(r0_D_01, D.h0.inclusion), P01.h0);
  s.maps[2] = delta;
  s.maps[3] = induced_on_cokernels(r1_A_D, A.h1, D.h1);
  s.maps[4] = induced_on_cokernels(r1_D_01, D.h1, P01.h1);
  s.evaluate();
  return s;
}

void check_short_exact(const GroupGraph& f, const GroupGraph& g, const GroupGraph& j,
                       const GroupGraphMorphism& i, const GroupGraphMorphism& p) {
  const Graph& gr = g.graph;
  if (f.graph.vertex_count() != gr.vertex_count() || j.graph.vertex_count() != gr.vertex_count() ||
      f.graph.edge_count() != gr.edge_count() || j.graph.edge_count() != gr.edge_count())
    throw NotShortExact("group-graphs live over different graphs");
  if (i.vmap.size() != gr.vertex_count() || p.vmap.size() != gr.vertex_count() ||
      i.emap.size() != gr.edge_count() || p.emap.size() != gr.edge_count())
    throw NotShortExact("morphism arrays do not match the graph");
  auto element = [&](const GroupHom& a, const GroupHom& b, const std::string& name) {
    if (!check_hom(a).ok || !check_hom(b).ok) throw NotShortExact(name + ": map is not a homomorphism");
    if (!is_injective(a)) throw NotShortExact(name + ": first map is not injective");
    if (!is_surjective(b)) throw NotShortExact(name + ": second map is not surjective");
    if (!composite_is_zero(b, a) || !kernel_in_image(b, a)) throw NotShortExact(name + ": not exact in the middle");
  };
  for (size_t v = 0; v < gr.vertex_count(); ++v) element(i.vmap[v], p.vmap[v], gr.vertex_name(v));
  for (size_t e = 0; e < gr.edge_count(); ++e) element(i.emap[e], p.emap[e], gr.edge(e).name);
  auto commutes = [&](const GroupHom& a, const GroupHom& b) { return is_zero_hom(add(a, negate(b))); };
  for (size_t e = 0; e < gr.edge_count(); ++e) {
    const Edge& ed = gr.edge(e);
    bool ok = commutes(compose(i.emap[e], f.rho_tail[e]), compose(g.rho_tail[e], i.vmap[ed.tail])) &&
              commutes(compose(i.emap[e], f.rho_head[e]), compose(g.rho_head[e], i.vmap[ed.head])) &&
              commutes(compose(p.emap[e], g.rho_tail[e]), compose(j.rho_tail[e], p.vmap[ed.tail])) &&
              commutes(compose(p.emap[e], g.rho_head[e]), compose(j.rho_head[e], p.vmap[ed.head]));
    if (!ok) throw NotShortExact("morphism does not commute with restrictions at " + ed.name);
  }
}

GroupHom c0_map(const Coboundary& src, const Coboundary& dst, const GroupGraphMorphism& m) {
  Blocks b(m.vmap.size(), std::vector<std::optional<GroupHom>>(m.vmap.size()));
  for (size_t v = 0; v < m.vmap.size(); ++v) b[v][v] = m.vmap[v];
  return block_hom(src.c0, dst.c0, b);
}

GroupHom c1_map(const Coboundary& src, const Coboundary& dst, const GroupGraphMorphism& m) {
  Blocks b(m.emap.size(), std::vector<std::optional<GroupHom>>(m.emap.size()));
  for (size_t e = 0; e < m.emap.size(); ++e) b[e][e] = m.emap[e];
  return block_hom(src.c1, dst.c1, b);
}

SixTermSequence long_exact_sequence(const GroupGraph& f, const GroupGraph& g, const GroupGraph& j,
                                    const GroupGraphMorphism& i, const GroupGraphMorphism& p) {
  check_short_exact(f, g, j, i, p);
  Piece F = make_piece(f, {}, {}), G = make_piece(g, {}, {}), J = make_piece(j, {}, {});
  GroupHom i0 = c0_map(F.cob, G.cob, i), i1 = c1_map(F.cob, G.cob, i);
  GroupHom p0 = c0_map(G.cob, J.cob, p), p1 = c1_map(G.cob, J.cob, p);

  // Connecting map H⁰(J) -> H¹(F): lift through p, apply ∂⁰, pull back through i.
  const Kernel& hj = J.h0;
  if (!hj.group->atoms.empty()) throw UnsupportedAtomMap("connecting map on atom generators of H0");
  GroupHom delta = zero_hom(hj.group, F.h1.group);
  const size_t ga = G.cob.c0.group->a, fa = F.cob.c1.group->a;
  for (size_t k = 0; k < hj.group->a; ++k) {
    KVector v = hj.inclusion.image_of_cont(k).cont;
    auto u = exactnum::k_solve(p0.cc, v, ga);
    if (!u) throw NotShortExact("continuous direction of H0(J) has no continuous lift");
    KVector w = exactnum::k_apply(G.cob.d0.cc, *u, ga);
    auto x = exactnum::k_solve(i1.cc, w, fa);
    if (!x) throw NotShortExact("coboundary of a lift is not in the image of F");
    Element img = F.h1.projection.apply(Element{*x, std::vector<BigInt>(F.cob.c1.group->b, 0)});
    for (size_t r = 0; r < F.h1.group->a; ++r) delta.cc[r][k] = img.cont[r];
  }
  for (size_t k = 0; k < hj.group->b; ++k) {
    auto y = preimage(p0, hj.inclusion.image_of_disc(k));
    if (!y) throw NotShortExact("cochain of J has no lift");
    auto x = preimage(i1, G.cob.d0.apply(*y));
    if (!x) throw NotShortExact("coboundary of a lift is not in the image of F");
    Element img = F.h1.projection.apply(*x);
    for (size_t r = 0; r < F.h1.group->a; ++r) delta.dc[r][k] = img.cont[r];
    for (size_t r = 0; r < F.h1.group->b; ++r) delta.dd(r, k) = img.disc[r];
  }

  SixTermSequence s;
  s.groups = {F.h0.group, G.h0.group, J.h0.group, F.h1.group, G.h1.group, J.h1.group};
  s.names = {"H0(F)", "H0(G)", "H0(J)", "H1(F)", "H1(G)", "H1(J)"};
  s.maps[0] = lift_into_kernel(compose(i0, F.h0.inclusion), G.h0);
  s.maps[1] = lift_into_kernel(compose(p0, G.h0.inclusion), J.h0);
  s.maps[2] = delta;
  s.maps[3] = induced_on_cokernels(i1, F.h1, G.h1);
  s.maps[4] = induced_on_cokernels(p1, G.h1, J.h1);
  s.evaluate();
  return s;
}

}  // namespace folmod::gg
