#include "folmod/folmod/groups.hpp"

#include <numeric>

namespace folmod {

using abgroup::Atom;
using abgroup::AtomCardinality;
using abgroup::AtomKind;
using abgroup::BigInt;
using abgroup::Group;
using abgroup::KVector;

namespace {

Scalar tau_of(const SymbolTablePtr& t) { return Scalar::tau(t); }

// p / gcd(p, r): Exp of a resonant point is C / p'Z.
long exp_period(const TypeTag& t) { return t.p / std::gcd(t.p, t.r == 0 ? t.p : std::abs(t.r)); }

Group group_shell(const SymbolTablePtr& t, size_t a, size_t b) {
  Group g;
  g.symbols = t;
  g.a = a;
  g.b = b;
  return g;
}

GroupHom hom_shell(GroupPtr dom, GroupPtr cod) { return abgroup::zero_hom(std::move(dom), std::move(cod)); }

bool is_iso(const GroupHom& h) {
  if (!abgroup::check_hom(h).ok) return false;
  if (!h.dom->atoms.empty() || !h.cod->atoms.empty()) {
    // Atom-only models: the atom map has to be a bijection.
    return h.dom->a == 0 && h.dom->b == 0 && h.cod->a == 0 && h.cod->b == 0 &&
           h.atom_map.size() == h.dom->atoms.size() && h.dom->atoms.size() == h.cod->atoms.size();
  }
  return abgroup::is_injective(h) && abgroup::is_surjective(h);
}

// Diagonal sign maps between two models of the same shape; the first that is
// an isomorphism wins.
GroupHom model_iso(const GroupPtr& from, const GroupPtr& to, bool prefer_negative, const std::string& what) {
  if (from->a != to->a || from->b != to->b || from->atoms.size() != to->atoms.size())
    throw InvalidInput(what + ": local models have different shapes");
  std::vector<std::pair<int, int>> signs = {{1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  if (prefer_negative) std::swap(signs[0], signs[1]);
  for (auto [sc, sd] : signs) {
    GroupHom h = hom_shell(from, to);
    for (size_t i = 0; i < from->a; ++i) h.cc[i][i] = Scalar(sc);
    for (size_t i = 0; i < from->b; ++i) h.dd(i, i) = sd;
    for (size_t i = 0; i < from->atoms.size(); ++i) h.atom_map.push_back({i, i});
    if (is_iso(h)) return h;
  }
  throw InvalidInput(what + ": local models are not isomorphic by a sign change");
}

const SideData& side_or_throw(const FoliationInput& in, const std::string& point, size_t comp) {
  const SideData* s = in.sing.find(point, comp);
  if (!s) throw InvalidInput("no singularity data for " + point + " on " + in.divisor.components[comp].name);
  return *s;
}

// How a component enters Sym.
struct VertexModel {
  enum Kind { Centralizer, Cyclic, Chain } kind = Chain;
  GroupPtr sym, exp;
  GroupHom incl;
  const SideData* base = nullptr;  // Chain: side whose model is used
  TypeTag homogeneous;             // Centralizer: the common type
  long n = 1;                      // Cyclic: centralizer order
};

VertexModel vertex_model(const FoliationInput& in, const Analysis& an, size_t v) {
  const auto& t = in.symbols;
  const std::string& name = in.divisor.components[v].name;
  const VertexHolonomy* h = in.holonomy(v);
  if (!h) throw InvalidInput("no holonomy class for " + name);
  VertexModel m;
  std::vector<const SideData*> aperiodic;
  const SideData* red_corner = nullptr;
  for (const auto& p : in.sigma_points(v)) {
    const SideData& s = side_or_throw(in, p, v);
    if (s.tag.periodic()) continue;
    aperiodic.push_back(&s);
    if (auto e = an.dual.graph.find_edge(p); e && an.col.R.edges[*e] && !red_corner) red_corner = &s;
  }
  if (h->cls == HolonomyClass::Finite) throw InvalidInput(name + " has finite holonomy and is not red");
  if (an.dual.val_sigma[v] <= 2) {
    if (h->cls == HolonomyClass::NonAbelian)
      throw NonAbelianRedSym(name + " has valency " + std::to_string(an.dual.val_sigma[v]) + " and non-abelian holonomy");
    if (aperiodic.empty()) throw InvalidInput(name + " has no aperiodic local holonomy");
    m.kind = VertexModel::Chain;
    m.base = red_corner ? red_corner : aperiodic.front();
    m.sym = side_model(*m.base, t);
    m.exp = exp_side_model(*m.base, t);
    m.incl = exp_side_inclusion(*m.base, m.exp, m.sym);
    return m;
  }
  if (h->cls == HolonomyClass::NonAbelian) {
    m.kind = VertexModel::Cyclic;
    if (h->centralizer.size() > 1) throw InvalidInput(name + ": centralizer must be cyclic");
    m.n = h->centralizer.empty() ? 1 : h->centralizer[0];
    Group g = group_shell(t, 0, 1);
    g.add_relation({}, {BigInt(m.n)});
    m.sym = abgroup::make_group(std::move(g));
    m.exp = abgroup::trivial_group(t);
    m.incl = hom_shell(m.exp, m.sym);
    return m;
  }
  // Abelian, valency >= 3: C(H_D) = C(h) for any aperiodic h in H_D.
  if (aperiodic.empty()) throw InvalidInput(name + " has no aperiodic local holonomy");
  m.kind = VertexModel::Centralizer;
  const TypeTag& t0 = aperiodic.front()->tag;
  for (const SideData* s : aperiodic) {
    bool same = s->tag.kind == t0.kind;
    if (same && t0.resonant()) same = s->tag.p == t0.p && s->tag.m == t0.m && s->tag.beta_image_order == t0.beta_image_order;
    if (same && t0.kind == HolonomyType::L0) same = s->tag.atom == t0.atom;
    if (!same) throw TypeHeterogeneity(name + " mixes local types " + t0.text() + " and " + s->tag.text());
  }
  m.homogeneous = t0;
  switch (t0.kind) {
    case HolonomyType::L1: {
      Group g = group_shell(t, 1, 0);
      g.add_relation({tau_of(t)}, {});
      m.sym = m.exp = abgroup::make_group(std::move(g));
      m.incl = abgroup::identity_hom(m.sym);
      return m;
    }
    case HolonomyType::R1: {
      Group g = group_shell(t, 1, 1);
      g.add_relation({Scalar(0)}, {BigInt(t0.p)});
      m.sym = abgroup::make_group(std::move(g));
      m.exp = abgroup::make_group(group_shell(t, 1, 0));
      m.incl = hom_shell(m.exp, m.sym);
      m.incl.cc[0][0] = Scalar(1);
      return m;
    }
    case HolonomyType::R0: {
      Group g = group_shell(t, 0, 2);
      g.add_relation({}, {BigInt(0), BigInt(t0.beta_image_order)});
      m.sym = abgroup::make_group(std::move(g));
      break;
    }
    case HolonomyType::L0: {
      Group g = group_shell(t, 0, 0);
      g.atoms.push_back(Atom{t0.atom, AtomKind::DisconnectedU1, AtomCardinality::PossiblyUncountable, std::nullopt, false});
      m.sym = abgroup::make_group(std::move(g));
      break;
    }
    case HolonomyType::P: break;
  }
  m.exp = abgroup::trivial_group(t);
  m.incl = hom_shell(m.exp, m.sym);
  return m;
}

// Sym_D -> side model of D at the given side (D's own coordinates).
GroupHom vertex_to_side(const FoliationInput& in, const VertexModel& m, const SideData& s) {
  const auto& t = in.symbols;
  GroupPtr target = side_model(s, t);
  const std::string what = s.point + " on " + in.divisor.components[s.comp].name;
  if (s.tag.periodic()) throw NonAbelianRedSym(what + ": red corner with periodic holonomy");
  switch (m.kind) {
    case VertexModel::Chain:
      if (&s == m.base) return abgroup::identity_hom(m.sym);
      return model_iso(m.sym, target, false, what);
    case VertexModel::Centralizer: {
      GroupHom h = hom_shell(m.sym, target);
      for (size_t i = 0; i < std::min(m.sym->a, target->a); ++i) h.cc[i][i] = Scalar(1);
      for (size_t i = 0; i < std::min(m.sym->b, target->b); ++i) h.dd(i, i) = 1;
      for (size_t i = 0; i < std::min(m.sym->atoms.size(), target->atoms.size()); ++i) h.atom_map.push_back({i, i});
      return h;
    }
    case VertexModel::Cyclic: {
      GroupHom h = hom_shell(m.sym, target);
      switch (s.tag.kind) {
        // A chosen root of the generator of the edge group.
        case HolonomyType::L1: h.dc[0][0] = tau_of(t) / Scalar(m.n); break;
        case HolonomyType::R1:
          if (s.tag.p % m.n != 0) throw InvalidInput(what + ": centralizer order does not divide p");
          h.dd(0, 0) = s.tag.p / m.n;
          break;
        case HolonomyType::R0:
          if (s.tag.beta_image_order % m.n != 0) throw InvalidInput(what + ": centralizer order does not divide k");
          h.dd(1, 0) = s.tag.beta_image_order / m.n;
          break;
        case HolonomyType::L0:
          if (m.n > 1) h.unresolved_targets.push_back(0);
          break;
        case HolonomyType::P: break;
      }
      return h;
    }
  }
  return hom_shell(m.sym, target);
}

}  // namespace

GroupPtr side_model(const SideData& s, const SymbolTablePtr& t) {
  const TypeTag& k = s.tag;
  switch (k.kind) {
    case HolonomyType::L1: {
      if (!s.cs) throw InvalidInput(s.point + ": L1 side needs a CS index");
      Group g = group_shell(t, 1, 0);
      g.add_relation({tau_of(t)}, {});
      g.add_relation({tau_of(t) * *s.cs}, {});
      return abgroup::make_group(std::move(g));
    }
    case HolonomyType::R1: {
      Group g = group_shell(t, 1, 1);
      g.add_relation({Scalar(0)}, {BigInt(k.p)});
      g.add_relation({Scalar(1)}, {BigInt(k.r)});
      return abgroup::make_group(std::move(g));
    }
    case HolonomyType::R0: {
      // Split model Z e ⊕ Z/k f with h = (m, r k / p).
      if (k.p % k.beta_image_order != 0 || (k.r * k.beta_image_order) % k.p != 0)
        throw InvalidInput(s.point + ": inconsistent R0 parameters");
      Group g = group_shell(t, 0, 2);
      g.add_relation({}, {BigInt(0), BigInt(k.beta_image_order)});
      g.add_relation({}, {BigInt(k.m), BigInt(k.r * k.beta_image_order / k.p)});
      return abgroup::make_group(std::move(g));
    }
    case HolonomyType::L0: {
      Group g = group_shell(t, 0, 0);
      g.atoms.push_back(Atom{k.atom, AtomKind::DisconnectedU1, AtomCardinality::PossiblyUncountable, BigInt(0), false});
      return abgroup::make_group(std::move(g));
    }
    case HolonomyType::P: break;
  }
  throw InvalidInput(s.point + ": periodic holonomy has no red model");
}

GroupPtr exp_side_model(const SideData& s, const SymbolTablePtr& t) {
  switch (s.tag.kind) {
    case HolonomyType::L1: return side_model(s, t);
    case HolonomyType::R1: {
      Group g = group_shell(t, 1, 0);
      g.add_relation({Scalar(exp_period(s.tag))}, {});
      return abgroup::make_group(std::move(g));
    }
    default: return abgroup::trivial_group(t);
  }
}

GroupHom exp_side_inclusion(const SideData& s, const GroupPtr& exp, const GroupPtr& sym) {
  GroupHom h = hom_shell(exp, sym);
  if (s.tag.kind == HolonomyType::L1 || s.tag.kind == HolonomyType::R1) h.cc[0][0] = Scalar(1);
  return h;
}

GroupHom cross_side(const SideData& other, const SideData& pref, const SymbolTablePtr& t) {
  GroupPtr from = side_model(other, t), to = side_model(pref, t);
  const std::string what = "corner " + pref.point;
  if (pref.tag.kind == HolonomyType::L1) {
    // Multiplication by -cs(pref) = -1/cs(other).
    GroupHom h = hom_shell(from, to);
    h.cc[0][0] = -*pref.cs;
    if (!abgroup::check_hom(h).ok) throw InvalidInput(what + ": CS indices of the two sides are not inverse");
    return h;
  }
  return model_iso(from, to, true, what);
}

GroupHom lift_through(const GroupHom& f, const GroupHom& i) {
  if (f.dom->b != 0 || !f.dom->atoms.empty()) throw InvalidInput("lift_through: domain has discrete generators");
  GroupHom g = hom_shell(f.dom, i.dom);
  for (size_t j = 0; j < f.dom->a; ++j) {
    KVector col(f.cod->a);
    for (size_t r = 0; r < f.cod->a; ++r) col[r] = f.cc[r][j];
    if (exactnum::is_zero(col)) continue;
    auto v = exactnum::k_solve(i.cc, col, i.dom->a);
    if (!v) throw InvalidInput("lift_through: image leaves the subgroup");
    for (size_t r = 0; r < i.dom->a; ++r) g.cc[r][j] = (*v)[r];
  }
  if (auto c = abgroup::check_hom(g); !c.ok) throw InvalidInput("lift_through: " + c.violation);
  return g;
}

RedGroupGraphs build_red_group_graphs(const FoliationInput& in, const Analysis& an, const Subgraph& over) {
  const auto& t = in.symbols;
  RedGroupGraphs out;
  out.red = gg::restrict_graph(an.dual.graph, over);
  const Graph& g = out.red.graph;
  size_t nv = g.vertex_count(), ne = g.edge_count();

  std::vector<VertexModel> models;
  for (size_t v = 0; v < nv; ++v) models.push_back(vertex_model(in, an, out.red.vertex_from[v]));

  auto& sym = out.sym;
  auto& exp = out.exp;
  sym.graph = exp.graph = g;
  for (const auto& m : models) {
    sym.vgroup.push_back(m.sym);
    exp.vgroup.push_back(m.exp);
    out.incl.vmap.push_back(m.incl);
  }
  for (size_t e = 0; e < ne; ++e) {
    const auto& ed = g.edge(e);
    size_t tail = out.red.vertex_from[ed.tail], head = out.red.vertex_from[ed.head];
    const SideData& pref = side_or_throw(in, ed.name, tail);
    const SideData& other = side_or_throw(in, ed.name, head);
    if (pref.tag.periodic() || other.tag.periodic()) throw NonAbelianRedSym("red corner " + ed.name + " is periodic");
    GroupPtr se = side_model(pref, t);
    GroupPtr xe = exp_side_model(pref, t);
    GroupHom ie = exp_side_inclusion(pref, xe, se);
    sym.egroup.push_back(se);
    exp.egroup.push_back(xe);
    out.incl.emap.push_back(ie);

    GroupHom rt = vertex_to_side(in, models[ed.tail], pref);
    GroupHom rh = abgroup::compose(cross_side(other, pref, t), vertex_to_side(in, models[ed.head], other));
    rt.cod = rh.cod = se;
    sym.rho_tail.push_back(rt);
    sym.rho_head.push_back(rh);
    // Exp restrictions are the unique lifts of the Sym ones.
    exp.rho_tail.push_back(lift_through(abgroup::compose(rt, out.incl.vmap[ed.tail]), ie));
    exp.rho_head.push_back(lift_through(abgroup::compose(rh, out.incl.vmap[ed.head]), ie));
  }
  sym.validate();
  exp.validate();

  // Dis: elementwise cokernels.
  auto& dis = out.dis;
  dis.graph = g;
  std::vector<abgroup::Cokernel> vck, eck;
  for (size_t v = 0; v < nv; ++v) {
    vck.push_back(abgroup::cokernel(out.incl.vmap[v]));
    dis.vgroup.push_back(vck.back().group);
    out.proj.vmap.push_back(vck.back().projection);
  }
  for (size_t e = 0; e < ne; ++e) {
    eck.push_back(abgroup::cokernel(out.incl.emap[e]));
    dis.egroup.push_back(eck.back().group);
    out.proj.emap.push_back(eck.back().projection);
  }
  for (size_t e = 0; e < ne; ++e) {
    const auto& ed = g.edge(e);
    dis.rho_tail.push_back(abgroup::induced_on_cokernels(sym.rho_tail[e], vck[ed.tail], eck[e]));
    dis.rho_head.push_back(abgroup::induced_on_cokernels(sym.rho_head[e], vck[ed.head], eck[e]));
  }
  dis.validate();
  return out;
}

gg::GroupGraph build_sym_graph(const FoliationInput& in, const Analysis& an) {
  return build_red_group_graphs(in, an, an.col.R).sym;
}
gg::GroupGraph build_exp_graph(const FoliationInput& in, const Analysis& an) {
  return build_red_group_graphs(in, an, an.col.R).exp;
}
gg::GroupGraph build_dis_graph(const FoliationInput& in, const Analysis& an) {
  return build_red_group_graphs(in, an, an.col.R).dis;
}

}  // namespace folmod
