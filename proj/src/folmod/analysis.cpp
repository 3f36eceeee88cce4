#include "folmod/folmod/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

namespace folmod {

namespace {

const TypeTag* tag_at(const FoliationInput& in, const std::string& point, size_t comp) {
  const SideData* s = in.sing.find(point, comp);
  return s ? &s->tag : nullptr;
}

bool corner_periodic(const FoliationInput& in, const Graph& g, size_t e) {
  const auto& ed = g.edge(e);
  const TypeTag* a = tag_at(in, ed.name, ed.tail);
  const TypeTag* b = tag_at(in, ed.name, ed.head);
  return a && b && a->periodic() && b->periodic();
}

bool corner_nodal(const FoliationInput& in, const Graph& g, size_t e) {
  const auto& ed = g.edge(e);
  for (size_t v : {ed.tail, ed.head}) {
    const SideData* s = in.sing.find(ed.name, v);
    if (s && s->nodal) return true;
  }
  return false;
}

// Non-periodic tags at the Σ points of a component.
std::vector<const TypeTag*> aperiodic_tags(const FoliationInput& in, size_t comp) {
  std::vector<const TypeTag*> out;
  for (const auto& p : in.sigma_points(comp))
    if (const TypeTag* t = tag_at(in, p, comp); t && !t->periodic()) out.push_back(t);
  return out;
}

HolonomyClass class_of(const FoliationInput& in, size_t comp) {
  const VertexHolonomy* h = in.holonomy(comp);
  return h ? h->cls : HolonomyClass::AbelianInfinite;
}

struct UnionFind {
  std::vector<size_t> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  size_t find(size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

}  // namespace

DualGraph build_dual_graph(const MarkedDivisor& d) {
  DualGraph out;
  for (const auto& c : d.components) out.graph.add_vertex(c.name);
  for (const auto& k : d.corners) out.graph.add_edge(k.comps[0], k.comps[1], k.name);
  if (d.components.empty()) throw DisconnectedDivisor("the divisor has no components");
  std::vector<size_t> comp;
  if (gg::components(out.graph, Subgraph::full(out.graph), &comp) != 1)
    throw DisconnectedDivisor("the dual graph is not connected");
  out.val_sigma.assign(d.components.size(), 0);
  for (size_t c = 0; c < d.corners.size(); ++c)
    if (d.corner_in_sigma(c))
      for (size_t v : d.corners[c].comps) ++out.val_sigma[v];
  for (const auto& a : d.attachments) ++out.val_sigma[a.comp];
  return out;
}

bool check_tc(const MarkedDivisor& d) {
  DualGraph dg = build_dual_graph(d);
  const Graph& g = dg.graph;
  Subgraph inv = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) inv.vertices[v] = !d.components[v].dicritical;
  for (size_t e = 0; e < g.edge_count(); ++e) inv.edges[e] = inv.vertices[g.edge(e).tail] && inv.vertices[g.edge(e).head];
  for (const auto& s : gg::component_subgraphs(g, inv)) {
    bool ok = false;
    for (size_t v = 0; v < g.vertex_count(); ++v)
      if (s.vertices[v] && dg.val_sigma[v] != 2) ok = true;
    if (!ok) return false;
  }
  return true;
}

Subgraph build_cut_graph(const FoliationInput& in, const DualGraph& dg) {
  const Graph& g = dg.graph;
  Subgraph s = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) s.vertices[v] = !in.divisor.components[v].dicritical;
  for (size_t e = 0; e < g.edge_count(); ++e)
    s.edges[e] = in.divisor.corner_in_sigma(e) && !corner_nodal(in, g, e);
  return s;
}

Coloring color(const FoliationInput& in, const DualGraph& dg, const Subgraph& cut) {
  const Graph& g = dg.graph;
  Coloring c;
  c.vred.assign(g.vertex_count(), false);
  c.ered.assign(g.edge_count(), false);
  for (size_t v = 0; v < g.vertex_count(); ++v)
    c.vred[v] = cut.vertices[v] && class_of(in, v) != HolonomyClass::Finite;
  for (size_t e = 0; e < g.edge_count(); ++e) c.ered[e] = cut.edges[e] && !corner_periodic(in, g, e);

  c.R = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) c.R.vertices[v] = c.vred[v];
  for (size_t e = 0; e < g.edge_count(); ++e)
    c.R.edges[e] = c.ered[e] && c.vred[g.edge(e).tail] && c.vred[g.edge(e).head];

  // Elements whose Exp group vanishes.
  c.R0 = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (!c.R.vertices[v]) continue;
    HolonomyClass k = class_of(in, v);
    if (k == HolonomyClass::NonAbelian) {
      c.R0.vertices[v] = true;
    } else if (k == HolonomyClass::AbelianInfinite) {
      auto tags = aperiodic_tags(in, v);
      c.R0.vertices[v] = !tags.empty() && std::all_of(tags.begin(), tags.end(), [](const TypeTag* t) { return t->exp_trivial(); });
    }
  }
  for (size_t e = 0; e < g.edge_count(); ++e) {
    if (!c.R.edges[e]) continue;
    const auto& ed = g.edge(e);
    const TypeTag* t = tag_at(in, ed.name, ed.tail);
    c.R0.edges[e] = t && t->exp_trivial() && c.R0.vertices[ed.tail] && c.R0.vertices[ed.head];
  }

  c.R1 = Subgraph::empty(g);
  for (size_t v = 0; v < g.vertex_count(); ++v) c.R1.vertices[v] = c.R.vertices[v] && !c.R0.vertices[v];
  for (size_t e = 0; e < g.edge_count(); ++e) {
    if (!c.R.edges[e] || c.R0.edges[e]) continue;
    c.R1.edges[e] = true;
    c.R1.vertices[g.edge(e).tail] = c.R1.vertices[g.edge(e).head] = true;
  }
  return c;
}

std::string to_string(ChainKind k) {
  switch (k) {
    case ChainKind::Lambda: return "lambda";
    case ChainKind::Nu: return "nu";
    case ChainKind::Mu: return "mu";
    case ChainKind::Beta: return "beta";
    case ChainKind::Periodic: return "periodic";
  }
  return "?";
}

std::vector<SingularChain> singular_chains(const FoliationInput& in, const DualGraph& dg, const Subgraph& cut) {
  const Graph& g = dg.graph;
  std::vector<SingularChain> out;
  std::set<std::vector<size_t>> seen;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (!cut.vertices[v] || dg.val_sigma[v] < 3) continue;
    for (size_t e0 : g.incident(v)) {
      if (!cut.edges[e0]) continue;
      SingularChain ch;
      ch.vertices.push_back(v);
      size_t cur = v, via = e0;
      bool closed = false;
      for (;;) {
        ch.edges.push_back(via);
        size_t next = g.edge(via).other(cur);
        ch.vertices.push_back(next);
        if (dg.val_sigma[next] >= 3) {
          closed = true;
          break;
        }
        if (dg.val_sigma[next] != 2) break;
        // The other Σ point must be a corner of the cut graph.
        std::optional<size_t> onward;
        for (size_t e : g.incident(next))
          if (e != via && cut.edges[e]) onward = e;
        if (!onward || std::find(ch.edges.begin(), ch.edges.end(), *onward) != ch.edges.end()) break;
        cur = next;
        via = *onward;
      }
      if (!closed) continue;
      auto key = ch.edges;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;

      ch.kind = ChainKind::Lambda;
      bool kind_set = false;
      for (size_t e : ch.edges) {
        const TypeTag* t = tag_at(in, g.edge(e).name, g.edge(e).tail);
        if (!t || t->periodic()) {
          ch.kind = ChainKind::Periodic;
          break;
        }
        if (kind_set) continue;
        kind_set = true;
        switch (t->kind) {
          case HolonomyType::L1: ch.kind = ChainKind::Lambda; break;
          case HolonomyType::R1: ch.kind = ChainKind::Nu; break;
          case HolonomyType::R0: ch.kind = ChainKind::Mu; break;
          case HolonomyType::L0: ch.kind = ChainKind::Beta; break;
          case HolonomyType::P: break;
        }
      }
      out.push_back(std::move(ch));
    }
  }
  return out;
}

ChainCounts count_chains(const std::vector<SingularChain>& cs) {
  ChainCounts n;
  for (const auto& c : cs) {
    switch (c.kind) {
      case ChainKind::Lambda: ++n.lambda; break;
      case ChainKind::Nu: ++n.nu; break;
      case ChainKind::Mu: ++n.mu; break;
      case ChainKind::Beta: ++n.beta; break;
      case ChainKind::Periodic: ++n.periodic; break;
    }
  }
  return n;
}

size_t tau(const Graph& g, const Subgraph& R, const Subgraph& R0) {
  UnionFind uf(g.vertex_count() + 1);
  const size_t star = g.vertex_count();
  size_t verts = 0, edges = 0;
  bool any0 = false;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (!R.vertices[v]) continue;
    if (R0.vertices[v]) {
      uf.unite(v, star);
      any0 = true;
    } else {
      ++verts;
    }
  }
  if (any0) ++verts;
  for (size_t e = 0; e < g.edge_count(); ++e) {
    if (!R.edges[e] || R0.edges[e]) continue;
    ++edges;
    uf.unite(g.edge(e).tail, g.edge(e).head);
  }
  std::set<size_t> roots;
  for (size_t v = 0; v < g.vertex_count(); ++v)
    if (R.vertices[v]) roots.insert(uf.find(v));
  return edges + roots.size() - verts;
}

Verdict is_non_degenerate(const FoliationInput& in, const DualGraph& dg, const Subgraph& cut) {
  if (!in.flags.tr) return {false, "condition (TR) is not declared"};
  for (size_t v = 0; v < dg.graph.vertex_count(); ++v)
    if (cut.vertices[v] && dg.val_sigma[v] >= 3 && class_of(in, v) != HolonomyClass::NonAbelian)
      return {false, "component " + dg.graph.vertex_name(v) + " has valency " + std::to_string(dg.val_sigma[v]) +
                         " and " + to_string(class_of(in, v)) + " holonomy"};
  for (const auto& c : singular_chains(in, dg, cut))
    if (c.kind == ChainKind::Periodic) {
      std::string names;
      for (size_t e : c.edges) names += (names.empty() ? "" : ",") + dg.graph.edge(e).name;
      return {false, "singular chain through " + names + " has periodic holonomy"};
    }
  return {};
}

bool green_onto(const FoliationInput& in, size_t comp, const std::string& point) {
  const VertexHolonomy* h = in.holonomy(comp);
  if (!h || h->cls != HolonomyClass::Finite) return false;
  auto it = h->point_orders.find(point);
  if (it == h->point_orders.end()) return h->order == 1;
  return it->second == h->order;
}

Verdict is_finite_type(const FoliationInput& in, const DualGraph& dg, const Subgraph& cut, const Coloring& col) {
  const Graph& g = dg.graph;
  auto comps = gg::component_subgraphs(g, cut);
  for (size_t i = 0; i < comps.size(); ++i) {
    const Subgraph& A = comps[i];
    auto where = [&] {
      std::string names;
      for (size_t v = 0; v < g.vertex_count(); ++v)
        if (A.vertices[v]) names += (names.empty() ? "" : ",") + g.vertex_name(v);
      return "cut component {" + names + "}";
    };
    Subgraph B = gg::intersect(A, col.R);
    // Every element outside the seed set, reached from it, is a green vertex
    // whose restriction towards the seed is onto.
    auto repulsive_from = [&](const std::vector<bool>& seed) -> std::string {
      std::vector<bool> done = seed;
      std::queue<size_t> q;
      for (size_t v = 0; v < g.vertex_count(); ++v)
        if (seed[v]) q.push(v);
      while (!q.empty()) {
        size_t u = q.front();
        q.pop();
        for (size_t e : g.incident(u)) {
          if (!A.edges[e]) continue;
          size_t w = g.edge(e).other(u);
          if (seed[u] && seed[w]) continue;
          if (done[w]) continue;
          if (col.vred[w] || !green_onto(in, w, g.edge(e).name))
            return "restriction of " + g.vertex_name(w) + " at " + g.edge(e).name + " is not onto";
          done[w] = true;
          q.push(w);
        }
      }
      return "";
    };
    if (!B.is_empty()) {
      if (gg::components(g, B, nullptr) != 1) return {false, where() + ": red part is not connected"};
      auto why = repulsive_from(B.vertices);
      if (!why.empty()) return {false, where() + ": red part is not repulsive (" + why + ")"};
      continue;
    }
    bool found = false;
    for (size_t v = 0; v < g.vertex_count() && !found; ++v) {
      if (!A.vertices[v]) continue;
      std::vector<bool> seed(g.vertex_count(), false);
      seed[v] = true;
      found = repulsive_from(seed).empty();
    }
    if (!found) return {false, where() + ": no repulsive green vertex"};
  }
  return {};
}

Subgraph prune_to_red(const FoliationInput& in, const DualGraph& dg, const Subgraph& cut, const Coloring& col) {
  const Graph& g = dg.graph;
  Subgraph s = cut;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& b : gg::find_partial_dead_branches(g, s, col.vred)) {
      size_t len = 0;
      while (len < b.vertices.size() && !col.vred[b.vertices[len]] &&
             green_onto(in, b.vertices[len], g.edge(b.edges[len]).name))
        ++len;
      if (len == 0) continue;
      for (size_t i = 0; i < len; ++i) {
        s.vertices[b.vertices[i]] = false;
        s.edges[b.edges[i]] = false;
      }
      changed = true;
      break;
    }
  }
  return s;
}

std::vector<Violation> validate(const FoliationInput& in) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };
  const auto& d = in.divisor;
  DualGraph dg;
  try {
    dg = build_dual_graph(d);
  } catch (const DisconnectedDivisor& e) {
    add("disconnected", e.what());
    return out;
  }
  const Graph& g = dg.graph;
  if (g.edge_count() + 1 != g.vertex_count()) add("not_tree", "the dual graph has a cycle");
  const auto& comp_name = [&](size_t v) { return d.components[v].name; };

  for (size_t c = 0; c < d.corners.size(); ++c)
    if (d.corners[c].declared_in_sigma && *d.corners[c].declared_in_sigma != d.corner_in_sigma(c))
      add("in_sigma_mismatch", "corner " + d.corners[c].name + ": declared in_sigma disagrees with dicriticity");
  for (const auto& a : d.attachments) {
    if (a.declared_in_sigma && !*a.declared_in_sigma)
      add("in_sigma_mismatch", "attachment " + a.name + " is always a point of Σ");
    if (d.components[a.comp].dicritical) add("attachment_on_dicritical", "attachment " + a.name + " lies on a dicritical component");
  }

  // Side data exactly on the Σ sides.
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (d.components[v].dicritical) continue;
    for (const auto& p : in.sigma_points(v))
      if (!in.sing.find(p, v)) add("missing_side_data", "no singularity data for " + p + " on " + comp_name(v));
  }
  for (const auto& s : in.sing.sides) {
    auto pts = in.sigma_points(s.comp);
    if (d.components[s.comp].dicritical || std::find(pts.begin(), pts.end(), s.point) == pts.end())
      add("unknown_side", s.point + " is not a point of Σ on " + comp_name(s.comp));
    const TypeTag& t = s.tag;
    if (t.kind == HolonomyType::L1) {
      if (!s.cs) add("missing_cs", "L1 side " + s.point + " on " + comp_name(s.comp) + " needs a CS index");
      else if (s.cs->is_rational()) add("l1_rational_cs", "L1 side " + s.point + " on " + comp_name(s.comp) + " has a rational CS index");
    }
    if (t.kind == HolonomyType::R0) {
      if (t.p % t.beta_image_order != 0)
        add("r0_parameters", s.point + " on " + comp_name(s.comp) + ": beta_image_order must divide p");
      else if ((t.r * t.beta_image_order) % t.p != 0)
        add("r0_parameters", s.point + " on " + comp_name(s.comp) + ": r must be a multiple of p/beta_image_order");
    }
  }

  // Both sides of a corner of Σ carry the same type.
  for (size_t e = 0; e < g.edge_count(); ++e) {
    if (!d.corner_in_sigma(e)) continue;
    const auto& ed = g.edge(e);
    const SideData* a = in.sing.find(ed.name, ed.tail);
    const SideData* b = in.sing.find(ed.name, ed.head);
    if (!a || !b) continue;
    if (a->tag.periodic() != b->tag.periodic() || a->tag.kind != b->tag.kind) {
      add("corner_type_mismatch", "corner " + ed.name + " has types " + a->tag.text() + " and " + b->tag.text());
      continue;
    }
    if (a->tag.resonant() && (a->tag.p != b->tag.p || a->tag.r != b->tag.r || a->tag.m != b->tag.m ||
                              a->tag.beta_image_order != b->tag.beta_image_order))
      add("corner_type_mismatch", "resonant corner " + ed.name + " has different parameters on its two sides");
    if (a->tag.kind == HolonomyType::L1 && a->cs && b->cs && *a->cs * *b->cs != Scalar(1))
      add("corner_reciprocity", "corner " + ed.name + ": CS indices " + a->cs->to_string() + " and " +
                                    b->cs->to_string() + " are not reciprocal");
    if (a->nodal != b->nodal) add("nodal_mismatch", "corner " + ed.name + " is nodal on one side only");
  }

  Subgraph cut = build_cut_graph(in, dg);
  Coloring col = color(in, dg, cut);
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    const VertexHolonomy* h = in.holonomy(v);
    if (d.components[v].dicritical) {
      if (h) add("holonomy_on_dicritical", comp_name(v) + " is dicritical and has no holonomy");
      continue;
    }
    if (!h) {
      add("missing_holonomy", "no holonomy class for " + comp_name(v));
      continue;
    }
    auto tags = aperiodic_tags(in, v);
    if (h->cls == HolonomyClass::Finite) {
      if (!tags.empty()) add("finite_aperiodic", comp_name(v) + " has finite holonomy but an aperiodic local holonomy");
      for (const auto& [p, n] : h->point_orders) {
        auto pts = in.sigma_points(v);
        if (std::find(pts.begin(), pts.end(), p) == pts.end())
          add("point_orders", comp_name(v) + ": " + p + " is not a point of Σ on it");
        else if (h->order % n != 0)
          add("point_orders", comp_name(v) + ": order at " + p + " does not divide " + std::to_string(h->order));
      }
      continue;
    }
    if (h->cls == HolonomyClass::AbelianInfinite && tags.empty())
      add("abelian_all_periodic", comp_name(v) + " has infinite abelian holonomy generated by periodic elements");
    if (h->cls == HolonomyClass::NonAbelian && dg.val_sigma[v] <= 2 && col.vred[v])
      add("nonabelian_low_valency", comp_name(v) + " has valency " + std::to_string(dg.val_sigma[v]) +
                                        " and cannot carry non-abelian holonomy");
    if (h->cls == HolonomyClass::AbelianInfinite && !tags.empty()) {
      const TypeTag* t0 = tags[0];
      for (const TypeTag* t : tags) {
        bool same = t->kind == t0->kind;
        if (same && t0->resonant()) same = t->p == t0->p && t->m == t0->m && t->beta_image_order == t0->beta_image_order;
        if (same && t0->kind == HolonomyType::L0) same = t->atom == t0->atom;
        if (!same) {
          add("type_heterogeneity", comp_name(v) + " mixes local types " + t0->text() + " and " + t->text());
          break;
        }
      }
      if (dg.val_sigma[v] == 2 && tags.size() == 2 && tags[0]->kind == HolonomyType::L1) {
        auto pts = in.sigma_points(v);
        const SideData* a = in.sing.find(pts[0], v);
        const SideData* b = in.sing.find(pts[1], v);
        if (a && b && a->cs && b->cs) {
          Scalar s = *a->cs + *b->cs;
          if (!s.is_rational() || s.rational_value().get_den() != 1)
            add("cs_sum", comp_name(v) + ": the two CS indices do not sum to an integer");
        }
      }
    }
    if (h->cls == HolonomyClass::NonAbelian && dg.val_sigma[v] >= 3 && col.vred[v]) {
      if (h->centralizer.size() > 1)
        add("noncyclic_centralizer", comp_name(v) + ": centralizer must be cyclic");
      long n = h->centralizer.empty() ? 1 : h->centralizer[0];
      for (const TypeTag* t : tags) {
        if (t->kind == HolonomyType::R1 && t->p % n != 0)
          add("centralizer_order", comp_name(v) + ": centralizer order does not divide p at a resonant point");
        if (t->kind == HolonomyType::R0 && t->beta_image_order % n != 0)
          add("centralizer_order", comp_name(v) + ": centralizer order does not divide beta_image_order");
      }
    }
    // Camacho-Sad: indices along D sum to D·D.
    if (d.components[v].self_intersection) {
      Scalar sum(0);
      bool all = true;
      for (const auto& p : in.sigma_points(v)) {
        const SideData* s = in.sing.find(p, v);
        if (!s || !s->cs) all = false;
        else sum += *s->cs;
      }
      if (all && sum != Scalar(*d.components[v].self_intersection))
        add("camacho_sad", comp_name(v) + ": CS indices sum to " + sum.to_string() + ", not the self-intersection " +
                               std::to_string(*d.components[v].self_intersection));
    }
  }

  if (in.expect.singular_chains) {
    size_t n = singular_chains(in, dg, cut).size();
    if (n != *in.expect.singular_chains)
      add("expect_chains", "found " + std::to_string(n) + " singular chains, expected " +
                               std::to_string(*in.expect.singular_chains));
  }
  return out;
}

Analysis analyze(const FoliationInput& in) {
  Analysis a;
  a.dual = build_dual_graph(in.divisor);
  a.tc = check_tc(in.divisor);
  a.cut = build_cut_graph(in, a.dual);
  a.col = color(in, a.dual, a.cut);
  a.chains = singular_chains(in, a.dual, a.cut);
  a.counts = count_chains(a.chains);
  a.tau = tau(a.dual.graph, a.col.R, a.col.R0);
  a.non_degenerate = is_non_degenerate(in, a.dual, a.cut);
  a.finite_type = is_finite_type(in, a.dual, a.cut, a.col);
  return a;
}

}  // namespace folmod
