#include "folmod/folmod/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace folmod {

using abgroup::Cokernel;
using abgroup::Group;
using gg::GroupGraph;

namespace {

struct H1 {
  gg::Coboundary cob;
  Cokernel ck;
  NormalFormReport rep;
};

// Cokernel route only, so atoms are fine.
H1 h1_of(const GroupGraph& g) {
  H1 h;
  h.cob = gg::coboundary0(g);
  h.ck = abgroup::cokernel(h.cob.d0);
  h.rep = abgroup::classify(*h.ck.group);
  return h;
}

bool has_atoms(const GroupGraph& g) {
  for (const auto& x : g.vgroup)
    if (!x->atoms.empty()) return true;
  for (const auto& x : g.egroup)
    if (!x->atoms.empty()) return true;
  return false;
}

// Finitely generated: no continuous part and no atoms.
bool finite_type_group(const NormalFormReport& r) { return r.free_c == 0 && r.factors.empty() && r.atoms.empty(); }

Subgraph to_restricted(const Subgraph& s, const gg::Restriction& r) {
  Subgraph out = Subgraph::empty(r.graph);
  for (size_t v = 0; v < r.vertex_from.size(); ++v) out.vertices[v] = s.vertices[r.vertex_from[v]];
  for (size_t e = 0; e < r.edge_from.size(); ++e) out.edges[e] = s.edges[r.edge_from[e]];
  return out;
}

std::vector<std::string> names_of(const Graph& g, const std::vector<bool>& vs) {
  std::vector<std::string> out;
  for (size_t v = 0; v < vs.size(); ++v)
    if (vs[v]) out.push_back(g.vertex_name(v));
  return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

void add_check(ModuliReport& r, std::string name, bool ok, std::string detail = "") {
  r.checks.push_back({std::move(name), ok, true, std::move(detail)});
}
void add_undecided(ModuliReport& r, std::string name, std::string detail) {
  r.checks.push_back({std::move(name), true, false, std::move(detail)});
}

template <class F>
void guarded_check(ModuliReport& r, const std::string& name, F&& f) {
  try {
    add_check(r, name, f());
  } catch (const abgroup::UnsupportedAtomMap& e) {
    add_undecided(r, name, e.what());
  } catch (const abgroup::NonFiniteTypeKernel& e) {
    add_undecided(r, name, e.what());
  }
}

// Adds an edge keeping each restriction with its endpoint.
void add_edge(GroupGraph& g, size_t u, size_t v, const std::string& name, GroupPtr grp, GroupHom ru, GroupHom rv) {
  size_t id = g.graph.add_edge(u, v, name);
  g.egroup.push_back(std::move(grp));
  if (g.graph.edge(id).tail == u) {
    g.rho_tail.push_back(std::move(ru));
    g.rho_head.push_back(std::move(rv));
  } else {
    g.rho_tail.push_back(std::move(rv));
    g.rho_head.push_back(std::move(ru));
  }
}

struct BlownUpZone {
  GroupGraph g;
  std::vector<std::optional<size_t>> new_vertex_edge;  // new vertex -> edge of R it came from
};

// Each edge end at an R0 vertex x becomes x -- e'' -- w -- e with Exp_w = Exp_e''
// = Exp_e and identity maps out of w.
BlownUpZone blow_up(const gg::RestrictedGroupGraph& z, const std::vector<bool>& r0v) {
  const GroupGraph& src = z.gg;
  BlownUpZone out;
  GroupGraph& b = out.g;
  for (size_t v = 0; v < src.graph.vertex_count(); ++v) {
    b.graph.add_vertex(src.graph.vertex_name(v));
    b.vgroup.push_back(src.vgroup[v]);
    out.new_vertex_edge.push_back(std::nullopt);
  }
  for (size_t e = 0; e < src.graph.edge_count(); ++e) {
    const auto& ed = src.graph.edge(e);
    const GroupPtr& ge = src.egroup[e];
    std::array<size_t, 2> end = {ed.tail, ed.head};
    std::array<GroupHom, 2> rho = {src.rho_tail[e], src.rho_head[e]};
    for (int k = 0; k < 2; ++k) {
      size_t x = k == 0 ? ed.tail : ed.head;
      if (!r0v[x]) continue;
      size_t w = b.graph.add_vertex(ed.name + "@" + src.graph.vertex_name(x));
      b.vgroup.push_back(ge);
      out.new_vertex_edge.push_back(z.edge_from[e]);
      add_edge(b, w, x, ed.name + "''@" + src.graph.vertex_name(x), ge, abgroup::identity_hom(ge), rho[k]);
      end[k] = w;
      rho[k] = abgroup::identity_hom(ge);
    }
    add_edge(b, end[0], end[1], ed.name, ge, rho[0], rho[1]);
  }
  b.validate();
  return out;
}

// Λ: C^τ -> H¹(R, Sym), one coordinate per active edge, through Exp of that edge.
GroupHom build_lambda(const RedGroupGraphs& G, const H1& sym, const std::vector<size_t>& active_edges) {
  const auto& t = G.sym.vgroup.empty() ? SymbolTablePtr() : G.sym.vgroup.front()->symbols;
  Group dom;
  dom.symbols = t;
  dom.a = active_edges.size();
  GroupPtr cdom = abgroup::make_group(std::move(dom));
  GroupHom xi = abgroup::zero_hom(cdom, sym.cob.c1.group);
  for (size_t r = 0; r < active_edges.size(); ++r) {
    size_t e = active_edges[r];
    const GroupHom& inj = sym.cob.c1.injections[e];
    const GroupHom& inc = G.incl.emap[e];
    if (inc.dom->a == 0) continue;
    // Column r: exp(t X_r) on edge e.
    for (size_t i = 0; i < inj.cod->a; ++i) {
      Scalar s;
      for (size_t k = 0; k < inc.cod->a; ++k) s += inj.cc[i][k] * inc.cc[k][0];
      xi.cc[i][r] = s;
    }
  }
  return abgroup::compose(sym.ck.projection, xi);
}

}  // namespace

std::vector<Subgraph> zones_of(const Graph& g, const Subgraph& R, const Subgraph& R0) {
  const size_t nv = g.vertex_count(), ne = g.edge_count();
  std::vector<size_t> parent(nv + ne);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto in_u_v = [&](size_t v) { return R.vertices[v] && !R0.vertices[v]; };
  auto in_u_e = [&](size_t e) { return R.edges[e] && !R0.edges[e]; };
  for (size_t e = 0; e < ne; ++e) {
    if (!in_u_e(e)) continue;
    for (size_t v : {g.edge(e).tail, g.edge(e).head})
      if (in_u_v(v)) parent[find(nv + e)] = find(v);
  }
  std::map<size_t, Subgraph> byroot;
  std::vector<size_t> order;
  auto zone = [&](size_t x) -> Subgraph& {
    size_t r = find(x);
    auto it = byroot.find(r);
    if (it == byroot.end()) {
      order.push_back(r);
      it = byroot.emplace(r, Subgraph::empty(g)).first;
    }
    return it->second;
  };
  for (size_t v = 0; v < nv; ++v)
    if (in_u_v(v)) zone(v).vertices[v] = true;
  for (size_t e = 0; e < ne; ++e) {
    if (!in_u_e(e)) continue;
    Subgraph& z = zone(nv + e);
    z.edges[e] = true;
    z.vertices[g.edge(e).tail] = z.vertices[g.edge(e).head] = true;
  }
  std::vector<Subgraph> out;
  for (size_t r : order) out.push_back(byroot.at(r));
  return out;
}

std::string moduli_shape(const ChainCounts& c, const std::vector<long>& mu_orders) {
  std::vector<std::string> parts;
  for (long m : mu_orders) parts.push_back("Z/" + std::to_string(m));
  for (size_t j = 1; j <= c.beta; ++j) parts.push_back("B_" + std::to_string(j));
  for (size_t j = 1; j <= c.lambda; ++j) parts.push_back("C*/α_" + std::to_string(j) + "^Z");
  if (c.nu == 1) parts.push_back("C*");
  if (c.nu > 1) parts.push_back("(C*)^" + std::to_string(c.nu));
  if (parts.empty()) return "0";
  return "(" + join(parts, " ⊕ ") + ")/Z";
}

bool ModuliReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return !c.decided || c.ok; });
}

ModuliReport compute_moduli_nondegenerate(const FoliationInput& in, const Analysis& an) {
  if (!an.tc) throw TcViolated("condition (TC) fails", "");
  if (!an.non_degenerate.holds) throw NotNonDegenerate("foliation is not non-degenerate", an.non_degenerate.witness);
  const Graph& dg = an.dual.graph;
  ModuliReport rep;
  rep.name = in.name;
  rep.pipeline = "nondegenerate";
  rep.counts = an.counts;
  rep.tau = an.tau;
  rep.red_vertices = names_of(dg, an.col.R.vertices);

  RedGroupGraphs G = build_red_group_graphs(in, an, an.col.R);
  rep.formal = has_atoms(G.sym);

  // Union of the singular chains, in R coordinates.
  Subgraph chains = Subgraph::empty(dg);
  for (const auto& c : an.chains) {
    for (size_t v : c.vertices) chains.vertices[v] = true;
    for (size_t e : c.edges) chains.edges[e] = true;
  }
  Subgraph rbar = to_restricted(chains, G.red);
  gg::PruneResult pr = gg::prune_all(G.sym, rbar.vertices);
  std::vector<bool> kept(dg.vertex_count(), false);
  for (size_t v = 0; v < pr.kept.vertices.size(); ++v)
    if (pr.kept.vertices[v]) kept[G.red.vertex_from[v]] = true;
  rep.kept_vertices = names_of(dg, kept);
  add_check(rep, "pruned_to_chains", pr.kept == rbar, "kept: " + join(rep.kept_vertices));

  H1 direct = h1_of(G.sym);
  H1 pruned = h1_of(pr.result.gg);
  rep.moduli = direct.rep;
  add_check(rep, "pruning_invariance", abgroup::classify_equal(direct.rep, pruned.rep),
            "H1(R) = " + direct.rep.text() + ", H1(pruned) = " + pruned.rep.text());
  add_check(rep, "lambda_plus_nu_equals_tau", an.counts.lambda + an.counts.nu == an.tau,
            std::to_string(an.counts.lambda) + " + " + std::to_string(an.counts.nu) + " vs " + std::to_string(an.tau));
  if (in.expect.singular_chains)
    add_check(rep, "singular_chain_count", an.chains.size() == *in.expect.singular_chains,
              std::to_string(an.chains.size()) + " found");
  std::vector<long> mu_orders;
  for (const auto& c : an.chains) {
    if (c.kind != ChainKind::Mu) continue;
    const auto& ed = dg.edge(c.edges.front());
    mu_orders.push_back(in.sing.find(ed.name, ed.tail)->tag.m);
  }
  rep.shape = moduli_shape(an.counts, mu_orders);
  return rep;
}

ModuliReport compute_moduli_finite_type(const FoliationInput& in, const Analysis& an) {
  if (!an.tc) throw TcViolated("condition (TC) fails", "");
  if (!an.finite_type.holds) throw NotFiniteType("foliation is not of finite type", an.finite_type.witness);
  const Graph& dg = an.dual.graph;
  ModuliReport rep;
  rep.name = in.name;
  rep.pipeline = "finite_type";
  rep.counts = an.counts;
  rep.tau = an.tau;
  rep.red_vertices = names_of(dg, an.col.R.vertices);

  Subgraph kept = prune_to_red(in, an.dual, an.cut, an.col);
  rep.kept_vertices = names_of(dg, kept.vertices);
  add_check(rep, "pruned_to_red", kept == an.col.R, "kept: " + join(rep.kept_vertices));

  RedGroupGraphs G = build_red_group_graphs(in, an, an.col.R);
  const Graph& rg = G.red.graph;
  rep.formal = has_atoms(G.sym);
  H1 hs = h1_of(G.sym), he = h1_of(G.exp), hd = h1_of(G.dis);
  rep.moduli = hs.rep;
  rep.h1_exp = he.rep;
  rep.h1_dis = hd.rep;

  GroupHom chi = abgroup::induced_on_cokernels(gg::c1_map(he.cob, hs.cob, G.incl), he.ck, hs.ck);
  GroupHom gamma = abgroup::induced_on_cokernels(gg::c1_map(hs.cob, hd.cob, G.proj), hs.ck, hd.ck);
  try {
    rep.finite_kernel = abgroup::classify(*abgroup::kernel(chi).group);
    add_check(rep, "F_finite", rep.finite_kernel->is_finite, "F = " + rep.finite_kernel->text());
  } catch (const std::exception& e) {
    add_undecided(rep, "F_finite", e.what());
  }

  if (!rep.formal) {
    gg::SixTermSequence les = gg::long_exact_sequence(G.exp, G.sym, G.dis, G.incl, G.proj);
    add_check(rep, "les_exact", les.exact());
    bool same = abgroup::classify_equal(abgroup::classify(*les.groups[3]), he.rep) &&
                abgroup::classify_equal(abgroup::classify(*les.groups[4]), hs.rep) &&
                abgroup::classify_equal(abgroup::classify(*les.groups[5]), hd.rep);
    add_check(rep, "les_matches_direct", same);
  } else {
    add_undecided(rep, "les_exact", "atoms present; connecting map not representable");
  }

  // Zones and their Mayer-Vietoris decomposition.
  Subgraph R = Subgraph::full(rg);
  Subgraph R0 = to_restricted(an.col.R0, G.red);
  auto zones = zones_of(rg, R, R0);
  {
    // Components of R \ R0 counted independently of zones_of: an edge of
    // R \ R0 with both ends in R0 is a component of its own.
    Subgraph open_part = Subgraph::empty(rg);
    for (size_t v = 0; v < rg.vertex_count(); ++v) open_part.vertices[v] = !R0.vertices[v];
    for (size_t e = 0; e < rg.edge_count(); ++e)
      open_part.edges[e] = !R0.edges[e] && open_part.vertices[rg.edge(e).tail] && open_part.vertices[rg.edge(e).head];
    size_t count = gg::components(rg, open_part, nullptr);
    for (size_t e = 0; e < rg.edge_count(); ++e)
      if (!R0.edges[e] && R0.vertices[rg.edge(e).tail] && R0.vertices[rg.edge(e).head]) ++count;
    add_check(rep, "zone_count", zones.size() == count,
              std::to_string(zones.size()) + " zones, " + std::to_string(count) + " components");
  }

  std::vector<size_t> active_edges;
  std::vector<GroupPtr> zone_h1;
  bool blowup_ok = true, mv_ok = true, z0_ok = true, pi_onto = true, pi_fg = true, seq_ok = true;
  for (const auto& z : zones) {
    ZoneReport zr;
    gg::RestrictedGroupGraph zg = gg::restrict_to(G.exp, z);
    for (size_t v = 0; v < zg.vertex_from.size(); ++v) zr.vertices.push_back(rg.vertex_name(zg.vertex_from[v]));
    H1 plain = h1_of(zg.gg);
    zr.h1_exp = plain.rep;
    zone_h1.push_back(plain.ck.group);

    std::vector<bool> r0v(zg.vertex_from.size());
    for (size_t v = 0; v < r0v.size(); ++v) r0v[v] = R0.vertices[zg.vertex_from[v]];
    BlownUpZone bz = blow_up(zg, r0v);
    const Graph& bg = bz.g.graph;
    H1 blown = h1_of(bz.g);
    blowup_ok = blowup_ok && abgroup::classify_equal(plain.rep, blown.rep);

    Subgraph z1 = Subgraph::empty(bg);
    for (size_t v = 0; v < bg.vertex_count(); ++v) z1.vertices[v] = !abgroup::is_trivial(*bz.g.vgroup[v]);
    for (size_t e = 0; e < bg.edge_count(); ++e)
      z1.edges[e] = !abgroup::is_trivial(*bz.g.egroup[e]) && z1.vertices[bg.edge(e).tail] && z1.vertices[bg.edge(e).head];
    Subgraph z0 = Subgraph::empty(bg);
    for (size_t v = 0; v < bg.vertex_count(); ++v) z0.vertices[v] = !z1.vertices[v];
    for (size_t e = 0; e < bg.edge_count(); ++e) {
      if (z1.edges[e]) continue;
      z0.edges[e] = true;
      z0.vertices[bg.edge(e).tail] = z0.vertices[bg.edge(e).head] = true;
    }
    if (!z0.is_empty() && !z1.is_empty()) {
      gg::SixTermSequence mv = gg::mayer_vietoris(bz.g, z0, z1);
      mv_ok = mv_ok && mv.exact();
      auto r0 = gg::restrict_to(bz.g, z0);
      z0_ok = z0_ok && abgroup::is_trivial(*gg::h0(r0.gg)) && gg::h1(r0.gg).is_trivial;
      // H¹(Z) = coker(H⁰(Z1) -> H⁰(Z0 ∩ Z1)) once Z0 is acyclic.
      seq_ok = seq_ok && abgroup::classify_equal(blown.rep, abgroup::classify(*abgroup::cokernel(mv.maps[1]).group));

      std::vector<size_t> meet;
      for (size_t v = 0; v < bg.vertex_count(); ++v)
        if (z0.vertices[v] && z1.vertices[v]) meet.push_back(v);
      zr.extremities = meet.size();
      zr.active = meet.empty() ? 0 : meet.size() - 1;
      for (size_t i = 1; i < meet.size(); ++i) {
        auto from = bz.new_vertex_edge[meet[i]];
        if (from) active_edges.push_back(*from);
      }
      if (!meet.empty()) {
        auto r1 = gg::restrict_to(bz.g, z1);
        auto cob1 = gg::coboundary0(r1.gg);
        auto k = abgroup::kernel(cob1.d0);
        size_t idx = std::find(r1.vertex_from.begin(), r1.vertex_from.end(), meet[0]) - r1.vertex_from.begin();
        GroupHom pi = abgroup::compose(cob1.c0.projections[idx], k.inclusion);
        pi_onto = pi_onto && abgroup::is_surjective(pi);
        pi_fg = pi_fg && finite_type_group(abgroup::classify(*abgroup::kernel(pi).group));
      }
    }
    rep.active_vertices += zr.active;
    rep.zones.push_back(std::move(zr));
  }
  add_check(rep, "blowup_invariance", blowup_ok);
  add_check(rep, "mayer_vietoris_exact", mv_ok);
  add_check(rep, "z0_acyclic", z0_ok);
  add_check(rep, "h1_zone_is_cokernel", seq_ok);
  add_check(rep, "pi_surjective", pi_onto);
  add_check(rep, "pi_kernel_finite_type", pi_fg);
  add_check(rep, "active_equals_tau", rep.active_vertices == an.tau,
            std::to_string(rep.active_vertices) + " active, τ = " + std::to_string(an.tau));

  // H¹(R, Exp) three ways.
  NormalFormReport sum = abgroup::classify(*abgroup::direct_sum(zone_h1).group);
  add_check(rep, "zones_sum_to_h1_exp", abgroup::classify_equal(sum, he.rep), sum.text() + " vs " + he.rep.text());
  {
    Subgraph r1 = to_restricted(an.col.R1, G.red);
    NormalFormReport on_r1 = h1_of(gg::restrict_to(G.exp, r1).gg).rep;
    add_check(rep, "h1_exp_on_R1", abgroup::classify_equal(on_r1, he.rep), on_r1.text() + " vs " + he.rep.text());
  }

  // Λ and its kernel.
  GroupHom lambda = build_lambda(G, hs, active_edges);
  try {
    auto k = abgroup::kernel(lambda);
    NormalFormReport kr = abgroup::classify(*k.group);
    add_check(rep, "ker_lambda_discrete", finite_type_group(kr) && kr.torsion.empty(), "ker Λ = " + kr.text());
    rep.lambda_kernel_rank = kr.free_rank;
  } catch (const std::exception& e) {
    add_undecided(rep, "ker_lambda_discrete", e.what());
  }
  guarded_check(rep, "gamma_after_lambda_zero", [&] { return abgroup::composite_is_zero(gamma, lambda); });
  guarded_check(rep, "ker_gamma_in_im_lambda", [&] { return abgroup::kernel_in_image(gamma, lambda); });
  guarded_check(rep, "gamma_surjective", [&] { return abgroup::is_surjective(gamma); });
  return rep;
}

ModuliReport compute_moduli(const FoliationInput& in, const Analysis& an) {
  if (!an.tc) throw TcViolated("condition (TC) fails", "");
  bool nd = an.non_degenerate.holds, ft = an.finite_type.holds;
  if (!nd && !ft)
    throw NotFiniteType("foliation is neither non-degenerate nor of finite type", an.finite_type.witness);
  if (!nd) return compute_moduli_finite_type(in, an);
  ModuliReport rep = compute_moduli_nondegenerate(in, an);
  if (!ft) return rep;
  ModuliReport other = compute_moduli_finite_type(in, an);
  if (rep.formal)
    add_check(rep, "pipelines_agree", abgroup::same_report(rep.moduli, other.moduli));
  else
    add_check(rep, "pipelines_agree", abgroup::classify_equal(rep.moduli, other.moduli),
              rep.moduli.text() + " vs " + other.moduli.text());
  rep.h1_exp = other.h1_exp;
  rep.h1_dis = other.h1_dis;
  rep.finite_kernel = other.finite_kernel;
  rep.lambda_kernel_rank = other.lambda_kernel_rank;
  rep.zones = other.zones;
  rep.active_vertices = other.active_vertices;
  for (auto& c : other.checks) rep.checks.push_back(c);
  return rep;
}

std::string ModuliReport::text() const {
  std::ostringstream os;
  if (!name.empty()) os << name << ": ";
  if (moduli.is_trivial)
    os << "Mod trivial (H¹ = 0)\n";
  else if (formal)
    os << "Mod (formal) = " << moduli.text() << "\n";
  else
    os << "Mod ≅ " << moduli.text() << "\n";
  os << "pipeline: " << pipeline << "\n";
  os << "red components: " << join(red_vertices) << "\n";
  if (!kept_vertices.empty()) os << "after pruning: " << join(kept_vertices) << "\n";
  os << "chains: λ=" << counts.lambda << " ν=" << counts.nu << " μ=" << counts.mu << " β=" << counts.beta
     << "  τ=" << tau << "\n";
  if (!shape.empty()) os << "shape: " << shape << "\n";
  if (h1_exp) os << "H¹(R,Exp) = " << h1_exp->text() << "\n";
  if (h1_dis) os << "D = H¹(R,Dis) = " << h1_dis->text() << "\n";
  if (finite_kernel) os << "F = ker χ = " << finite_kernel->text() << "\n";
  if (h1_dis && h1_dis->is_trivial && h1_exp && finite_kernel && !moduli.is_trivial)
    os << "Mod ≅ H¹(R,Exp)/F = (" << h1_exp->text() << ")/(" << finite_kernel->text() << ")\n";
  if (!zones.empty()) os << "zones: " << zones.size() << ", active vertices: " << active_vertices << "\n";
  if (lambda_kernel_rank) os << "ker Λ ≅ Z^" << *lambda_kernel_rank << "\n";
  if (formal) os << "sequence: 0 → C^" << tau << "/ker Λ → Mod → D → 0\n";
  size_t passed = 0, decided = 0;
  for (const auto& c : checks) {
    if (!c.decided) continue;
    ++decided;
    if (c.ok) passed += 1;
  }
  os << "checks: " << passed << "/" << decided << " passed";
  if (decided != checks.size()) os << ", " << checks.size() - decided << " undecided";
  os << "\n";
  for (const auto& c : checks)
    if (c.decided && !c.ok) os << "  FAILED " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return os.str();
}

Json ModuliReport::to_json() const {
  Json j;
  j["name"] = name;
  j["pipeline"] = pipeline;
  j["formal"] = formal;
  j["moduli"] = abgroup::report_to_json(moduli);
  j["moduli_text"] = moduli.text();
  j["tau"] = tau;
  j["chains"] = Json{{"lambda", counts.lambda}, {"nu", counts.nu}, {"mu", counts.mu}, {"beta", counts.beta}};
  j["red_vertices"] = red_vertices;
  j["kept_vertices"] = kept_vertices;
  if (!shape.empty()) j["shape"] = shape;
  if (h1_exp) j["h1_exp"] = abgroup::report_to_json(*h1_exp);
  if (h1_dis) j["h1_dis"] = abgroup::report_to_json(*h1_dis);
  if (finite_kernel) j["finite_kernel"] = abgroup::report_to_json(*finite_kernel);
  if (lambda_kernel_rank) j["lambda_kernel_rank"] = *lambda_kernel_rank;
  Json zs = Json::array();
  for (const auto& z : zones)
    zs.push_back(Json{{"vertices", z.vertices}, {"extremities", z.extremities}, {"active", z.active},
                      {"h1_exp", z.h1_exp.text()}});
  j["zones"] = zs;
  j["active_vertices"] = active_vertices;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json x{{"name", c.name}, {"ok", c.ok}, {"decided", c.decided}};
    if (!c.detail.empty()) x["detail"] = c.detail;
    cs.push_back(x);
  }
  j["checks"] = cs;
  j["ok"] = ok();
  return j;
}

}  // namespace folmod
