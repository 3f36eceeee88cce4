#include "folmod/abgroup/group.hpp"

#include <algorithm>
#include <sstream>

namespace folmod::abgroup {

using exactnum::k_nullspace;
using exactnum::k_rref;
using exactnum::k_solve;
using exactnum::k_zero;
using exactnum::MixedSystem;
using exactnum::solve_mixed;

std::string to_string(AtomKind k) {
  return k == AtomKind::DisconnectedU1 ? "disconnected-U1" : "diff-germ-group";
}

AtomKind atom_kind_from_string(const std::string& s) {
  if (s == "disconnected-U1") return AtomKind::DisconnectedU1;
  if (s == "diff-germ-group") return AtomKind::DiffGermGroup;
  throw InvalidGroup("unknown atom kind '" + s + "'");
}

std::string to_string(AtomCardinality c) {
  return c == AtomCardinality::FiniteUnknown ? "finite-unknown" : "possibly-uncountable";
}

AtomCardinality atom_cardinality_from_string(const std::string& s) {
  if (s == "finite-unknown") return AtomCardinality::FiniteUnknown;
  if (s == "possibly-uncountable") return AtomCardinality::PossiblyUncountable;
  throw InvalidGroup("unknown atom cardinality '" + s + "'");
}

std::string Atom::label() const {
  std::string s = name;
  if (mod_cyclic) s += *mod_cyclic == 0 ? "/<h>" : "/(Z/" + mod_cyclic->get_str() + ")";
  if (finite_quotient_unresolved) s += "/finite";
  return s;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.name == b.name && a.kind == b.kind && a.cardinality == b.cardinality &&
         a.mod_cyclic == b.mod_cyclic && a.finite_quotient_unresolved == b.finite_quotient_unresolved;
}

void PresentedAbelianGroup::add_relation(KVector cont, std::vector<BigInt> disc) {
  if (cont.size() != a || disc.size() != b) throw InvalidGroup("relation shape mismatch");
  for (const auto& x : cont) symbols = exactnum::common_table(symbols, x.table());
  relations.push_back({std::move(cont), std::move(disc)});
}

Element PresentedAbelianGroup::zero_element() const { return {KVector(a), std::vector<BigInt>(b)}; }

Element PresentedAbelianGroup::cont_generator(size_t i) const {
  Element e = zero_element();
  e.cont.at(i) = Scalar(1);
  return e;
}

Element PresentedAbelianGroup::disc_generator(size_t i) const {
  Element e = zero_element();
  e.disc.at(i) = 1;
  return e;
}

void PresentedAbelianGroup::validate() const {
  for (size_t i = 0; i < relations.size(); ++i)
    if (relations[i].cont.size() != a || relations[i].disc.size() != b)
      throw InvalidGroup("relation " + std::to_string(i) + " has the wrong shape");
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i].name == atoms[j].name) throw InvalidGroup("duplicate atom '" + atoms[i].name + "'");
}

GroupPtr make_group(Group g) {
  g.validate();
  return std::make_shared<const Group>(std::move(g));
}

GroupPtr trivial_group(SymbolTablePtr t) {
  Group g;
  g.symbols = std::move(t);
  return make_group(std::move(g));
}

GroupPtr cyclic_sum(const std::vector<BigInt>& orders, SymbolTablePtr t) {
  Group g;
  g.symbols = std::move(t);
  g.b = orders.size();
  for (size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 0) continue;
    std::vector<BigInt> r(g.b);
    r[i] = orders[i];
    g.add_relation({}, r);
  }
  return make_group(std::move(g));
}

namespace {

Scalar to_scalar(const BigInt& v) { return Scalar(Rational(v)); }

void check_shapes(const GroupHom& h) {
  const auto& A = *h.dom;
  const auto& B = *h.cod;
  auto bad = [](const std::string& w) { throw InvalidGroup("hom block " + w + " has the wrong shape"); };
  if (h.cc.size() != B.a) bad("cc");
  for (const auto& r : h.cc)
    if (r.size() != A.a) bad("cc");
  if (h.dc.size() != B.a) bad("dc");
  for (const auto& r : h.dc)
    if (r.size() != A.b) bad("dc");
  if (h.dd.rows() != B.b || h.dd.cols() != A.b) bad("dd");
}

KVector column(const KMatrix& m, size_t j) {
  KVector c(m.size());
  for (size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

std::vector<BigInt> int_column(const IntMatrix& m, size_t j) { return m.col(j); }

}  // namespace

Element GroupHom::apply(const Element& x) const {
  check_shapes(*this);
  Element y = cod->zero_element();
  for (size_t i = 0; i < cod->a; ++i) {
    Scalar s;
    for (size_t j = 0; j < dom->a; ++j)
      if (!cc[i][j].is_zero() && !x.cont[j].is_zero()) s += cc[i][j] * x.cont[j];
    for (size_t j = 0; j < dom->b; ++j)
      if (!dc[i][j].is_zero() && x.disc[j] != 0) s += dc[i][j] * to_scalar(x.disc[j]);
    y.cont[i] = s;
  }
  for (size_t i = 0; i < cod->b; ++i)
    for (size_t j = 0; j < dom->b; ++j) y.disc[i] += dd(i, j) * x.disc[j];
  return y;
}

Element GroupHom::image_of_cont(size_t j) const {
  Element y = cod->zero_element();
  for (size_t i = 0; i < cod->a; ++i) y.cont[i] = cc[i][j];
  return y;
}

Element GroupHom::image_of_disc(size_t j) const {
  Element y = cod->zero_element();
  for (size_t i = 0; i < cod->a; ++i) y.cont[i] = dc[i][j];
  for (size_t i = 0; i < cod->b; ++i) y.disc[i] = dd(i, j);
  return y;
}

GroupHom zero_hom(GroupPtr dom, GroupPtr cod) {
  GroupHom h;
  h.cc = k_zero(cod->a, dom->a);
  h.dc = k_zero(cod->a, dom->b);
  h.dd = IntMatrix(cod->b, dom->b);
  h.dom = std::move(dom);
  h.cod = std::move(cod);
  return h;
}

GroupHom identity_hom(GroupPtr g) {
  GroupHom h = zero_hom(g, g);
  for (size_t i = 0; i < g->a; ++i) h.cc[i][i] = Scalar(1);
  for (size_t i = 0; i < g->b; ++i) h.dd(i, i) = 1;
  for (size_t i = 0; i < g->atoms.size(); ++i) h.atom_map.push_back({i, i});
  return h;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  check_shapes(f);
  check_shapes(g);
  if (f.cod != g.dom && !(f.cod->a == g.dom->a && f.cod->b == g.dom->b))
    throw InvalidGroup("composition of non-composable homs");
  GroupHom h = zero_hom(f.dom, g.cod);
  h.cc = exactnum::k_mul(g.cc, f.cc, f.dom->a);
  KMatrix fdd = k_zero(f.cod->b, f.dom->b);
  for (size_t i = 0; i < f.cod->b; ++i)
    for (size_t j = 0; j < f.dom->b; ++j) fdd[i][j] = to_scalar(f.dd(i, j));
  KMatrix a1 = exactnum::k_mul(g.cc, f.dc), a2 = exactnum::k_mul(g.dc, fdd);
  for (size_t i = 0; i < g.cod->a; ++i)
    for (size_t j = 0; j < f.dom->b; ++j) {
      Scalar s;
      if (i < a1.size() && j < a1[i].size()) s += a1[i][j];
      if (i < a2.size() && j < a2[i].size()) s += a2[i][j];
      h.dc[i][j] = s;
    }
  h.dd = g.dd * f.dd;
  if (h.dd.rows() != g.cod->b || h.dd.cols() != f.dom->b) h.dd = IntMatrix(g.cod->b, f.dom->b);
  for (const auto& fe : f.atom_map)
    for (const auto& ge : g.atom_map)
      if (fe.cod == ge.dom) h.atom_map.push_back({fe.dom, ge.cod});
  for (auto t : f.unresolved_targets)
    for (const auto& ge : g.atom_map)
      if (ge.dom == t) h.unresolved_targets.push_back(ge.cod);
  for (auto t : g.unresolved_targets) h.unresolved_targets.push_back(t);
  std::sort(h.unresolved_targets.begin(), h.unresolved_targets.end());
  h.unresolved_targets.erase(std::unique(h.unresolved_targets.begin(), h.unresolved_targets.end()),
                             h.unresolved_targets.end());
  return h;
}

GroupHom add(const GroupHom& f, const GroupHom& g) {
  check_shapes(f);
  check_shapes(g);
  GroupHom h = f;
  for (size_t i = 0; i < h.cc.size(); ++i)
    for (size_t j = 0; j < h.cc[i].size(); ++j) h.cc[i][j] += g.cc[i][j];
  for (size_t i = 0; i < h.dc.size(); ++i)
    for (size_t j = 0; j < h.dc[i].size(); ++j) h.dc[i][j] += g.dc[i][j];
  for (size_t i = 0; i < h.dd.rows(); ++i)
    for (size_t j = 0; j < h.dd.cols(); ++j) h.dd(i, j) += g.dd(i, j);
  for (const auto& e : g.atom_map) {
    for (const auto& x : h.atom_map)
      if (x.dom == e.dom) throw UnsupportedAtomMap("sum of two maps on the same atom");
    h.atom_map.push_back(e);
  }
  for (auto t : g.unresolved_targets)
    if (std::find(h.unresolved_targets.begin(), h.unresolved_targets.end(), t) == h.unresolved_targets.end())
      h.unresolved_targets.push_back(t);
  return h;
}

GroupHom negate(const GroupHom& f) { return scale(f, -1); }

GroupHom scale(const GroupHom& f, long c) {
  if (c == 0) return zero_hom(f.dom, f.cod);
  GroupHom h = f;
  Scalar s(c);
  for (auto& r : h.cc)
    for (auto& x : r) x *= s;
  for (auto& r : h.dc)
    for (auto& x : r) x *= s;
  for (size_t i = 0; i < h.dd.rows(); ++i)
    for (size_t j = 0; j < h.dd.cols(); ++j) h.dd(i, j) *= c;
  return h;
}

Element add(const Element& x, const Element& y) {
  Element z = x;
  for (size_t i = 0; i < z.cont.size(); ++i) z.cont[i] += y.cont.at(i);
  for (size_t i = 0; i < z.disc.size(); ++i) z.disc[i] += y.disc.at(i);
  return z;
}

Element scale(const Element& x, const BigInt& c) {
  Element z = x;
  Scalar s = to_scalar(c);
  for (auto& v : z.cont) v *= s;
  for (auto& v : z.disc) v *= c;
  return z;
}

Element negate(const Element& x) { return scale(x, -1); }

std::optional<std::vector<BigInt>> relation_combination(const Group& g, const Element& x) {
  MixedSystem sys;
  sys.nvars = g.relations.size();
  for (size_t i = 0; i < g.a; ++i) {
    KVector coeffs;
    for (const auto& r : g.relations) coeffs.push_back(r.cont[i]);
    sys.add_k(std::move(coeffs), x.cont.at(i));
  }
  for (size_t i = 0; i < g.b; ++i) {
    std::vector<BigInt> coeffs;
    for (const auto& r : g.relations) coeffs.push_back(r.disc[i]);
    sys.add_z(std::move(coeffs), x.disc.at(i));
  }
  auto sol = solve_mixed(sys);
  if (!sol) return std::nullopt;
  return sol->particular;
}

bool is_zero_in(const Group& g, const Element& x) {
  bool zero = true;
  for (const auto& v : x.cont) zero = zero && v.is_zero();
  for (const auto& v : x.disc) zero = zero && v == 0;
  if (zero) return true;
  return relation_combination(g, x).has_value();
}

HomCheck check_hom(const GroupHom& h) {
  HomCheck res;
  try {
    check_shapes(h);
  } catch (const InvalidGroup& e) {
    return {false, e.what(), std::nullopt};
  }
  for (const auto& e : h.atom_map) {
    if (e.dom >= h.dom->atoms.size() || e.cod >= h.cod->atoms.size())
      return {false, "atom map index out of range", std::nullopt};
    const Atom& x = h.dom->atoms[e.dom];
    const Atom& y = h.cod->atoms[e.cod];
    if (x.kind != y.kind) return {false, "atom '" + x.name + "' mapped onto atom of another kind", std::nullopt};
    if (x.mod_cyclic && !y.mod_cyclic)
      return {false, "atom '" + x.name + "' quotient cannot map onto unquotiented '" + y.name + "'", std::nullopt};
    if (x.mod_cyclic && y.mod_cyclic && *y.mod_cyclic != 0 && *y.mod_cyclic % *x.mod_cyclic != 0)
      return {false, "atom '" + x.name + "' quotient order does not divide target quotient", std::nullopt};
  }
  for (size_t i = 0; i < h.dom->relations.size(); ++i) {
    Element y = h.apply(h.dom->relations[i]);
    if (!is_zero_in(*h.cod, y)) {
      std::ostringstream os;
      os << "relation " << i << " of the domain maps to a nonzero element";
      return {false, os.str(), i};
    }
  }
  return res;
}

DirectSum direct_sum(const std::vector<GroupPtr>& gs) {
  DirectSum s;
  Group g;
  for (const auto& x : gs) {
    s.cont_offset.push_back(g.a);
    s.disc_offset.push_back(g.b);
    s.atom_offset.push_back(g.atoms.size());
    g.a += x->a;
    g.b += x->b;
    g.symbols = exactnum::common_table(g.symbols, x->symbols);
    for (const auto& at : x->atoms) g.atoms.push_back(at);
  }
  for (size_t k = 0; k < gs.size(); ++k)
    for (const auto& r : gs[k]->relations) {
      Element e = g.zero_element();
      for (size_t i = 0; i < r.cont.size(); ++i) e.cont[s.cont_offset[k] + i] = r.cont[i];
      for (size_t i = 0; i < r.disc.size(); ++i) e.disc[s.disc_offset[k] + i] = r.disc[i];
      g.relations.push_back(std::move(e));
    }
  // Atom names must stay distinct inside one group.
  // Summands may already carry suffixed names, so probe until free.
  for (size_t i = 0; i < g.atoms.size(); ++i) {
    auto taken = [&](const std::string& n) {
      for (size_t j = 0; j < i; ++j)
        if (g.atoms[j].name == n) return true;
      return false;
    };
    if (!taken(g.atoms[i].name)) continue;
    std::string base = g.atoms[i].name;
    size_t k = 2;
    while (taken(base + "#" + std::to_string(k))) ++k;
    g.atoms[i].name = base + "#" + std::to_string(k);
  }
  s.group = make_group(std::move(g));
  for (size_t k = 0; k < gs.size(); ++k) {
    GroupHom in = zero_hom(gs[k], s.group), pr = zero_hom(s.group, gs[k]);
    for (size_t i = 0; i < gs[k]->a; ++i) {
      in.cc[s.cont_offset[k] + i][i] = Scalar(1);
      pr.cc[i][s.cont_offset[k] + i] = Scalar(1);
    }
    for (size_t i = 0; i < gs[k]->b; ++i) {
      in.dd(s.disc_offset[k] + i, i) = 1;
      pr.dd(i, s.disc_offset[k] + i) = 1;
    }
    for (size_t i = 0; i < gs[k]->atoms.size(); ++i) {
      in.atom_map.push_back({i, s.atom_offset[k] + i});
      pr.atom_map.push_back({s.atom_offset[k] + i, i});
    }
    s.injections.push_back(std::move(in));
    s.projections.push_back(std::move(pr));
  }
  return s;
}

GroupHom block_hom(const DirectSum& dom, const DirectSum& cod,
                   const std::vector<std::vector<std::optional<GroupHom>>>& blocks) {
  GroupHom h = zero_hom(dom.group, cod.group);
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = 0; j < blocks[i].size(); ++j) {
      if (!blocks[i][j]) continue;
      const GroupHom& b = *blocks[i][j];
      check_shapes(b);
      size_t co = cod.cont_offset[i], cd = cod.disc_offset[i], ca = cod.atom_offset[i];
      size_t dco = dom.cont_offset[j], ddo = dom.disc_offset[j], da = dom.atom_offset[j];
      for (size_t r = 0; r < b.cod->a; ++r) {
        for (size_t c = 0; c < b.dom->a; ++c) h.cc[co + r][dco + c] += b.cc[r][c];
        for (size_t c = 0; c < b.dom->b; ++c) h.dc[co + r][ddo + c] += b.dc[r][c];
      }
      for (size_t r = 0; r < b.cod->b; ++r)
        for (size_t c = 0; c < b.dom->b; ++c) h.dd(cd + r, ddo + c) += b.dd(r, c);
      for (const auto& e : b.atom_map) h.atom_map.push_back({da + e.dom, ca + e.cod});
      for (auto t : b.unresolved_targets) h.unresolved_targets.push_back(ca + t);
    }
  std::sort(h.unresolved_targets.begin(), h.unresolved_targets.end());
  h.unresolved_targets.erase(std::unique(h.unresolved_targets.begin(), h.unresolved_targets.end()),
                             h.unresolved_targets.end());
  return h;
}

SpanProjector::SpanProjector(const std::vector<KVector>& span, size_t n) : n_(n) {
  auto e = k_rref(span, n);
  rows_ = std::move(e.rref);
  pivots_ = std::move(e.pivots);
  std::vector<bool> piv(n, false);
  for (auto p : pivots_) piv[p] = true;
  for (size_t j = 0; j < n; ++j)
    if (!piv[j]) free_.push_back(j);
}

KVector SpanProjector::project(const KVector& x) const {
  KVector y(free_.size());
  for (size_t k = 0; k < free_.size(); ++k) {
    Scalar s = x.at(free_[k]);
    for (size_t i = 0; i < pivots_.size(); ++i) {
      const Scalar& w = rows_[i][free_[k]];
      if (!w.is_zero() && !x[pivots_[i]].is_zero()) s -= x[pivots_[i]] * w;
    }
    y[k] = s;
  }
  return y;
}

KVector SpanProjector::lift(const KVector& y) const {
  KVector x(n_);
  for (size_t k = 0; k < free_.size(); ++k) x[free_[k]] = y.at(k);
  return x;
}

KMatrix SpanProjector::matrix() const {
  KMatrix m = k_zero(free_.size(), n_);
  for (size_t j = 0; j < n_; ++j) {
    KVector e(n_);
    e[j] = Scalar(1);
    KVector c = project(e);
    for (size_t i = 0; i < free_.size(); ++i) m[i][j] = c[i];
  }
  return m;
}

KMatrix SpanProjector::section() const {
  KMatrix m = k_zero(n_, free_.size());
  for (size_t k = 0; k < free_.size(); ++k) m[free_[k]][k] = Scalar(1);
  return m;
}

namespace {

std::vector<KVector> columns(const KMatrix& m, size_t ncols) {
  std::vector<KVector> cs;
  for (size_t j = 0; j < ncols; ++j) cs.push_back(column(m, j));
  return cs;
}

}  // namespace

Cokernel cokernel(const GroupHom& h) {
  check_shapes(h);
  const Group& A = *h.dom;
  const Group& B = *h.cod;
  Cokernel ck;
  ck.proj = SpanProjector(columns(h.cc, A.a), B.a);
  Group q;
  q.symbols = exactnum::common_table(A.symbols, B.symbols);
  q.a = ck.proj.target_dim();
  q.b = B.b;
  std::vector<bool> hit(B.atoms.size(), false), blurred(B.atoms.size(), false);
  for (const auto& e : h.atom_map) hit.at(e.cod) = true;
  for (auto t : h.unresolved_targets) blurred.at(t) = true;
  std::vector<size_t> survivors;
  for (size_t i = 0; i < B.atoms.size(); ++i) {
    if (hit[i]) continue;
    Atom at = B.atoms[i];
    if (blurred[i]) at.finite_quotient_unresolved = true;
    q.atoms.push_back(at);
    survivors.push_back(i);
  }
  auto push = [&](const KVector& c, const std::vector<BigInt>& d) {
    KVector pc = ck.proj.project(c);
    bool zero = exactnum::is_zero(pc);
    for (const auto& v : d) zero = zero && v == 0;
    if (!zero) q.relations.push_back({std::move(pc), d});
  };
  for (const auto& r : B.relations) push(r.cont, r.disc);
  for (size_t j = 0; j < A.b; ++j) push(column(h.dc, j), int_column(h.dd, j));
  ck.group = make_group(std::move(q));
  GroupHom p = zero_hom(h.cod, ck.group);
  p.cc = ck.proj.matrix();
  if (p.cc.empty()) p.cc = k_zero(0, B.a);
  for (size_t i = 0; i < B.b; ++i) p.dd(i, i) = 1;
  for (size_t k = 0; k < survivors.size(); ++k) p.atom_map.push_back({survivors[k], k});
  ck.projection = std::move(p);
  return ck;
}

Kernel kernel(const GroupHom& h) {
  check_shapes(h);
  const Group& A = *h.dom;
  const Group& B = *h.cod;
  if (!h.unresolved_targets.empty())
    throw UnsupportedAtomMap("kernel of a map with unresolved finite images in atoms");
  SpanProjector pb(columns(h.cc, A.a), B.a);
  size_t nb = A.b, nm = B.relations.size();
  MixedSystem sys;
  sys.nvars = nb + nm;
  std::vector<KVector> pdc, pgc;
  for (size_t j = 0; j < nb; ++j) pdc.push_back(pb.project(column(h.dc, j)));
  for (const auto& r : B.relations) pgc.push_back(pb.project(r.cont));
  for (size_t f = 0; f < pb.target_dim(); ++f) {
    KVector c;
    for (size_t j = 0; j < nb; ++j) c.push_back(pdc[j][f]);
    for (size_t k = 0; k < nm; ++k) c.push_back(-pgc[k][f]);
    sys.add_k(std::move(c), Scalar());
  }
  for (size_t i = 0; i < B.b; ++i) {
    std::vector<BigInt> c;
    for (size_t j = 0; j < nb; ++j) c.push_back(h.dd(i, j));
    for (size_t k = 0; k < nm; ++k) c.push_back(-B.relations[k].disc[i]);
    sys.add_z(std::move(c), 0);
  }
  auto lattice = solve_mixed(sys)->kernel;

  auto ech = k_rref(h.cc, A.a);
  auto nbasis = k_nullspace(h.cc, A.a);
  std::vector<bool> piv(A.a, false);
  for (auto p : ech.pivots) piv[p] = true;
  std::vector<size_t> freecols;
  for (size_t j = 0; j < A.a; ++j)
    if (!piv[j]) freecols.push_back(j);

  std::vector<KVector> xc;
  std::vector<std::vector<BigInt>> xd;
  for (const auto& v : lattice) {
    KVector rhs(B.a);
    for (size_t k = 0; k < nm; ++k)
      if (v[nb + k] != 0)
        for (size_t i = 0; i < B.a; ++i) rhs[i] += B.relations[k].cont[i] * Scalar(Rational(v[nb + k]));
    for (size_t j = 0; j < nb; ++j)
      if (v[j] != 0)
        for (size_t i = 0; i < B.a; ++i) rhs[i] -= h.dc[i][j] * Scalar(Rational(v[j]));
    auto x = k_solve(h.cc, rhs, A.a);
    if (!x) throw InvalidGroup("kernel lattice element without continuous lift");
    // Components along N are dropped: the continuous generators cover them.
    KVector xs = *x;
    for (size_t k = 0; k < freecols.size(); ++k) {
      Scalar t = xs[freecols[k]];
      if (t.is_zero()) continue;
      for (size_t i = 0; i < A.a; ++i) xs[i] -= t * nbasis[k][i];
    }
    xc.push_back(std::move(xs));
    xd.emplace_back(v.begin(), v.begin() + nb);
  }

  Group kg;
  kg.symbols = A.symbols;
  kg.a = nbasis.size();
  kg.b = lattice.size();
  std::vector<size_t> kept_atoms;
  for (size_t i = 0; i < A.atoms.size(); ++i) {
    auto it = std::find_if(h.atom_map.begin(), h.atom_map.end(), [&](const AtomImage& e) { return e.dom == i; });
    if (it != h.atom_map.end()) {
      const Atom& x = A.atoms[i];
      const Atom& y = B.atoms[it->cod];
      if (x.mod_cyclic != y.mod_cyclic)
        throw UnsupportedAtomMap("kernel inside the cyclic quotient of atom '" + x.name + "'");
      continue;
    }
    if (A.atoms[i].kind == AtomKind::DiffGermGroup)
      throw NonFiniteTypeKernel("kernel contains the germ-group atom '" + A.atoms[i].name + "'");
    kg.atoms.push_back(A.atoms[i]);
    kept_atoms.push_back(i);
  }

  // Relations: (t, z) with N t + X_c z in Γ_A and X_d z matching, i.e. integer
  // (z, m') with the complement part of X_c z - γ_c m' zero.
  size_t nz = lattice.size(), na = A.relations.size();
  MixedSystem rs;
  rs.nvars = nz + na;
  auto comp = [&](const KVector& v) {
    KVector w = v;
    for (size_t k = 0; k < freecols.size(); ++k) {
      Scalar t = v[freecols[k]];
      if (t.is_zero()) continue;
      for (size_t i = 0; i < A.a; ++i) w[i] -= t * nbasis[k][i];
    }
    return w;
  };
  std::vector<KVector> cxc, cgc;
  for (const auto& x : xc) cxc.push_back(comp(x));
  for (const auto& r : A.relations) cgc.push_back(comp(r.cont));
  for (size_t i = 0; i < A.a; ++i) {
    KVector c;
    for (size_t j = 0; j < nz; ++j) c.push_back(cxc[j][i]);
    for (size_t k = 0; k < na; ++k) c.push_back(-cgc[k][i]);
    rs.add_k(std::move(c), Scalar());
  }
  for (size_t i = 0; i < A.b; ++i) {
    std::vector<BigInt> c;
    for (size_t j = 0; j < nz; ++j) c.push_back(xd[j][i]);
    for (size_t k = 0; k < na; ++k) c.push_back(-A.relations[k].disc[i]);
    rs.add_z(std::move(c), 0);
  }
  auto rel_lattice = solve_mixed(rs)->kernel;
  for (const auto& v : rel_lattice) {
    KVector val(A.a);
    for (size_t j = 0; j < nz; ++j)
      if (v[j] != 0)
        for (size_t i = 0; i < A.a; ++i) val[i] += xc[j][i] * Scalar(Rational(v[j]));
    for (size_t k = 0; k < na; ++k)
      if (v[nz + k] != 0)
        for (size_t i = 0; i < A.a; ++i) val[i] -= A.relations[k].cont[i] * Scalar(Rational(v[nz + k]));
    KVector t(freecols.size());
    for (size_t k = 0; k < freecols.size(); ++k) t[k] = -val[freecols[k]];
    std::vector<BigInt> z(v.begin(), v.begin() + nz);
    bool zero = exactnum::is_zero(t);
    for (const auto& x : z) zero = zero && x == 0;
    if (!zero) kg.relations.push_back({std::move(t), std::move(z)});
  }

  Kernel out;
  out.group = make_group(std::move(kg));
  GroupHom inc = zero_hom(out.group, h.dom);
  for (size_t k = 0; k < nbasis.size(); ++k)
    for (size_t i = 0; i < A.a; ++i) inc.cc[i][k] = nbasis[k][i];
  for (size_t j = 0; j < nz; ++j) {
    for (size_t i = 0; i < A.a; ++i) inc.dc[i][j] = xc[j][i];
    for (size_t i = 0; i < A.b; ++i) inc.dd(i, j) = xd[j][i];
  }
  for (size_t k = 0; k < kept_atoms.size(); ++k) inc.atom_map.push_back({k, kept_atoms[k]});
  out.inclusion = std::move(inc);
  return out;
}

std::optional<Element> preimage(const GroupHom& h, const Element& y) {
  check_shapes(h);
  const Group& A = *h.dom;
  const Group& B = *h.cod;
  SpanProjector pb(columns(h.cc, A.a), B.a);
  size_t nb = A.b, nm = B.relations.size();
  MixedSystem sys;
  sys.nvars = nb + nm;
  std::vector<KVector> pdc, pgc;
  for (size_t j = 0; j < nb; ++j) pdc.push_back(pb.project(column(h.dc, j)));
  for (const auto& r : B.relations) pgc.push_back(pb.project(r.cont));
  KVector py = pb.project(y.cont);
  for (size_t f = 0; f < pb.target_dim(); ++f) {
    KVector c;
    for (size_t j = 0; j < nb; ++j) c.push_back(pdc[j][f]);
    for (size_t k = 0; k < nm; ++k) c.push_back(-pgc[k][f]);
    sys.add_k(std::move(c), py[f]);
  }
  for (size_t i = 0; i < B.b; ++i) {
    std::vector<BigInt> c;
    for (size_t j = 0; j < nb; ++j) c.push_back(h.dd(i, j));
    for (size_t k = 0; k < nm; ++k) c.push_back(-B.relations[k].disc[i]);
    sys.add_z(std::move(c), y.disc.at(i));
  }
  auto sol = solve_mixed(sys);
  if (!sol) return std::nullopt;
  const auto& v = sol->particular;
  KVector rhs = y.cont;
  for (size_t k = 0; k < nm; ++k)
    if (v[nb + k] != 0)
      for (size_t i = 0; i < B.a; ++i) rhs[i] += B.relations[k].cont[i] * Scalar(Rational(v[nb + k]));
  for (size_t j = 0; j < nb; ++j)
    if (v[j] != 0)
      for (size_t i = 0; i < B.a; ++i) rhs[i] -= h.dc[i][j] * Scalar(Rational(v[j]));
  auto xc = k_solve(h.cc, rhs, A.a);
  if (!xc) return std::nullopt;
  return Element{*xc, std::vector<BigInt>(v.begin(), v.begin() + nb)};
}

bool is_trivial(const Group& g) {
  if (g.a != 0 || !g.atoms.empty()) return false;
  if (g.b == 0) return true;
  IntMatrix r(0, g.b);
  for (const auto& rel : g.relations) r.append_row(rel.disc);
  if (r.rows() < g.b) return false;
  auto s = exactnum::smith_normal_form(r);
  if (s.rank < g.b) return false;
  for (size_t i = 0; i < g.b; ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

bool is_surjective(const GroupHom& h) { return is_trivial(*cokernel(h).group); }

bool is_injective(const GroupHom& h) { return is_trivial(*kernel(h).group); }

bool is_zero_hom(const GroupHom& h) {
  check_shapes(h);
  for (const auto& r : h.cc)
    for (const auto& x : r)
      if (!x.is_zero()) return false;
  if (!h.atom_map.empty() || !h.unresolved_targets.empty()) return false;
  for (size_t j = 0; j < h.dom->b; ++j)
    if (!is_zero_in(*h.cod, h.image_of_disc(j))) return false;
  return true;
}

bool composite_is_zero(const GroupHom& g, const GroupHom& f) { return is_zero_hom(compose(g, f)); }

bool kernel_in_image(const GroupHom& g, const GroupHom& f) {
  Kernel k = kernel(g);
  const GroupHom& inc = k.inclusion;
  for (size_t j = 0; j < k.group->a; ++j)
    if (!k_solve(f.cc, column(inc.cc, j), f.dom->a)) return false;
  for (size_t j = 0; j < k.group->b; ++j)
    if (!preimage(f, inc.image_of_disc(j))) return false;
  for (const auto& e : inc.atom_map) {
    bool hit = false;
    for (const auto& fe : f.atom_map) hit = hit || fe.cod == e.cod;
    if (!hit) return false;
  }
  return true;
}

GroupHom induced_on_cokernels(const GroupHom& f, const Cokernel& src, const Cokernel& dst) {
  check_shapes(f);
  GroupHom h = zero_hom(src.group, dst.group);
  KMatrix s = src.proj.section();
  KMatrix p = dst.proj.matrix();
  const size_t fa = f.dom->a, fb = f.dom->b;
  KMatrix fcc_s = exactnum::k_mul(f.cc, s, src.group->a);
  for (size_t i = 0; i < dst.group->a; ++i) {
    for (size_t j = 0; j < src.group->a; ++j) {
      Scalar v;
      for (size_t k = 0; k < f.cod->a; ++k)
        if (!p[i][k].is_zero() && !fcc_s[k][j].is_zero()) v += p[i][k] * fcc_s[k][j];
      h.cc[i][j] = v;
    }
    for (size_t j = 0; j < fb; ++j) {
      Scalar v;
      for (size_t k = 0; k < f.cod->a; ++k)
        if (!p[i][k].is_zero() && !f.dc[k][j].is_zero()) v += p[i][k] * f.dc[k][j];
      h.dc[i][j] = v;
    }
  }
  (void)fa;
  h.dd = f.dd;
  const auto& sp = src.projection.atom_map;  // A atom -> src atom
  const auto& dp = dst.projection.atom_map;  // B atom -> dst atom
  for (const auto& e : f.atom_map) {
    auto si = std::find_if(sp.begin(), sp.end(), [&](const AtomImage& x) { return x.dom == e.dom; });
    auto di = std::find_if(dp.begin(), dp.end(), [&](const AtomImage& x) { return x.dom == e.cod; });
    if (si != sp.end() && di != dp.end()) h.atom_map.push_back({si->cod, di->cod});
  }
  for (auto t : f.unresolved_targets) {
    auto di = std::find_if(dp.begin(), dp.end(), [&](const AtomImage& x) { return x.dom == t; });
    if (di != dp.end()) h.unresolved_targets.push_back(di->cod);
  }
  return h;
}

GroupHom lift_into_kernel(const GroupHom& f, const Kernel& k) {
  check_shapes(f);
  const GroupHom& inc = k.inclusion;
  GroupHom h = zero_hom(f.dom, k.group);
  for (size_t j = 0; j < f.dom->a; ++j) {
    auto x = k_solve(inc.cc, column(f.cc, j), k.group->a);
    if (!x) throw InvalidGroup("continuous image does not lie in the kernel");
    for (size_t i = 0; i < k.group->a; ++i) h.cc[i][j] = (*x)[i];
  }
  for (size_t j = 0; j < f.dom->b; ++j) {
    auto x = preimage(inc, f.image_of_disc(j));
    if (!x) throw InvalidGroup("discrete image does not lie in the kernel");
    for (size_t i = 0; i < k.group->a; ++i) h.dc[i][j] = x->cont[i];
    for (size_t i = 0; i < k.group->b; ++i) h.dd(i, j) = x->disc[i];
  }
  for (const auto& e : f.atom_map) {
    auto it = std::find_if(inc.atom_map.begin(), inc.atom_map.end(), [&](const AtomImage& x) { return x.cod == e.cod; });
    if (it == inc.atom_map.end()) throw UnsupportedAtomMap("atom image outside the kernel");
    h.atom_map.push_back({e.dom, it->dom});
  }
  return h;
}

}  // namespace folmod::abgroup
