#include "folmod/abgroup/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace folmod::abgroup {

using exactnum::GrlexLess;
using exactnum::Monomial;
using exactnum::Poly;
using exactnum::QVector;

std::string to_string(FactorKind k) {
  switch (k) {
    case FactorKind::CStar: return "C*";
    case FactorKind::Elliptic: return "elliptic";
    case FactorKind::NonDiscrete: return "non-discrete";
    case FactorKind::Torus: return "torus";
  }
  return "?";
}

namespace {

// Shared Q-coordinates for vectors of K^n: coordinate j expands over the
// monomials of a common denominator.
struct QFrame {
  std::vector<Poly> den;
  std::vector<std::vector<Monomial>> basis;
  size_t width = 0;

  explicit QFrame(const std::vector<KVector>& vs, size_t n) : den(n, Poly(1)), basis(n) {
    std::vector<std::map<Monomial, int, GrlexLess>> seen(n);
    for (const auto& v : vs)
      for (size_t j = 0; j < n; ++j)
        if (!v[j].is_zero()) den[j] = exactnum::lcm(den[j], v[j].den());
    for (const auto& v : vs)
      for (size_t j = 0; j < n; ++j) {
        if (v[j].is_zero()) continue;
        Poly p = v[j].num() * exactnum::exact_div(den[j], v[j].den());
        for (const auto& [m, c] : p.terms()) seen[j].emplace(m, 0);
      }
    for (size_t j = 0; j < n; ++j) {
      for (const auto& [m, c] : seen[j]) basis[j].push_back(m);
      width += basis[j].size();
    }
  }

  QVector to_q(const KVector& v) const {
    QVector q;
    q.reserve(width);
    for (size_t j = 0; j < basis.size(); ++j) {
      Poly p = v[j].is_zero() ? Poly() : v[j].num() * exactnum::exact_div(den[j], v[j].den());
      for (const auto& m : basis[j]) {
        auto it = p.terms().find(m);
        q.push_back(it == p.terms().end() ? Rational(0) : it->second);
      }
    }
    return q;
  }

  KVector to_k(const QVector& q, const SymbolTablePtr& t) const {
    KVector v(basis.size());
    size_t k = 0;
    for (size_t j = 0; j < basis.size(); ++j) {
      Poly p;
      for (const auto& m : basis[j]) p += Poly::term(m, q[k++]);
      v[j] = p.is_zero() ? Scalar() : Scalar(t, p, den[j]);
    }
    return v;
  }
};

SymbolTablePtr table_of(const std::vector<KVector>& vs) {
  SymbolTablePtr t;
  for (const auto& v : vs)
    for (const auto& x : v) t = exactnum::common_table(t, x.table());
  return t;
}

// Integer matrix of Q-rows scaled by a common denominator.
IntMatrix scaled_rows(const std::vector<QVector>& rows, size_t width, BigInt* scale) {
  BigInt l = 1;
  for (const auto& r : rows)
    for (const auto& x : r) l = lcm(l, BigInt(x.get_den()));
  IntMatrix m(0, width);
  for (const auto& r : rows) {
    std::vector<BigInt> ir;
    for (const auto& x : r) ir.push_back(x.get_num() * (l / x.get_den()));
    m.append_row(ir);
  }
  *scale = l;
  return m;
}

// Canonical Z-basis of the span of vectors in K^n.
std::vector<KVector> vector_lattice_basis(const std::vector<KVector>& gens, size_t n) {
  std::vector<KVector> nz;
  for (const auto& g : gens)
    if (!exactnum::is_zero(g)) nz.push_back(g);
  if (nz.empty()) return {};
  QFrame f(nz, n);
  std::vector<QVector> q;
  for (const auto& g : nz) q.push_back(f.to_q(g));
  BigInt sc;
  IntMatrix h = exactnum::hermite_rows(scaled_rows(q, f.width, &sc));
  auto t = table_of(nz);
  std::vector<KVector> out;
  for (size_t i = 0; i < h.rows(); ++i) {
    QVector r;
    for (size_t j = 0; j < h.cols(); ++j) r.push_back(Rational(h(i, j), sc));
    for (auto& x : r) x.canonicalize();
    out.push_back(f.to_k(r, t));
  }
  return out;
}

// Integer combinations m of gens whose image under `cond` vanishes.
std::vector<std::vector<BigInt>> integer_relations(const std::vector<KVector>& conds) {
  exactnum::MixedSystem sys;
  sys.nvars = conds.size();
  if (conds.empty()) return {};
  size_t n = conds[0].size();
  for (size_t i = 0; i < n; ++i) {
    KVector c;
    for (const auto& v : conds) c.push_back(v[i]);
    sys.add_k(std::move(c), Scalar());
  }
  return exactnum::solve_mixed(sys)->kernel;
}

KVector combine(const std::vector<KVector>& gens, const std::vector<BigInt>& m, size_t n) {
  KVector v(n);
  for (size_t j = 0; j < gens.size(); ++j) {
    if (m[j] == 0) continue;
    Scalar c{Rational(m[j])};
    for (size_t i = 0; i < n; ++i)
      if (!gens[j][i].is_zero()) v[i] += gens[j][i] * c;
  }
  return v;
}

// Rank of Γ ∩ K·γ.
size_t line_rank(const std::vector<KVector>& gens, const KVector& g, size_t n) {
  SpanProjector p({g}, n);
  std::vector<KVector> conds;
  for (const auto& x : gens) conds.push_back(p.project(x));
  size_t piv = 0;
  while (g[piv].is_zero()) ++piv;
  std::vector<Scalar> ts;
  for (const auto& m : integer_relations(conds)) ts.push_back(combine(gens, m, n)[piv] / g[piv]);
  return exactnum::q_linear_rank(ts);
}

bool divisible_by_tau(const Scalar& s) {
  if (s.is_zero() || !s.table()) return false;
  size_t t = s.table()->tau_index();
  for (const auto& [m, c] : s.num().terms())
    if (exactnum::exponent(m, t) == 0) return false;
  for (const auto& [m, c] : s.den().terms())
    if (exactnum::exponent(m, t) != 0) return false;
  return true;
}

}  // namespace

std::vector<Scalar> lattice_basis(const std::vector<Scalar>& gens) {
  std::vector<KVector> vs;
  for (const auto& g : gens) vs.push_back({g});
  std::vector<Scalar> out;
  for (const auto& v : vector_lattice_basis(vs, 1)) out.push_back(v[0]);
  return out;
}

std::string lattice_text(const std::vector<Scalar>& basis) {
  if (basis.empty()) return "0";
  bool tau = true;
  for (const auto& b : basis) tau = tau && divisible_by_tau(b);
  Scalar f(1);
  std::string prefix;
  if (tau) {
    f = Scalar::tau(basis[0].table());
    prefix = f.pretty();
  }
  std::vector<Scalar> coeffs;
  for (const auto& b : basis) coeffs.push_back(b / f);
  // Rational generators first, then by leading monomial in declaration order.
  std::stable_sort(coeffs.begin(), coeffs.end(), [](const Scalar& x, const Scalar& y) {
    if (x.is_rational() != y.is_rational()) return x.is_rational();
    if (x.is_rational()) return false;
    return GrlexLess()(y.num().leading_monomial(), x.num().leading_monomial());
  });
  std::vector<std::string> terms;
  for (const auto& c : coeffs) {
    std::string s = c.pretty();
    if (c == Scalar(1)) terms.push_back("Z");
    else if (c == Scalar(-1)) terms.push_back("-Z");
    else if (c.num().terms().size() > 1) terms.push_back("(" + s + ")Z");
    else terms.push_back(s + "Z");
  }
  std::string inner;
  for (size_t i = 0; i < terms.size(); ++i) inner += (i ? "+" : "") + terms[i];
  if (prefix.empty()) return inner;
  if (terms.size() == 1) return prefix + inner;
  return prefix + "(" + inner + ")";
}

std::string LatticeFactor::text() const {
  std::ostringstream os;
  if (dim == 1) {
    switch (kind) {
      case FactorKind::CStar: os << "C*"; break;
      case FactorKind::Elliptic: os << "C/" << lattice_text(generators); break;
      case FactorKind::NonDiscrete: os << "C/" << lattice_text(generators) << " [non-discrete, rank " << q_rank << "]"; break;
      case FactorKind::Torus: os << "C/" << lattice_text(generators); break;
    }
    if (!axis_aligned && kind != FactorKind::CStar) os << " [rescaled coordinate]";
    return os.str();
  }
  os << "C^" << dim << "/Λ [" << (kind == FactorKind::NonDiscrete ? "non-discrete, " : "") << "rank " << q_rank << "]";
  return os.str();
}

std::string NormalFormReport::text() const {
  std::vector<std::string> parts;
  if (free_c == 1) parts.push_back("C");
  else if (free_c > 1) parts.push_back("C^" + std::to_string(free_c));
  std::vector<std::string> cont;
  for (const auto& f : factors) cont.push_back(f.text());
  if (!cont.empty()) {
    std::string s;
    for (size_t i = 0; i < cont.size(); ++i) s += (i ? " ⊕ " : "") + cont[i];
    if (gluing_order > 1) s = "(" + s + ")/Z[order " + gluing_order.get_str() + "]";
    parts.push_back(s);
  }
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& a : atoms) parts.push_back("[" + a.label() + "]");
  if (parts.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? " ⊕ " : "") + parts[i];
  return s;
}

NormalFormReport classify(const Group& g) {
  g.validate();
  NormalFormReport rep;
  rep.symbols = g.symbols;
  rep.atoms = g.atoms;

  // Discrete part and the purely continuous relations Γ_a.
  std::vector<KVector> gamma;
  if (g.relations.empty()) {
    rep.free_rank = g.b;
  } else if (g.b == 0) {
    for (const auto& r : g.relations)
      if (!exactnum::is_zero(r.cont)) gamma.push_back(r.cont);
  } else {
    IntMatrix rd(0, g.b);
    for (const auto& r : g.relations) rd.append_row(r.disc);
    auto s = exactnum::smith_normal_form(rd);
    for (size_t i = 0; i < s.rank; ++i)
      if (s.D(i, i) > 1) rep.torsion.push_back(s.D(i, i));
    rep.free_rank = g.b - s.rank;
    for (size_t i = s.rank; i < rd.rows(); ++i) {
      KVector v(g.a);
      for (size_t k = 0; k < rd.rows(); ++k) {
        if (s.U(i, k) == 0) continue;
        Scalar c{Rational(s.U(i, k))};
        for (size_t j = 0; j < g.a; ++j)
          if (!g.relations[k].cont[j].is_zero()) v[j] += g.relations[k].cont[j] * c;
      }
      if (!exactnum::is_zero(v)) gamma.push_back(std::move(v));
    }
  }

  size_t k = exactnum::k_rank(gamma, g.a);
  rep.free_c = g.a - k;
  if (k > 0) {
    // Lines carrying the largest lattices come first.
    std::vector<size_t> lrank(gamma.size());
    for (size_t i = 0; i < gamma.size(); ++i) lrank[i] = line_rank(gamma, gamma[i], g.a);
    std::vector<size_t> order(gamma.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return lrank[x] > lrank[y]; });
    std::vector<KVector> cands;
    for (auto i : order) cands.push_back(gamma[i]);
    std::vector<KVector> E;
    for (auto i : exactnum::k_independent_rows(cands, g.a)) E.push_back(cands[i]);
    KMatrix et = exactnum::k_zero(g.a, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < g.a; ++j) et[j][i] = E[i][j];
    std::vector<KVector> gp;  // Γ' in basis coordinates
    for (const auto& v : gamma) gp.push_back(*exactnum::k_solve(et, v, k));
    size_t q_total = exactnum::q_linear_rank(gp);

    std::vector<std::vector<size_t>> blocks;
    for (size_t i = 0; i < k; ++i) blocks.push_back({i});
    std::vector<std::vector<KVector>> lam;  // per block, vectors in K^k
    for (;;) {
      lam.clear();
      std::vector<KVector> all;
      for (const auto& b : blocks) {
        std::vector<KVector> conds;
        for (const auto& v : gp) {
          KVector c;
          for (size_t i = 0; i < k; ++i)
            if (std::find(b.begin(), b.end(), i) == b.end()) c.push_back(v[i]);
          conds.push_back(c);
        }
        std::vector<KVector> l;
        if (conds[0].empty()) l = gp;
        else
          for (const auto& m : integer_relations(conds)) l.push_back(combine(gp, m, k));
        l = vector_lattice_basis(l, k);
        all.insert(all.end(), l.begin(), l.end());
        lam.push_back(std::move(l));
      }
      size_t sum = exactnum::q_linear_rank(all);
      if (sum == q_total) break;
      for (const auto& v : gp) {
        auto ext = all;
        ext.push_back(v);
        if (exactnum::q_linear_rank(ext) == sum) continue;
        std::vector<size_t> merged;
        std::vector<std::vector<size_t>> rest;
        for (const auto& b : blocks) {
          bool touch = false;
          for (auto i : b) touch = touch || !v[i].is_zero();
          if (touch) merged.insert(merged.end(), b.begin(), b.end());
          else rest.push_back(b);
        }
        std::sort(merged.begin(), merged.end());
        rest.push_back(merged);
        std::sort(rest.begin(), rest.end());
        blocks = std::move(rest);
        break;
      }
    }

    // Index of ⊕Λ_B in Γ'.
    {
      std::vector<KVector> sub;
      for (const auto& l : lam) sub.insert(sub.end(), l.begin(), l.end());
      std::vector<KVector> both = gp;
      both.insert(both.end(), sub.begin(), sub.end());
      QFrame f(both, k);
      std::vector<QVector> qg, qs;
      for (const auto& v : gp) qg.push_back(f.to_q(v));
      for (const auto& v : sub) qs.push_back(f.to_q(v));
      std::vector<QVector> allq = qg;
      allq.insert(allq.end(), qs.begin(), qs.end());
      BigInt sc;
      IntMatrix scaled = scaled_rows(allq, f.width, &sc);
      IntMatrix gi(0, f.width), si(0, f.width);
      for (size_t i = 0; i < qg.size(); ++i) gi.append_row(scaled.row(i));
      for (size_t i = 0; i < qs.size(); ++i) si.append_row(scaled.row(qg.size() + i));
      IntMatrix basis = exactnum::hermite_rows(gi);
      IntMatrix bt = basis.transpose();
      IntMatrix y(0, basis.rows());
      for (size_t i = 0; i < si.rows(); ++i) y.append_row(exactnum::solve_integer(bt, si.row(i))->particular);
      auto s = exactnum::smith_normal_form(y);
      BigInt idx = 1;
      for (size_t i = 0; i < s.rank; ++i) idx *= s.D(i, i);
      rep.gluing_order = s.rank == basis.rows() ? idx : BigInt(0);
    }

    struct Built {
      LatticeFactor f;
      std::vector<size_t> coords;
      std::vector<Scalar> units;
    };
    std::vector<Built> built;
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      Built x;
      x.coords = b;
      x.f.dim = b.size();
      x.f.q_rank = exactnum::q_linear_rank(lam[bi]);
      if (b.size() == 1) {
        size_t i = b[0];
        const KVector& e = E[i];
        size_t nnz = 0, at = 0;
        for (size_t j = 0; j < g.a; ++j)
          if (!e[j].is_zero()) {
            ++nnz;
            at = j;
          }
        Scalar u = nnz == 1 ? e[at] : Scalar(1);
        x.f.axis_aligned = nnz == 1;
        std::vector<Scalar> gens;
        for (const auto& v : lam[bi]) gens.push_back(v[i] * u);
        x.f.generators = lattice_basis(gens);
        x.units = {u};
        x.f.kind = x.f.q_rank <= 1 ? FactorKind::CStar
                   : x.f.q_rank == 2 ? FactorKind::Elliptic
                                     : FactorKind::NonDiscrete;
      } else {
        for (const auto& v : lam[bi]) {
          KVector r;
          for (auto i : b) r.push_back(v[i]);
          x.f.vgenerators.push_back(r);
        }
        x.units.assign(b.size(), Scalar(1));
        x.f.kind = x.f.q_rank > 2 * b.size() ? FactorKind::NonDiscrete : FactorKind::Torus;
      }
      built.push_back(std::move(x));
    }
    std::stable_sort(built.begin(), built.end(), [](const Built& x, const Built& y) {
      if (x.f.dim != y.f.dim) return x.f.dim < y.f.dim;
      if (x.f.q_rank != y.f.q_rank) return x.f.q_rank > y.f.q_rank;
      return x.f.text() < y.f.text();
    });
    std::vector<size_t> perm;  // new coordinate -> old basis coordinate
    std::vector<Scalar> units;
    for (const auto& x : built) {
      perm.insert(perm.end(), x.coords.begin(), x.coords.end());
      units.insert(units.end(), x.units.begin(), x.units.end());
      rep.factors.push_back(x.f);
    }
    std::vector<KVector> scaled;
    for (const auto& v : gp) {
      KVector w(k);
      for (size_t i = 0; i < k; ++i) w[i] = v[perm[i]] * units[i];
      scaled.push_back(std::move(w));
    }
    for (size_t i = 0; i < k; ++i) {
      if (rep.factors.empty()) break;
      KVector w(k);
      w[i] = units[i];
      rep.lattice_basis.push_back(w);
    }
    auto hb = vector_lattice_basis(scaled, k);
    rep.lattice_basis.insert(rep.lattice_basis.end(), hb.begin(), hb.end());
  }

  for (const auto& f : rep.factors) {
    if (f.kind == FactorKind::NonDiscrete) rep.has_nondiscrete = true;
    if (f.kind == FactorKind::Elliptic || f.kind == FactorKind::Torus) rep.rank2_by_genericity = true;
  }
  rep.has_atoms = !rep.atoms.empty();
  rep.is_finite = rep.free_c == 0 && rep.factors.empty() && rep.free_rank == 0 && rep.atoms.empty();
  rep.is_trivial = rep.is_finite && rep.torsion.empty();
  if (rep.is_finite) {
    BigInt o = 1;
    for (const auto& t : rep.torsion) o *= t;
    rep.order = o;
  }
  return rep;
}

GroupPtr to_group(const NormalFormReport& r) {
  Group g;
  g.symbols = r.symbols;
  size_t k = 0;
  for (const auto& f : r.factors) k += f.dim;
  g.a = k + r.free_c;
  g.b = r.torsion.size() + r.free_rank;
  g.atoms = r.atoms;
  for (const auto& v : r.lattice_basis) {
    KVector c = v;
    c.resize(g.a);
    g.relations.push_back({std::move(c), std::vector<BigInt>(g.b)});
  }
  for (size_t i = 0; i < r.torsion.size(); ++i) {
    std::vector<BigInt> d(g.b);
    d[i] = r.torsion[i];
    g.relations.push_back({KVector(g.a), std::move(d)});
  }
  return make_group(std::move(g));
}

bool same_report(const NormalFormReport& a, const NormalFormReport& b) {
  if (a.free_c != b.free_c || a.gluing_order != b.gluing_order || a.torsion != b.torsion ||
      a.free_rank != b.free_rank || !(a.atoms == b.atoms) || a.factors.size() != b.factors.size())
    return false;
  if (a.is_trivial != b.is_trivial || a.is_finite != b.is_finite || a.has_atoms != b.has_atoms ||
      a.has_nondiscrete != b.has_nondiscrete || a.rank2_by_genericity != b.rank2_by_genericity || a.order != b.order)
    return false;
  for (size_t i = 0; i < a.factors.size(); ++i) {
    const auto& x = a.factors[i];
    const auto& y = b.factors[i];
    if (x.kind != y.kind || x.dim != y.dim || x.q_rank != y.q_rank || x.generators != y.generators ||
        x.axis_aligned != y.axis_aligned || x.vgenerators.size() != y.vgenerators.size())
      return false;
  }
  return true;
}

bool lattices_homothetic(const std::vector<Scalar>& l1, const std::vector<Scalar>& l2) {
  size_t k = l1.size();
  if (k != l2.size()) return false;
  if (k == 0) return true;
  if (k == 1) return !l1[0].is_zero() && !l2[0].is_zero();
  // Unknown M (k x k) with c·a_i = sum_j M_ij b_j, c eliminated through i = 0.
  exactnum::MixedSystem sys;
  sys.nvars = k * k;
  for (size_t i = 1; i < k; ++i) {
    KVector c(k * k);
    for (size_t j = 0; j < k; ++j) {
      c[i * k + j] += l1[0] * l2[j];
      c[0 * k + j] -= l1[i] * l2[j];
    }
    sys.add_k(std::move(c), Scalar());
  }
  auto sol = exactnum::solve_mixed(sys)->kernel;
  auto det_ok = [&](const std::vector<BigInt>& v) {
    IntMatrix m(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) m(i, j) = v[i * k + j];
    BigInt d = exactnum::determinant(m);
    return d == 1 || d == -1;
  };
  if (sol.empty()) return false;
  if (sol.size() == 1) return det_ok(sol[0]);
  // Small search over combinations when the solution space is degenerate.
  if (sol.size() > 3) return false;
  std::vector<long> coeff(sol.size(), -2);
  for (;;) {
    std::vector<BigInt> v(k * k);
    for (size_t s = 0; s < sol.size(); ++s)
      for (size_t t = 0; t < v.size(); ++t) v[t] += coeff[s] * sol[s][t];
    if (det_ok(v)) return true;
    size_t p = 0;
    while (p < coeff.size() && coeff[p] == 2) coeff[p++] = -2;
    if (p == coeff.size()) return false;
    ++coeff[p];
  }
}

bool classify_equal(const NormalFormReport& a, const NormalFormReport& b) {
  if (a.free_c != b.free_c || a.torsion != b.torsion || a.free_rank != b.free_rank ||
      a.factors.size() != b.factors.size() || a.atoms.size() != b.atoms.size() || a.gluing_order != b.gluing_order)
    return false;
  for (size_t i = 0; i < a.atoms.size(); ++i)
    if (a.atoms[i].label() != b.atoms[i].label()) return false;
  std::vector<bool> used(b.factors.size(), false);
  for (const auto& x : a.factors) {
    bool found = false;
    for (size_t j = 0; j < b.factors.size() && !found; ++j) {
      const auto& y = b.factors[j];
      if (used[j] || x.kind != y.kind || x.dim != y.dim || x.q_rank != y.q_rank) continue;
      if (x.dim == 1 && !lattices_homothetic(x.generators, y.generators)) continue;
      used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace folmod::abgroup
