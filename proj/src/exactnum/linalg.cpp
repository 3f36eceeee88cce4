#include "folmod/exactnum/linalg.hpp"

#include <map>
#include <stdexcept>

namespace folmod::exactnum {

QExpansion q_expand(const std::vector<Scalar>& xs) {
  QExpansion e;
  e.common_den = Poly(1);
  SymbolTablePtr t;
  for (const auto& x : xs) t = common_table(t, x.table());
  for (const auto& x : xs)
    if (!x.is_zero()) e.common_den = lcm(e.common_den, x.den());
  std::map<Monomial, size_t, GrlexLess> index;
  std::vector<Poly> polys;
  for (const auto& x : xs) {
    polys.push_back(x.is_zero() ? Poly() : x.num() * exact_div(e.common_den, x.den()));
    for (const auto& [m, c] : polys.back().terms()) index.emplace(m, 0);
  }
  size_t k = 0;
  for (auto& [m, i] : index) {
    i = k++;
    e.basis.push_back(m);
  }
  for (const auto& p : polys) {
    QVector v(e.basis.size());
    for (const auto& [m, c] : p.terms()) v[index.at(m)] = c;
    e.coords.push_back(std::move(v));
  }
  return e;
}

size_t rational_rank(std::vector<QVector> rows) {
  if (rows.empty()) return 0;
  size_t n = rows[0].size(), r = 0;
  for (size_t j = 0; j < n && r < rows.size(); ++j) {
    size_t p = r;
    while (p < rows.size() && rows[p][j] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][j] == 0) continue;
      Rational f = rows[i][j] / rows[r][j];
      for (size_t k = j; k < n; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<QVector> rational_nullspace(const std::vector<QVector>& input, size_t n) {
  std::vector<QVector> rows = input;
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t j = 0; j < n && r < rows.size(); ++j) {
    size_t p = r;
    while (p < rows.size() && rows[p][j] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][j];
    for (size_t k = 0; k < n; ++k) rows[r][k] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][j] == 0) continue;
      Rational f = rows[i][j];
      for (size_t k = 0; k < n; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(j);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n);
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BigInt> primitive_integer(const QVector& v) {
  BigInt l = 1, g = 0;
  for (const auto& x : v) l = lcm(l, BigInt(x.get_den()));
  std::vector<BigInt> out;
  for (const auto& x : v) {
    BigInt y = x.get_num() * (l / x.get_den());
    g = gcd(g, y);
    out.push_back(y);
  }
  if (g > 1)
    for (auto& y : out) y /= g;
  return out;
}

size_t q_linear_rank(const std::vector<Scalar>& xs) {
  return rational_rank(q_expand(xs).coords);
}

size_t q_linear_rank(const std::vector<KVector>& vs) {
  if (vs.empty()) return 0;
  size_t n = vs[0].size();
  std::vector<QVector> rows(vs.size());
  for (size_t j = 0; j < n; ++j) {
    std::vector<Scalar> col;
    for (const auto& v : vs) col.push_back(v[j]);
    auto e = q_expand(col);
    for (size_t i = 0; i < vs.size(); ++i)
      rows[i].insert(rows[i].end(), e.coords[i].begin(), e.coords[i].end());
  }
  return rational_rank(rows);
}

bool is_zero(const KVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

KVector k_add(const KVector& a, const KVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  KVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

KVector k_scale(const KVector& a, const Scalar& c) {
  KVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

KMatrix k_zero(size_t rows, size_t cols) { return KMatrix(rows, KVector(cols)); }

KMatrix k_identity(size_t n) {
  KMatrix m = k_zero(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

KMatrix k_mul(const KMatrix& a, const KMatrix& b) { return k_mul(a, b, b.empty() ? 0 : b[0].size()); }

KMatrix k_mul(const KMatrix& a, const KMatrix& b, size_t cols) {
  size_t inner = b.size();
  KMatrix c = k_zero(a.size(), cols);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("matrix shape mismatch");
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < cols; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

KVector k_apply(const KMatrix& m, const KVector& x, size_t ncols) {
  if (x.size() != ncols) throw std::invalid_argument("vector length mismatch");
  KVector y(m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < ncols; ++j)
      if (!m[i][j].is_zero() && !x[j].is_zero()) y[i] += m[i][j] * x[j];
  return y;
}

KMatrix k_transpose(const KMatrix& m, size_t ncols) {
  KMatrix t = k_zero(ncols, m.size());
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  return t;
}

KEchelon k_rref(const KMatrix& input, size_t n) {
  KMatrix rows = input;
  KEchelon e;
  size_t r = 0;
  for (size_t j = 0; j < n && r < rows.size(); ++j) {
    size_t p = r;
    while (p < rows.size() && rows[p][j].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = rows[r][j].inverse();
    for (size_t k = 0; k < n; ++k)
      if (!rows[r][k].is_zero()) rows[r][k] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][j].is_zero()) continue;
      Scalar f = rows[i][j];
      for (size_t k = 0; k < n; ++k)
        if (!rows[r][k].is_zero()) rows[i][k] -= f * rows[r][k];
    }
    e.pivots.push_back(j);
    ++r;
  }
  rows.resize(r);
  e.rref = std::move(rows);
  return e;
}

size_t k_rank(const KMatrix& m, size_t n) { return k_rref(m, n).pivots.size(); }

std::vector<KVector> k_nullspace(const KMatrix& m, size_t n) {
  auto e = k_rref(m, n);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<KVector> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    KVector v(n);
    v[f] = Scalar(1);
    for (size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rref[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<KVector> k_solve(const KMatrix& m, const KVector& b, size_t n) {
  if (b.size() != m.size()) throw std::invalid_argument("rhs length mismatch");
  KMatrix aug = m;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto e = k_rref(aug, n + 1);
  KVector x(n);
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == n) return std::nullopt;
    x[e.pivots[i]] = e.rref[i][n];
  }
  return x;
}

std::vector<size_t> k_independent_rows(const std::vector<KVector>& vs, size_t n) {
  std::vector<size_t> keep;
  KMatrix reduced;  // echelon rows with recorded pivots
  std::vector<size_t> piv;
  for (size_t idx = 0; idx < vs.size(); ++idx) {
    KVector v = vs[idx];
    for (size_t r = 0; r < reduced.size(); ++r) {
      if (v[piv[r]].is_zero()) continue;
      Scalar f = v[piv[r]];
      for (size_t k = 0; k < n; ++k)
        if (!reduced[r][k].is_zero()) v[k] -= f * reduced[r][k];
    }
    size_t p = 0;
    while (p < n && v[p].is_zero()) ++p;
    if (p == n) continue;
    Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    // Keep earlier rows reduced against the new pivot.
    for (auto& row : reduced) {
      if (row[p].is_zero()) continue;
      Scalar f = row[p];
      for (size_t k = 0; k < n; ++k)
        if (!v[k].is_zero()) row[k] -= f * v[k];
    }
    reduced.push_back(v);
    piv.push_back(p);
    keep.push_back(idx);
  }
  return keep;
}

IntMatrix MixedSystem::integer_matrix(std::vector<BigInt>* rhs) const {
  IntMatrix a(0, nvars);
  rhs->clear();
  auto push_rational = [&](const QVector& coeffs, const Rational& b) {
    QVector full = coeffs;
    full.push_back(b);
    auto ints = primitive_integer(full);
    BigInt r = ints.back();
    ints.pop_back();
    bool zero = r == 0;
    for (const auto& v : ints) zero = zero && v == 0;
    if (zero) return;
    a.append_row(ints);
    rhs->push_back(r);
  };
  for (const auto& [coeffs, b] : k_eqs) {
    if (coeffs.size() != nvars) throw std::invalid_argument("equation length mismatch");
    std::vector<Scalar> all = coeffs;
    all.push_back(b);
    auto e = q_expand(all);
    for (size_t m = 0; m < e.basis.size(); ++m) {
      QVector row(nvars);
      for (size_t j = 0; j < nvars; ++j) row[j] = e.coords[j][m];
      push_rational(row, e.coords[nvars][m]);
    }
  }
  for (const auto& [coeffs, b] : z_eqs) {
    if (coeffs.size() != nvars) throw std::invalid_argument("equation length mismatch");
    QVector row;
    for (const auto& c : coeffs) row.emplace_back(c);
    push_rational(row, Rational(b));
  }
  return a;
}

std::optional<IntSolution> solve_mixed(const MixedSystem& sys) {
  std::vector<BigInt> rhs;
  IntMatrix a = sys.integer_matrix(&rhs);
  if (a.rows() == 0) {
    IntSolution s;
    s.particular.assign(sys.nvars, 0);
    for (size_t j = 0; j < sys.nvars; ++j) {
      std::vector<BigInt> e(sys.nvars);
      e[j] = 1;
      s.kernel.push_back(e);
    }
    return s;
  }
  return solve_integer(a, rhs);
}

}  // namespace folmod::exactnum
