#include "folmod/exactnum/intmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace folmod::exactnum {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(size_t n) {
  IntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<BigInt> IntMatrix::row(size_t i) const {
  return std::vector<BigInt>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

std::vector<BigInt> IntMatrix::col(size_t j) const {
  std::vector<BigInt> c(rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void IntMatrix::append_row(const std::vector<BigInt>& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void IntMatrix::swap_rows(size_t i, size_t k) {
  if (i == k) return;
  for (size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
}

void IntMatrix::swap_cols(size_t j, size_t k) {
  if (j == k) return;
  for (size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
}

void IntMatrix::add_row(size_t i, size_t k, const BigInt& f) {
  if (f == 0) return;
  for (size_t j = 0; j < cols_; ++j) (*this)(i, j) += f * (*this)(k, j);
}

void IntMatrix::add_col(size_t j, size_t k, const BigInt& f) {
  if (f == 0) return;
  for (size_t i = 0; i < rows_; ++i) (*this)(i, j) += f * (*this)(i, k);
}

void IntMatrix::negate_row(size_t i) {
  for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(size_t j) {
  for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a(i, k);
      if (x == 0) continue;
      for (size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<BigInt> IntMatrix::apply(const std::vector<BigInt>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  std::vector<BigInt> y(rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  size_t n = a.rows();
  // Bareiss fraction-free elimination.
  IntMatrix m = a;
  BigInt prev = 1, sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return n ? sign * m(n - 1, n - 1) : BigInt(1);
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  for (size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  size_t m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;
  size_t t = 0;
  while (t < std::min(m, n)) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    D.swap_rows(t, pi);
    s.U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    s.V.swap_cols(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row(i, t, -q);
        s.U.add_row(i, t, -q);
        if (D(i, t) != 0) {
          D.swap_rows(t, i);
          s.U.swap_rows(t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col(j, t, -q);
        s.V.add_col(j, t, -q);
        if (D(t, j) != 0) {
          D.swap_cols(t, j);
          s.V.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility of the trailing block by the pivot.
      for (size_t i = t + 1; i < m && clean; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            s.U.add_row(t, i, 1);
            clean = false;
            break;
          }
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    ++t;
  }
  s.rank = t;
  return s;
}

IntMatrix hermite_rows(const IntMatrix& a) {
  IntMatrix h = a;
  size_t m = h.rows(), n = h.cols();
  size_t r = 0;
  for (size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      size_t p = m;
      for (size_t i = r; i < m; ++i)
        if (h(i, j) != 0 && (p == m || abs(h(i, j)) < abs(h(p, j)))) p = i;
      if (p == m) break;
      h.swap_rows(r, p);
      bool done = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (h(i, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(r, j).get_mpz_t());
        h.add_row(i, r, -q);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (r < m && h(r, j) != 0) {
      if (h(r, j) < 0) h.negate_row(r);
      for (size_t i = 0; i < r; ++i) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(r, j).get_mpz_t());
        h.add_row(i, r, -q);
      }
      ++r;
    }
  }
  IntMatrix out(0, n);
  for (size_t i = 0; i < r; ++i) out.append_row(h.row(i));
  return out;
}

std::optional<IntSolution> solve_integer(const IntMatrix& a, const std::vector<BigInt>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  SmithForm s = smith_normal_form(a);
  std::vector<BigInt> ub = s.U.apply(b);
  size_t n = a.cols();
  std::vector<BigInt> y(n);
  for (size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (ub[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntSolution sol;
  sol.particular = s.V.apply(y);
  for (size_t j = s.rank; j < n; ++j) sol.kernel.push_back(s.V.col(j));
  return sol;
}

std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& a) {
  return solve_integer(a, std::vector<BigInt>(a.rows()))->kernel;
}

}  // namespace folmod::exactnum
