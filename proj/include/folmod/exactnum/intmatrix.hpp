#pragma once

#include "folmod/exactnum/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace folmod::exactnum {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);
  static IntMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  BigInt& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const BigInt& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  std::vector<BigInt> row(size_t i) const;
  std::vector<BigInt> col(size_t j) const;
  void append_row(const std::vector<BigInt>& r);
  IntMatrix transpose() const;

  void swap_rows(size_t i, size_t k);
  void swap_cols(size_t j, size_t k);
  // row_i += f * row_k
  void add_row(size_t i, size_t k, const BigInt& f);
  void add_col(size_t j, size_t k, const BigInt& f);
  void negate_row(size_t i);
  void negate_col(size_t j);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  std::vector<BigInt> apply(const std::vector<BigInt>& x) const;
  bool is_zero() const;
  std::string to_string() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

BigInt determinant(const IntMatrix& a);

struct SmithForm {
  IntMatrix U, D, V;  // U * A * V = D
  size_t rank = 0;
  std::vector<BigInt> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Row Hermite form of the lattice spanned by the rows; zero rows dropped.
IntMatrix hermite_rows(const IntMatrix& a);

struct IntSolution {
  std::vector<BigInt> particular;
  std::vector<std::vector<BigInt>> kernel;  // Z-basis of {x : A x = 0}
};

// Integer solutions of A x = b; nullopt when none exist.
std::optional<IntSolution> solve_integer(const IntMatrix& a, const std::vector<BigInt>& b);
std::vector<std::vector<BigInt>> integer_kernel(const IntMatrix& a);

}  // namespace folmod::exactnum
