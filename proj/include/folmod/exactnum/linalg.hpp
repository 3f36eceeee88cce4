#pragma once

#include "folmod/exactnum/intmatrix.hpp"
#include "folmod/exactnum/scalar.hpp"

#include <optional>
#include <vector>

namespace folmod::exactnum {

using KVector = std::vector<Scalar>;
using KMatrix = std::vector<KVector>;  // row-major
using QVector = std::vector<Rational>;

// Q-coordinates of Scalars over the monomials of a common-denominator form.
struct QExpansion {
  Poly common_den;
  std::vector<Monomial> basis;
  std::vector<QVector> coords;  // one per input scalar
};

QExpansion q_expand(const std::vector<Scalar>& xs);
size_t q_linear_rank(const std::vector<Scalar>& xs);
// Q-rank of a family of vectors in K^n (componentwise expansion).
size_t q_linear_rank(const std::vector<KVector>& vs);

size_t rational_rank(std::vector<QVector> rows);
// Basis of {x : M x = 0} over Q, M given by rows.
std::vector<QVector> rational_nullspace(const std::vector<QVector>& rows, size_t ncols);
// Smallest integer multiple of a rational vector that is primitive.
std::vector<BigInt> primitive_integer(const QVector& v);

bool is_zero(const KVector& v);
KVector k_add(const KVector& a, const KVector& b);
KVector k_scale(const KVector& a, const Scalar& c);
// Row-major product.
KMatrix k_mul(const KMatrix& a, const KMatrix& b);
// Same, with the column count given for empty inner dimensions.
KMatrix k_mul(const KMatrix& a, const KMatrix& b, size_t cols);
KVector k_apply(const KMatrix& m, const KVector& x, size_t ncols);
KMatrix k_zero(size_t rows, size_t cols);
KMatrix k_identity(size_t n);
KMatrix k_transpose(const KMatrix& m, size_t ncols);

struct KEchelon {
  KMatrix rref;               // reduced rows, nonzero only
  std::vector<size_t> pivots; // pivot column per row
};
KEchelon k_rref(const KMatrix& m, size_t ncols);
size_t k_rank(const KMatrix& m, size_t ncols);
// Basis of {x : M x = 0}, one vector per free column (free coordinate = 1).
std::vector<KVector> k_nullspace(const KMatrix& m, size_t ncols);
std::optional<KVector> k_solve(const KMatrix& m, const KVector& b, size_t ncols);
// Indices of a maximal K-independent subfamily of the vectors, in order.
std::vector<size_t> k_independent_rows(const std::vector<KVector>& vs, size_t n);

// Integer unknowns subject to K-linear and Z-linear equations.
struct MixedSystem {
  size_t nvars = 0;
  std::vector<std::pair<KVector, Scalar>> k_eqs;
  std::vector<std::pair<std::vector<BigInt>, BigInt>> z_eqs;
  void add_k(KVector coeffs, Scalar rhs) { k_eqs.emplace_back(std::move(coeffs), std::move(rhs)); }
  void add_z(std::vector<BigInt> coeffs, BigInt rhs) { z_eqs.emplace_back(std::move(coeffs), std::move(rhs)); }
  IntMatrix integer_matrix(std::vector<BigInt>* rhs) const;
};

std::optional<IntSolution> solve_mixed(const MixedSystem& sys);

}  // namespace folmod::exactnum
