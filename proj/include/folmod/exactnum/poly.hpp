#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace folmod::exactnum {

using BigInt = mpz_class;
using Rational = mpq_class;

// Exponent vector indexed by symbol position; trailing zeros are trimmed so
// equal monomials compare equal regardless of how many symbols exist.
using Monomial = std::vector<uint32_t>;

uint32_t total_degree(const Monomial& m);
uint32_t exponent(const Monomial& m, size_t var);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
bool monomial_divides(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& a, const Monomial& b);
Monomial var_power(size_t var, uint32_t e);

// Graded lexicographic order, symbol 0 is the largest variable.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  Poly(long c);
  Poly(const Rational& c);
  static Poly variable(size_t var);
  static Poly term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;
  const Terms& terms() const { return terms_; }

  const Monomial& leading_monomial() const;
  const Rational& leading_coeff() const;

  // Highest index of a variable occurring in the polynomial, -1 for constants.
  int max_var() const;
  uint32_t degree_in(size_t var) const;
  // Coefficient of var^e, itself free of var.
  Poly coeff_in(size_t var, uint32_t e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly monic() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

// Throws std::domain_error when b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);
// Monic gcd over Q[symbols]; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
Poly pow(const Poly& a, uint32_t e);

}  // namespace folmod::exactnum
