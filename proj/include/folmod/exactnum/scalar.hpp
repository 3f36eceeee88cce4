#pragma once

#include "folmod/exactnum/poly.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmod::exactnum {

struct SymbolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered, generic symbols. "tau_i" stands for 2*pi*i and is always present.
class SymbolTable {
 public:
  static constexpr const char* kTau = "tau_i";

  SymbolTable();
  // Returns the index; re-declaring an existing name is a no-op.
  size_t declare(const std::string& name, const std::string& display = "");
  std::optional<size_t> find(const std::string& name) const;
  size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& displays() const { return displays_; }
  size_t tau_index() const { return 0; }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> displays_;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

// Element of Q(symbols) kept as num/den with gcd removed and den monic.
class Scalar {
 public:
  Scalar() : num_(0), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}
  Scalar(const Rational& c) : num_(c), den_(1) {}
  Scalar(SymbolTablePtr t, Poly num, Poly den = Poly(1));
  static Scalar symbol(const SymbolTablePtr& t, const std::string& name);
  static Scalar tau(const SymbolTablePtr& t) { return symbol(t, SymbolTable::kTau); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const SymbolTablePtr& table() const { return table_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational rational_value() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  Scalar inverse() const;

  // Plain ASCII form, parseable back by parse_scalar.
  std::string to_string() const;
  // Display form using symbol display names (2πi for tau_i).
  std::string pretty() const;

  std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;

 private:
  void normalize();
  SymbolTablePtr table_;
  Poly num_, den_;
};

// Picks the non-null table of the two, throwing on two different tables.
SymbolTablePtr common_table(const SymbolTablePtr& a, const SymbolTablePtr& b);

// Grammar: sums/differences of products/quotients of powers of atoms; atoms are
// integers, decimals, declared symbols or parenthesized expressions.
Scalar parse_scalar(const std::string& text, const SymbolTablePtr& table);

}  // namespace folmod::exactnum
