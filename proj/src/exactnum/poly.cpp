#include "folmod/exactnum/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace folmod::exactnum {

namespace {

void trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

uint32_t total_degree(const Monomial& m) {
  uint32_t d = 0;
  for (auto e : m) d += e;
  return d;
}

uint32_t exponent(const Monomial& m, size_t var) { return var < m.size() ? m[var] : 0; }

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = exponent(a, i) + exponent(b, i);
  return r;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > exponent(b, i)) return false;
  return true;
}

Monomial monomial_div(const Monomial& a, const Monomial& b) {
  Monomial r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - exponent(b, i);
  trim(r);
  return r;
}

Monomial var_power(size_t var, uint32_t e) {
  if (e == 0) return {};
  Monomial m(var + 1, 0);
  m[var] = e;
  return m;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    auto ea = exponent(a, i), eb = exponent(b, i);
    if (ea != eb) return ea < eb;
  }
  return false;
}

Poly::Poly(long c) {
  if (c != 0) terms_.emplace(Monomial{}, Rational(c));
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(size_t var) { return term(var_power(var, 1), 1); }

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  Monomial t = m;
  trim(t);
  p.add_term(t, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_value() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return terms_.rbegin()->second;
}

int Poly::max_var() const {
  int v = -1;
  for (const auto& [m, c] : terms_) v = std::max(v, static_cast<int>(m.size()) - 1);
  return v;
}

uint32_t Poly::degree_in(size_t var) const {
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, exponent(m, var));
  return d;
}

Poly Poly::coeff_in(size_t var, uint32_t e) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (exponent(m, var) != e) continue;
    Monomial t = m;
    if (var < t.size()) t[var] = 0;
    trim(t);
    r.add_term(t, c);
  }
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading_coeff();
  return *this * inv;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (m.empty()) {
      os << a.get_str();
      continue;
    }
    if (!unit) os << a.get_str() << "*";
    bool firstvar = true;
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly q, r = a;
  const auto& lb = b.leading_monomial();
  const auto& cb = b.leading_coeff();
  while (!r.is_zero()) {
    const auto& lr = r.leading_monomial();
    if (!monomial_divides(lb, lr)) throw std::domain_error("inexact polynomial division");
    Poly t = Poly::term(monomial_div(lr, lb), r.leading_coeff() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

Poly pow(const Poly& a, uint32_t e) {
  Poly r(1), base = a;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

namespace {

Poly content_in(const Poly& p, size_t var) {
  Poly g;
  uint32_t d = p.degree_in(var);
  for (uint32_t e = 0; e <= d; ++e) {
    Poly c = p.coeff_in(var, e);
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, size_t var) {
  if (p.is_zero()) return p;
  return exact_div(p, content_in(p, var));
}

Poly prem_in(const Poly& a, const Poly& b, size_t var) {
  uint32_t d = b.degree_in(var);
  Poly lb = b.coeff_in(var, d);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= d) {
    uint32_t e = r.degree_in(var);
    Poly lr = r.coeff_in(var, e);
    r = lb * r - lr * Poly::term(var_power(var, e - d), 1) * b;
  }
  return r;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  int va = a.max_var(), vb = b.max_var();
  size_t v = static_cast<size_t>(std::max(va, vb));
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd(ca, cb);
  Poly x = exact_div(a, ca), y = exact_div(b, cb);
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  while (!y.is_zero()) {
    Poly r = prem_in(x, y, v);
    x = std::move(y);
    y = primitive_in(r, v);
  }
  return (c * primitive_in(x, v)).monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  return exact_div(a * b, gcd(a, b)).monic();
}

}  // namespace folmod::exactnum
