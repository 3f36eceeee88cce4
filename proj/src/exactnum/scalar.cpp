#include "folmod/exactnum/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace folmod::exactnum {

SymbolTable::SymbolTable() { declare(kTau, "2πi"); }

size_t SymbolTable::declare(const std::string& name, const std::string& display) {
  if (name.empty()) throw SymbolError("empty symbol name");
  if (auto i = find(name)) return *i;
  bool ok = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
  for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  if (!ok) throw SymbolError("invalid symbol name '" + name + "'");
  names_.push_back(name);
  displays_.push_back(display.empty() ? name : display);
  return names_.size() - 1;
}

std::optional<size_t> SymbolTable::find(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

SymbolTablePtr common_table(const SymbolTablePtr& a, const SymbolTablePtr& b) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (a->names() == b->names()) return a;
  throw SymbolError("scalars from different symbol tables");
}

Scalar::Scalar(SymbolTablePtr t, Poly num, Poly den)
    : table_(std::move(t)), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Scalar Scalar::symbol(const SymbolTablePtr& t, const std::string& name) {
  if (!t) throw SymbolError("no symbol table");
  auto i = t->find(name);
  if (!i) throw SymbolError("undeclared symbol '" + name + "'");
  return Scalar(t, Poly::variable(*i));
}

void Scalar::normalize() {
  if (den_.is_zero()) throw std::domain_error("scalar with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  Rational c = den_.leading_coeff();
  if (c != 1) {
    Rational inv = 1 / c;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw std::domain_error("scalar is not rational");
  return num_.constant_value() / den_.constant_value();
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  auto t = common_table(a.table_, b.table_);
  if (a.den_ == b.den_) return Scalar(t, a.num_ + b.num_, a.den_);
  return Scalar(t, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  auto t = common_table(a.table_, b.table_);
  if (a.is_zero() || b.is_zero()) return Scalar();
  return Scalar(t, a.num_ * b.num_, a.den_ * b.den_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  return Scalar(table_, den_, num_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  common_table(a.table_, b.table_);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::to_string() const {
  static const std::vector<std::string> none;
  const auto& names = table_ ? table_->names() : none;
  std::string n = num_.to_string(names);
  if (den_ == Poly(1)) return n;
  std::string d = den_.to_string(names);
  bool nsimple = num_.terms().size() <= 1;
  bool dsimple = den_.terms().size() <= 1 && den_.terms().begin()->second == 1;
  return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

std::string Scalar::pretty() const {
  static const std::vector<std::string> none;
  const auto& names = table_ ? table_->displays() : none;
  auto fmt = [&](const Poly& p) {
    std::string s = p.to_string(names);
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
      // Drop '*' between a coefficient/symbol and a symbol for readability.
      if (s[i] == '*') continue;
      out += s[i];
    }
    return out;
  };
  std::string n = fmt(num_);
  if (den_ == Poly(1)) return n;
  std::string d = fmt(den_);
  bool nsimple = num_.terms().size() <= 1;
  bool dsimple = den_.terms().size() <= 1;
  return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

std::complex<double> Scalar::evaluate(const std::vector<std::complex<double>>& values) const {
  auto ev = [&](const Poly& p) {
    std::complex<double> s = 0;
    for (const auto& [m, c] : p.terms()) {
      std::complex<double> t = c.get_d();
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (i >= values.size()) throw SymbolError("missing numeric value for symbol");
        t *= std::pow(values[i], static_cast<double>(m[i]));
      }
      s += t;
    }
    return s;
  };
  return ev(num_) / ev(den_);
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const SymbolTablePtr& t) : s_(s), t_(t) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("cannot parse scalar \"" + s_ + "\" at " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v;
    if (eat('-')) v = -term();
    else {
      eat('+');
      v = term();
    }
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = power();
    for (;;) {
      if (eat('*')) v *= power();
      else if (eat('/')) {
        Scalar d = power();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else return v;
    }
  }
  Scalar power() {
    Scalar b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("integer exponent expected");
      unsigned long e = std::stoul(s_.substr(st, i_ - st));
      Scalar r(1);
      for (unsigned long k = 0; k < e; ++k) r *= b;
      if (neg) {
        if (r.is_zero()) fail("zero to a negative power");
        r = r.inverse();
      }
      return r;
    }
    return b;
  }
  Scalar atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (c == '-') {
      ++i_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string whole = s_.substr(st, i_ - st);
      Rational v{BigInt(whole)};
      if (i_ < s_.size() && s_[i_] == '.') {
        ++i_;
        size_t fs = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string frac = s_.substr(fs, i_ - fs);
        if (!frac.empty()) {
          BigInt den = 1;
          for (size_t k = 0; k < frac.size(); ++k) den *= 10;
          v += Rational(BigInt(frac), den);
          v.canonicalize();
        }
      }
      return Scalar(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(st, i_ - st);
      if (!t_) fail("symbol '" + name + "' without symbol table");
      if (!t_->find(name)) fail("undeclared symbol '" + name + "'");
      return Scalar::symbol(t_, name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  SymbolTablePtr t_;
  size_t i_ = 0;
};

}  // namespace

Scalar parse_scalar(const std::string& text, const SymbolTablePtr& table) {
  return Parser(text, table).parse();
}

}  // namespace folmod::exactnum
