#include "doctest.h"

#include "folmod/exactnum/linalg.hpp"

#include <random>

using namespace folmod::exactnum;

namespace {

SymbolTablePtr table(std::initializer_list<const char*> names) {
  auto t = std::make_shared<SymbolTable>();
  for (auto n : names) t->declare(n);
  return t;
}

IntMatrix random_matrix(std::mt19937& rng, size_t r, size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("polynomial gcd recovers planted common factor") {
  auto t = table({"x", "y", "z"});
  auto x = Poly::variable(1), y = Poly::variable(2), z = Poly::variable(3);
  Poly g = x * y + z * Poly(2) + Poly(1);
  Poly a = g * (x * x - y);
  Poly b = g * (z + x * Poly(3));
  CHECK(gcd(a, b) == g.monic());
  CHECK(gcd(a, Poly(5)) == Poly(1));
  CHECK(exact_div(a, g) == x * x - y);
}

TEST_CASE("scalar field arithmetic is exact") {
  auto t = table({"mu", "alpha_t"});
  Scalar mu = Scalar::symbol(t, "mu"), al = Scalar::symbol(t, "alpha_t");
  Scalar a = (mu + Scalar(1)) / (al - mu), b = (al * al - Scalar(3)) / mu;
  CHECK((a / b) * (b / a) == Scalar(1));
  CHECK(a + b - b == a);
  CHECK((mu * mu - Scalar(1)) / (mu - Scalar(1)) == mu + Scalar(1));
  Scalar n = (a * b) / b;
  CHECK(n == a);
  CHECK(Scalar(t, n.num(), n.den()) == n);
}

TEST_CASE("scalar parser round trip") {
  auto t = table({"mu", "alpha_t"});
  Scalar s = parse_scalar("-2*alpha_t*tau_i + (mu^2 - 1)/(mu + 1) - 1/2", t);
  CHECK(s == parse_scalar(s.to_string(), t));
  CHECK(parse_scalar("(mu^2-1)/(mu+1)", t) == parse_scalar("mu - 1", t));
  CHECK(parse_scalar("0.25", t) == Scalar(Rational(1, 4)));
  CHECK_THROWS(parse_scalar("nu + 1", t));
  CHECK_THROWS(parse_scalar("1/(mu-mu)", t));
}

TEST_CASE("smith normal form examples") {
  IntMatrix a{{2, 4}, {6, 8}};
  auto s = smith_normal_form(a);
  CHECK(s.U * a * s.V == s.D);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  IntMatrix z(2, 3);
  CHECK(smith_normal_form(z).D == z);
  auto id = IntMatrix::identity(3);
  CHECK(smith_normal_form(id).D == id);
}

TEST_CASE("smith normal form property on random matrices") {
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form(a);
    REQUIRE(s.U * a * s.V == s.D);
    BigInt du = determinant(s.U), dv = determinant(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    for (size_t i = 0; i + 1 < s.rank; ++i) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
    for (size_t i = s.rank; i < std::min(r, c); ++i) CHECK(s.D(i, i) == 0);
  }
}

TEST_CASE("integer solver agrees with brute force on small systems") {
  std::mt19937 rng(11);
  for (int it = 0; it < 200; ++it) {
    IntMatrix a = random_matrix(rng, 2, 2, -4, 4);
    std::vector<BigInt> b = {BigInt(long(rng() % 9) - 4), BigInt(long(rng() % 9) - 4)};
    bool brute = false;
    // Any solution has a representative within a box because the lattice of
    // solutions is a translate of the kernel; search a generous box.
    for (long x = -40; x <= 40 && !brute; ++x)
      for (long y = -40; y <= 40 && !brute; ++y)
        brute = a(0, 0) * x + a(0, 1) * y == b[0] && a(1, 0) * x + a(1, 1) * y == b[1];
    auto sol = solve_integer(a, b);
    if (sol) CHECK(a.apply(sol->particular) == b);
    if (brute) CHECK(sol.has_value());
  }
}

TEST_CASE("q_linear_rank examples and invariance") {
  auto t = table({"mu", "alpha_t", "beta_t"});
  auto S = [&](const char* s) { return parse_scalar(s, t); };
  CHECK(q_linear_rank({Scalar(1), S("2*alpha_t"), S("2*beta_t")}) == 3);
  CHECK(q_linear_rank({Scalar(1), Scalar(2), Scalar(Rational(1, 2))}) == 1);
  CHECK(q_linear_rank({Scalar(1), S("mu"), S("1+mu")}) == 2);
  std::vector<Scalar> xs = {S("mu/(1+alpha_t)"), S("1/(1+alpha_t)"), S("(mu+1)/(1+alpha_t)"), S("beta_t")};
  size_t r = q_linear_rank(xs);
  CHECK(r == 3);
  std::vector<Scalar> ys = {xs[3] * Scalar(7), xs[1] * Scalar(Rational(-2, 3)), xs[2], xs[0]};
  CHECK(q_linear_rank(ys) == r);
  auto t2 = table({"nu"});
  CHECK_THROWS(q_linear_rank({S("mu"), Scalar::symbol(t2, "nu")}));
}

TEST_CASE("normal form is idempotent") {
  auto t = table({"a", "b"});
  Scalar s = parse_scalar("(a^2 - b^2)/(2*a + 2*b)", t);
  Scalar again(t, s.num(), s.den());
  CHECK(again.num() == s.num());
  CHECK(again.den() == s.den());
  CHECK(s == parse_scalar("a/2 - b/2", t));
}

TEST_CASE("mixed integer system over K") {
  auto t = table({"mu"});
  Scalar mu = Scalar::symbol(t, "mu");
  MixedSystem sys;
  sys.nvars = 2;
  // m0 + m1*mu = 3 + 2*mu
  sys.add_k({Scalar(1), mu}, Scalar(3) + Scalar(2) * mu);
  auto sol = solve_mixed(sys);
  REQUIRE(sol);
  CHECK(sol->particular == std::vector<BigInt>{3, 2});
  CHECK(sol->kernel.empty());
  MixedSystem bad;
  bad.nvars = 1;
  bad.add_k({Scalar(2)}, Scalar(1));
  CHECK_FALSE(solve_mixed(bad));
}
