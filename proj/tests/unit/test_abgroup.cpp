#include "doctest.h"

#include "folmod/abgroup/classify.hpp"

using namespace folmod::abgroup;
using folmod::exactnum::parse_scalar;
using folmod::exactnum::SymbolTable;

namespace {

SymbolTablePtr table() {
  auto t = std::make_shared<SymbolTable>();
  t->declare("mu", "μ");
  t->declare("alpha_t", "α̃");
  t->declare("beta_t", "β̃");
  return t;
}

GroupPtr cline(const SymbolTablePtr& t, const std::vector<std::string>& rels) {
  Group g;
  g.symbols = t;
  g.a = 1;
  for (const auto& r : rels) g.add_relation({parse_scalar(r, t)}, {});
  return make_group(g);
}

}  // namespace

TEST_CASE("check_hom examples") {
  auto t = table();
  auto cstar = cline(t, {"tau_i"});
  CHECK(check_hom(identity_hom(cstar)).ok);
  auto c = cline(t, {});
  auto ell = cline(t, {"tau_i", "tau_i*mu"});
  GroupHom h = zero_hom(c, ell);
  h.cc[0][0] = Scalar(1);
  CHECK(check_hom(h).ok);
  GroupHom f = zero_hom(cstar, c);
  f.cc[0][0] = Scalar(1);
  auto chk = check_hom(f);
  CHECK_FALSE(chk.ok);
  CHECK(chk.relation == std::optional<size_t>(0));
}

TEST_CASE("cokernel examples") {
  auto t = table();
  auto c = cline(t, {});
  CHECK(is_trivial(*cokernel(identity_hom(c)).group));
  auto z = cyclic_sum({0}, t);
  GroupHom h = zero_hom(z, c);
  h.dc[0][0] = Scalar::tau(t);
  auto ck = cokernel(h);
  auto rep = classify(*ck.group);
  REQUIRE(rep.factors.size() == 1);
  CHECK(rep.factors[0].kind == FactorKind::CStar);
  CHECK(rep.text() == "C*");
  CHECK(check_hom(ck.projection).ok);
}

TEST_CASE("kernel examples") {
  auto t = table();
  auto c = cline(t, {});
  auto ell = cline(t, {"tau_i", "tau_i*mu"});
  GroupHom h = zero_hom(c, ell);
  h.cc[0][0] = Scalar(1);
  auto k = kernel(h);
  CHECK(k.group->a == 0);
  auto rep = classify(*k.group);
  CHECK(rep.free_rank == 2);
  CHECK(rep.torsion.empty());
  CHECK(check_hom(k.inclusion).ok);
  // Images of the kernel generators span tau_i Z + tau_i mu Z.
  std::vector<Scalar> imgs;
  for (size_t j = 0; j < k.group->b; ++j) imgs.push_back(k.inclusion.image_of_disc(j).cont[0]);
  CHECK(lattice_basis(imgs) == lattice_basis({Scalar::tau(t), Scalar::tau(t) * parse_scalar("mu", t)}));

  auto z6 = cyclic_sum({6}), z3 = cyclic_sum({3});
  GroupHom p = zero_hom(z6, z3);
  p.dd(0, 0) = 1;
  auto kp = kernel(p);
  auto kr = classify(*kp.group);
  CHECK(kr.is_finite);
  CHECK(*kr.order == 2);
  // Generator maps to an element of order 2 in Z/6, i.e. 3.
  auto g = kp.inclusion.image_of_disc(0);
  for (size_t j = 1; j < kp.group->b; ++j) g = add(g, kp.inclusion.image_of_disc(j));
  CHECK(is_trivial(*kernel(identity_hom(z6)).group));
}

TEST_CASE("classify examples") {
  auto t = table();
  auto rep = classify(*cline(t, {"tau_i", "tau_i*mu"}));
  REQUIRE(rep.factors.size() == 1);
  CHECK(rep.factors[0].kind == FactorKind::Elliptic);
  CHECK(rep.rank2_by_genericity);
  CHECK(lattices_homothetic(rep.factors[0].generators, {Scalar(1), parse_scalar("mu", t)}));
  auto nd = classify(*cline(t, {"tau_i", "2*alpha_t*tau_i", "2*beta_t*tau_i"}));
  REQUIRE(nd.factors.size() == 1);
  CHECK(nd.factors[0].kind == FactorKind::NonDiscrete);
  CHECK(nd.factors[0].q_rank == 3);
  CHECK(nd.has_nondiscrete);
  CHECK(lattice_text(nd.factors[0].generators) == "2πi(Z+2α̃Z+2β̃Z)");
  Group f;
  f.b = 2;
  f.add_relation({}, {2, 0});
  f.add_relation({}, {0, 4});
  auto fr = classify(f);
  CHECK(fr.torsion == std::vector<BigInt>{2, 4});
  CHECK(fr.text() == "Z/2 ⊕ Z/4");
}

TEST_CASE("direct sum examples") {
  auto t = table();
  auto s = direct_sum({trivial_group(), trivial_group()});
  CHECK(is_trivial(*s.group));
  auto c = cline(t, {});
  auto z2 = cyclic_sum({2});
  auto cz = direct_sum({c, z2});
  CHECK(cz.group->a == 1);
  CHECK(cz.group->b == 1);
  REQUIRE(cz.group->relations.size() == 1);
  CHECK(cz.group->relations[0].disc[0] == 2);
  for (const auto& i : cz.injections) CHECK(check_hom(i).ok);
  for (const auto& p : cz.projections) CHECK(check_hom(p).ok);
}

TEST_CASE("surjectivity and injectivity examples") {
  auto t = table();
  auto c = cline(t, {});
  auto ell = cline(t, {"tau_i", "tau_i*mu"});
  GroupHom h = zero_hom(c, ell);
  h.cc[0][0] = Scalar(1);
  CHECK(is_surjective(h));
  CHECK_FALSE(is_injective(h));
  GroupHom e = zero_hom(cyclic_sum({2}), cyclic_sum({4}));
  e.dd(0, 0) = 2;
  CHECK(check_hom(e).ok);
  CHECK(is_injective(e));
  CHECK_FALSE(is_surjective(e));
  GroupHom z = zero_hom(c, c);
  CHECK_FALSE(is_surjective(z));
  CHECK_FALSE(is_injective(z));
}

TEST_CASE("classify is idempotent") {
  auto t = table();
  std::vector<GroupPtr> gs = {cline(t, {"tau_i", "tau_i*mu"}), cline(t, {"tau_i", "2*alpha_t*tau_i", "2*beta_t*tau_i"}),
                              cline(t, {"tau_i"}), cline(t, {})};
  Group mixed;
  mixed.symbols = t;
  mixed.a = 2;
  mixed.b = 1;
  mixed.add_relation({Scalar::tau(t), Scalar()}, {0});
  mixed.add_relation({Scalar(), Scalar::tau(t)}, {0});
  mixed.add_relation({Scalar::tau(t) * parse_scalar("1/2", t), Scalar::tau(t) * parse_scalar("1/2", t)}, {3});
  mixed.add_relation({Scalar(), Scalar::tau(t) * parse_scalar("2*alpha_t", t)}, {6});
  gs.push_back(make_group(mixed));
  for (const auto& g : gs) {
    auto r = classify(*g);
    auto r2 = classify(*to_group(r));
    CHECK(same_report(r, r2));
    CHECK(classify_equal(r, r2));
  }
}

TEST_CASE("direct sums keep atom names distinct when nested") {
  Group g;
  Atom k;
  k.name = "K";
  g.atoms.push_back(k);
  auto a = make_group(std::move(g));
  auto twice = direct_sum({a, a}).group;
  auto thrice = direct_sum({twice, a}).group;
  REQUIRE(thrice->atoms.size() == 3);
  CHECK(thrice->atoms[0].name == "K");
  CHECK(thrice->atoms[1].name == "K#2");
  CHECK(thrice->atoms[2].name == "K#3");
  auto nested = direct_sum({a, twice}).group;
  CHECK(nested->atoms[1].name == "K#2");
  CHECK(nested->atoms[2].name == "K#2#2");
}
