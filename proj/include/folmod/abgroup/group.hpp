#pragma once

#include "folmod/exactnum/linalg.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmod::abgroup {

using exactnum::BigInt;
using exactnum::IntMatrix;
using exactnum::KMatrix;
using exactnum::KVector;
using exactnum::Rational;
using exactnum::Scalar;
using exactnum::SymbolTablePtr;

struct UnsupportedAtomMap : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFiniteTypeKernel : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AtomKind { DisconnectedU1, DiffGermGroup };
enum class AtomCardinality { FiniteUnknown, PossiblyUncountable };

std::string to_string(AtomKind k);
AtomKind atom_kind_from_string(const std::string& s);
std::string to_string(AtomCardinality c);
AtomCardinality atom_cardinality_from_string(const std::string& s);

// Opaque totally disconnected factor. Only its name and decorations are known.
struct Atom {
  std::string name;
  AtomKind kind = AtomKind::DisconnectedU1;
  AtomCardinality cardinality = AtomCardinality::PossiblyUncountable;
  // Quotient by a cyclic subgroup of this order; 0 means an infinite cyclic one.
  std::optional<BigInt> mod_cyclic;
  // Further quotient by a finite subgroup the data does not determine.
  bool finite_quotient_unresolved = false;

  std::string label() const;
  friend bool operator==(const Atom& a, const Atom& b);
};

// Element of C^a ⊕ Z^b; relations use the same shape.
struct Element {
  KVector cont;
  std::vector<BigInt> disc;
  friend bool operator==(const Element& a, const Element& b) {
    return a.cont == b.cont && a.disc == b.disc;
  }
};

// (C^a ⊕ Z^b ⊕ atoms) / <relations>; relations never touch atoms.
struct PresentedAbelianGroup {
  SymbolTablePtr symbols;
  size_t a = 0, b = 0;
  std::vector<Atom> atoms;
  std::vector<Element> relations;

  void add_relation(KVector cont, std::vector<BigInt> disc);
  Element zero_element() const;
  Element cont_generator(size_t i) const;
  Element disc_generator(size_t i) const;
  void validate() const;
};

using Group = PresentedAbelianGroup;
using GroupPtr = std::shared_ptr<const Group>;

GroupPtr make_group(Group g);
GroupPtr trivial_group(SymbolTablePtr t = nullptr);
// Z/n1 ⊕ Z/n2 ⊕ ... (0 entries give free factors).
GroupPtr cyclic_sum(const std::vector<BigInt>& orders, SymbolTablePtr t = nullptr);

struct AtomImage {
  size_t dom = 0, cod = 0;
  friend bool operator==(const AtomImage& a, const AtomImage& b) {
    return a.dom == b.dom && a.cod == b.cod;
  }
};

// Columns are domain generators. Atom entries map a domain atom onto a
// codomain atom (identity or a declared cyclic quotient); unlisted domain
// atoms go to zero. unresolved_targets lists codomain atoms that receive an
// unspecified finite image of discrete generators.
struct GroupHom {
  GroupPtr dom, cod;
  KMatrix cc;    // cod.a x dom.a
  KMatrix dc;    // cod.a x dom.b
  IntMatrix dd;  // cod.b x dom.b
  std::vector<AtomImage> atom_map;
  std::vector<size_t> unresolved_targets;

  Element apply(const Element& x) const;
  Element image_of_cont(size_t j) const;
  Element image_of_disc(size_t j) const;
};

GroupHom zero_hom(GroupPtr dom, GroupPtr cod);
GroupHom identity_hom(GroupPtr g);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom add(const GroupHom& f, const GroupHom& g);
GroupHom negate(const GroupHom& f);
GroupHom scale(const GroupHom& f, long c);

Element add(const Element& x, const Element& y);
Element scale(const Element& x, const BigInt& c);
Element negate(const Element& x);

// Solves sum m_j rel_j = x over the integers.
std::optional<std::vector<BigInt>> relation_combination(const Group& g, const Element& x);
bool is_zero_in(const Group& g, const Element& x);

struct HomCheck {
  bool ok = true;
  std::string violation;
  std::optional<size_t> relation;
};
HomCheck check_hom(const GroupHom& h);

struct DirectSum {
  GroupPtr group;
  std::vector<GroupHom> injections, projections;
  std::vector<size_t> cont_offset, disc_offset, atom_offset;
};
DirectSum direct_sum(const std::vector<GroupPtr>& gs);
// Block hom between direct sums; blocks[i][j] maps summand j of dom into summand i of cod.
GroupHom block_hom(const DirectSum& dom, const DirectSum& cod,
                   const std::vector<std::vector<std::optional<GroupHom>>>& blocks);

// Projection of K^n killing the column span of a matrix, with a right inverse.
class SpanProjector {
 public:
  SpanProjector() = default;
  SpanProjector(const std::vector<KVector>& span, size_t n);
  size_t source_dim() const { return n_; }
  size_t target_dim() const { return free_.size(); }
  KVector project(const KVector& x) const;
  KVector lift(const KVector& y) const;
  KMatrix matrix() const;
  KMatrix section() const;

 private:
  size_t n_ = 0;
  KMatrix rows_;
  std::vector<size_t> pivots_, free_;
};

struct Cokernel {
  GroupPtr group;
  GroupHom projection;  // cod -> coker
  SpanProjector proj;   // continuous coordinates
};
Cokernel cokernel(const GroupHom& h);

struct Kernel {
  GroupPtr group;
  GroupHom inclusion;
};
Kernel kernel(const GroupHom& h);

// x with h(x) = y, if any.
std::optional<Element> preimage(const GroupHom& h, const Element& y);

bool is_trivial(const Group& g);
bool is_surjective(const GroupHom& h);
bool is_injective(const GroupHom& h);
// g after f is zero.
bool composite_is_zero(const GroupHom& g, const GroupHom& f);
bool is_zero_hom(const GroupHom& h);
// Every element of ker g lies in im f.
bool kernel_in_image(const GroupHom& g, const GroupHom& f);

// Map between cokernels induced by f: A -> B, given cokernels with codomains A and B.
GroupHom induced_on_cokernels(const GroupHom& f, const Cokernel& src, const Cokernel& dst);
// Map into a kernel: f: X -> B with g∘f = 0, lifted through ker g -> B.
GroupHom lift_into_kernel(const GroupHom& f, const Kernel& k);

}  // namespace folmod::abgroup
