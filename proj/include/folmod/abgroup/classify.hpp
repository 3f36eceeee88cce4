#pragma once

#include "folmod/abgroup/group.hpp"

#include <string>
#include <vector>

namespace folmod::abgroup {

enum class FactorKind { CStar, Elliptic, NonDiscrete, Torus };
std::string to_string(FactorKind k);

// One block C^dim / Λ of the continuous part.
struct LatticeFactor {
  FactorKind kind = FactorKind::CStar;
  size_t dim = 1;
  size_t q_rank = 0;
  // dim 1: Z-basis of Λ as scalars (canonical Hermite order).
  std::vector<Scalar> generators;
  // dim > 1: Z-basis of Λ as vectors.
  std::vector<KVector> vgenerators;
  // dim 1: scalar giving the lattice coordinate along the chosen line; false
  // when the line is not a coordinate axis of the presentation.
  bool axis_aligned = true;

  std::string text() const;
};

struct NormalFormReport {
  size_t free_c = 0;                  // factors C
  std::vector<LatticeFactor> factors; // quotients of C^d by lattices
  BigInt gluing_order = 1;            // (⊕ factors)/Z with |Z| finite
  std::vector<BigInt> torsion;        // invariant factors > 1
  size_t free_rank = 0;               // Z^r
  std::vector<Atom> atoms;

  bool is_trivial = false, is_finite = false, has_atoms = false, has_nondiscrete = false;
  bool rank2_by_genericity = false;
  std::optional<BigInt> order;

  // Full continuous lattice in block coordinates (units first); used to
  // rebuild a presentation with the same report.
  std::vector<KVector> lattice_basis;
  SymbolTablePtr symbols;

  std::string text() const;
};

NormalFormReport classify(const Group& g);
GroupPtr to_group(const NormalFormReport& r);

// Exact equality of reports (fields, generators, atoms).
bool same_report(const NormalFormReport& a, const NormalFormReport& b);
// Isomorphism-level comparison: equal invariants, dim-1 lattices up to homothety.
bool classify_equal(const NormalFormReport& a, const NormalFormReport& b);

// Λ2 = c·Λ1 for some scalar c; inputs are Z-bases of equal size.
// Returns false when undecided (possible false negative for degenerate inputs).
bool lattices_homothetic(const std::vector<Scalar>& l1, const std::vector<Scalar>& l2);

// Canonical Z-basis of the subgroup generated by the scalars.
std::vector<Scalar> lattice_basis(const std::vector<Scalar>& gens);
// "2πi(Z+2α̃Z)" style rendering.
std::string lattice_text(const std::vector<Scalar>& basis);

}  // namespace folmod::abgroup
