#pragma once

#include "folmod/folmod/groups.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace folmod {

using abgroup::NormalFormReport;

// A pipeline's hypotheses do not hold; `witness` says where.
struct PreconditionFailed : std::runtime_error {
  std::string witness;
  PreconditionFailed(const std::string& what, std::string w)
      : std::runtime_error(what + (w.empty() ? "" : ": " + w)), witness(std::move(w)) {}
};
struct TcViolated : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};
struct NotNonDegenerate : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};
struct NotFiniteType : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};

// Named yes/no outcome of an internal consistency check. `decided` is false
// when the check could not be run (atoms).
struct Check {
  std::string name;
  bool ok = true;
  bool decided = true;
  std::string detail;
};

struct ZoneReport {
  std::vector<std::string> vertices;  // component names
  size_t extremities = 0;             // blown-up edge ends at R0
  size_t active = 0;
  NormalFormReport h1_exp;
};

struct ModuliReport {
  std::string name;
  std::string pipeline;  // "nondegenerate" or "finite_type"
  bool formal = false;   // atoms present: exact-sequence description only
  ChainCounts counts;
  size_t tau = 0;
  std::vector<std::string> red_vertices, kept_vertices;
  NormalFormReport moduli;  // H1(R, Sym)
  std::string shape;        // nondegenerate pipeline
  std::optional<NormalFormReport> h1_exp, h1_dis, finite_kernel;  // H1(Exp), D, F = ker χ
  std::optional<size_t> lambda_kernel_rank;                      // p
  std::vector<ZoneReport> zones;
  size_t active_vertices = 0;
  std::vector<Check> checks;

  bool ok() const;  // all decided checks pass
  std::string text() const;
  Json to_json() const;
};

ModuliReport compute_moduli_nondegenerate(const FoliationInput& in, const Analysis& an);
ModuliReport compute_moduli_finite_type(const FoliationInput& in, const Analysis& an);
// Runs every pipeline whose hypotheses hold and cross-checks them.
ModuliReport compute_moduli(const FoliationInput& in, const Analysis& an);

// Zones: completions of the components of R minus R0, as subgraphs of `g`.
std::vector<Subgraph> zones_of(const Graph& g, const Subgraph& R, const Subgraph& R0);

// "(Z/m_1 ⊕ B_1 ⊕ C*/α_1^Z ⊕ (C*)^ν)/Z": one Z/m per μ-chain, one atom
// quotient per β-chain, one elliptic factor per λ-chain.
std::string moduli_shape(const ChainCounts& c, const std::vector<long>& mu_orders);

}  // namespace folmod
