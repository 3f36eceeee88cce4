#pragma once

#include "folmod/abgroup/json.hpp"
#include "folmod/exactnum/scalar.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmod {

using abgroup::Json;
using exactnum::Scalar;
using exactnum::SymbolTablePtr;

inline constexpr int kInputSchemaVersion = 1;

// Malformed input document; `where` is a field path or "line L, column C".
struct ParseError : std::runtime_error {
  std::string where;
  ParseError(std::string where_, const std::string& what)
      : std::runtime_error(where_ + ": " + what), where(std::move(where_)) {}
};
// Input that parses but cannot be fed to a pipeline; validate() names the cause.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DisconnectedDivisor : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct Component {
  std::string name;
  bool dicritical = false;
  std::optional<long> self_intersection;
  bool rigid = false;
};

// Intersection of two components. in_sigma is derived (both invariant); the
// declared value, if any, is kept for validation.
struct Corner {
  std::string name;
  std::array<size_t, 2> comps{};
  std::optional<bool> declared_in_sigma;
};

// Point of Σ on a single component (attaching point of a separatrix).
struct Attachment {
  std::string name;
  size_t comp = 0;
  std::optional<bool> declared_in_sigma;
};

struct MarkedDivisor {
  std::vector<Component> components;
  std::vector<Corner> corners;
  std::vector<Attachment> attachments;

  std::optional<size_t> find_component(const std::string& name) const;
  bool corner_in_sigma(size_t c) const;
};

enum class HolonomyType { P, L1, L0, R1, R0 };
std::string to_string(HolonomyType t);

// Local holonomy type with its numeric invariants.
//   P: periodic of order q.  R1: h = l^r exp X, l of order p.
//   R0: as R1 plus 0 -> Z -> C(h) -> Z/p with alpha(1) = exp(X/m) and image of
//   order beta_image_order.  L0: C(h) is the named totally disconnected atom.
struct TypeTag {
  HolonomyType kind = HolonomyType::L1;
  long q = 1;
  long p = 1, r = 0, m = 1, beta_image_order = 1;
  std::string atom;

  bool periodic() const { return kind == HolonomyType::P; }
  bool resonant() const { return kind == HolonomyType::R1 || kind == HolonomyType::R0; }
  // No invariant vector field: L0 and R0.
  bool exp_trivial() const { return kind == HolonomyType::L0 || kind == HolonomyType::R0; }
  std::string text() const;
};

// Data of one side (point, component) of a Σ point.
struct SideData {
  std::string point;
  size_t comp = 0;
  std::optional<Scalar> cs;
  TypeTag tag;
  bool nodal = false;
};

struct SingularityData {
  std::vector<SideData> sides;
  const SideData* find(const std::string& point, size_t comp) const;
};

enum class HolonomyClass { Finite, AbelianInfinite, NonAbelian };
std::string to_string(HolonomyClass c);

struct VertexHolonomy {
  size_t comp = 0;
  HolonomyClass cls = HolonomyClass::AbelianInfinite;
  long order = 1;                         // n_D for finite classes
  std::map<std::string, long> point_orders;  // n_{D,s}
  std::vector<long> centralizer;          // invariant factors (non-abelian class)
};

struct Flags {
  bool tr = false;  // condition (TR), declared
};

struct Expectations {
  std::optional<size_t> singular_chains;
};

struct FoliationInput {
  std::string name, description;
  SymbolTablePtr symbols;
  MarkedDivisor divisor;
  SingularityData sing;
  std::vector<VertexHolonomy> holonomies;
  Flags flags;
  Expectations expect;

  const VertexHolonomy* holonomy(size_t comp) const;
  // Σ points on a component: corner names (in Σ) and attachment names.
  std::vector<std::string> sigma_points(size_t comp) const;
};

FoliationInput input_from_json(const Json& j);
Json input_to_json(const FoliationInput& in);
// Parses text; syntax errors carry line and column.
FoliationInput parse_input(const std::string& text);
Json parse_json_text(const std::string& text);

}  // namespace folmod
