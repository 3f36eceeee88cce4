#include "folmod/folmod/input.hpp"

#include <algorithm>

namespace folmod {

namespace {

// Field accessors that report the JSON path on failure.
struct Field {
  const Json& j;
  std::string path;

  Field at(const std::string& key) const {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    if (!j.contains(key)) throw ParseError(path, "missing field '" + key + "'");
    return {j.at(key), path + "." + key};
  }
  std::optional<Field> opt(const std::string& key) const {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return Field{j.at(key), path + "." + key};
  }
  Field index(size_t i) const { return {j.at(i), path + "[" + std::to_string(i) + "]"}; }
  size_t size() const {
    if (!j.is_array()) throw ParseError(path, "expected an array");
    return j.size();
  }
  std::string str() const {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
  }
  bool boolean() const {
    if (!j.is_boolean()) throw ParseError(path, "expected true or false");
    return j.get<bool>();
  }
  long integer() const {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return static_cast<long>(j.get<long long>());
  }
  long positive() const {
    long v = integer();
    if (v <= 0) throw ParseError(path, "expected a positive integer");
    return v;
  }
};

size_t component_ref(const MarkedDivisor& d, const Field& f) {
  auto name = f.str();
  auto c = d.find_component(name);
  if (!c) throw ParseError(f.path, "unknown component '" + name + "'");
  return *c;
}

TypeTag tag_from_json(const Field& f) {
  TypeTag t;
  std::optional<Field> obj;
  if (!f.j.is_string()) obj.emplace(f);
  std::string tag = obj ? f.at("tag").str() : f.str();
  auto num = [&](const char* key, long dflt) {
    if (!obj) return dflt;
    auto v = obj->opt(key);
    return v ? v->positive() : dflt;
  };
  if (tag == "P") {
    t.kind = HolonomyType::P;
    t.q = num("q", 1);
  } else if (tag == "L1") {
    t.kind = HolonomyType::L1;
  } else if (tag == "L0") {
    t.kind = HolonomyType::L0;
    if (!obj) throw ParseError(f.path, "L0 needs an 'atom' name");
    t.atom = obj->at("atom").str();
  } else if (tag == "R1" || tag == "R0") {
    if (!obj) throw ParseError(f.path, tag + " needs 'p' and 'r'");
    t.kind = tag == "R1" ? HolonomyType::R1 : HolonomyType::R0;
    t.p = obj->at("p").positive();
    t.r = obj->at("r").integer();
    if (t.kind == HolonomyType::R0) {
      t.m = obj->at("m").positive();
      t.beta_image_order = obj->at("beta_image_order").positive();
    }
  } else {
    throw ParseError(f.path, "unknown holonomy type '" + tag + "'");
  }
  return t;
}

Json tag_to_json(const TypeTag& t) {
  switch (t.kind) {
    case HolonomyType::P: return Json{{"tag", "P"}, {"q", t.q}};
    case HolonomyType::L1: return "L1";
    case HolonomyType::L0: return Json{{"tag", "L0"}, {"atom", t.atom}};
    case HolonomyType::R1: return Json{{"tag", "R1"}, {"p", t.p}, {"r", t.r}};
    case HolonomyType::R0:
      return Json{{"tag", "R0"}, {"p", t.p}, {"r", t.r}, {"m", t.m}, {"beta_image_order", t.beta_image_order}};
  }
  return nullptr;
}

HolonomyClass class_from_string(const Field& f) {
  auto s = f.str();
  if (s == "finite") return HolonomyClass::Finite;
  if (s == "abelian_infinite") return HolonomyClass::AbelianInfinite;
  if (s == "nonabelian") return HolonomyClass::NonAbelian;
  throw ParseError(f.path, "unknown holonomy class '" + s + "'");
}

std::pair<size_t, size_t> line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::optional<size_t> MarkedDivisor::find_component(const std::string& name) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i].name == name) return i;
  return std::nullopt;
}

bool MarkedDivisor::corner_in_sigma(size_t c) const {
  const auto& k = corners.at(c);
  return !components.at(k.comps[0]).dicritical && !components.at(k.comps[1]).dicritical;
}

std::string to_string(HolonomyType t) {
  switch (t) {
    case HolonomyType::P: return "P";
    case HolonomyType::L1: return "L1";
    case HolonomyType::L0: return "L0";
    case HolonomyType::R1: return "R1";
    case HolonomyType::R0: return "R0";
  }
  return "?";
}

std::string TypeTag::text() const {
  switch (kind) {
    case HolonomyType::P: return "P(q=" + std::to_string(q) + ")";
    case HolonomyType::L1: return "L1";
    case HolonomyType::L0: return "L0(" + atom + ")";
    case HolonomyType::R1: return "R1(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ")";
    case HolonomyType::R0:
      return "R0(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ",m=" + std::to_string(m) +
             ",k=" + std::to_string(beta_image_order) + ")";
  }
  return "?";
}

std::string to_string(HolonomyClass c) {
  switch (c) {
    case HolonomyClass::Finite: return "finite";
    case HolonomyClass::AbelianInfinite: return "abelian_infinite";
    case HolonomyClass::NonAbelian: return "nonabelian";
  }
  return "?";
}

const SideData* SingularityData::find(const std::string& point, size_t comp) const {
  for (const auto& s : sides)
    if (s.point == point && s.comp == comp) return &s;
  return nullptr;
}

const VertexHolonomy* FoliationInput::holonomy(size_t comp) const {
  for (const auto& h : holonomies)
    if (h.comp == comp) return &h;
  return nullptr;
}

std::vector<std::string> FoliationInput::sigma_points(size_t comp) const {
  std::vector<std::string> out;
  for (size_t c = 0; c < divisor.corners.size(); ++c) {
    const auto& k = divisor.corners[c];
    if ((k.comps[0] == comp || k.comps[1] == comp) && divisor.corner_in_sigma(c)) out.push_back(k.name);
  }
  for (const auto& a : divisor.attachments)
    if (a.comp == comp) out.push_back(a.name);
  return out;
}

FoliationInput input_from_json(const Json& j) {
  Field root{j, "$"};
  if (!j.is_object()) throw ParseError("$", "expected an object");
  auto ver = root.at("schema_version");
  if (ver.integer() != kInputSchemaVersion)
    throw ParseError(ver.path, "unsupported schema_version " + std::to_string(ver.integer()));
  if (auto k = root.opt("kind"); k && k->str() != "marked-foliation")
    throw ParseError(k->path, "expected kind 'marked-foliation'");

  FoliationInput in;
  if (auto f = root.opt("name")) in.name = f->str();
  if (auto f = root.opt("description")) in.description = f->str();
  try {
    in.symbols = abgroup::symbols_from_json(j.contains("symbols") ? j.at("symbols") : Json());
  } catch (const std::exception& e) {
    throw ParseError("$.symbols", e.what());
  }

  auto& d = in.divisor;
  std::vector<std::string> names;
  auto fresh = [&](const Field& f) {
    auto n = f.str();
    if (n.empty()) throw ParseError(f.path, "empty name");
    if (std::find(names.begin(), names.end(), n) != names.end()) throw ParseError(f.path, "duplicate name '" + n + "'");
    names.push_back(n);
    return n;
  };

  auto comps = root.at("components");
  for (size_t i = 0; i < comps.size(); ++i) {
    auto c = comps.index(i);
    Component k;
    k.name = fresh(c.at("name"));
    if (auto f = c.opt("dicritical")) k.dicritical = f->boolean();
    if (auto f = c.opt("self_intersection")) k.self_intersection = f->integer();
    if (auto f = c.opt("rigid")) k.rigid = f->boolean();
    d.components.push_back(k);
  }
  if (auto corners = root.opt("corners"))
    for (size_t i = 0; i < corners->size(); ++i) {
      auto c = corners->index(i);
      Corner k;
      k.name = fresh(c.at("name"));
      auto ends = c.at("components");
      if (ends.size() != 2) throw ParseError(ends.path, "a corner joins exactly two components");
      k.comps = {component_ref(d, ends.index(0)), component_ref(d, ends.index(1))};
      if (k.comps[0] == k.comps[1]) throw ParseError(ends.path, "a corner joins two distinct components");
      if (auto f = c.opt("in_sigma")) k.declared_in_sigma = f->boolean();
      d.corners.push_back(k);
    }
  if (auto atts = root.opt("attachments"))
    for (size_t i = 0; i < atts->size(); ++i) {
      auto c = atts->index(i);
      Attachment a;
      a.name = fresh(c.at("name"));
      a.comp = component_ref(d, c.at("component"));
      if (auto f = c.opt("in_sigma")) a.declared_in_sigma = f->boolean();
      d.attachments.push_back(a);
    }

  if (auto sing = root.opt("singularities"))
    for (size_t i = 0; i < sing->size(); ++i) {
      auto s = sing->index(i);
      SideData sd;
      auto pt = s.at("point");
      sd.point = pt.str();
      if (std::find(names.begin(), names.end(), sd.point) == names.end() || d.find_component(sd.point))
        throw ParseError(pt.path, "unknown point '" + sd.point + "'");
      sd.comp = component_ref(d, s.at("component"));
      if (in.sing.find(sd.point, sd.comp)) throw ParseError(s.path, "duplicate side data");
      if (auto f = s.opt("cs")) {
        try {
          sd.cs = abgroup::scalar_from_json(f->j, in.symbols);
        } catch (const std::exception& e) {
          throw ParseError(f->path, e.what());
        }
      }
      sd.tag = tag_from_json(s.at("type"));
      if (auto f = s.opt("nodal")) sd.nodal = f->boolean();
      in.sing.sides.push_back(sd);
    }

  if (auto hol = root.opt("holonomies"))
    for (size_t i = 0; i < hol->size(); ++i) {
      auto h = hol->index(i);
      VertexHolonomy vh;
      vh.comp = component_ref(d, h.at("component"));
      if (in.holonomy(vh.comp)) throw ParseError(h.path, "duplicate holonomy for component");
      vh.cls = class_from_string(h.at("class"));
      if (auto f = h.opt("order")) vh.order = f->positive();
      if (auto f = h.opt("point_orders")) {
        if (!f->j.is_object()) throw ParseError(f->path, "expected an object");
        for (auto it = f->j.begin(); it != f->j.end(); ++it)
          vh.point_orders[it.key()] = Field{it.value(), f->path + "." + it.key()}.positive();
      }
      if (auto f = h.opt("centralizer"))
        for (size_t k = 0; k < f->size(); ++k) vh.centralizer.push_back(f->index(k).positive());
      in.holonomies.push_back(vh);
    }

  if (auto fl = root.opt("flags"))
    if (auto f = fl->opt("tr")) in.flags.tr = f->boolean();
  if (auto ex = root.opt("expect"))
    if (auto f = ex->opt("singular_chains")) {
      long v = f->integer();
      if (v < 0) throw ParseError(f->path, "expected a non-negative integer");
      in.expect.singular_chains = static_cast<size_t>(v);
    }
  return in;
}

Json input_to_json(const FoliationInput& in) {
  const auto& d = in.divisor;
  Json out;
  out["schema_version"] = kInputSchemaVersion;
  out["kind"] = "marked-foliation";
  if (!in.name.empty()) out["name"] = in.name;
  if (!in.description.empty()) out["description"] = in.description;
  out["symbols"] = abgroup::symbols_to_json(in.symbols);
  Json comps = Json::array();
  for (const auto& c : d.components) {
    Json k{{"name", c.name}, {"dicritical", c.dicritical}};
    if (c.self_intersection) k["self_intersection"] = *c.self_intersection;
    if (c.rigid) k["rigid"] = true;
    comps.push_back(k);
  }
  out["components"] = comps;
  Json corners = Json::array();
  for (const auto& c : d.corners) {
    Json k{{"name", c.name}, {"components", {d.components[c.comps[0]].name, d.components[c.comps[1]].name}}};
    if (c.declared_in_sigma) k["in_sigma"] = *c.declared_in_sigma;
    corners.push_back(k);
  }
  out["corners"] = corners;
  Json atts = Json::array();
  for (const auto& a : d.attachments) {
    Json k{{"name", a.name}, {"component", d.components[a.comp].name}};
    if (a.declared_in_sigma) k["in_sigma"] = *a.declared_in_sigma;
    atts.push_back(k);
  }
  out["attachments"] = atts;
  Json sing = Json::array();
  for (const auto& s : in.sing.sides) {
    Json k{{"point", s.point}, {"component", d.components[s.comp].name}};
    if (s.cs) k["cs"] = s.cs->to_string();
    k["type"] = tag_to_json(s.tag);
    if (s.nodal) k["nodal"] = true;
    sing.push_back(k);
  }
  out["singularities"] = sing;
  Json hol = Json::array();
  for (const auto& h : in.holonomies) {
    Json k{{"component", d.components[h.comp].name}, {"class", to_string(h.cls)}};
    if (h.cls == HolonomyClass::Finite) {
      k["order"] = h.order;
      Json po = Json::object();
      for (const auto& [p, n] : h.point_orders) po[p] = n;
      k["point_orders"] = po;
    }
    if (!h.centralizer.empty()) k["centralizer"] = h.centralizer;
    hol.push_back(k);
  }
  out["holonomies"] = hol;
  out["flags"] = Json{{"tr", in.flags.tr}};
  if (in.expect.singular_chains) out["expect"] = Json{{"singular_chains", *in.expect.singular_chains}};
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
  }
}

FoliationInput parse_input(const std::string& text) {
  Json j = parse_json_text(text);
  try {
    return input_from_json(j);
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError("$", e.what());
  }
}

}  // namespace folmod
