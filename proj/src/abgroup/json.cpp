#include "folmod/abgroup/json.hpp"

namespace folmod::abgroup {

exactnum::SymbolTablePtr symbols_from_json(const Json& j) {
  auto t = std::make_shared<exactnum::SymbolTable>();
  if (j.is_null()) return t;
  if (!j.is_array()) throw JsonShapeError("symbols must be an array");
  for (const auto& s : j) {
    if (s.is_string()) {
      t->declare(s.get<std::string>());
    } else if (s.is_object() && s.contains("name")) {
      t->declare(s.at("name").get<std::string>(), s.value("display", std::string()));
    } else {
      throw JsonShapeError("symbol entries must be names or {name, display} objects");
    }
  }
  return t;
}

Json symbols_to_json(const exactnum::SymbolTablePtr& t) {
  Json out = Json::array();
  if (!t) return out;
  for (size_t i = 0; i < t->size(); ++i) {
    if (i == t->tau_index()) continue;
    const auto& n = t->names()[i];
    const auto& d = t->displays()[i];
    if (d.empty() || d == n)
      out.push_back(n);
    else
      out.push_back(Json{{"name", n}, {"display", d}});
  }
  return out;
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw JsonShapeError("not an integer: " + j.get<std::string>());
    return v;
  }
  throw JsonShapeError("expected an integer, got " + j.dump());
}

Json bigint_to_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Scalar scalar_from_json(const Json& j, const exactnum::SymbolTablePtr& t) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return exactnum::parse_scalar(j.get<std::string>(), t);
  throw JsonShapeError("expected a scalar (integer or expression string), got " + j.dump());
}

namespace {

KMatrix kmatrix_from_json(const Json& j, size_t rows, size_t cols, const exactnum::SymbolTablePtr& t,
                          const char* what) {
  KMatrix m = exactnum::k_zero(rows, cols);
  if (j.is_null()) return m;
  if (!j.is_array() || j.size() != rows) throw JsonShapeError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw JsonShapeError(std::string(what) + ": row " + std::to_string(i) + " needs " + std::to_string(cols) + " entries");
    for (size_t k = 0; k < cols; ++k) m[i][k] = scalar_from_json(j[i][k], t);
  }
  return m;
}

Json kmatrix_to_json(const KMatrix& m) {
  Json out = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(x.to_string());
    out.push_back(row);
  }
  return out;
}

}  // namespace

GroupPtr group_from_json(const Json& j, const exactnum::SymbolTablePtr& t) {
  if (!j.is_object()) throw JsonShapeError("group must be an object");
  Group g;
  g.symbols = t;
  g.a = j.value("cont", 0);
  g.b = j.value("disc", 0);
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) {
      KVector c(g.a);
      std::vector<BigInt> d(g.b, 0);
      const Json& jc = r.contains("cont") ? r.at("cont") : Json::array();
      const Json& jd = r.contains("disc") ? r.at("disc") : Json::array();
      if (jc.size() != g.a && !(jc.empty()))
        throw JsonShapeError("relation needs " + std::to_string(g.a) + " continuous coefficients");
      if (jd.size() != g.b && !(jd.empty()))
        throw JsonShapeError("relation needs " + std::to_string(g.b) + " discrete coefficients");
      for (size_t i = 0; i < jc.size(); ++i) c[i] = scalar_from_json(jc[i], t);
      for (size_t i = 0; i < jd.size(); ++i) d[i] = bigint_from_json(jd[i]);
      g.add_relation(std::move(c), std::move(d));
    }
  }
  if (j.contains("atoms")) {
    for (const auto& ja : j.at("atoms")) {
      Atom a;
      a.name = ja.at("name").get<std::string>();
      if (ja.contains("kind")) a.kind = atom_kind_from_string(ja.at("kind").get<std::string>());
      if (ja.contains("cardinality")) a.cardinality = atom_cardinality_from_string(ja.at("cardinality").get<std::string>());
      if (ja.contains("mod_cyclic")) {
        const Json& m = ja.at("mod_cyclic");
        a.mod_cyclic = m.is_string() && m.get<std::string>() == "infinite" ? BigInt(0) : bigint_from_json(m);
      }
      a.finite_quotient_unresolved = ja.value("finite_quotient_unresolved", false);
      g.atoms.push_back(std::move(a));
    }
  }
  return make_group(std::move(g));
}

Json group_to_json(const Group& g) {
  Json out;
  out["cont"] = g.a;
  out["disc"] = g.b;
  Json rels = Json::array();
  for (const auto& r : g.relations) {
    Json jc = Json::array(), jd = Json::array();
    for (const auto& x : r.cont) jc.push_back(x.to_string());
    for (const auto& x : r.disc) jd.push_back(bigint_to_json(x));
    rels.push_back(Json{{"cont", jc}, {"disc", jd}});
  }
  out["relations"] = rels;
  Json atoms = Json::array();
  for (const auto& a : g.atoms) {
    Json ja{{"name", a.name}, {"kind", to_string(a.kind)}, {"cardinality", to_string(a.cardinality)}};
    if (a.mod_cyclic) ja["mod_cyclic"] = *a.mod_cyclic == 0 ? Json("infinite") : bigint_to_json(*a.mod_cyclic);
    if (a.finite_quotient_unresolved) ja["finite_quotient_unresolved"] = true;
    atoms.push_back(ja);
  }
  out["atoms"] = atoms;
  return out;
}

GroupHom hom_from_json(const Json& j, GroupPtr dom, GroupPtr cod) {
  GroupHom h = zero_hom(dom, cod);
  auto t = exactnum::common_table(dom->symbols, cod->symbols);
  h.cc = kmatrix_from_json(j.contains("cc") ? j.at("cc") : Json(), cod->a, dom->a, t, "cc");
  h.dc = kmatrix_from_json(j.contains("dc") ? j.at("dc") : Json(), cod->a, dom->b, t, "dc");
  if (j.contains("dd")) {
    const Json& d = j.at("dd");
    if (!d.is_array() || d.size() != cod->b) throw JsonShapeError("dd: expected " + std::to_string(cod->b) + " rows");
    for (size_t i = 0; i < cod->b; ++i) {
      if (d[i].size() != dom->b) throw JsonShapeError("dd: row " + std::to_string(i) + " needs " + std::to_string(dom->b) + " entries");
      for (size_t k = 0; k < dom->b; ++k) h.dd(i, k) = bigint_from_json(d[i][k]);
    }
  }
  if (j.contains("atoms"))
    for (const auto& p : j.at("atoms")) {
      size_t a = p.at(0).get<size_t>(), b = p.at(1).get<size_t>();
      if (a >= dom->atoms.size() || b >= cod->atoms.size()) throw JsonShapeError("atom map index out of range");
      h.atom_map.push_back({a, b});
    }
  if (j.contains("unresolved"))
    for (const auto& x : j.at("unresolved")) h.unresolved_targets.push_back(x.get<size_t>());
  return h;
}

Json hom_to_json(const GroupHom& h) {
  Json out;
  out["cc"] = kmatrix_to_json(h.cc);
  out["dc"] = kmatrix_to_json(h.dc);
  Json dd = Json::array();
  for (size_t i = 0; i < h.dd.rows(); ++i) {
    Json row = Json::array();
    for (size_t k = 0; k < h.dd.cols(); ++k) row.push_back(bigint_to_json(h.dd(i, k)));
    dd.push_back(row);
  }
  out["dd"] = dd;
  Json am = Json::array();
  for (const auto& e : h.atom_map) am.push_back(Json::array({e.dom, e.cod}));
  out["atoms"] = am;
  if (!h.unresolved_targets.empty()) out["unresolved"] = h.unresolved_targets;
  return out;
}

Json report_to_json(const NormalFormReport& r) {
  Json out;
  out["text"] = r.text();
  out["free_c"] = r.free_c;
  Json fs = Json::array();
  for (const auto& f : r.factors) {
    Json jf{{"kind", to_string(f.kind)}, {"dim", f.dim}, {"q_rank", f.q_rank}};
    Json gens = Json::array();
    for (const auto& s : f.generators) gens.push_back(s.to_string());
    if (f.dim == 1) {
      jf["lattice"] = gens;
      jf["lattice_text"] = lattice_text(f.generators);
    } else {
      Json vg = Json::array();
      for (const auto& v : f.vgenerators) {
        Json row = Json::array();
        for (const auto& x : v) row.push_back(x.to_string());
        vg.push_back(row);
      }
      jf["lattice"] = vg;
    }
    fs.push_back(jf);
  }
  out["factors"] = fs;
  out["gluing_order"] = bigint_to_json(r.gluing_order);
  Json tor = Json::array();
  for (const auto& t : r.torsion) tor.push_back(bigint_to_json(t));
  out["torsion"] = tor;
  out["free_rank"] = r.free_rank;
  Json atoms = Json::array();
  for (const auto& a : r.atoms) atoms.push_back(a.label());
  out["atoms"] = atoms;
  out["is_trivial"] = r.is_trivial;
  out["is_finite"] = r.is_finite;
  out["has_atoms"] = r.has_atoms;
  out["has_nondiscrete"] = r.has_nondiscrete;
  out["rank2_by_genericity"] = r.rank2_by_genericity;
  if (r.order) out["order"] = bigint_to_json(*r.order);
  return out;
}

}  // namespace folmod::abgroup
