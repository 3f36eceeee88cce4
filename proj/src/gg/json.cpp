#include "folmod/gg/json.hpp"

#include <map>

namespace folmod::gg {

using abgroup::JsonShapeError;

FiniteGroup named_group(const std::string& name) {
  if (name == "S3") return FiniteGroup::symmetric3();
  if (name == "D4") return FiniteGroup::dihedral8();
  if (name == "Q8") return FiniteGroup::quaternion8();
  // Products of cyclic groups: "Z2xZ4".
  std::optional<FiniteGroup> out;
  size_t pos = 0;
  while (pos < name.size()) {
    size_t next = name.find('x', pos);
    std::string part = name.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (part.size() < 2 || part[0] != 'Z') throw JsonShapeError("unknown group name '" + name + "'");
    size_t n = std::stoul(part.substr(1));
    if (n == 0) throw JsonShapeError("unknown group name '" + name + "'");
    FiniteGroup c = FiniteGroup::cyclic(n);
    out = out ? FiniteGroup::product(*out, c) : c;
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (!out) throw JsonShapeError("unknown group name '" + name + "'");
  return *out;
}

Json graph_to_json(const Graph& g) {
  Json out;
  Json vs = Json::array();
  for (size_t v = 0; v < g.vertex_count(); ++v) vs.push_back(g.vertex_name(v));
  out["vertices"] = vs;
  Json es = Json::array();
  for (const auto& e : g.edges())
    es.push_back(Json{{"name", e.name}, {"ends", Json::array({g.vertex_name(e.tail), g.vertex_name(e.head)})}});
  out["edges"] = es;
  return out;
}

namespace {

Graph graph_from_json(const Json& j) {
  Graph g;
  if (!j.contains("vertices") || !j.at("vertices").is_array()) throw JsonShapeError("missing 'vertices' array");
  for (const auto& v : j.at("vertices")) {
    auto name = v.get<std::string>();
    if (g.find_vertex(name)) throw JsonShapeError("duplicate vertex '" + name + "'");
    g.add_vertex(name);
  }
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      auto name = e.at("name").get<std::string>();
      if (g.find_edge(name) || g.find_vertex(name)) throw JsonShapeError("duplicate element name '" + name + "'");
      const Json& ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2) throw JsonShapeError("edge '" + name + "' needs two ends");
      auto u = g.find_vertex(ends[0].get<std::string>());
      auto v = g.find_vertex(ends[1].get<std::string>());
      if (!u || !v) throw JsonShapeError("edge '" + name + "' has an unknown end");
      g.add_edge(*u, *v, name);
    }
  return g;
}

// Locates the (edge, side) slot a rho entry refers to.
std::pair<size_t, bool> rho_slot(const Graph& g, const Json& r) {
  auto v = g.find_vertex(r.at("vertex").get<std::string>());
  auto e = g.find_edge(r.at("edge").get<std::string>());
  if (!v || !e) throw JsonShapeError("rho entry names an unknown vertex or edge: " + r.dump());
  const Edge& ed = g.edge(*e);
  if (ed.tail != *v && ed.head != *v) throw JsonShapeError("rho entry: vertex is not an end of the edge: " + r.dump());
  if (ed.is_loop()) {
    if (!r.contains("side")) throw JsonShapeError("rho entry on loop '" + ed.name + "' needs a side");
    return {*e, r.at("side").get<std::string>() == "head"};
  }
  return {*e, ed.head == *v};
}

template <class T>
std::vector<T> filled(const std::vector<std::optional<T>>& xs, const std::string& what) {
  std::vector<T> out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!xs[i]) throw JsonShapeError("missing " + what + " #" + std::to_string(i));
    out.push_back(*xs[i]);
  }
  return out;
}

}  // namespace

AnyGroupGraph group_graph_from_json(const Json& j) {
  if (!j.is_object()) throw JsonShapeError("group-graph document must be an object");
  if (j.value("schema_version", 0) != kSchemaVersion)
    throw JsonShapeError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  std::string kind = j.value("kind", std::string("group-graph"));
  Graph g = graph_from_json(j);
  const Json& groups = j.contains("groups") ? j.at("groups") : Json::object();
  auto payload = [&](const std::string& name) -> const Json& {
    if (!groups.contains(name)) throw JsonShapeError("no group given for '" + name + "'");
    return groups.at(name);
  };
  const Json& rhos = j.contains("rho") ? j.at("rho") : Json::array();

  if (kind == "finite-group-graph") {
    FiniteGroupGraph f;
    f.graph = g;
    auto load = [&](const std::string& name) {
      const Json& p = payload(name);
      if (p.contains("named")) return named_group(p.at("named").get<std::string>());
      if (p.contains("table"))
        return FiniteGroup::from_table(name, p.at("table").get<std::vector<std::vector<size_t>>>());
      throw JsonShapeError("finite group for '" + name + "' needs 'named' or 'table'");
    };
    for (size_t v = 0; v < g.vertex_count(); ++v) f.vgroup.push_back(load(g.vertex_name(v)));
    for (size_t e = 0; e < g.edge_count(); ++e) f.egroup.push_back(load(g.edge(e).name));
    std::vector<std::optional<ElementMap>> tail(g.edge_count()), head(g.edge_count());
    for (const auto& r : rhos) {
      auto [e, is_head] = rho_slot(g, r);
      (is_head ? head : tail)[e] = r.at("map").get<ElementMap>();
    }
    f.rho_tail = filled(tail, "tail restriction of edge");
    f.rho_head = filled(head, "head restriction of edge");
    f.validate();
    return f;
  }
  if (kind != "group-graph") throw JsonShapeError("unknown kind '" + kind + "'");
  GroupGraph out;
  out.graph = g;
  auto syms = abgroup::symbols_from_json(j.contains("symbols") ? j.at("symbols") : Json());
  for (size_t v = 0; v < g.vertex_count(); ++v)
    out.vgroup.push_back(abgroup::group_from_json(payload(g.vertex_name(v)), syms));
  for (size_t e = 0; e < g.edge_count(); ++e)
    out.egroup.push_back(abgroup::group_from_json(payload(g.edge(e).name), syms));
  std::vector<std::optional<GroupHom>> tail(g.edge_count()), head(g.edge_count());
  for (const auto& r : rhos) {
    auto [e, is_head] = rho_slot(g, r);
    const Edge& ed = g.edge(e);
    size_t v = is_head ? ed.head : ed.tail;
    (is_head ? head : tail)[e] = abgroup::hom_from_json(r.at("map"), out.vgroup[v], out.egroup[e]);
  }
  out.rho_tail = filled(tail, "tail restriction of edge");
  out.rho_head = filled(head, "head restriction of edge");
  out.validate();
  return out;
}

Json group_graph_to_json(const GroupGraph& g) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "group-graph";
  exactnum::SymbolTablePtr t;
  for (const auto& x : g.vgroup) t = exactnum::common_table(t, x->symbols);
  for (const auto& x : g.egroup) t = exactnum::common_table(t, x->symbols);
  out["symbols"] = abgroup::symbols_to_json(t);
  Json gj = graph_to_json(g.graph);
  out["vertices"] = gj["vertices"];
  out["edges"] = gj["edges"];
  Json groups = Json::object();
  for (size_t v = 0; v < g.graph.vertex_count(); ++v) groups[g.graph.vertex_name(v)] = abgroup::group_to_json(*g.vgroup[v]);
  for (size_t e = 0; e < g.graph.edge_count(); ++e) groups[g.graph.edge(e).name] = abgroup::group_to_json(*g.egroup[e]);
  out["groups"] = groups;
  Json rho = Json::array();
  for (size_t e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& ed = g.graph.edge(e);
    for (int side = 0; side < 2; ++side) {
      Json r{{"vertex", g.graph.vertex_name(side ? ed.head : ed.tail)}, {"edge", ed.name}};
      if (ed.is_loop()) r["side"] = side ? "head" : "tail";
      r["map"] = abgroup::hom_to_json(side ? g.rho_head[e] : g.rho_tail[e]);
      rho.push_back(r);
    }
  }
  out["rho"] = rho;
  return out;
}

Json group_graph_to_json(const FiniteGroupGraph& g) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "finite-group-graph";
  Json gj = graph_to_json(g.graph);
  out["vertices"] = gj["vertices"];
  out["edges"] = gj["edges"];
  Json groups = Json::object();
  auto put = [&](const std::string& name, const FiniteGroup& x) { groups[name] = Json{{"table", x.table()}}; };
  for (size_t v = 0; v < g.graph.vertex_count(); ++v) put(g.graph.vertex_name(v), g.vgroup[v]);
  for (size_t e = 0; e < g.graph.edge_count(); ++e) put(g.graph.edge(e).name, g.egroup[e]);
  out["groups"] = groups;
  Json rho = Json::array();
  for (size_t e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& ed = g.graph.edge(e);
    for (int side = 0; side < 2; ++side) {
      Json r{{"vertex", g.graph.vertex_name(side ? ed.head : ed.tail)}, {"edge", ed.name}};
      if (ed.is_loop()) r["side"] = side ? "head" : "tail";
      r["map"] = side ? g.rho_head[e] : g.rho_tail[e];
      rho.push_back(r);
    }
  }
  out["rho"] = rho;
  return out;
}

}  // namespace folmod::gg
