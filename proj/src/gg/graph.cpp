#include "folmod/gg/graph.hpp"

#include <algorithm>

namespace folmod::gg {

size_t Graph::add_vertex(std::string name) {
  if (name.empty()) name = "v" + std::to_string(vnames_.size());
  vnames_.push_back(std::move(name));
  return vnames_.size() - 1;
}

size_t Graph::add_edge(size_t u, size_t v, std::string name) {
  if (u >= vnames_.size() || v >= vnames_.size()) throw GraphError("edge endpoint does not exist");
  if (name.empty()) name = "e" + std::to_string(edges_.size());
  edges_.push_back({std::min(u, v), std::max(u, v), std::move(name)});
  return edges_.size() - 1;
}

std::optional<size_t> Graph::find_vertex(const std::string& name) const {
  for (size_t i = 0; i < vnames_.size(); ++i)
    if (vnames_[i] == name) return i;
  return std::nullopt;
}

std::optional<size_t> Graph::find_edge(const std::string& name) const {
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].name == name) return i;
  return std::nullopt;
}

std::vector<size_t> Graph::incident(size_t v) const {
  std::vector<size_t> r;
  for (size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].tail == v || edges_[e].head == v) r.push_back(e);
  return r;
}

Subgraph Subgraph::full(const Graph& g) {
  return {std::vector<bool>(g.vertex_count(), true), std::vector<bool>(g.edge_count(), true)};
}

Subgraph Subgraph::empty(const Graph& g) {
  return {std::vector<bool>(g.vertex_count(), false), std::vector<bool>(g.edge_count(), false)};
}

bool Subgraph::is_closed(const Graph& g) const {
  for (size_t e = 0; e < g.edge_count(); ++e)
    if (edges[e] && (!vertices[g.edge(e).tail] || !vertices[g.edge(e).head])) return false;
  return true;
}

size_t Subgraph::vertex_count() const { return std::count(vertices.begin(), vertices.end(), true); }
size_t Subgraph::edge_count() const { return std::count(edges.begin(), edges.end(), true); }

Subgraph intersect(const Subgraph& a, const Subgraph& b) {
  Subgraph r = a;
  for (size_t i = 0; i < r.vertices.size(); ++i) r.vertices[i] = a.vertices[i] && b.vertices[i];
  for (size_t i = 0; i < r.edges.size(); ++i) r.edges[i] = a.edges[i] && b.edges[i];
  return r;
}

Subgraph unite(const Subgraph& a, const Subgraph& b) {
  Subgraph r = a;
  for (size_t i = 0; i < r.vertices.size(); ++i) r.vertices[i] = a.vertices[i] || b.vertices[i];
  for (size_t i = 0; i < r.edges.size(); ++i) r.edges[i] = a.edges[i] || b.edges[i];
  return r;
}

size_t components(const Graph& g, const Subgraph& s, std::vector<size_t>* out) {
  const size_t npos = static_cast<size_t>(-1);
  std::vector<size_t> local;
  std::vector<size_t>* comp = out ? out : &local;
  comp->assign(g.vertex_count(), npos);
  size_t count = 0;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    if (!s.vertices[v] || (*comp)[v] != npos) continue;
    std::vector<size_t> stack{v};
    (*comp)[v] = count;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (auto e : g.incident(x)) {
        if (!s.edges[e]) continue;
        size_t y = g.edge(e).other(x);
        if ((*comp)[y] == npos) {
          (*comp)[y] = count;
          stack.push_back(y);
        }
      }
    }
    ++count;
  }
  return count;
}

std::vector<Subgraph> component_subgraphs(const Graph& g, const Subgraph& s) {
  std::vector<size_t> comp;
  size_t n = components(g, s, &comp);
  std::vector<Subgraph> out(n, Subgraph::empty(g));
  for (size_t v = 0; v < g.vertex_count(); ++v)
    if (s.vertices[v]) out[comp[v]].vertices[v] = true;
  for (size_t e = 0; e < g.edge_count(); ++e)
    if (s.edges[e]) out[comp[g.edge(e).tail]].edges[e] = true;
  return out;
}

Restriction restrict_graph(const Graph& g, const Subgraph& s) {
  if (!s.is_closed(g)) throw GraphError("restriction to a subgraph that is not closed");
  Restriction r;
  std::vector<size_t> newid(g.vertex_count(), 0);
  for (size_t v = 0; v < g.vertex_count(); ++v)
    if (s.vertices[v]) {
      newid[v] = r.graph.add_vertex(g.vertex_name(v));
      r.vertex_from.push_back(v);
    }
  for (size_t e = 0; e < g.edge_count(); ++e)
    if (s.edges[e]) {
      r.graph.add_edge(newid[g.edge(e).tail], newid[g.edge(e).head], g.edge(e).name);
      r.edge_from.push_back(e);
    }
  return r;
}

size_t valency_in(const Graph& g, const Subgraph& s, size_t v) {
  size_t n = 0;
  for (auto e : g.incident(v))
    if (s.edges[e]) ++n;
  return n;
}

std::vector<DeadBranch> find_partial_dead_branches(const Graph& g, const Subgraph& s, const std::vector<bool>& stop) {
  auto stopped = [&](size_t v) { return !stop.empty() && stop[v]; };
  auto live_edges = [&](size_t v) {
    std::vector<size_t> r;
    for (auto e : g.incident(v))
      if (s.edges[e]) r.push_back(e);
    return r;
  };
  std::vector<DeadBranch> out;
  for (size_t x = 0; x < g.vertex_count(); ++x) {
    if (!s.vertices[x] || stopped(x)) continue;
    auto ex = live_edges(x);
    if (ex.size() != 1 || g.edge(ex[0]).is_loop()) continue;
    DeadBranch b;
    size_t cur = x, via = ex[0];
    b.vertices.push_back(x);
    for (;;) {
      b.edges.push_back(via);
      size_t next = g.edge(via).other(cur);
      auto en = live_edges(next);
      bool seen = std::find(b.vertices.begin(), b.vertices.end(), next) != b.vertices.end();
      bool pass = !stopped(next) && !seen && en.size() == 2 && !g.edge(en[0]).is_loop() && !g.edge(en[1]).is_loop();
      if (!pass) {
        b.attach = next;
        break;
      }
      b.vertices.push_back(next);
      via = en[0] == via ? en[1] : en[0];
      cur = next;
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<DeadBranch> find_partial_dead_branches(const Graph& g) {
  return find_partial_dead_branches(g, Subgraph::full(g));
}

}  // namespace folmod::gg
