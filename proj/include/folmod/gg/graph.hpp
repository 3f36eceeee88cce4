#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace folmod::gg {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Endpoints are stored with tail <= head (vertex-id order).
struct Edge {
  size_t tail = 0, head = 0;
  std::string name;
  bool is_loop() const { return tail == head; }
  size_t other(size_t v) const { return v == tail ? head : tail; }
};

class Graph {
 public:
  size_t add_vertex(std::string name = "");
  size_t add_edge(size_t u, size_t v, std::string name = "");

  size_t vertex_count() const { return vnames_.size(); }
  size_t edge_count() const { return edges_.size(); }
  const Edge& edge(size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(size_t v) const { return vnames_.at(v); }
  std::optional<size_t> find_vertex(const std::string& name) const;
  std::optional<size_t> find_edge(const std::string& name) const;

  // Edges e with v in ∂e; a loop is listed once.
  std::vector<size_t> incident(size_t v) const;
  size_t valency(size_t v) const { return incident(v).size(); }

 private:
  std::vector<std::string> vnames_;
  std::vector<Edge> edges_;
};

// Closed subgraph: an included edge has both endpoints included.
struct Subgraph {
  std::vector<bool> vertices, edges;

  static Subgraph full(const Graph& g);
  static Subgraph empty(const Graph& g);
  bool is_closed(const Graph& g) const;
  size_t vertex_count() const;
  size_t edge_count() const;
  bool is_empty() const { return vertex_count() == 0; }
  friend bool operator==(const Subgraph& a, const Subgraph& b) {
    return a.vertices == b.vertices && a.edges == b.edges;
  }
};

Subgraph intersect(const Subgraph& a, const Subgraph& b);
Subgraph unite(const Subgraph& a, const Subgraph& b);

// Component index per vertex of the subgraph (npos outside); returns count.
// comp may be null.
size_t components(const Graph& g, const Subgraph& s, std::vector<size_t>* comp);
std::vector<Subgraph> component_subgraphs(const Graph& g, const Subgraph& s);

// Reindexed copy of the subgraph with maps new -> old ids.
struct Restriction {
  Graph graph;
  std::vector<size_t> vertex_from, edge_from;
};
Restriction restrict_graph(const Graph& g, const Subgraph& s);

// A chain from an extremity inward: vertices[0] is the extremity, edges[i]
// joins vertices[i] to vertices[i+1] (or to attach for the last one).
struct DeadBranch {
  std::vector<size_t> vertices;
  std::vector<size_t> edges;
  size_t attach = 0;
};

// Maximal chains inside the subgraph; walking stops at vertices of valency
// other than 2 and at vertices listed in `stop`.
std::vector<DeadBranch> find_partial_dead_branches(const Graph& g, const Subgraph& s,
                                                   const std::vector<bool>& stop = {});
std::vector<DeadBranch> find_partial_dead_branches(const Graph& g);

// Valency inside a subgraph.
size_t valency_in(const Graph& g, const Subgraph& s, size_t v);

}  // namespace folmod::gg
