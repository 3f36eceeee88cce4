#include "folmod/gg/finite.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace folmod::gg {

namespace {

std::vector<size_t> closure(const FiniteGroup& g, const std::vector<size_t>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<size_t> out{g.identity()};
  in[g.identity()] = true;
  for (size_t i = 0; i < out.size(); ++i)
    for (auto s : gens) {
      size_t y = g.mul(out[i], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

size_t element_order(const FiniteGroup& g, size_t x) {
  size_t k = 1;
  for (size_t y = x; y != g.identity(); y = g.mul(y, x)) ++k;
  return k;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<size_t>> table, size_t id)
    : name_(std::move(name)), table_(std::move(table)), id_(id) {
  size_t n = table_.size();
  inv_.assign(n, 0);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      if (table_[x][y] == id_) inv_[x] = y;
  std::vector<size_t> by_order(n);
  for (size_t i = 0; i < n; ++i) by_order[i] = i;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](size_t a, size_t b) { return element_order(*this, a) > element_order(*this, b); });
  std::vector<bool> in(n, false);
  in[id_] = true;
  for (auto x : by_order) {
    if (in[x]) continue;
    gens_.push_back(x);
    for (auto y : closure(*this, gens_)) in[y] = true;
  }
}

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<size_t>> table) {
  size_t n = table.size();
  if (n == 0) throw InvalidTable(name + ": empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidTable(name + ": table is not square");
    for (auto x : row)
      if (x >= n) throw InvalidTable(name + ": entry out of range");
  }
  std::optional<size_t> id;
  for (size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) id = e;
  }
  if (!id) throw InvalidTable(name + ": no identity element");
  for (size_t x = 0; x < n; ++x) {
    bool has = false;
    for (size_t y = 0; y < n && !has; ++y) has = table[x][y] == *id && table[y][x] == *id;
    if (!has) throw InvalidTable(name + ": element " + std::to_string(x) + " has no inverse");
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z)
        if (table[table[x][y]][z] != table[x][table[y][z]]) throw InvalidTable(name + ": not associative");
  return FiniteGroup(std::move(name), std::move(table), *id);
}

FiniteGroup FiniteGroup::cyclic(size_t n) {
  std::vector<std::vector<size_t>> t(n, std::vector<size_t>(n));
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return FiniteGroup("Z" + std::to_string(n), std::move(t), 0);
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  size_t na = a.order(), nb = b.order();
  std::vector<std::vector<size_t>> t(na * nb, std::vector<size_t>(na * nb));
  for (size_t x = 0; x < na * nb; ++x)
    for (size_t y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(a.name() + "x" + b.name(), std::move(t), a.identity() * nb + b.identity());
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<size_t, 3>> perms;
  std::array<size_t, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<size_t>> t(6, std::vector<size_t>(6));
  for (size_t x = 0; x < 6; ++x)
    for (size_t y = 0; y < 6; ++y) {
      std::array<size_t, 3> c{perms[x][perms[y][0]], perms[x][perms[y][1]], perms[x][perms[y][2]]};
      t[x][y] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  return FiniteGroup("S3", std::move(t), 0);
}

FiniteGroup FiniteGroup::dihedral8() {
  // r^i s^j stored as i + 4j.
  std::vector<std::vector<size_t>> t(8, std::vector<size_t>(8));
  for (size_t x = 0; x < 8; ++x)
    for (size_t y = 0; y < 8; ++y) {
      size_t a = x % 4, b = x / 4, c = y % 4, d = y / 4;
      size_t i = (b == 0 ? a + c : a + 4 - c) % 4;
      t[x][y] = i + 4 * ((b + d) % 2);
    }
  return FiniteGroup("D4", std::move(t), 0);
}

FiniteGroup FiniteGroup::quaternion8() {
  // ±u for u in {1,i,j,k}, stored as u + 4·[sign is −].
  static const size_t unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const bool minus[4][4] = {{false, false, false, false},
                                   {false, true, false, true},
                                   {false, true, true, false},
                                   {false, false, true, true}};
  std::vector<std::vector<size_t>> t(8, std::vector<size_t>(8));
  for (size_t x = 0; x < 8; ++x)
    for (size_t y = 0; y < 8; ++y) {
      bool sign = minus[x % 4][y % 4] ^ (x >= 4) ^ (y >= 4);
      t[x][y] = unit[x % 4][y % 4] + (sign ? 4 : 0);
    }
  return FiniteGroup("Q8", std::move(t), 0);
}

bool FiniteGroup::is_abelian() const {
  for (size_t x = 0; x < order(); ++x)
    for (size_t y = x + 1; y < order(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

size_t FiniteGroup::conjugacy_class_count() const {
  std::vector<bool> seen(order(), false);
  size_t n = 0;
  for (size_t x = 0; x < order(); ++x) {
    if (seen[x]) continue;
    ++n;
    for (size_t g = 0; g < order(); ++g) seen[mul(mul(inv(g), x), g)] = true;
  }
  return n;
}

bool is_homomorphism(const FiniteGroup& a, const FiniteGroup& b, const ElementMap& f) {
  if (f.size() != a.order()) return false;
  for (auto y : f)
    if (y >= b.order()) return false;
  for (size_t x = 0; x < a.order(); ++x)
    for (size_t y = 0; y < a.order(); ++y)
      if (f[a.mul(x, y)] != b.mul(f[x], f[y])) return false;
  return true;
}

bool is_surjective(const FiniteGroup& b, const ElementMap& f) {
  std::vector<bool> hit(b.order(), false);
  for (auto y : f) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

std::vector<ElementMap> all_homomorphisms(const FiniteGroup& a, const FiniteGroup& b) {
  // Every element as parent·generator, in breadth-first order.
  const auto& gens = a.generators();
  std::vector<std::pair<size_t, size_t>> word(a.order(), {0, 0});
  std::vector<size_t> orderv{a.identity()};
  std::vector<bool> in(a.order(), false);
  in[a.identity()] = true;
  for (size_t i = 0; i < orderv.size(); ++i)
    for (size_t k = 0; k < gens.size(); ++k) {
      size_t y = a.mul(orderv[i], gens[k]);
      if (!in[y]) {
        in[y] = true;
        word[y] = {orderv[i], k};
        orderv.push_back(y);
      }
    }
  std::vector<ElementMap> out;
  std::vector<size_t> img(gens.size(), 0);
  for (;;) {
    ElementMap f(a.order(), b.identity());
    for (size_t i = 1; i < orderv.size(); ++i) {
      size_t x = orderv[i];
      f[x] = b.mul(f[word[x].first], img[word[x].second]);
    }
    if (is_homomorphism(a, b, f)) out.push_back(std::move(f));
    size_t k = 0;
    while (k < img.size() && ++img[k] == b.order()) img[k++] = 0;
    if (k == img.size()) break;
  }
  return out;
}

const ElementMap& FiniteGroupGraph::rho(size_t v, size_t e) const {
  const Edge& ed = graph.edge(e);
  if (ed.tail == v) return rho_tail.at(e);
  if (ed.head == v) return rho_head.at(e);
  throw InvalidGroupGraph("vertex is not an end of the edge");
}

void FiniteGroupGraph::validate() const {
  if (vgroup.size() != graph.vertex_count() || egroup.size() != graph.edge_count() ||
      rho_tail.size() != graph.edge_count() || rho_head.size() != graph.edge_count())
    throw InvalidGroupGraph("finite group-graph arrays do not match the graph");
  for (size_t e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    if (!is_homomorphism(vgroup[ed.tail], egroup[e], rho_tail[e]) ||
        !is_homomorphism(vgroup[ed.head], egroup[e], rho_head[e]))
      throw InvalidGroupGraph("restriction on edge " + ed.name + " is not a homomorphism");
  }
}

bool FiniteGroupGraph::is_abelian() const {
  for (const auto& g : vgroup)
    if (!g.is_abelian()) return false;
  for (const auto& g : egroup)
    if (!g.is_abelian()) return false;
  return true;
}

uint64_t FiniteGroupGraph::state_space() const {
  const uint64_t cap = std::numeric_limits<uint64_t>::max();
  uint64_t s = 1;
  auto mul = [&](uint64_t k) { s = (k != 0 && s > cap / k) ? cap : s * k; };
  for (const auto& g : vgroup) mul(g.order());
  for (const auto& g : egroup) mul(g.order());
  return s;
}

BruteH1 brute_force_h1(const FiniteGroupGraph& g, uint64_t bound) {
  uint64_t space = g.state_space();
  if (space > bound)
    throw BoundExceeded("state space " + std::to_string(space) + " exceeds bound " + std::to_string(bound));
  const size_t ne = g.graph.edge_count();
  std::vector<uint64_t> stride(ne, 1);
  uint64_t total = 1;
  for (size_t e = 0; e < ne; ++e) {
    stride[e] = total;
    total *= g.egroup[e].order();
  }
  // One move per (vertex, generator): x_e <- left · x_e · right on incident edges.
  struct Factor {
    size_t e;
    size_t left, right;
  };
  std::vector<std::vector<Factor>> moves;
  for (size_t v = 0; v < g.graph.vertex_count(); ++v)
    for (auto s : g.vgroup[v].generators()) {
      std::vector<Factor> m;
      for (auto e : g.graph.incident(v)) {
        const Edge& ed = g.graph.edge(e);
        const FiniteGroup& ge = g.egroup[e];
        Factor f{e, ge.identity(), ge.identity()};
        if (ed.tail == v) f.left = ge.inv(g.rho_tail[e][s]);
        if (ed.head == v) f.right = g.rho_head[e][s];
        m.push_back(f);
      }
      if (!m.empty()) moves.push_back(std::move(m));
    }

  BruteH1 out;
  std::vector<uint8_t> seen(total, 0);
  std::vector<uint64_t> queue;
  std::vector<size_t> digits(ne);
  for (uint64_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    ++out.orbits;
    std::vector<size_t> rep(ne);
    for (size_t e = 0; e < ne; ++e) rep[e] = (start / stride[e]) % g.egroup[e].order();
    out.representatives.push_back(std::move(rep));
    seen[start] = 1;
    queue.assign(1, start);
    while (!queue.empty()) {
      uint64_t idx = queue.back();
      queue.pop_back();
      for (size_t e = 0; e < ne; ++e) digits[e] = (idx / stride[e]) % g.egroup[e].order();
      for (const auto& m : moves) {
        uint64_t nidx = idx;
        for (const auto& f : m) {
          const FiniteGroup& ge = g.egroup[f.e];
          size_t x = digits[f.e];
          size_t y = ge.mul(ge.mul(f.left, x), f.right);
          nidx = nidx - x * stride[f.e] + y * stride[f.e];
        }
        if (!seen[nidx]) {
          seen[nidx] = 1;
          queue.push_back(nidx);
        }
      }
    }
  }
  return out;
}

PresentedTable present(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InvalidTable(g.name() + " is not abelian");
  const auto& gens = g.generators();
  const size_t k = gens.size();
  std::vector<size_t> ord(k);
  for (size_t i = 0; i < k; ++i) ord[i] = element_order(g, gens[i]);
  abgroup::Group pg;
  pg.b = k;
  for (size_t i = 0; i < k; ++i) {
    std::vector<abgroup::BigInt> r(k, 0);
    r[i] = static_cast<long>(ord[i]);
    pg.add_relation({}, r);
  }
  PresentedTable out;
  out.coords.assign(g.order(), {});
  std::vector<bool> have(g.order(), false);
  std::vector<size_t> c(k, 0);
  for (;;) {
    size_t x = g.identity();
    for (size_t i = 0; i < k; ++i)
      for (size_t t = 0; t < c[i]; ++t) x = g.mul(x, gens[i]);
    std::vector<abgroup::BigInt> v(c.begin(), c.end());
    if (!have[x]) {
      have[x] = true;
      out.coords[x] = v;
    } else if (x == g.identity()) {
      pg.add_relation({}, v);
    }
    size_t i = 0;
    while (i < k && ++c[i] == ord[i]) c[i++] = 0;
    if (i == k) break;
  }
  out.group = abgroup::make_group(std::move(pg));
  return out;
}

GroupGraph to_group_graph(const FiniteGroupGraph& g) {
  GroupGraph out;
  out.graph = g.graph;
  std::vector<PresentedTable> vp, ep;
  for (const auto& x : g.vgroup) {
    vp.push_back(present(x));
    out.vgroup.push_back(vp.back().group);
  }
  for (const auto& x : g.egroup) {
    ep.push_back(present(x));
    out.egroup.push_back(ep.back().group);
  }
  auto convert = [&](size_t v, size_t e, const ElementMap& f) {
    GroupHom h = abgroup::zero_hom(out.vgroup[v], out.egroup[e]);
    const auto& gens = g.vgroup[v].generators();
    for (size_t j = 0; j < gens.size(); ++j) {
      const auto& c = ep[e].coords[f[gens[j]]];
      for (size_t i = 0; i < c.size(); ++i) h.dd(i, j) = c[i];
    }
    return h;
  };
  for (size_t e = 0; e < g.graph.edge_count(); ++e) {
    out.rho_tail.push_back(convert(g.graph.edge(e).tail, e, g.rho_tail[e]));
    out.rho_head.push_back(convert(g.graph.edge(e).head, e, g.rho_head[e]));
  }
  return out;
}

RestrictedFiniteGroupGraph restrict_to(const FiniteGroupGraph& g, const Subgraph& s) {
  auto r = restrict_graph(g.graph, s);
  RestrictedFiniteGroupGraph out;
  out.gg.graph = std::move(r.graph);
  out.vertex_from = std::move(r.vertex_from);
  out.edge_from = std::move(r.edge_from);
  for (auto v : out.vertex_from) out.gg.vgroup.push_back(g.vgroup[v]);
  for (auto e : out.edge_from) {
    out.gg.egroup.push_back(g.egroup[e]);
    out.gg.rho_tail.push_back(g.rho_tail[e]);
    out.gg.rho_head.push_back(g.rho_head[e]);
  }
  return out;
}

bool is_repulsive(const FiniteGroupGraph& g, const DeadBranch& b) {
  for (size_t j = 0; j < b.edges.size(); ++j)
    if (!is_surjective(g.egroup[b.edges[j]], g.rho(b.vertices[j], b.edges[j]))) return false;
  return true;
}

RestrictedFiniteGroupGraph prune(const FiniteGroupGraph& g, const DeadBranch& b) {
  if (!is_repulsive(g, b)) throw NotRepulsive("dead branch is not repulsive");
  Subgraph s = Subgraph::full(g.graph);
  for (auto v : b.vertices) s.vertices[v] = false;
  for (auto e : b.edges) s.edges[e] = false;
  return restrict_to(g, s);
}

}  // namespace folmod::gg
