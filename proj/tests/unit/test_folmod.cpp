#include "doctest.h"

#include "cli.hpp"
#include "folmod/abgroup/classify.hpp"
#include "folmod/exactnum/intmatrix.hpp"
#include "folmod/folmod/examples.hpp"
#include "folmod/folmod/moduli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

using namespace folmod;

namespace {

// Hand-built foliation documents: rupture components (non-abelian, cyclic
// centralizer) joined by chains of one holonomy type.
struct ChainSpec {
  size_t a = 0, b = 0;
  char type = 'L';  // L: L1, R: R1, M: R0, B: L0
  size_t len = 0;   // interior components
  long p = 1, r = 0, m = 1, k = 1;
  long shift = 0;   // integer part of the first CS index (L1)
};

struct InputSpec {
  std::vector<long> centralizer;  // one per rupture
  std::vector<ChainSpec> chains;
  std::vector<size_t> attachments;  // per rupture
  std::vector<bool> green;          // a green dead branch on the rupture
  uint64_t shuffle_seed = 0;        // 0: no shuffle
};

Json type_json(const ChainSpec& c, size_t idx) {
  switch (c.type) {
    case 'R': return Json{{"tag", "R1"}, {"p", c.p}, {"r", c.r}};
    case 'M': return Json{{"tag", "R0"}, {"p", c.p}, {"r", c.r}, {"m", c.m}, {"beta_image_order", c.k}};
    case 'B': return Json{{"tag", "L0"}, {"atom", "K" + std::to_string(idx)}};
    default: return "L1";
  }
}

Json build_input(const InputSpec& s, const std::string& name = "generated") {
  Json comps = Json::array(), corners = Json::array(), atts = Json::array(), sides = Json::array(),
       hols = Json::array();
  auto side = [&](const std::string& pt, const std::string& comp, Json type, const std::string& cs = "") {
    Json j{{"point", pt}, {"component", comp}};
    if (!cs.empty()) j["cs"] = cs;
    j["type"] = std::move(type);
    sides.push_back(j);
  };
  auto rname = [](size_t i) { return "V" + std::to_string(i); };
  for (size_t i = 0; i < s.centralizer.size(); ++i) {
    comps.push_back(Json{{"name", rname(i)}});
    hols.push_back(Json{{"component", rname(i)}, {"class", "nonabelian"}, {"centralizer", {s.centralizer[i]}}});
  }
  for (size_t ci = 0; ci < s.chains.size(); ++ci) {
    const ChainSpec& c = s.chains[ci];
    std::vector<std::string> path{rname(c.a)};
    for (size_t j = 0; j < c.len; ++j) {
      std::string n = "C" + std::to_string(ci) + "_" + std::to_string(j);
      comps.push_back(Json{{"name", n}});
      hols.push_back(Json{{"component", n}, {"class", "abelian_infinite"}});
      path.push_back(n);
    }
    path.push_back(rname(c.b));
    // L1: cs on the left side of corner j is s_j; the right side gets 1/s_j and
    // s_{j+1} = (j+1) - 1/s_j keeps val-2 sums integral.
    std::string sym = ci % 2 == 0 ? "alpha_t" : "beta_t";
    std::string cs = "(" + sym + " + " + std::to_string(c.shift) + ")";
    for (size_t j = 0; j + 1 < path.size(); ++j) {
      std::string k = "k" + std::to_string(ci) + "_" + std::to_string(j);
      corners.push_back(Json{{"name", k}, {"components", {path[j], path[j + 1]}}});
      if (c.type == 'L') {
        side(k, path[j], "L1", cs);
        side(k, path[j + 1], "L1", "1/" + cs);
        cs = "(" + std::to_string(j + 1) + " - 1/" + cs + ")";
      } else {
        side(k, path[j], type_json(c, ci));
        side(k, path[j + 1], type_json(c, ci));
      }
    }
  }
  for (size_t i = 0; i < s.centralizer.size(); ++i) {
    size_t na = i < s.attachments.size() ? s.attachments[i] : 0;
    for (size_t j = 0; j < na; ++j) {
      std::string a = "s" + std::to_string(i) + "_" + std::to_string(j);
      atts.push_back(Json{{"name", a}, {"component", rname(i)}});
      side(a, rname(i), "L1", "alpha_t + " + std::to_string(j + 2));
    }
    if (i < s.green.size() && s.green[i]) {
      std::string g = "G" + std::to_string(i), x = "x" + std::to_string(i);
      comps.push_back(Json{{"name", g}});
      corners.push_back(Json{{"name", x}, {"components", {rname(i), g}}});
      side(x, rname(i), Json{{"tag", "P"}, {"q", 2}});
      side(x, g, Json{{"tag", "P"}, {"q", 1}});
      hols.push_back(Json{{"component", g}, {"class", "finite"}, {"order", 1}, {"point_orders", {{x, 1}}}});
    }
  }
  if (s.shuffle_seed != 0) {
    std::mt19937_64 rng(s.shuffle_seed);
    std::shuffle(comps.begin(), comps.end(), rng);
    std::shuffle(corners.begin(), corners.end(), rng);
  }
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "marked-foliation";
  j["name"] = name;
  j["symbols"] = Json::array({Json{{"name", "alpha_t"}}, Json{{"name", "beta_t"}}});
  j["components"] = comps;
  j["corners"] = corners;
  j["attachments"] = atts;
  j["singularities"] = sides;
  j["holonomies"] = hols;
  j["flags"] = Json{{"tr", true}};
  return j;
}

// Fills valencies up to 3 with attachments.
void pad_attachments(InputSpec& s, std::mt19937_64* rng) {
  size_t n = s.centralizer.size();
  std::vector<size_t> deg(n, 0);
  for (const auto& c : s.chains) ++deg[c.a], ++deg[c.b];
  s.attachments.assign(n, 0);
  s.green.resize(n, false);
  for (size_t i = 0; i < n; ++i) {
    size_t have = deg[i] + (s.green[i] ? 1 : 0);
    s.attachments[i] = have >= 3 ? 0 : 3 - have;
    if (rng && (*rng)() % 3 == 0) ++s.attachments[i];
  }
}

InputSpec random_spec(std::mt19937_64& rng, bool atoms) {
  auto pick = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1)); };
  InputSpec s;
  size_t n = static_cast<size_t>(pick(2, 4));
  for (size_t i = 0; i < n; ++i) s.centralizer.push_back(pick(1, 2));
  for (size_t i = 1; i < n; ++i) {
    ChainSpec c;
    c.a = static_cast<size_t>(pick(0, static_cast<long>(i) - 1));
    c.b = i;
    if (rng() % 2) std::swap(c.a, c.b);
    const char types[] = {'L', 'R', 'M', 'B'};
    c.type = types[pick(0, atoms ? 3 : 2)];
    c.len = static_cast<size_t>(pick(0, 2));
    long l = std::lcm(s.centralizer[c.a], s.centralizer[c.b]);
    if (c.type == 'R') {
      c.p = l * pick(1, 3);
      c.r = pick(0, c.p - 1);
    } else if (c.type == 'M') {
      c.k = l * pick(1, 2);
      c.p = c.k * pick(1, 2);
      c.r = (c.p / c.k) * pick(0, c.k - 1);
      c.m = pick(1, 4);
    }
    c.shift = pick(-2, 3);
    s.chains.push_back(c);
  }
  s.green.assign(n, false);
  for (size_t i = 0; i < n; ++i) s.green[i] = rng() % 3 == 0;
  pad_attachments(s, &rng);
  s.shuffle_seed = rng() | 1;
  return s;
}

// First Betti number of R/R0 from the rank of the boundary matrix.
size_t tau_oracle(const Graph& g, const Subgraph& R, const Subgraph& R0) {
  std::vector<long> node(g.vertex_count(), -1);
  long next = R0.vertex_count() > 0 ? 1 : 0;
  for (size_t v = 0; v < g.vertex_count(); ++v)
    if (R.vertices[v]) node[v] = R0.vertices[v] ? 0 : next++;
  std::vector<size_t> cols;
  for (size_t e = 0; e < g.edge_count(); ++e)
    if (R.edges[e] && !R0.edges[e]) cols.push_back(e);
  if (cols.empty()) return 0;
  exactnum::IntMatrix d(static_cast<size_t>(std::max<long>(next, 1)), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    const auto& ed = g.edge(cols[j]);
    d(static_cast<size_t>(node[ed.head]), j) += 1;
    d(static_cast<size_t>(node[ed.tail]), j) -= 1;
  }
  return cols.size() - exactnum::smith_normal_form(d).rank;
}

// Connected pieces of R minus R0 as a set of open cells: an edge outside R0
// is glued to its ends that are outside R0.
size_t open_pieces(const Graph& g, const Subgraph& R, const Subgraph& R0) {
  size_t nv = g.vertex_count();
  std::vector<size_t> parent(nv + g.edge_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> live(parent.size(), false);
  for (size_t v = 0; v < nv; ++v) live[v] = R.vertices[v] && !R0.vertices[v];
  for (size_t e = 0; e < g.edge_count(); ++e) {
    if (!R.edges[e] || R0.edges[e]) continue;
    live[nv + e] = true;
    for (size_t v : {g.edge(e).tail, g.edge(e).head})
      if (live[v]) parent[find(v)] = find(nv + e);
  }
  size_t n = 0;
  for (size_t x = 0; x < parent.size(); ++x) n += live[x] && find(x) == x;
  return n;
}

const Check* find_check(const ModuliReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> codes(const std::vector<Violation>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.code);
  return out;
}
bool has_code(const std::vector<Violation>& vs, const std::string& c) {
  auto cs = codes(vs);
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

FoliationInput example(const std::string& name) {
  auto e = bundled_example(name);
  REQUIRE(e);
  return parse_input(e->text);
}

size_t edge_id(const Graph& g, const std::string& name) {
  auto e = g.find_edge(name);
  REQUIRE(e);
  return *e;
}

struct CliResult {
  int code;
  std::string out, err;
};
CliResult cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int c = cli::run(args, out, err);
  return {c, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("folmod_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("bundled examples round-trip through JSON") {
  REQUIRE(bundled_examples().size() == 7);
  for (const auto& e : bundled_examples()) {
    CAPTURE(e.name);
    Json once = input_to_json(parse_input(e.text));
    Json twice = input_to_json(input_from_json(once));
    CHECK(once == twice);
  }
}

TEST_CASE("parse errors carry a location") {
  SUBCASE("syntax") {
    try {
      parse_input("{\n  \"schema_version\": 1,\n  \"kind\": }");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where.find("line 3") != std::string::npos);
      CHECK(e.where.find("column") != std::string::npos);
    }
  }
  SUBCASE("missing field") {
    Json j = input_to_json(example("example1"));
    j["singularities"][2].erase("type");
    try {
      input_from_json(j);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.where == "$.singularities[2]");
      CHECK(std::string(e.what()).find("'type'") != std::string::npos);
    }
  }
  SUBCASE("unknown component") {
    Json j = input_to_json(example("example0"));
    j["corners"][0]["components"][1] = "nowhere";
    CHECK_THROWS_AS(input_from_json(j), ParseError);
  }
  SUBCASE("wrong kind") {
    Json j = input_to_json(example("example0"));
    j["kind"] = "group-graph";
    CHECK_THROWS_AS(input_from_json(j), ParseError);
  }
}

TEST_CASE("validation names the violated constraint") {
  for (const auto& e : bundled_examples()) {
    CAPTURE(e.name);
    CHECK(codes(validate(parse_input(e.text))).empty());
  }

  SUBCASE("corner reciprocity") {
    Json j = input_to_json(example("example1"));
    for (auto& s : j["singularities"])
      if (s.contains("cs") && s["cs"].is_string() && s["point"] == "s'0" && s["component"] == "D'") s["cs"] = "alpha_t";
    CHECK(has_code(validate(input_from_json(j)), "corner_reciprocity"));
  }
  SUBCASE("type heterogeneity on an abelian component") {
    InputSpec s;
    s.centralizer = {1, 1};
    ChainSpec c;
    c.type = 'R';
    c.p = 2;
    c.r = 1;
    c.b = 1;
    c.len = 1;
    s.chains = {c};
    pad_attachments(s, nullptr);
    Json j = build_input(s);
    for (auto& x : j["singularities"])
      if (x["point"] == "k0_1" && x["component"] == "C0_0") x["type"] = Json{{"tag", "R1"}, {"p", 3}, {"r", 1}};
    auto vs = validate(input_from_json(j));
    CHECK(has_code(vs, "type_heterogeneity"));
    CHECK(has_code(vs, "corner_type_mismatch"));
  }
  SUBCASE("non-abelian holonomy needs valency 3") {
    InputSpec s;
    s.centralizer = {1, 1};
    ChainSpec c;
    c.b = 1;
    s.chains = {c};
    pad_attachments(s, nullptr);
    s.attachments[1] = 1;
    CHECK(has_code(validate(input_from_json(build_input(s))), "nonabelian_low_valency"));
  }
  SUBCASE("dual graph must be a tree") {
    Json j = input_to_json(example("example5"));
    j["corners"].push_back(Json{{"name", "loop"}, {"components", {"R1", "R3"}}});
    j["singularities"].push_back(Json{{"point", "loop"}, {"component", "R1"}, {"type", {{"tag", "P"}, {"q", 2}}}});
    j["singularities"].push_back(Json{{"point", "loop"}, {"component", "R3"}, {"type", {{"tag", "P"}, {"q", 2}}}});
    CHECK(has_code(validate(input_from_json(j)), "not_tree"));
  }
  SUBCASE("centralizer order divides p") {
    InputSpec s;
    s.centralizer = {2, 1};
    ChainSpec c;
    c.b = 1;
    c.type = 'R';
    c.p = 3;
    c.r = 1;
    s.chains = {c};
    pad_attachments(s, nullptr);
    CHECK(has_code(validate(input_from_json(build_input(s))), "centralizer_order"));
  }
  SUBCASE("CS indices along a val-2 component") {
    InputSpec s;
    s.centralizer = {1, 1};
    ChainSpec c;
    c.b = 1;
    c.len = 1;
    s.chains = {c};
    pad_attachments(s, nullptr);
    Json j = build_input(s);
    for (auto& x : j["singularities"])
      if (x["point"] == "k0_1" && x["component"] == "C0_0") x["cs"] = "beta_t";
    for (auto& x : j["singularities"])
      if (x["point"] == "k0_1" && x["component"] == "V1") x["cs"] = "1/beta_t";
    CHECK(has_code(validate(input_from_json(j)), "cs_sum"));
  }
  SUBCASE("condition (TC)") {
    // Two val-2 components form a whole invariant piece.
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "marked-foliation";
    j["symbols"] = Json::array({Json{{"name", "alpha_t"}}});
    j["components"] = {Json{{"name", "A"}}, Json{{"name", "B"}}};
    j["corners"] = {Json{{"name", "c"}, {"components", {"A", "B"}}}};
    j["attachments"] = {Json{{"name", "a"}, {"component", "A"}}, Json{{"name", "b"}, {"component", "B"}}};
    j["singularities"] = {
        Json{{"point", "c"}, {"component", "A"}, {"cs", "alpha_t"}, {"type", "L1"}},
        Json{{"point", "c"}, {"component", "B"}, {"cs", "1/alpha_t"}, {"type", "L1"}},
        Json{{"point", "a"}, {"component", "A"}, {"cs", "-alpha_t"}, {"type", "L1"}},
        Json{{"point", "b"}, {"component", "B"}, {"cs", "-1/alpha_t"}, {"type", "L1"}}};
    j["holonomies"] = {Json{{"component", "A"}, {"class", "abelian_infinite"}},
                       Json{{"component", "B"}, {"class", "abelian_infinite"}}};
    auto in = input_from_json(j);
    CHECK_FALSE(check_tc(in.divisor));
    CHECK_THROWS_AS(compute_moduli(in, analyze(in)), TcViolated);
  }
}

TEST_CASE("tau agrees with the boundary-rank oracle on random graphs") {
  std::mt19937_64 rng(20261016);
  for (int it = 0; it < 300; ++it) {
    Graph g;
    size_t n = 2 + rng() % 6;
    for (size_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
    size_t m = rng() % (2 * n + 1);
    for (size_t e = 0; e < m; ++e) g.add_edge(rng() % n, rng() % n, "e" + std::to_string(e));
    Subgraph R = Subgraph::empty(g), R0 = Subgraph::empty(g);
    for (size_t v = 0; v < n; ++v) R.vertices[v] = rng() % 4 != 0;
    for (size_t e = 0; e < m; ++e)
      R.edges[e] = R.vertices[g.edge(e).tail] && R.vertices[g.edge(e).head] && rng() % 5 != 0;
    for (size_t v = 0; v < n; ++v) R0.vertices[v] = R.vertices[v] && rng() % 3 == 0;
    for (size_t e = 0; e < m; ++e)
      R0.edges[e] = R.edges[e] && R0.vertices[g.edge(e).tail] && R0.vertices[g.edge(e).head] && rng() % 2 == 0;
    CAPTURE(it);
    CHECK(tau(g, R, R0) == tau_oracle(g, R, R0));
  }
}

TEST_CASE("Exp and Dis along a single corner of each type") {
  auto two_ruptures = [](ChainSpec c) {
    InputSpec s;
    s.centralizer = {1, 1};
    c.a = 0;
    c.b = 1;
    s.chains = {c};
    pad_attachments(s, nullptr);
    return input_from_json(build_input(s));
  };
  auto edge_reports = [](const FoliationInput& in) {
    Analysis an = analyze(in);
    REQUIRE(codes(validate(in)).empty());
    auto G = build_red_group_graphs(in, an, an.col.R);
    size_t e = edge_id(G.red.graph, "k0_0");
    return std::array<NormalFormReport, 3>{abgroup::classify(*G.sym.egroup[e]), abgroup::classify(*G.exp.egroup[e]),
                                           abgroup::classify(*G.dis.egroup[e])};
  };
  SUBCASE("L1") {
    auto r = edge_reports(two_ruptures(ChainSpec{}));
    CHECK(r[2].is_trivial);
    CHECK(r[1].factors.size() == 1);
    CHECK(r[1].factors[0].kind == abgroup::FactorKind::Elliptic);
  }
  SUBCASE("R1: Dis has order gcd(p, r)") {
    for (long p = 1; p <= 6; ++p)
      for (long r = 0; r < p; ++r) {
        ChainSpec c;
        c.type = 'R';
        c.p = p;
        c.r = r;
        CAPTURE(p);
        CAPTURE(r);
        auto rep = edge_reports(two_ruptures(c));
        REQUIRE(rep[2].order);
        CHECK(*rep[2].order == std::gcd(p, r));
        CHECK(rep[1].factors.size() == 1);
        CHECK(rep[1].factors[0].kind == abgroup::FactorKind::CStar);
      }
  }
  SUBCASE("R0: Exp trivial, Dis of order m·k") {
    for (long k = 1; k <= 3; ++k)
      for (long m = 1; m <= 4; ++m) {
        ChainSpec c;
        c.type = 'M';
        c.k = k;
        c.p = 2 * k;
        c.r = 2 * (m % k);
        c.m = m;
        CAPTURE(k);
        CAPTURE(m);
        auto rep = edge_reports(two_ruptures(c));
        CHECK(rep[1].is_trivial);
        REQUIRE(rep[2].order);
        CHECK(*rep[2].order == m * k);
        CHECK(classify_equal(rep[0], rep[2]));
      }
  }
  SUBCASE("L0: an atom") {
    ChainSpec c;
    c.type = 'B';
    auto rep = edge_reports(two_ruptures(c));
    CHECK(rep[1].is_trivial);
    CHECK(rep[2].has_atoms);
    CHECK(rep[2].atoms.size() == 1);
  }
}

TEST_CASE("random non-degenerate foliations satisfy the structural identities") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 40; ++it) {
    bool atoms = it % 4 == 3;
    InputSpec spec = random_spec(rng, atoms);
    FoliationInput in = input_from_json(build_input(spec, "random" + std::to_string(it)));
    CAPTURE(it);
    CAPTURE(input_to_json(in).dump());
    REQUIRE(codes(validate(in)).empty());
    Analysis an = analyze(in);
    REQUIRE(an.non_degenerate.holds);
    REQUIRE(an.finite_type.holds);

    ChainCounts want;
    for (const auto& c : spec.chains) {
      if (c.type == 'L') ++want.lambda;
      if (c.type == 'R') ++want.nu;
      if (c.type == 'M') ++want.mu;
      if (c.type == 'B') ++want.beta;
    }
    CHECK(an.counts.lambda == want.lambda);
    CHECK(an.counts.nu == want.nu);
    CHECK(an.counts.mu == want.mu);
    CHECK(an.counts.beta == want.beta);
    CHECK(an.chains.size() == spec.chains.size());
    CHECK(an.tau == tau_oracle(an.dual.graph, an.col.R, an.col.R0));
    CHECK(an.counts.lambda + an.counts.nu == an.tau);

    ModuliReport rep = compute_moduli(in, an);
    for (const auto& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.ok);
    }
    CHECK(rep.ok());
    const Check* agree = find_check(rep, "pipelines_agree");
    REQUIRE(agree);
    CHECK(agree->ok);
    CHECK(rep.active_vertices == rep.tau);
    CHECK(rep.zones.size() == open_pieces(an.dual.graph, an.col.R, an.col.R0));
    CHECK(rep.kept_vertices.size() == rep.red_vertices.size());
    if (!atoms) CHECK_FALSE(rep.formal);
  }
}

TEST_CASE("bundled examples") {
  SUBCASE("example0: trivial moduli after pruning") {
    auto in = example("example0");
    auto rep = compute_moduli(in, analyze(in));
    CHECK(rep.ok());
    CHECK(rep.moduli.is_trivial);
    CHECK(rep.text().rfind("example0: Mod trivial (H¹ = 0)", 0) == 0);
  }
  SUBCASE("example1: H1(R, Exp) lattices and finite F") {
    auto in = example("example1");
    auto rep = compute_moduli(in, analyze(in));
    CHECK(rep.ok());
    REQUIRE(rep.h1_exp);
    REQUIRE(rep.h1_exp->factors.size() == 2);
    auto syms = in.symbols;
    Scalar t = Scalar::tau(syms);
    std::vector<std::vector<Scalar>> want{
        abgroup::lattice_basis({t, Scalar(2) * t * exactnum::parse_scalar("alpha_t", syms)}),
        abgroup::lattice_basis({t, Scalar(2) * t * exactnum::parse_scalar("beta_t", syms)})};
    std::vector<std::vector<Scalar>> got;
    for (const auto& f : rep.h1_exp->factors) {
      CHECK(f.kind == abgroup::FactorKind::Elliptic);
      got.push_back(abgroup::lattice_basis(f.generators));
    }
    CHECK(((got[0] == want[0] && got[1] == want[1]) || (got[0] == want[1] && got[1] == want[0])));
    REQUIRE(rep.finite_kernel);
    CHECK(rep.finite_kernel->is_finite);
    REQUIRE(rep.h1_dis);
    CHECK(rep.h1_dis->is_trivial);
    CHECK(rep.tau == 2);
  }
  SUBCASE("example2: non-discrete of rank 3") {
    auto in = example("example2");
    auto rep = compute_moduli(in, analyze(in));
    CHECK(rep.ok());
    CHECK(rep.moduli.has_nondiscrete);
    REQUIRE(rep.lambda_kernel_rank);
    CHECK(*rep.lambda_kernel_rank == 3);
    CHECK(rep.tau == 1);
  }
  SUBCASE("example3: precondition failure names the cut component") {
    auto in = example("example3");
    try {
      compute_moduli(in, analyze(in));
      FAIL("expected a precondition failure");
    } catch (const PreconditionFailed& e) {
      CHECK(e.witness.find("not connected") != std::string::npos);
    }
  }
  SUBCASE("example4: formal description") {
    auto in = example("example4");
    auto rep = compute_moduli(in, analyze(in));
    CHECK(rep.ok());
    CHECK(rep.formal);
    CHECK(rep.counts.beta == 2);
    CHECK(rep.tau == 0);
  }
  SUBCASE("example5: Z/5 and C*") {
    auto in = example("example5");
    auto an = analyze(in);
    CHECK(an.chains.size() == 2);
    auto rep = compute_moduli(in, an);
    CHECK(rep.ok());
    CHECK(rep.shape == "(Z/5 ⊕ C*)/Z");
    CHECK(rep.moduli.torsion == std::vector<abgroup::BigInt>{5});
    CHECK(rep.moduli.factors.size() == 1);
    CHECK(rep.tau == 1);
  }
  SUBCASE("example6: dicritical component") {
    auto in = example("example6");
    auto rep = compute_moduli(in, analyze(in));
    CHECK(rep.ok());
    CHECK(rep.moduli.is_trivial);
  }
  SUBCASE("reports are deterministic") {
    for (const auto& e : bundled_examples()) {
      if (e.name == "example3") continue;
      auto in = parse_input(e.text);
      CHECK(compute_moduli(in, analyze(in)).to_json() == compute_moduli(in, analyze(in)).to_json());
    }
  }
}

TEST_CASE("moduli shape string") {
  ChainCounts c;
  c.mu = 1;
  c.nu = 1;
  CHECK(moduli_shape(c, {5}) == "(Z/5 ⊕ C*)/Z");
  ChainCounts none;
  CHECK(moduli_shape(none, {}) == "0");
}

TEST_CASE("cli exit codes") {
  const std::string data = FOLMOD_DATA_DIR;
  SUBCASE("check") {
    auto r = cli_run({"check", data + "/examples/example5.json"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("τ = 1") != std::string::npos);
    Json j = input_to_json(example("example1"));
    for (auto& s : j["singularities"])
      if (s["point"] == "s'0" && s["component"] == "D'") s["cs"] = "alpha_t";
    r = cli_run({"check", temp_file("recip.json", j.dump())});
    CHECK(r.code == cli::kValidation);
    CHECK(r.out.find("corner_reciprocity") != std::string::npos);
  }
  SUBCASE("parse errors") {
    auto r = cli_run({"moduli", temp_file("bad.json", "{\n \"schema_version\": 1,\n")});
    CHECK(r.code == cli::kParse);
    CHECK(r.err.find("line") != std::string::npos);
    CHECK(cli_run({"moduli", data + "/no/such/file.json"}).code == cli::kParse);
    CHECK(cli_run({"frobnicate"}).code == cli::kParse);
    CHECK(cli_run({"moduli", "--pipeline", "bogus", "x"}).code == cli::kParse);
  }
  SUBCASE("precondition failure") {
    auto r = cli_run({"examples", "3"});
    CHECK(r.code == cli::kPrecondition);
    CHECK(r.err.find("not connected") != std::string::npos);
  }
  SUBCASE("examples and json output") {
    auto r = cli_run({"examples", "0"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("example0: Mod trivial (H¹ = 0)", 0) == 0);
    r = cli_run({"moduli", data + "/examples/example5.json", "--format", "json"});
    CHECK(r.code == cli::kOk);
    Json j = Json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["shape"] == "(Z/5 ⊕ C*)/Z");
    CHECK(cli_run({"examples"}).out.find("example6") != std::string::npos);
  }
  SUBCASE("cohomology") {
    auto r = cli_run({"cohomology", data + "/ggraph/triangle_z2.json"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("H1 = Z/2") != std::string::npos);
    r = cli_run({"cohomology", data + "/ggraph/s3_loop.json"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("|H1| = 3") != std::string::npos);
    r = cli_run({"cohomology", data + "/ggraph/s3_loop.json", "--bound", "2"});
    CHECK(r.code == cli::kPrecondition);
  }
  SUBCASE("oracle replay is deterministic") {
    auto a = cli_run({"oracle", "--seed", "11", "--cases", "5"});
    auto b = cli_run({"oracle", "--seed", "11", "--cases", "5"});
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    auto bug = cli_run({"oracle", "--seed", "11", "--cases", "100", "--inject-prune-bug"});
    CHECK(bug.code == cli::kValidation);
    CHECK(bug.out.find("replay") != std::string::npos);
  }
}
