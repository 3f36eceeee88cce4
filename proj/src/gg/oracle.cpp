#include "folmod/gg/oracle.hpp"

#include "folmod/gg/json.hpp"
#include "folmod/gg/random.hpp"

#include <chrono>
#include <sstream>

namespace folmod::gg {

namespace {

uint64_t suite_seed(uint64_t seed, uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

class Timer {
 public:
  Timer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void record_failure(SuiteReport& r, size_t index, Json instance, Json detail) {
  ++r.failed;
  if (!r.first_failure.empty()) return;
  Json dump{{"suite", r.name}, {"case", index}, {"detail", std::move(detail)}, {"instance", std::move(instance)}};
  r.first_failure = dump.dump(2);
}

exactnum::SymbolTablePtr oracle_symbols() {
  auto t = std::make_shared<exactnum::SymbolTable>();
  t->declare("mu");
  return t;
}

// Replaces the attaching-side restriction x -> ρ(x) of one edge at the
// attaching vertex by x -> ρ(x)^-1. Only edges on a cycle are affected: on a
// bridge the change is absorbed by an automorphism and goes unnoticed.
void inject_sign_bug(RestrictedFiniteGroupGraph& pr, size_t attach_original) {
  FiniteGroupGraph& g = pr.gg;
  size_t attach = 0;
  for (size_t v = 0; v < pr.vertex_from.size(); ++v)
    if (pr.vertex_from[v] == attach_original) attach = v;
  for (auto e : g.graph.incident(attach)) {
    Subgraph rest = Subgraph::full(g.graph);
    rest.edges[e] = false;
    std::vector<size_t> comp;
    components(g.graph, rest, &comp);
    const Edge& ed = g.graph.edge(e);
    if (comp[ed.tail] != comp[ed.head] && !ed.is_loop()) continue;
    ElementMap& m = ed.tail == attach ? g.rho_tail[e] : g.rho_head[e];
    for (auto& x : m) x = g.egroup[e].inv(x);
    return;
  }
}

Json branch_json(const DeadBranch& b) {
  return Json{{"vertices", b.vertices}, {"edges", b.edges}, {"attach", b.attach}};
}

}  // namespace

bool OracleReport::ok() const {
  for (const auto& s : suites)
    if (!s.ok()) return false;
  return true;
}

std::string OracleReport::text() const {
  std::ostringstream os;
  for (const auto& s : suites)
    os << (s.ok() ? "PASS " : "FAIL ") << s.name << ": " << s.passed << " passed, " << s.failed << " failed, "
       << s.skipped << " skipped\n";
  for (const auto& s : suites)
    if (!s.first_failure.empty()) os << "counterexample (" << s.name << "):\n" << s.first_failure << "\n";
  return os.str();
}

SuiteReport run_abelian_agreement(const OracleConfig& c) {
  Timer timer;
  SuiteReport r;
  r.name = "abelian-brute-agreement";
  Rng rng(suite_seed(c.seed, 1));
  GroupLibrary lib;
  FiniteInstanceOptions opt;
  for (size_t k = 0; k < c.abelian_cases; ++k) {
    FiniteGroupGraph f = random_finite_group_graph(rng, lib, opt);
    BruteH1 brute;
    try {
      brute = brute_force_h1(f, c.bound);
    } catch (const BoundExceeded&) {
      ++r.skipped;
      continue;
    }
    auto report = h1(to_group_graph(f));
    bool ok = report.order && *report.order == abgroup::BigInt(std::to_string(brute.orbits));
    if (ok)
      ++r.passed;
    else
      record_failure(r, k, group_graph_to_json(f),
                     Json{{"brute_orbits", brute.orbits}, {"classified", report.text()}});
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteReport run_pruning_invariance(const OracleConfig& c) {
  Timer timer;
  SuiteReport r;
  r.name = "pruning-invariance";
  Rng rng(suite_seed(c.seed, 2));
  GroupLibrary lib;
  FiniteInstanceOptions opt;
  opt.abelian_only = false;
  for (size_t k = 0; k < c.pruning_cases; ++k) {
    BranchInstance inst = random_branch_instance(rng, lib, opt);
    RestrictedFiniteGroupGraph pr = prune(inst.gg, inst.branch);
    if (c.inject_prune_sign_bug) inject_sign_bug(pr, inst.branch.attach);
    BruteH1 before, after;
    try {
      before = brute_force_h1(inst.gg, c.bound);
      after = brute_force_h1(pr.gg, c.bound);
    } catch (const BoundExceeded&) {
      ++r.skipped;
      continue;
    }
    if (before.orbits == after.orbits)
      ++r.passed;
    else
      record_failure(r, k, Json{{"group_graph", group_graph_to_json(inst.gg)}, {"branch", branch_json(inst.branch)}},
                     Json{{"orbits_before", before.orbits}, {"orbits_after", after.orbits}});
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteReport run_mayer_vietoris(const OracleConfig& c) {
  Timer timer;
  SuiteReport r;
  r.name = "mayer-vietoris-exactness";
  Rng rng(suite_seed(c.seed, 3));
  auto t = oracle_symbols();
  for (size_t k = 0; k < c.mv_cases; ++k) {
    GroupGraph g = random_abelian_group_graph(rng, t);
    auto [a0, a1] = random_cover(rng, g.graph);
    std::string detail;
    bool ok = false;
    try {
      auto s = mayer_vietoris(g, a0, a1);
      ok = s.exact();
      detail = s.text();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok)
      ++r.passed;
    else
      record_failure(r, k,
                     Json{{"group_graph", group_graph_to_json(g)},
                          {"A0", Json{{"vertices", a0.vertices}, {"edges", a0.edges}}},
                          {"A1", Json{{"vertices", a1.vertices}, {"edges", a1.edges}}}},
                     detail);
  }
  r.seconds = timer.seconds();
  return r;
}

SuiteReport run_long_exact(const OracleConfig& c) {
  Timer timer;
  SuiteReport r;
  r.name = "long-exact-sequence-exactness";
  Rng rng(suite_seed(c.seed, 4));
  auto t = oracle_symbols();
  for (size_t k = 0; k < c.les_cases; ++k) {
    ShortExactInstance s = random_short_exact(rng, t);
    std::string detail;
    bool ok = false;
    try {
      auto seq = long_exact_sequence(s.f, s.g, s.j, s.i, s.p);
      ok = seq.exact();
      detail = seq.text();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (ok) {
      ++r.passed;
    } else {
      Json im = Json::array(), pm = Json::array();
      for (const auto& h : s.i.vmap) im.push_back(abgroup::hom_to_json(h));
      for (const auto& h : s.i.emap) im.push_back(abgroup::hom_to_json(h));
      for (const auto& h : s.p.vmap) pm.push_back(abgroup::hom_to_json(h));
      for (const auto& h : s.p.emap) pm.push_back(abgroup::hom_to_json(h));
      record_failure(r, k,
                     Json{{"F", group_graph_to_json(s.f)},
                          {"G", group_graph_to_json(s.g)},
                          {"J", group_graph_to_json(s.j)},
                          {"i", im},
                          {"p", pm}},
                     detail);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

OracleReport run_oracle(const OracleConfig& c) {
  OracleReport out;
  out.suites.push_back(run_abelian_agreement(c));
  out.suites.push_back(run_pruning_invariance(c));
  out.suites.push_back(run_mayer_vietoris(c));
  out.suites.push_back(run_long_exact(c));
  return out;
}

}  // namespace folmod::gg
