// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "folmod/abgroup/classify.hpp"
#include "folmod/folmod/examples.hpp"
#include "folmod/folmod/moduli.hpp"
#include "folmod/gg/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace folmod;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_s <= 0 || s < limit_s;
  bool pass = o.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_s > 0)
    std::snprintf(timing, sizeof timing, "%.3f s, limit %.0f s", s, limit_s);
  else
    std::snprintf(timing, sizeof timing, "%.3f s", s);
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << o.detail
            << (in_time ? "" : " (too slow)") << " (" << timing << ")" << std::endl;
}

FoliationInput load(const std::string& name) {
  auto e = bundled_example(name);
  if (!e) throw std::runtime_error("missing bundled " + name);
  return parse_input(e->text);
}

std::vector<std::string> names_of(const Analysis& an, const Subgraph& s) {
  std::vector<std::string> out;
  for (size_t v = 0; v < s.vertices.size(); ++v)
    if (s.vertices[v]) out.push_back(an.dual.graph.vertex_name(v));
  return out;
}

std::vector<Scalar> basis(const std::vector<Scalar>& gens) { return abgroup::lattice_basis(gens); }

// {τ, 2τ·x} for the symbols named.
std::vector<Scalar> two_lattice(const FoliationInput& in, const std::vector<std::string>& syms) {
  Scalar t = Scalar::tau(in.symbols);
  std::vector<Scalar> g{t};
  for (const auto& s : syms) g.push_back(Scalar(2) * t * exactnum::parse_scalar(s, in.symbols));
  return basis(g);
}

Outcome suite_outcome(const gg::SuiteReport& r, size_t need) {
  std::ostringstream d;
  d << r.passed << " passed, " << r.failed << " failed, " << r.skipped << " skipped (need " << need << ")";
  if (!r.ok()) d << "; replay " << r.first_failure;
  return {r.ok() && r.passed >= need, d.str()};
}

}  // namespace

int main() {
  criterion(1, "example0 trivial after pruning to the red chain", 1, [] {
    auto in = load("example0");
    Analysis an = analyze(in);
    auto rep = compute_moduli(in, an);
    std::vector<std::string> want{"D", "D'", "D''"};
    bool chain = rep.kept_vertices == want;
    std::ostringstream d;
    d << "Mod " << (rep.moduli.is_trivial ? "trivial" : rep.moduli.text()) << ", kept " << rep.kept_vertices.size()
      << " vertices" << (chain ? " {D,D',D''}" : "");
    return Outcome{rep.ok() && rep.moduli.is_trivial && chain, d.str()};
  });

  criterion(2, "example1 finite quotient of two elliptic factors", 1, [] {
    auto in = load("example1");
    Analysis an = analyze(in);
    auto rep = compute_moduli(in, an);
    bool ok = rep.ok() && rep.h1_exp && rep.finite_kernel && rep.h1_dis;
    std::vector<std::vector<Scalar>> got;
    if (ok) {
      for (const auto& f : rep.h1_exp->factors) {
        ok = ok && f.kind == abgroup::FactorKind::Elliptic;
        got.push_back(basis(f.generators));
      }
      ok = ok && rep.h1_exp->factors.size() == 2 && rep.h1_exp->free_c == 0 && rep.h1_exp->free_rank == 0 &&
           rep.h1_exp->torsion.empty();
      auto a = two_lattice(in, {"alpha_t"}), b = two_lattice(in, {"beta_t"});
      ok = ok && got.size() == 2 && ((got[0] == a && got[1] == b) || (got[0] == b && got[1] == a));
      // D = 0 makes Mod = H1(R,Exp)/F.
      ok = ok && rep.finite_kernel->is_finite && rep.h1_dis->is_trivial;
    }
    const auto& c = rep.counts;
    ok = ok && c.lambda == 2 && c.nu == 0 && c.beta == 0 && rep.tau == 2 && c.lambda + c.nu == rep.tau;
    std::ostringstream d;
    d << "H1(R,Exp) = " << (rep.h1_exp ? rep.h1_exp->text() : "?") << ", F = "
      << (rep.finite_kernel ? rep.finite_kernel->text() : "?") << ", D = " << (rep.h1_dis ? rep.h1_dis->text() : "?")
      << "; λ=" << c.lambda << " ν=" << c.nu << " β=" << c.beta << " τ=" << rep.tau;
    return Outcome{ok, d.str()};
  });

  criterion(3, "example2 non-discrete middle term of rank 3", 1, [] {
    auto in = load("example2");
    auto rep = compute_moduli(in, analyze(in));
    bool ok = rep.ok() && rep.h1_exp && rep.finite_kernel && rep.h1_exp->factors.size() == 1 &&
              rep.h1_exp->free_c == 0;
    if (ok) {
      const auto& f = rep.h1_exp->factors[0];
      ok = f.kind == abgroup::FactorKind::NonDiscrete && f.dim == 1 && f.q_rank == 3 &&
           basis(f.generators) == two_lattice(in, {"alpha_t", "beta_t"}) && rep.finite_kernel->is_finite;
    }
    std::ostringstream d;
    d << "middle term " << (rep.h1_exp ? rep.h1_exp->text() : "?") << ", K = "
      << (rep.finite_kernel ? rep.finite_kernel->text() : "?");
    return Outcome{ok, d.str()};
  });

  criterion(4, "example3 refused as not of finite type", 1, [] {
    auto in = load("example3");
    Analysis an = analyze(in);
    bool refused = false;
    std::string witness;
    try {
      compute_moduli_finite_type(in, an);
    } catch (const NotFiniteType& e) {
      refused = true;
      witness = e.witness;
    }
    bool also = false;
    try {
      compute_moduli(in, an);
    } catch (const NotFiniteType&) {
      also = true;
    }
    const std::string want = "cut component {D,D',D'',C',C''}: red part is not connected";
    bool ok = !an.finite_type.holds && an.finite_type.witness == want && refused && witness == want && also;
    return Outcome{ok, "witness \"" + an.finite_type.witness + "\"" + (refused ? ", NotFiniteType" : ", not refused")};
  });

  criterion(5, "example5 shape (Z/m ⊕ (C*)^ν)/Z", 1, [] {
    auto in = load("example5");
    Analysis an = analyze(in);
    auto rep = compute_moduli(in, an);
    size_t declared = in.expect.singular_chains.value_or(0);
    const auto& c = rep.counts;
    bool ok = rep.ok() && rep.shape == "(Z/5 ⊕ C*)/Z" && c.mu + c.nu == declared && declared == 2 &&
              c.lambda == 0 && c.beta == 0;
    std::ostringstream d;
    d << "shape " << rep.shape << ", μ=" << c.mu << " ν=" << c.nu << ", declared chains " << declared
      << ", Mod = " << rep.moduli.text();
    return Outcome{ok, d.str()};
  });

  criterion(6, "example6 single red vertex per component gives trivial moduli", 1, [] {
    auto in = load("example6");
    Analysis an = analyze(in);
    auto rep = compute_moduli(in, an);
    bool singles = true;
    for (const auto& s : gg::component_subgraphs(an.dual.graph, an.col.R))
      singles = singles && s.vertex_count() == 1;
    auto red = names_of(an, an.col.R);
    std::ostringstream d;
    d << red.size() << " red vertices, each its own component; Mod "
      << (rep.moduli.is_trivial ? "trivial" : rep.moduli.text());
    return Outcome{rep.ok() && singles && !red.empty() && rep.moduli.is_trivial, d.str()};
  });

  gg::OracleConfig oc;
  oc.seed = 20261016;
  criterion(7, "abelian H1 classification matches brute force", 60,
            [&] { return suite_outcome(gg::run_abelian_agreement(oc), 200); });
  criterion(8, "pruning leaves |H1| unchanged", 60, [&] { return suite_outcome(gg::run_pruning_invariance(oc), 100); });
  criterion(9, "Mayer-Vietoris and long exact sequences are exact", 60, [&] {
    auto mv = suite_outcome(gg::run_mayer_vietoris(oc), 100);
    auto les = suite_outcome(gg::run_long_exact(oc), 100);
    return Outcome{mv.ok && les.ok, "MV " + mv.detail + "; LES " + les.detail};
  });

  criterion(10, "both pipelines agree on bundled non-degenerate examples", 0, [] {
    size_t compared = 0;
    bool ok = true;
    std::ostringstream d;
    for (const auto& e : bundled_examples()) {
      auto in = parse_input(e.text);
      Analysis an = analyze(in);
      if (!an.tc || !an.non_degenerate.holds || !an.finite_type.holds) continue;
      auto nd = compute_moduli_nondegenerate(in, an);
      if (nd.formal || nd.moduli.has_atoms) continue;
      auto ft = compute_moduli_finite_type(in, an);
      bool same = abgroup::classify_equal(nd.moduli, ft.moduli);
      ok = ok && same;
      d << (compared ? ", " : "") << e.name << (same ? " equal" : " DIFFER");
      ++compared;
    }
    return Outcome{ok && compared > 0, std::to_string(compared) + " compared (" + d.str() + ")"};
  });

  return failures == 0 ? 0 : 1;
}
