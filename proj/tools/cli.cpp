#include "cli.hpp"

#include "folmod/folmod/examples.hpp"
#include "folmod/folmod/moduli.hpp"
#include "folmod/gg/json.hpp"
#include "folmod/gg/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace folmod::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string path;
  std::string format = "text";
  std::string pipeline = "auto";
  uint64_t bound = gg::kDefaultBound;
  bool bound_given = false;
  uint64_t seed = 1;
  size_t cases = 0;  // 0: suite defaults
  bool inject_prune_bug = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

uint64_t effective_bound(const RunConfig& c) {
  if (c.bound_given) return c.bound;
  if (const char* env = std::getenv("FOLMOD_BOUND"); env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
  }
  return c.bound;
}

void print_violations(const std::vector<Violation>& vs, std::ostream& out) {
  for (const auto& v : vs) out << "violation [" << v.code << "]: " << v.message << "\n";
}

int check_text(const std::string& text, const RunConfig& c, std::ostream& out) {
  FoliationInput in = parse_input(text);
  auto vs = validate(in);
  bool tc = false;
  std::optional<Analysis> an;
  if (std::none_of(vs.begin(), vs.end(), [](const Violation& v) { return v.code == "disconnected"; })) {
    tc = check_tc(in.divisor);
    if (!tc) vs.push_back({"tc", "condition (TC) fails"});
    an = analyze(in);
  }
  if (c.format == "json") {
    Json j;
    j["name"] = in.name;
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(Json{{"code", v.code}, {"message", v.message}});
    j["violations"] = arr;
    j["tc"] = tc;
    if (an) {
      j["non_degenerate"] = an->non_degenerate.holds;
      j["finite_type"] = an->finite_type.holds;
      if (!an->finite_type.holds) j["finite_type_witness"] = an->finite_type.witness;
      j["tau"] = an->tau;
    }
    j["ok"] = vs.empty();
    out << j.dump(2) << "\n";
  } else {
    out << (in.name.empty() ? "input" : in.name) << ": " << (vs.empty() ? "ok" : "invalid") << "\n";
    print_violations(vs, out);
    if (an) {
      out << "TC: " << (tc ? "holds" : "fails") << "\n";
      out << "non-degenerate: " << (an->non_degenerate.holds ? "yes" : "no (" + an->non_degenerate.witness + ")") << "\n";
      out << "finite type: " << (an->finite_type.holds ? "yes" : "no (" + an->finite_type.witness + ")") << "\n";
      out << "τ = " << an->tau << "\n";
    }
  }
  return vs.empty() ? kOk : kValidation;
}

int moduli_text(const std::string& text, const RunConfig& c, std::ostream& out, std::ostream& err) {
  FoliationInput in = parse_input(text);
  auto vs = validate(in);
  if (!vs.empty()) {
    print_violations(vs, err);
    return kValidation;
  }
  Analysis an = analyze(in);
  ModuliReport rep;
  if (c.pipeline == "nondegenerate")
    rep = compute_moduli_nondegenerate(in, an);
  else if (c.pipeline == "finite_type")
    rep = compute_moduli_finite_type(in, an);
  else
    rep = compute_moduli(in, an);
  if (c.format == "json")
    out << rep.to_json().dump(2) << "\n";
  else
    out << rep.text();
  return rep.ok() ? kOk : kValidation;
}

int cohomology_file(const RunConfig& c, std::ostream& out) {
  Json j = parse_json_text(read_file(c.path));
  gg::AnyGroupGraph any = gg::group_graph_from_json(j);
  Json res;
  std::ostringstream txt;
  if (auto* g = std::get_if<gg::GroupGraph>(&any)) {
    g->validate();
    auto cob = gg::coboundary0(*g);
    auto h1 = abgroup::classify(*abgroup::cokernel(cob.d0).group);
    res["h1"] = abgroup::report_to_json(h1);
    txt << "H1 = " << h1.text() << "\n";
    try {
      auto h0 = abgroup::classify(*abgroup::kernel(cob.d0).group);
      res["h0"] = abgroup::report_to_json(h0);
      txt << "H0 = " << h0.text() << "\n";
    } catch (const abgroup::UnsupportedAtomMap& e) {
      txt << "H0: not computable (" << e.what() << ")\n";
    }
  } else {
    auto& f = std::get<gg::FiniteGroupGraph>(any);
    f.validate();
    auto b = gg::brute_force_h1(f, effective_bound(c));
    res["h1_orbits"] = b.orbits;
    txt << "|H1| = " << b.orbits << " (brute force)\n";
    if (f.is_abelian()) {
      auto h1 = gg::h1(gg::to_group_graph(f));
      res["h1"] = abgroup::report_to_json(h1);
      txt << "H1 = " << h1.text() << "\n";
    }
  }
  if (c.format == "json")
    out << res.dump(2) << "\n";
  else
    out << txt.str();
  return kOk;
}

int oracle(const RunConfig& c, std::ostream& out) {
  gg::OracleConfig oc;
  oc.seed = c.seed;
  oc.bound = effective_bound(c);
  if (c.cases > 0) oc.abelian_cases = oc.pruning_cases = oc.mv_cases = oc.les_cases = c.cases;
  oc.inject_prune_sign_bug = c.inject_prune_bug;
  auto r = gg::run_oracle(oc);
  out << r.text();
  for (const auto& s : r.suites)
    if (!s.ok()) out << "replay " << s.name << ": " << s.first_failure << "\n";
  return r.ok() ? kOk : kValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moduli of marked foliations and group-graph cohomology"};
  app.name("folmod");
  app.require_subcommand(1);
  RunConfig c;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto* check = app.add_subcommand("check", "Validate an input file");
  check->add_option("file", c.path, "Marked foliation (JSON)")->required();
  add_format(check);

  auto* moduli = app.add_subcommand("moduli", "Compute the moduli report");
  moduli->add_option("file", c.path, "Marked foliation (JSON)")->required();
  moduli->add_option("--pipeline", c.pipeline, "auto, nondegenerate or finite_type")
      ->check(CLI::IsMember({"auto", "nondegenerate", "finite_type"}));
  add_format(moduli);

  auto* coh = app.add_subcommand("cohomology", "H0 and H1 of a group-graph file");
  coh->add_option("file", c.path, "Group-graph (JSON)")->required();
  coh->add_option("--bound", c.bound, "Brute-force state bound")->check(CLI::PositiveNumber);
  add_format(coh);

  auto* ex = app.add_subcommand("examples", "Run the moduli pipeline on a bundled example");
  ex->add_option("index", c.path, "0..6 (omit to list)");
  ex->add_option("--pipeline", c.pipeline, "auto, nondegenerate or finite_type")
      ->check(CLI::IsMember({"auto", "nondegenerate", "finite_type"}));
  ex->add_flag("--show-input", "Print the bundled input instead");
  add_format(ex);

  auto* orc = app.add_subcommand("oracle", "Randomized group-graph cross-checks");
  orc->add_option("--seed", c.seed, "Random seed");
  orc->add_option("--bound", c.bound, "Brute-force state bound")->check(CLI::PositiveNumber);
  orc->add_option("--cases", c.cases, "Cases per suite");
  orc->add_flag("--inject-prune-bug", c.inject_prune_bug)->group("");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }
  c.bound_given = (coh->count("--bound") + orc->count("--bound")) > 0;

  try {
    if (*check) return check_text(read_file(c.path), c, out);
    if (*moduli) return moduli_text(read_file(c.path), c, out, err);
    if (*coh) return cohomology_file(c, out);
    if (*orc) return oracle(c, out);
    if (*ex) {
      if (c.path.empty()) {
        for (const auto& e : bundled_examples()) out << e.name << "\n";
        return kOk;
      }
      std::string name = "example" + c.path;
      auto e = bundled_example(name);
      if (!e) e = bundled_example(c.path);
      if (!e) {
        err << "no bundled example '" << c.path << "'\n";
        return kParse;
      }
      if (ex->count("--show-input") > 0) {
        out << e->text;
        return kOk;
      }
      return moduli_text(e->text, c, out, err);
    }
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << "\n";
    return kParse;
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kParse;
  } catch (const abgroup::JsonShapeError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const Json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionFailed& e) {
    err << e.what() << "\n";
    return kPrecondition;
  } catch (const gg::BoundExceeded& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kPrecondition;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const gg::InvalidGroupGraph& e) {
    err << "invalid group-graph: " << e.what() << "\n";
    return kValidation;
  } catch (const gg::InvalidTable& e) {
    err << "invalid group table: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace folmod::cli
