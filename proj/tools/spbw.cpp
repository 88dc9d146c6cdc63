// Command-line front end: consistency checks, expression evaluation, ideal
// lattices, primality verdicts, graded/catalog spec generation, and the
// descending ideal chain.  Exit codes: 0 success, 1 validation or
// consistency failure, 2 parse error, 3 operation unsupported for the ring.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spbw/spbw.hpp"

namespace {

using spbw::Json;

struct GlobalOpts {
  std::uint32_t degree_bound = 3;
  std::uint64_t seed = 0;
  std::string format = "text";
};

bool json_mode(const GlobalOpts& g) { return g.format == "json"; }

void emit(const Json& payload) { std::cout << payload.dump(2) << "\n"; }

// Split on top-level commas only; bracketed tuples keep theirs.
std::vector<std::string> split_generators(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

spbw::FiniteIdeal ideal_from_flag(const spbw::ExtensionSpec& E, const std::string& flag) {
  std::vector<spbw::RingElement> gens;
  for (const auto& part : split_generators(flag))
    gens.push_back(spbw::parse_element(part, E.ring()));
  return spbw::FiniteIdeal::closure(E.ring(), gens);
}

int run_check(const std::string& file, const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  spbw::ConsistencyReport rep = E.check_pbw_consistency(g.seed);
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "check";
    j["maps_ok"] = rep.maps_ok;
    j["overlap_failures"] = Json::array();
    for (const auto& f : rep.failures) {
      Json e;
      e["kind"] = static_cast<int>(f.kind);
      e["i"] = f.i;
      e["j"] = f.j;
      e["k"] = f.k;
      e["detail"] = f.detail;
      j["overlap_failures"].push_back(e);
    }
    j["ok"] = rep.ok();
    emit(j);
  } else if (rep.ok()) {
    std::cout << "consistency: OK (sigma/delta laws, 0 overlap failures)\n";
  } else {
    std::cout << "consistency: FAIL (" << rep.failures.size() << " failures)\n";
    for (const auto& f : rep.failures)
      std::cout << "  [" << f.i + 1 << "," << f.j + 1 << "," << f.k + 1 << "] " << f.detail
                << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int run_eval(const std::string& file, const std::vector<std::string>& exprs,
             const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  Json results = Json::array();
  for (const auto& src : exprs) {
    spbw::SkewPolynomial f = spbw::parse_expression(src, E);
    std::string text = spbw::format_polynomial(f, E.varnames());
    if (json_mode(g)) {
      Json e;
      e["input"] = src;
      e["result"] = text;
      results.push_back(e);
    } else {
      std::cout << text << "\n";
    }
  }
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "eval";
    j["results"] = std::move(results);
    emit(j);
  }
  return 0;
}

int run_ideals(const std::string& file, const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  const spbw::RingPtr& R = E.ring();
  std::vector<spbw::FiniteIdeal> lattice = spbw::enumerate_ideals(R);
  spbw::SigmaDeltaSystem S = spbw::SigmaDeltaSystem::from_extension(E);
  Json arr = Json::array();
  for (const auto& I : lattice) {
    spbw::InvarianceFlags inv = spbw::invariance(I, S);
    bool prime = I.proper() &&
                 spbw::primality(R, I, S, spbw::PrimalityMode::Prime).holds;
    if (json_mode(g)) {
      Json e;
      e["ideal"] = I.describe();
      e["size"] = I.size();
      e["sigma_invariant"] = inv.sigma_invariant;
      e["delta_invariant"] = inv.delta_invariant;
      e["prime"] = prime;
      arr.push_back(e);
    } else {
      std::cout << I.describe() << "  size " << I.size()
                << (inv.sigma_invariant ? "  sigma-invariant" : "")
                << (inv.delta_invariant ? "  delta-invariant" : "")
                << (prime ? "  prime" : "") << "\n";
    }
  }
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "ideals";
    j["ring"] = R->describe();
    j["ideals"] = std::move(arr);
    emit(j);
  } else {
    std::cout << lattice.size() << " ideals of " << R->describe() << "\n";
  }
  return 0;
}

Json verdict_to_json(const spbw::Verdict& v) {
  Json j;
  j["ideal"] = v.ideal_text;
  j["theorem"] = spbw::route_name(v.theorem);
  j["conclusion"] = spbw::conclusion_name(v.conclusion);
  j["hypotheses"] = Json::array();
  for (const auto& h : v.trail) {
    Json e;
    e["name"] = h.name;
    e["passed"] = h.passed;
    e["evidence"] = h.evidence;
    j["hypotheses"].push_back(e);
  }
  if (v.witness) {
    j["witness"] = Json::object();
    j["witness"]["K"] = v.witness->first.describe();
    j["witness"]["L"] = v.witness->second.describe();
  }
  return j;
}

void print_verdict(const spbw::Verdict& v) {
  std::cout << "ideal: " << v.ideal_text << "\n";
  std::cout << "theorem: " << spbw::route_name(v.theorem) << "\n";
  std::cout << "conclusion: " << spbw::conclusion_name(v.conclusion) << "\n";
  std::cout << "hypotheses:\n";
  for (const auto& h : v.trail)
    std::cout << "  [" << (h.passed ? "pass" : "fail") << "] " << h.name << ": " << h.evidence
              << "\n";
  if (v.witness)
    std::cout << "witness: K=" << v.witness->first.describe()
              << ", L=" << v.witness->second.describe() << "\n";
}

int run_classify(const std::string& file, const std::string& ideal_flag, const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  spbw::Verdict v;
  if (E.ring()->kind() == spbw::RingKind::UniPoly) {
    std::vector<std::string> parts = split_generators(ideal_flag);
    if (parts.size() != 1)
      spbw::fail(spbw::Errc::BadParams, "univariate rings support principal ideals only");
    v = spbw::classify_unipoly_principal(E, spbw::parse_element(parts[0], E.ring()));
  } else {
    v = spbw::classify_extended_ideal(E, ideal_from_flag(E, ideal_flag));
  }
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "classify";
    j["verdict"] = verdict_to_json(v);
    emit(j);
  } else {
    print_verdict(v);
  }
  return 0;
}

int run_gr(const std::string& file, const std::string& out, const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  spbw::ExtensionSpec G = E.associated_graded();
  spbw::save_spec_file(G, out);
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "gr";
    j["wrote"] = out;
    emit(j);
  } else {
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int run_chain(const std::string& file, const std::string& ideal_flag, std::uint32_t jmax,
              const GlobalOpts& g) {
  spbw::ExtensionSpec E = spbw::load_spec_file(file);
  spbw::FiniteIdeal I = ideal_from_flag(E, ideal_flag);
  spbw::SigmaDeltaSystem S = spbw::SigmaDeltaSystem::from_extension(E);
  spbw::IdealChain chain = spbw::ideal_chain(E.ring(), I, S, jmax);
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "chain";
    j["levels"] = Json::array();
    for (const auto& L : chain.levels) {
      Json e;
      e["ideal"] = L.describe();
      e["size"] = L.size();
      j["levels"].push_back(e);
    }
    emit(j);
  } else {
    for (std::size_t j = 0; j < chain.levels.size(); ++j)
      std::cout << "I_" << j << " = " << chain.levels[j].describe() << "  size "
                << chain.levels[j].size() << "\n";
  }
  return 0;
}

int run_catalog(const std::string& name, const std::vector<std::string>& params,
                const std::string& out, const GlobalOpts& g) {
  std::map<std::string, std::string> kv;
  for (const auto& p : params) {
    std::size_t eq = p.find('=');
    if (eq == std::string::npos)
      spbw::fail(spbw::Errc::BadParams, "parameters look like key=value: " + p);
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  spbw::ExtensionSpec E = spbw::build_catalog(name, kv);
  spbw::save_spec_file(E, out);
  if (json_mode(g)) {
    Json j;
    j["schema_version"] = 1;
    j["command"] = "catalog";
    j["entry"] = name;
    j["wrote"] = out;
    emit(j);
  } else {
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic and primality analysis for skew PBW extensions"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--degree-bound", g.degree_bound, "bound for degree-limited searches")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string file, out = "out.spbw", ideal_flag = "0", name;
  std::vector<std::string> exprs, params;
  std::uint32_t jmax = 3;

  CLI::App* check = app.add_subcommand("check", "validate maps and overlap consistency");
  check->add_option("file", file)->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate expressions to normal form");
  eval->add_option("file", file)->required();
  eval->add_option("-e,--expr", exprs, "expression (repeatable)")->required();

  CLI::App* ideals = app.add_subcommand("ideals", "enumerate the coefficient ideal lattice");
  ideals->add_option("file", file)->required();

  CLI::App* classify = app.add_subcommand("classify", "primality verdict for the extended ideal");
  classify->add_option("file", file)->required();
  classify->add_option("--ideal", ideal_flag, "comma-separated generators")->required();

  CLI::App* gr = app.add_subcommand("gr", "write the associated graded spec");
  gr->add_option("file", file)->required();
  gr->add_option("-o,--out", out, "output path")->required();

  CLI::App* chain = app.add_subcommand("chain", "descending ideal chain");
  chain->add_option("file", file)->required();
  chain->add_option("--ideal", ideal_flag, "comma-separated generators")->required();
  chain->add_option("--jmax", jmax, "chain length")->capture_default_str();

  CLI::App* catalog = app.add_subcommand("catalog", "write a named example spec");
  catalog->add_option("name", name)->required();
  catalog->add_option("--param", params, "key=value (repeatable)");
  catalog->add_option("-o,--out", out, "output path")->required();

  // let global flags appear after the subcommand too
  for (CLI::App* sub : {check, eval, ideals, classify, gr, chain, catalog})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; any usage error is a parse error
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return run_check(file, g);
    if (eval->parsed()) return run_eval(file, exprs, g);
    if (ideals->parsed()) return run_ideals(file, g);
    if (classify->parsed()) return run_classify(file, ideal_flag, g);
    if (gr->parsed()) return run_gr(file, out, g);
    if (chain->parsed()) return run_chain(file, ideal_flag, jmax, g);
    if (catalog->parsed()) return run_catalog(name, params, out, g);
  } catch (const spbw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_category();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
