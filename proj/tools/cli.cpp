#include <CLI11.hpp>
#include <json.hpp>
#include <iostream>
#include <random>
#include <string>

#include "qcyc/corpus.hpp"
#include "qcyc/forms.hpp"
#include "qcyc/gmodule.hpp"
#include "qcyc/greenjulg.hpp"
#include "qcyc/homalg.hpp"
#include "qcyc/json_io.hpp"
#include "qcyc/stability.hpp"

using nlohmann::json;
using namespace qcyc;

namespace {

struct RunConfig {
  std::string groupoid, algebra = "trivial", source = "trivial", target = "trivial";
  std::string suite, format = "json";
  int level = 0;           // 0 = quasifree reduction
  int max_degree = 6;
  unsigned seed = 1;
  long guard_dim = 2000000;
};

void emit(const RunConfig& cfg, const json& report) {
  if (cfg.format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  // text mirrors the JSON content, one key per line
  std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix, const json& j) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) walk(prefix.empty() ? k : prefix + "." + k, v);
    } else {
      std::cout << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
  };
  walk("", report);
}

long hodge_dim_bound(const Groupoid& g, const GAlgebra& a, int deg) {
  long total = 0;
  for (int l = 0; l < (int)g.loops().size(); ++l) {
    int d = a.mod.fdim[g.src(g.loops()[l])];
    long monos = 0, tail = 1;
    for (int k = 0; k <= deg; ++k) {
      monos += (long)(d + 1) * tail;
      tail *= d;
    }
    total += monos;
  }
  return total;
}

int cmd_validate(const std::vector<std::string>& paths, const RunConfig& cfg) {
  json report = json::array();
  bool ok = true;
  for (const auto& p : paths) {
    json entry{{"file", p}};
    try {
      Groupoid g = load_groupoid(p);
      entry["valid"] = true;
      entry["arrows"] = g.num_arrows();
      entry["units"] = g.num_units();
      entry["orbits"] = (int)g.orbits().size();
      if (cfg.format == "text")
        std::cout << p << " valid: " << g.num_arrows() << " arrows, " << g.orbits().size()
                  << (g.orbits().size() == 1 ? " orbit" : " orbits") << "\n";
    } catch (const std::exception& e) {
      entry["valid"] = false;
      entry["error"] = e.what();
      ok = false;
      if (cfg.format == "text") std::cout << p << " invalid: " << e.what() << "\n";
    }
    report.push_back(std::move(entry));
  }
  if (cfg.format == "json") std::cout << report.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const RunConfig& cfg) {
  Groupoid g = load_groupoid(cfg.groupoid);
  json report{{"suite", cfg.suite}, {"groupoid", cfg.groupoid}};
  bool ok = true;
  if (cfg.suite == "paramixed") {
    GAlgebra a = load_algebra(g, cfg.algebra);
    if (hodge_dim_bound(g, a, cfg.max_degree) > cfg.guard_dim) {
      report["guard_tripped"] = true;
      emit(cfg, report);
      return 2;
    }
    ParamixedReport rep = paramixed_report(g, a, cfg.max_degree);
    report["algebra"] = cfg.algebra;
    report["max_degree"] = rep.max_degree;
    report["monomials_checked"] = rep.monomials_checked;
    report["failures"] = rep.failures;
    ok = rep.all_pass;
  } else if (cfg.suite == "comodule") {
    std::mt19937 rng(cfg.seed);
    json cases = json::array();
    auto roundtrip = [&](const GModule& m, const std::string& name) {
      ComoduleMap c = module_to_comodule(m);
      c.validate();
      GModule back = comodule_to_module(c);
      bool same = back.fdim == m.fdim;
      for (int a = 0; a < g.num_arrows() && same; ++a) same = back.rho[a].equals(m.rho[a]);
      cases.push_back({{"module", name}, {"round_trip", same}});
      ok = ok && same;
    };
    roundtrip(GModule::trivial(g), "trivial");
    roundtrip(GModule::regular(g), "regular");
    for (int k = 0; k < 5; ++k) roundtrip(random_module(g, rng), "random" + std::to_string(k));
    report["seed"] = cfg.seed;
    report["cases"] = std::move(cases);
  } else if (cfg.suite == "stability") {
    GAlgebra a = load_algebra(g, cfg.algebra);
    StabilityReport rep = stability_check(a, regular_pairing(g));
    report["algebra"] = cfg.algebra;
    report["admissible"] = rep.admissible;
    report["trace_property"] = rep.trace_property;
    report["chain_map"] = rep.chain_map;
    report["algebra_map"] = rep.algebra_map;
    report["retraction"] = rep.retraction;
    report["induces_id"] = rep.induces_id;
    report["ranks_equal"] = rep.ranks_equal;
    ok = rep.all();
  } else {
    throw CLI::ValidationError("--suite", "unknown suite (paramixed|comodule|stability)");
  }
  report["passed"] = ok;
  emit(cfg, report);
  return ok ? 0 : 1;
}

int cmd_hp(const RunConfig& cfg) {
  Groupoid g = load_groupoid(cfg.groupoid);
  GAlgebra a = load_algebra(g, cfg.source);
  GAlgebra b = load_algebra(g, cfg.target);
  json report{{"groupoid", cfg.groupoid}, {"source", cfg.source}, {"target", cfg.target}};
  if (cfg.level > 0) {
    auto levels = hp_level(a, b, cfg.level);
    const HomologyReport& last = levels.back();
    report["even"] = last.even_rank;
    report["odd"] = last.odd_rank;
    report["level"] = last.level;
    report["reduction"] = "level";
    report["stabilized"] = last.stabilized;
    json hist = json::array();
    for (const auto& r : levels)
      hist.push_back({{"level", r.level}, {"even", r.even_rank}, {"odd", r.odd_rank}, {"stabilized", r.stabilized}});
    report["levels"] = std::move(hist);
    emit(cfg, report);
    return 0;
  }
  if (!quasifree_certificate(a) || !quasifree_certificate(b)) {
    std::cerr << "hp: an algebra has no connection certificate; pass --level m\n";
    return 2;
  }
  HomologyReport r = hp_quasifree(a, b);
  report["even"] = r.even_rank;
  report["odd"] = r.odd_rank;
  report["reduction"] = "quasifree";
  report["stabilized"] = true;
  emit(cfg, report);
  return 0;
}

int cmd_greenjulg(const RunConfig& cfg) {
  Groupoid g = load_groupoid(cfg.groupoid);
  GAlgebra a = load_algebra(g, cfg.algebra);
  GreenJulgReport rep = green_julg_verify(a);
  json report{{"groupoid", cfg.groupoid}, {"algebra", cfg.algebra}};
  report["lhs"] = {{"even", rep.lhs.even_rank}, {"odd", rep.lhs.odd_rank}};
  report["rhs"] = {{"even", rep.rhs.even_rank}, {"odd", rep.rhs.odd_rank}};
  json orbits = json::array();
  for (size_t i = 0; i < rep.lhs_orbits.size(); ++i)
    orbits.push_back({{"orbit", (int)i},
                      {"lhs", {{"even", rep.lhs_orbits[i].even_rank}, {"odd", rep.lhs_orbits[i].odd_rank}}},
                      {"rhs", {{"even", rep.rhs_orbits[i].even_rank}, {"odd", rep.rhs_orbits[i].odd_rank}}}});
  report["orbits"] = std::move(orbits);
  report["equal"] = rep.equal;
  report["orbit_sums_equal"] = rep.orbit_sums_equal;
  emit(cfg, report);
  return (rep.equal && rep.orbit_sums_equal) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact equivariant periodic cyclic homology for finite groupoids"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("QCYC_FORMAT")) cfg.format = env;

  std::vector<std::string> validate_paths;
  CLI::App* v = app.add_subcommand("validate", "validate groupoid files");
  v->add_option("files", validate_paths, "groupoid files or builtin: refs")->required();
  v->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* c = app.add_subcommand("check", "run a verification suite");
  c->add_option("--groupoid", cfg.groupoid)->required();
  c->add_option("--algebra", cfg.algebra);
  c->add_option("--suite", cfg.suite, "paramixed|comodule|stability")->required();
  c->add_option("--max-degree", cfg.max_degree)->check(CLI::PositiveNumber);
  c->add_option("--seed", cfg.seed);
  c->add_option("--guard-dim", cfg.guard_dim)->check(CLI::PositiveNumber);
  c->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* h = app.add_subcommand("hp", "periodic cyclic homology ranks");
  h->add_option("--groupoid", cfg.groupoid)->required();
  h->add_option("--source", cfg.source);
  h->add_option("--target", cfg.target);
  h->add_option("--level", cfg.level)->check(CLI::PositiveNumber);
  h->add_option("--guard-dim", cfg.guard_dim)->check(CLI::PositiveNumber);
  h->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI::App* gj = app.add_subcommand("greenjulg", "verify the Green-Julg rank identity");
  gj->add_option("--groupoid", cfg.groupoid)->required();
  gj->add_option("--algebra", cfg.algebra);
  gj->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (v->parsed()) return cmd_validate(validate_paths, cfg);
    if (c->parsed()) return cmd_check(cfg);
    if (h->parsed()) return cmd_hp(cfg);
    if (gj->parsed()) return cmd_greenjulg(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
