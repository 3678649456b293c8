/* Command-line front end.  Every subcommand assembles a canonical scenario
   document, dispatches it to the owning module, and prints the resulting
   report as indented text or as byte-stable JSON (--json).  The input
   digest inside the report is taken over the canonical scenario, so two
   invocations that describe the same computation produce byte-identical
   JSON.  Exit status: 0 when every verdict passes, 1 when a mathematical
   verdict fails, 2 on malformed input or an exceeded budget. */

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "buildings/coxeter.hpp"
#include "buildings/errors.hpp"
#include "buildings/json_io.hpp"
#include "buildings/report.hpp"
#include "buildings/scenario.hpp"

namespace {

using buildings::json_io::Json;
using buildings::report::Report;
namespace json_io = buildings::json_io;
namespace report = buildings::report;

int execute(const Json& scen, bool as_json) {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    Report r = buildings::scenario::run(scen);
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    std::cout << (as_json ? report::emit_json(r) : report::emit_text(r));
    return r.failed() ? 1 : 0;
  } catch (const buildings::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const buildings::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const buildings::Error& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}

/* Canonical cartan block from a file: parsed, validated, re-serialized, so
   the digest depends on the matrix and not on file whitespace. */
Json cartan_block(const std::string& path) {
  const auto a = json_io::parse_cartan(json_io::load_json_file(path));
  Json rows = Json::array();
  for (const auto& row : a.entries()) rows.push_back(row);
  return Json{{"matrix", rows}};
}

Json scenario_from_file(const std::string& path, const std::string& kind) {
  Json scen = json_io::load_json_file(path);
  if (!scen.is_object())
    throw buildings::ParseError("scenario file must hold a JSON object");
  if (scen.contains("kind") && scen["kind"] != Json(kind))
    throw buildings::ParseError("scenario file kind '" +
                                scen["kind"].dump() + "' does not match '" +
                                kind + "'");
  scen["kind"] = kind;
  return scen;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on Coxeter groups, Davis complexes,\n"
               "finite BN-pairs, convolution algebras, equivariant cosheaves,\n"
               "and Iwahori-Hecke algebras."};
  app.require_subcommand(1);
  bool as_json = false;

  std::string cartan_path, group_token, input_path;
  std::string word_a, word_b, word_arg, involution_kind = "im";
  int radius = -1;
  long long characteristic = 0;
  std::size_t budget = buildings::coxeter::DEFAULT_ELEMENT_BUDGET;
  bool homology_flag = false, resolution_flag = false, verify_iso = false;

  auto* sph = app.add_subcommand("spherical",
                                 "Spherical subsets and f of a Cartan matrix");
  sph->add_option("--cartan", cartan_path, "Cartan matrix JSON file")
      ->required();

  auto* wb = app.add_subcommand("weyl-ball",
                                "Enumerate the Weyl group ball of a radius");
  wb->add_option("--cartan", cartan_path, "Cartan matrix JSON file")
      ->required();
  wb->add_option("--radius", radius, "Word-length radius (whole group if omitted)");
  wb->add_option("--budget", budget, "Element enumeration cap")
      ->envname("BUILDINGS_BUDGET");

  auto* dv = app.add_subcommand("davis",
                                "Davis poset, order complex, homology, and "
                                "resolution checks");
  dv->add_option("--cartan", cartan_path, "Cartan matrix JSON file");
  dv->add_option("--group", group_token, "Finite group token, e.g. gl:2,2");
  dv->add_option("--radius", radius, "Weyl ball truncation radius");
  dv->add_option("--budget", budget, "Element enumeration cap")
      ->envname("BUILDINGS_BUDGET");
  dv->add_flag("--homology", homology_flag, "Order complex homology dimensions");
  dv->add_flag("--resolution-check", resolution_flag,
               "Check exactness of the augmented chain complex");
  dv->add_option("--char", characteristic, "Coefficient field characteristic");

  auto* hk = app.add_subcommand("hecke", "Iwahori-Hecke algebra operations");
  hk->require_subcommand(1);
  auto* hmul = hk->add_subcommand("mul", "Multiply two basis elements");
  hmul->add_option("--cartan", cartan_path, "Cartan matrix JSON file")
      ->required();
  hmul->add_option("--a", word_a, "Left factor word, e.g. \"0,1,0\"")
      ->required();
  hmul->add_option("--b", word_b, "Right factor word")->required();
  auto* hinv = hk->add_subcommand("involution",
                                  "Apply a ring involution to a basis element");
  hinv->add_option("--cartan", cartan_path, "Cartan matrix JSON file")
      ->required();
  hinv->add_option("--kind", involution_kind,
                   "Involution: im, antipode, or sigma-im")
      ->required();
  hinv->add_option("--word", word_arg, "Basis element word, e.g. \"0,1\"")
      ->required();

  auto* sh = app.add_subcommand("spherical-hecke",
                                "Double-coset convolution algebra of a finite "
                                "BN-pair");
  sh->add_option("--group", group_token, "Finite group token, e.g. gl:2,2")
      ->required();
  sh->add_option("--char", characteristic, "Coefficient field characteristic");
  sh->add_flag("--verify-iso", verify_iso,
               "Compare against the specialized Iwahori-Hecke algebra");

  auto* ch = app.add_subcommand("cosheaf-homology",
                                "Homology of an invariants cosheaf complex");
  ch->add_option("--input", input_path, "Cosheaf scenario JSON file")
      ->required();

  auto* tr = app.add_subcommand("tree-resolution",
                                "Exactness of the two-term tree resolution");
  tr->add_option("--input", input_path, "Cosheaf scenario JSON file")
      ->required();

  auto* vi = app.add_subcommand("verify-idempotents",
                                "Convolution idempotent identities of a "
                                "subgroup system");
  vi->add_option("--input", input_path, "Cosheaf scenario JSON file")
      ->required();

  auto* rn = app.add_subcommand("run", "Run a scenario file with a kind field");
  rn->add_option("--input", input_path, "Scenario JSON file")->required();

  for (auto* sub : {sph, wb, dv, hmul, hinv, sh, ch, tr, vi, rn})
    sub->add_flag("--json", as_json, "Emit the machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Json scen;
    if (app.got_subcommand(sph)) {
      scen["kind"] = "spherical";
      scen["cartan"] = cartan_block(cartan_path);
    } else if (app.got_subcommand(wb)) {
      scen["kind"] = "weyl-ball";
      scen["cartan"] = cartan_block(cartan_path);
      scen["radius"] = wb->count("--radius") ? Json(radius) : Json(nullptr);
      scen["budget"] = budget;
    } else if (app.got_subcommand(dv)) {
      scen["kind"] = "davis";
      if (!group_token.empty()) {
        const auto [n, q] = json_io::parse_gl_token(group_token);
        scen["group"] = Json{{"kind", "gl"}, {"n", n}, {"q", q}};
      } else if (!cartan_path.empty()) {
        scen["cartan"] = cartan_block(cartan_path);
        scen["radius"] = dv->count("--radius") ? Json(radius) : Json(nullptr);
        scen["budget"] = budget;
      } else {
        throw buildings::ParseError("davis needs --cartan or --group");
      }
      scen["homology"] = homology_flag;
      scen["resolution_check"] = resolution_flag;
      scen["field"] = Json{{"characteristic", characteristic}};
    } else if (hk->got_subcommand(hmul)) {
      scen["kind"] = "hecke-mul";
      scen["cartan"] = cartan_block(cartan_path);
      scen["a"] = json_io::parse_word_csv(word_a);
      scen["b"] = json_io::parse_word_csv(word_b);
    } else if (hk->got_subcommand(hinv)) {
      scen["kind"] = "involution";
      scen["cartan"] = cartan_block(cartan_path);
      scen["involution"] = involution_kind;
      scen["word"] = json_io::parse_word_csv(word_arg);
    } else if (app.got_subcommand(sh)) {
      scen["kind"] = "spherical-hecke";
      const auto [n, q] = json_io::parse_gl_token(group_token);
      scen["group"] = Json{{"kind", "gl"}, {"n", n}, {"q", q}};
      scen["field"] = Json{{"characteristic", characteristic}};
      scen["verify_iso"] = verify_iso;
    } else if (app.got_subcommand(ch)) {
      scen = scenario_from_file(input_path, "cosheaf-homology");
    } else if (app.got_subcommand(tr)) {
      scen = scenario_from_file(input_path, "tree-resolution");
    } else if (app.got_subcommand(vi)) {
      scen = scenario_from_file(input_path, "verify-idempotents");
    } else if (app.got_subcommand(rn)) {
      scen = json_io::load_json_file(input_path);
      if (!scen.is_object() || !scen.contains("kind"))
        throw buildings::ParseError("scenario file must carry a 'kind' field");
    }
    return execute(scen, as_json);
  } catch (const buildings::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
