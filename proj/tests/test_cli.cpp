/* End-to-end tests of the command-line front end.  The binary under test
   and the scenario directory come in through the BUILDINGS_CLI and
   BUILDINGS_SCENARIOS environment variables.  Checks cover the verdict
   exit codes (0 pass, 1 mathematical failure, 2 input error), the text
   rendering, byte-identical JSON reruns, and the report round trip. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "buildings/errors.hpp"
#include "buildings/report.hpp"

namespace {

using buildings::report::Json;
using buildings::report::Report;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("BUILDINGS_CLI");
  REQUIRE_MESSAGE(p != nullptr, "BUILDINGS_CLI must point at the binary");
  return p;
}

std::string scenario(const std::string& name) {
  const char* p = std::getenv("BUILDINGS_SCENARIOS");
  REQUIRE_MESSAGE(p != nullptr, "BUILDINGS_SCENARIOS must point at the files");
  return std::string(p) + "/" + name;
}

/* Runs the binary with stderr folded into stdout. */
RunResult run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& stem, const std::string& content) {
  const std::string path =
      "/tmp/" + stem + "_" + std::to_string(getpid()) + ".json";
  std::ofstream out(path);
  out << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("spherical subcommand reports f and the subset census") {
  const auto r = run_cli("spherical --cartan " + scenario("a2.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "f = 2"));
  CHECK(contains(r.out, "subset_count = 4"));
  CHECK(contains(r.out, "verdict = info"));

  const auto r3 = run_cli("spherical --cartan " + scenario("rank3.json"));
  CHECK(r3.exit_code == 0);
  CHECK(contains(r3.out, "f = 1"));

  const auto aff = run_cli("spherical --cartan " + scenario("affine1.json"));
  CHECK(aff.exit_code == 0);
  CHECK(contains(aff.out, "f = 1"));
}

TEST_CASE("hecke mul renders the quadratic relation product") {
  const auto r = run_cli("hecke mul --cartan " + scenario("a2.json") +
                         " --a \"0\" --b \"0\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "q*T_[] + (q - 1)*T_[0]"));
}

TEST_CASE("hecke involution renders the Iwahori-Matsumoto image") {
  const auto r = run_cli("hecke involution --cartan " + scenario("a2.json") +
                         " --kind im --word \"0\"");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "(q - 1)*T_[] - T_[0]"));

  const auto anti = run_cli("hecke involution --cartan " + scenario("a2.json") +
                            " --kind antipode --word \"0,1\"");
  CHECK(anti.exit_code == 0);
  CHECK(contains(anti.out, "T_[1,0]"));

  const auto bad = run_cli("hecke involution --cartan " + scenario("a2.json") +
                           " --kind bogus --word \"0\"");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("weyl-ball enumerates words and honors the budget") {
  const auto r = run_cli("weyl-ball --cartan " + scenario("a2.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "count = 6"));
  CHECK(contains(r.out, "whole_group = true"));

  const auto ball = run_cli("weyl-ball --cartan " + scenario("affine1.json") +
                            " --radius 3");
  CHECK(ball.exit_code == 0);
  CHECK(contains(ball.out, "count = 7"));
  CHECK(contains(ball.out, "whole_group = false"));

  const auto capped = run_cli("weyl-ball --cartan " + scenario("affine1.json") +
                              " --budget 5");
  CHECK(capped.exit_code == 2);
  CHECK(contains(capped.out, "budget"));
}

TEST_CASE("davis resolution over the symmetric group ladder") {
  const auto r = run_cli("davis --cartan " + scenario("a2.json") +
                         " --homology --resolution-check");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "node_count = 13"));
  CHECK(contains(r.out, "chain_counts = [13,24,12]"));
  CHECK(contains(r.out, "boundary_ranks = [12,12]"));
  CHECK(contains(r.out, "augmentation_rank = 1"));
  CHECK(contains(r.out, "H_0 = 1"));
  CHECK(contains(r.out, "H_1 = 0"));
  CHECK(contains(r.out, "H_2 = 0"));
  CHECK(contains(r.out, "exact = true"));
  CHECK(contains(r.out, "verdict = pass"));

  const auto p5 = run_cli("davis --cartan " + scenario("a2.json") +
                          " --resolution-check --char 5");
  CHECK(p5.exit_code == 0);
  CHECK(contains(p5.out, "characteristic = 5"));
  CHECK(contains(p5.out, "exact = true"));
}

TEST_CASE("davis over a BN-pair group and over a truncated ball") {
  const auto gl = run_cli("davis --group gl:2,2 --resolution-check");
  CHECK(gl.exit_code == 0);
  CHECK(contains(gl.out, "provenance = bn-pair"));
  CHECK(contains(gl.out, "exact = true"));

  const auto aff = run_cli("davis --cartan " + scenario("affine1.json") +
                           " --radius 2 --resolution-check");
  CHECK(aff.exit_code == 0);
  CHECK(contains(aff.out, "complete = false"));
  CHECK(contains(aff.out, "truncated = true"));

  const auto r3 = run_cli("davis --cartan " + scenario("rank3.json") +
                          " --radius 2");
  CHECK(r3.exit_code == 0);
  CHECK(contains(r3.out, "f = 1"));
  CHECK(contains(r3.out, "chain_counts = [31,30]"));

  const auto neither = run_cli("davis --char 0");
  CHECK(neither.exit_code == 2);
}

TEST_CASE("spherical-hecke verifies the specialization isomorphism") {
  const auto r = run_cli("spherical-hecke --group gl:2,2 --verify-iso");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "q = [2]"));
  CHECK(contains(r.out, "isomorphism = true"));
  CHECK(contains(r.out, "pairs_checked = 4"));
  CHECK(contains(r.out, "verdict = pass"));

  const auto q3 = run_cli("spherical-hecke --group gl:2,3 --char 5 --verify-iso");
  CHECK(q3.exit_code == 0);
  CHECK(contains(q3.out, "q = [3]"));
  CHECK(contains(q3.out, "verdict = pass"));

  const auto bad = run_cli("spherical-hecke --group gl:9,9");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("tree-resolution matches the expected ranks on the star scenario") {
  const auto r = run_cli("tree-resolution --input " + scenario("s3star.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "verdict = pass"));
  CHECK(contains(r.out, "rank_d1 = 6"));
  CHECK(contains(r.out, "rank_w = 2"));
  CHECK(contains(r.out, "verdict = exact"));
}

TEST_CASE("verify-idempotents passes on the star scenario") {
  const auto r = run_cli("verify-idempotents --input " + scenario("s3star.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "verdict = pass"));
  CHECK(contains(r.out, "violation_count = 0"));
  CHECK(contains(r.out, "conjugations_checked = 42"));
}

TEST_CASE("cosheaf-homology reports stalks, dims, and homology lines") {
  const auto r = run_cli("cosheaf-homology --input " + scenario("s3star.json"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "stalk_dims = [[2,2,2,2],[2,2,2]]"));
  CHECK(contains(r.out, "dims = [8,6]"));
  CHECK(contains(r.out, "H_0 = 2"));
  CHECK(contains(r.out, "H_1 = 0"));
}

TEST_CASE("failing mathematical verdict exits 1 with a diagnosis") {
  Json scen = Json::parse(read_file(scenario("s3star.json")));
  scen["module"] = Json{{"kind", "regular"}};
  const auto path = write_temp("regular_module", scen.dump());
  const auto r = run_cli("tree-resolution --input " + path);
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "verdict = fail"));
  CHECK(contains(r.out, "w_surjective = false"));
  std::remove(path.c_str());
}

TEST_CASE("run dispatches a scenario file by its kind field") {
  Json scen = Json::parse(read_file(scenario("s3star.json")));
  scen["kind"] = "verify-idempotents";
  const auto path = write_temp("run_kind", scen.dump());
  const auto r = run_cli("run --input " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "kind = verify-idempotents"));
  CHECK(contains(r.out, "verdict = pass"));

  Json bogus = scen;
  bogus["kind"] = "no-such-kind";
  const auto bad_path = write_temp("run_bad_kind", bogus.dump());
  const auto bad = run_cli("run --input " + bad_path);
  CHECK(bad.exit_code == 2);

  /* A scenario file whose kind disagrees with the subcommand is refused. */
  const auto clash = run_cli("tree-resolution --input " + path);
  CHECK(clash.exit_code == 2);

  std::remove(path.c_str());
  std::remove(bad_path.c_str());
}

TEST_CASE("input errors exit 2") {
  CHECK(run_cli("spherical --cartan /no/such/file.json").exit_code == 2);
  CHECK(run_cli("spherical").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
  CHECK(run_cli("davis --bogus-flag").exit_code == 2);

  const auto bad_entry = write_temp("bad_cartan", "{\"matrix\": [[2,9],[9,2]]}");
  CHECK(run_cli("spherical --cartan " + bad_entry).exit_code == 2);
  std::remove(bad_entry.c_str());

  const auto not_json = write_temp("not_json", "{this is not json");
  CHECK(run_cli("spherical --cartan " + not_json).exit_code == 2);
  std::remove(not_json.c_str());

  const auto word = run_cli("hecke mul --cartan " + scenario("a2.json") +
                            " --a \"0,x\" --b \"1\"");
  CHECK(word.exit_code == 2);
}

TEST_CASE("identical scenarios render byte-identical JSON") {
  const std::string cmd = "tree-resolution --input " + scenario("s3star.json") +
                          " --json";
  const auto a = run_cli(cmd);
  const auto b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const std::string dcmd = "davis --cartan " + scenario("a2.json") +
                           " --homology --resolution-check --json";
  const auto da = run_cli(dcmd);
  const auto db = run_cli(dcmd);
  CHECK(da.out == db.out);
}

TEST_CASE("emitted JSON reparses into an equal report") {
  for (const std::string cmd :
       {std::string("spherical --cartan ") + scenario("a2.json") + " --json",
        std::string("tree-resolution --input ") + scenario("s3star.json") +
            " --json",
        std::string("spherical-hecke --group gl:2,2 --verify-iso --json")}) {
    const auto r = run_cli(cmd);
    REQUIRE(r.exit_code == 0);
    const Report parsed = buildings::report::parse_report(r.out);
    CHECK(buildings::report::emit_json(parsed) == r.out);
    CHECK(contains(parsed.doc["digest"].get<std::string>(), "fnv1a:"));
  }
}

TEST_CASE("text and JSON renderings agree on the verdict and digest") {
  const std::string base = "tree-resolution --input " + scenario("s3star.json");
  const auto text = run_cli(base);
  const auto json = run_cli(base + " --json");
  const Report parsed = buildings::report::parse_report(json.out);
  CHECK(contains(text.out, "verdict = " + parsed.verdict()));
  CHECK(contains(text.out,
                 "digest = " + parsed.doc["digest"].get<std::string>()));
}

TEST_CASE("report layer round trips and renders homology lines") {
  Json data;
  data["homology"] = Json{{"H_0", 1}};
  const Report r = buildings::report::make_report(
      "davis", buildings::report::digest_of("x"), "info", data);
  const std::string text = buildings::report::emit_text(r);
  CHECK(contains(text, "H_0 = 1"));
  const Report back = buildings::report::parse_report(
      buildings::report::emit_json(r));
  CHECK(back == r);

  CHECK(buildings::report::digest_of("") == "fnv1a:cbf29ce484222325");
  CHECK_THROWS_AS(buildings::report::parse_report("{not json"),
                  buildings::ParseError);
  CHECK_THROWS_AS(buildings::report::parse_report("{\"schema\": \"other\"}"),
                  buildings::ParseError);
}
