#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "connexive/cli.hpp"
#include "connexive/connectives.hpp"
#include "connexive/g3c.hpp"
#include "connexive/scinf.hpp"

using namespace connexive;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "connex_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

const std::string kCorpus = CONNEXIVE_CORPUS_DIR;
const std::string kDefs = "connective F/2 { group { A1 } group { -A2 } }\n";

}  // namespace

TEST_CASE("parse reprints and reports the R-degree") {
  auto r = run({"parse", "--p"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "p\ndegree 0\n");
  r = run({"parse", "-((p => q) => r)"});
  CHECK(r.out == "-((p => q) => r)\ndegree 2\n");
  r = run({"parse", "p &"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("prove follows the exit contract") {
  auto r = run({"prove", "=> ~(p -> ~p)"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("found", 0) == 0);
  r = run({"prove", "=> (p -> q) -> (q -> p)"});
  CHECK(r.code == kExitNegative);
  CHECK(r.out.rfind("unprovable", 0) == 0);
  r = run({"prove", "=> (p -> q) -> (q -> p)", "--budget", "1"});
  CHECK(r.code == kExitBudget);
  r = run({"prove"});
  CHECK(r.code == kExitUsage);
  r = run({"nonsense"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("prove with hypotheses") {
  auto r = run({"prove", "p => r", "--hyp", "p => q", "--hyp", "q => r"});
  CHECK(r.code == kExitOk);
  r = run({"prove", "p => r", "--hyp", "p => q"});
  CHECK(r.code == kExitNegative);
}

TEST_CASE("emitted derivations are accepted by check") {
  const fs::path out = scratch() / "thesis.g3c";
  auto r = run({"prove", "=> (p -> ~q) -> ~(p -> q)", "--emit", out.string()});
  REQUIRE(r.code == kExitOk);
  r = run({"check", out.string(), "--calculus", "g3c"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "accepted\n");
  r = run({"check", out.string(), "--calculus", "nc"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("check reports rejections with exit 1") {
  const auto bad = write("bad.g3c", "(derivation g3c (node Rf (seq \"q\" \"p\")))");
  auto r = run({"check", bad.string(), "--calculus", "g3c"});
  CHECK(r.code == kExitNegative);
  CHECK(r.out.rfind("rejected at root", 0) == 0);
  r = run({"check", (scratch() / "missing.g3c").string(), "--calculus", "g3c"});
  CHECK(r.code == kExitUsage);
  r = run({"check", bad.string(), "--calculus", "lk"});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("check nc on the golden corpus") {
  auto r = run({"check", kCorpus + "/nc/contradiction_right.nc", "--calculus", "nc"});
  CHECK(r.code == kExitOk);
  r = run({"check", kCorpus + "/nc/n4_negimp_elim.nc", "--calculus", "nc"});
  CHECK(r.code == kExitNegative);
  CHECK(r.out.find("N4-style") != std::string::npos);
}

TEST_CASE("check scinf with an env header") {
  const auto defs = write("f.conn", kDefs);
  const Registry env(load_definitions(kDefs));
  auto d = sc::node(SCRule::schema_i("F", 1), parse_sequent("p => F(p, q)", {&env.signature(), false}),
                    {sc::rf(parse_rexpr("p"))});
  const auto file = write("f.sc", write_sexpr(to_sexpr(d, EnvHeader{"f.conn", env.content_hash()})));
  auto r = run({"check", file.string(), "--calculus", "scinf", "--defs", defs.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("env " + defs.string() + " sha256 " + env.content_hash()) == 0);

  const auto stale = write("stale.sc", write_sexpr(to_sexpr(d, EnvHeader{"f.conn", "00"})));
  r = run({"check", stale.string(), "--calculus", "scinf", "--defs", defs.string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("mismatch") != std::string::npos);
}

TEST_CASE("define prints rules and the defining formula") {
  const auto defs = write("f.conn", kDefs);
  auto r = run({"define", defs.string(), "--formula"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("F(A1, A2) := A1 | ~A2") != std::string::npos);
  CHECK(r.out.find("IV(F)") == std::string::npos);
  r = run({"define", defs.string(), "--rules"});
  CHECK(r.out.find("III(F,1,1): D => -A1  ;  D => A2  ==>  D => -F(A1, A2)") != std::string::npos);
  const auto broken = write("broken.conn", "connective G/1 { group { p } }");
  CHECK(run({"define", broken.string()}).code == kExitUsage);
}

TEST_CASE("verify is deterministic without timings") {
  const auto defs = write("f.conn", kDefs);
  const auto a = run({"verify", defs.string(), "--no-timings"});
  const auto b = run({"verify", defs.string(), "--no-timings"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("result: pass") != std::string::npos);
  const auto j = run({"verify", defs.string(), "--json", "--no-timings"});
  CHECK(j.out.rfind("{\"connective\":\"F\"", 0) == 0);
}

TEST_CASE("theses runs selected criteria") {
  auto r = run({"theses", "--only", "1", "2", "8", "--no-timings", "--corpus", kCorpus});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[pass] 1 ") == 0);
  CHECK(r.out.find("[pass] 8 ") != std::string::npos);
  CHECK(r.out == run({"theses", "--only", "1", "2", "8", "--no-timings", "--corpus", kCorpus}).out);
}
