#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "connexive/witnesses.hpp"

using namespace connexive;

namespace {

RExpr r(std::string_view text) { return parse_rexpr(text); }

void overline_ok(std::string_view text) {
  const RExpr s = r(text);
  const auto w = overline_witness(s);
  const Verdict v = check_witness(w, overline(s), s);
  INFO(text << ": " << v.describe());
  CHECK(v.accepted);
}

Registry registry_of(std::string_view defs) { return Registry(load_definitions(defs)); }

}  // namespace

TEST_CASE("overline witness of an atom is four RF nodes") {
  const auto w = overline_witness(r("p"));
  CHECK(w.fwd.rule.kind == SCKind::RF);
  CHECK(w.fwd.conclusion == parse_sequent("p => p"));
  CHECK(w.fwd_neg.conclusion == parse_sequent("-p => -p"));
}

TEST_CASE("overline witnesses for refutations and sequent expressions") {
  overline_ok("-p");         // ~p <=>s -p
  overline_ok("(p => q)");   // p -> q <=>s (p => q)
  overline_ok("(=> p)");
  overline_ok("-(p => q)");
  overline_ok("(p, q => r)");
  overline_ok("(p, p => p)");
  overline_ok("(-p, (q => -r) => -(p, q => r))");
  overline_ok("((=> p), -(=> -q) => (=> q))");
  overline_ok("-(-(p & q), ~p | q => ~(p -> q))");
}

TEST_CASE("the ends of an overline witness are the strict-equivalence sequents") {
  const RExpr s = r("-(p => q)");
  const auto w = overline_witness(s);
  CHECK(w.fwd.conclusion == parse_sequent("~(p -> q) => -(p => q)"));
  CHECK(w.bwd.conclusion == parse_sequent("-(p => q) => ~(p -> q)"));
  CHECK(w.fwd_neg.conclusion == parse_sequent("(p => q) => -~(p -> q)"));
  CHECK(w.bwd_neg.conclusion == parse_sequent("-~(p -> q) => (p => q)"));
}

TEST_CASE("check_witness rejects swapped derivations") {
  const RExpr s = r("(p => q)");
  auto w = overline_witness(s);
  std::swap(w.fwd, w.bwd);
  const Verdict v = check_witness(w, overline(s), s);
  CHECK_FALSE(v.accepted);
  CHECK(v.path == std::vector<std::size_t>{0});
}

TEST_CASE("definition witnesses for the standard connectives and a mixed one") {
  const char* defs = R"(
    connective neg/1 { group { -A1 } }
    connective and/2 { group { A1; A2 } }
    connective or/2 { group { A1 } group { A2 } }
    connective imp/2 { group { (A1 => A2) } }
    connective F/2 { group { A1 } group { -A2 } }
    connective G/3 { group { A1; (A2 => -A3) } group { -(A1 => A3); A2 } }
  )";
  const Registry env = registry_of(defs);
  for (const auto& def : env.definitions()) {
    const auto w = definition_witness(def);
    const Verdict v = check_witness(w, applied(def), applied_defining_formula(def), env);
    INFO(def.name << ": " << v.describe());
    CHECK(v.accepted);
  }
  CHECK(to_string(applied_defining_formula(env.at("F"))) == "p1 | ~p2");
  CHECK(to_string(applied_defining_formula(env.at("and"))) == "p1 & p2");
  CHECK(to_string(applied_defining_formula(env.at("imp"))) == "p1 -> p2");
}

TEST_CASE("definition witness uses the connective's own schema rules") {
  const Registry env = registry_of("connective F/2 { group { A1 } group { -A2 } }");
  const auto w = definition_witness(env.at("F"));
  CHECK(w.fwd.rule == SCRule::schema_ii("F"));
  CHECK(w.bwd_neg.rule == SCRule::schema_iv("F"));
  CHECK(w.fwd.conclusion == parse_sequent("F(p1, p2) => p1 | ~p2", {&env.signature(), false}));
}

TEST_CASE("selection dual of the defining formula") {
  const Registry env = registry_of("connective H/2 { group { A1; A2 } group { -A1 } }");
  CHECK(to_string(applied_dual_formula(env.at("H"))) == "~p1 & ~~p1 | ~p2 & ~~p1");
  for (const auto& g : dual_sequents(env.at("H"))) {
    auto res = prove_g3c(g);
    CHECK(res.status == SearchStatus::Found);
  }
}

TEST_CASE("verify_definition passes on well-formed definitions") {
  const char* defs = R"(
    connective or/2 { group { A1 } group { A2 } }
    connective F/2 { group { A1 } group { -A2 } }
    connective K/2 { group { -(A1 => -A2) } group { (A2 => A1); -A1 } }
  )";
  const Registry env = registry_of(defs);
  for (const auto& def : env.definitions()) {
    const auto report = verify_definition(def, env);
    INFO(to_text(report, false));
    CHECK(report.passed());
  }
}

TEST_CASE("report formats are deterministic without timings") {
  const Registry env = registry_of("connective F/2 { group { A1 } group { -A2 } }");
  const auto a = verify_definition(env.at("F"), env);
  const auto b = verify_definition(env.at("F"), env);
  CHECK(to_text(a, false) == to_text(b, false));
  CHECK(to_json_lines(a, false) == to_json_lines(b, false));
  const std::string text = to_text(a, false);
  CHECK(text.find("pass  derived rule III(F,1,1)") != std::string::npos);
  CHECK(text.find("ms)") == std::string::npos);
  const std::string json = to_json_lines(a, false);
  CHECK(json.find(R"j({"connective":"F","name":"derived rule I(F,1)","status":"pass"})j") != std::string::npos);
}
