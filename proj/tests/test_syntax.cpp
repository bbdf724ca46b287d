#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "connexive/battery.hpp"
#include "connexive/sexpr.hpp"
#include "connexive/syntax.hpp"

using namespace connexive;

namespace {

Formula f(std::string_view text) { return parse_formula(text); }
RExpr r(std::string_view text) { return parse_rexpr(text); }
Formula p = Formula::atom("p");
Formula q = Formula::atom("q");

}  // namespace

TEST_CASE("formulas parse into the expected trees") {
  CHECK(f("p") == p);
  CHECK(f("~(p -> ~p)") == Formula::neg(Formula::imp(p, Formula::neg(p))));
  CHECK(f("p & ~p -> p") == Formula::imp(Formula::conj(p, Formula::neg(p)), p));
  CHECK(f("p -> q -> p") == Formula::imp(p, Formula::imp(q, p)));
  CHECK(f("p | q & p") == Formula::disj(p, Formula::conj(q, p)));
}

TEST_CASE("R-expressions parse into the expected trees") {
  CHECK(r("--p") == RExpr(p));
  CHECK(r("(p, q => r)") == RExpr::sequent({p, q}, Formula::atom("r")));
  CHECK(r("-(p => q)") == RExpr::refute(RExpr::sequent({p}, q)));
  CHECK(r("(=> p)") == RExpr::sequent({}, p));
  CHECK(parse_sequent("p, -q => (=> p)") == RSequent{{p, RExpr::refute(q)}, RExpr::sequent({}, p)});
  CHECK(parse_series("").empty());
}

TEST_CASE("printing is canonical") {
  CHECK(to_string(RExpr::sequent({p, q}, Formula::atom("r"))) == "(p, q => r)");
  CHECK(to_string(RExpr::refute(Formula::neg(p))) == "-~p");
  CHECK(to_string(Formula::imp(Formula::conj(p, q), Formula::atom("r"))) == "p & q -> r");
  CHECK(to_string(RExpr::refute(Formula::conj(p, q))) == "-(p & q)");
  CHECK(to_string(f("(p -> q) -> p")) == "(p -> q) -> p");
  CHECK(to_string(parse_sequent("p, q => r")) == "p, q => r");
}

TEST_CASE("mk_neg toggles one refutation") {
  CHECK(mk_neg(p) == r("-p"));
  CHECK(mk_neg(r("-p")) == RExpr(p));
  CHECK(mk_neg(r("(p => q)")) == r("-(p => q)"));
  CHECK(RExpr::refute(RExpr::refute(p)) == RExpr(p));
}

TEST_CASE("R-degree counts sequent nesting") {
  CHECK(r_degree(p) == 0);
  CHECK(r_degree(f("~(p -> q)")) == 0);
  CHECK(r_degree(r("-(p => q)")) == 1);
  CHECK(r_degree(r("((p => q) => r)")) == 2);
  CHECK(r_degree(r("(p, -(q => (=> r)) => p)")) == 3);
}

TEST_CASE("subformulas and formula components") {
  CHECK(r_subformulas(p) == std::set<RExpr>{p});
  CHECK(r_subformulas(r("-(p => q)")) == std::set<RExpr>{r("-(p => q)"), r("(p => q)"), p, q});
  CHECK(formula_components(r("-(p => q)")) == std::set<Formula>{p, q});
  CHECK(formula_components(r("(-p => (q => r))")) == std::set<Formula>{p, q, f("r")});
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_formula("p & & q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_formula("F(p)"), ParseError);
  Signature sig{{"F", 2}};
  CHECK(parse_formula("F(p, q)", {&sig, false}) == Formula::app("F", {p, q}));
  CHECK_THROWS_AS(parse_formula("F(p)", {&sig, false}), ParseError);
  CHECK_THROWS_AS(parse_formula("A1"), ParseError);
  CHECK(parse_formula("A1", {nullptr, true}) == placeholder(1));
  CHECK_THROWS_AS(parse_rexpr("(p => q"), ParseError);
  CHECK_THROWS_AS(parse_formula("-p"), ParseError);
}

TEST_CASE("placeholders") {
  CHECK(placeholder_index(placeholder(3)) == 3);
  CHECK(placeholder_index(p) == 0);
  CHECK(placeholder_index(Formula::atom("A0")) == 0);
}

TEST_CASE("seeded round-trip, involution and degree stability") {
  Rng rng(kSyntaxSeed);
  for (int i = 0; i < 500; ++i) {
    const Formula x = random_formula(rng, 6);
    INFO(to_string(x));
    CHECK(parse_formula(to_string(x)) == x);
  }
  for (int i = 0; i < 500; ++i) {
    const RExpr s = random_rexpr(rng, 6);
    INFO(to_string(s));
    const RExpr back = parse_rexpr(to_string(s));
    CHECK(back == s);
    CHECK(mk_neg(mk_neg(s)) == s);
    CHECK(r_degree(back) == r_degree(s));
    CHECK(r_degree(mk_neg(s)) == r_degree(s));
  }
}

TEST_CASE("structural order and hashing agree with equality") {
  CHECK(f("p & q") == f("p & q"));
  CHECK(f("p & q").hash() == f("p & q").hash());
  CHECK(f("p & q") != f("q & p"));
  CHECK((f("p") <=> f("q")) != std::strong_ordering::equal);
}

TEST_CASE("s-expressions read and write") {
  const SExpr e = parse_sexpr("(node Rf (seq \"p\" \"p\")) ; trailing comment");
  CHECK(e.is_form("node"));
  CHECK(e.items[1].is_atom("Rf"));
  CHECK(e.items[2].items[1].is_string());
  CHECK(parse_sexpr(write_sexpr(e)).items.size() == 3);
  CHECK(parse_sexpr("(a \"x \\\"y\\\"\")").items[1].text == "x \"y\"");
  CHECK_THROWS_AS(parse_sexpr("(a b"), SExprError);
  CHECK_THROWS_AS(parse_sexpr("(a) (b)"), SExprError);
}
