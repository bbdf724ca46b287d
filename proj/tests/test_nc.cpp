#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "connexive/g3c.hpp"
#include "connexive/nc.hpp"

using namespace connexive;

namespace {

Formula f(std::string_view text) { return parse_formula(text); }

NCFile corpus(const std::string& name) {
  return read_nc_file(read_sexpr_file(std::string(CONNEXIVE_CORPUS_DIR) + "/nc/" + name));
}

}  // namespace

TEST_CASE("rule names round-trip") {
  for (const char* n : {"~~I", "~~E", "andI", "andE1", "andE2", "~andI1", "~andI2", "~andE", "orI1", "orI2", "orE",
                        "~orI", "~orE1", "~orE2", "impI", "impE", "~impI", "~impE"}) {
    auto r = parse_nc_rule(n);
    REQUIRE(r);
    CHECK(rule_name(*r) == n);
  }
  CHECK_FALSE(parse_nc_rule("->I"));
}

TEST_CASE("both contradiction trees are accepted and closed") {
  for (const char* name : {"contradiction_left.nc", "contradiction_right.nc"}) {
    const auto file = corpus(name);
    const Verdict v = check_nc(file.derivation);
    INFO(name << ": " << v.describe());
    CHECK(v.accepted);
    CHECK(open_assumptions(file.derivation).empty());
  }
  CHECK(corpus("contradiction_left.nc").derivation.conclusion == f("p & ~p -> p"));
  CHECK(corpus("contradiction_right.nc").derivation.conclusion == f("~(p & ~p -> p)"));
}

TEST_CASE("connexive theses in NC agree with G3C") {
  for (const char* name : {"at.nc", "at_prime.nc", "bt.nc", "bt_prime.nc"}) {
    const auto file = corpus(name);
    const Verdict v = check_nc(file.derivation);
    INFO(name << ": " << v.describe());
    CHECK(v.accepted);
    const auto res = prove_g3c(G3Sequent{{}, file.derivation.conclusion});
    CHECK(res.status == SearchStatus::Found);
  }
}

TEST_CASE("Nelson-style negated implication rules are rejected by name") {
  const auto elim = corpus("n4_negimp_elim.nc");
  const Verdict ve = check_nc(elim.derivation, elim.premises);
  CHECK_FALSE(ve.accepted);
  CHECK(ve.reason.find("N4-style ~-> elimination") != std::string::npos);

  const auto intro = corpus("n4_negimp_intro.nc");
  const Verdict vi = check_nc(intro.derivation, intro.premises);
  CHECK_FALSE(vi.accepted);
  CHECK(vi.reason.find("N4-style ~-> introduction") != std::string::npos);

  auto tagged = nd::infer(NCRule::N4NegImpE2, f("~q"), {nd::assume("u", f("~(p -> q)"))});
  CHECK_FALSE(check_nc(tagged, std::vector{f("~(p -> q)")}));
  // the connexive ~-> elimination itself is fine
  auto ok = nd::infer(NCRule::NegImpE, f("~q"), {nd::assume("u", f("p")), nd::assume("v", f("~(p -> q)"))});
  CHECK(check_nc(ok, std::vector{f("p"), f("~(p -> q)")}));
}

TEST_CASE("twenty single-node mutations of the contradiction trees are rejected") {
  std::size_t total = 0;
  for (const char* name : {"contradiction_left.nc", "contradiction_right.nc"}) {
    for (const auto& m : single_node_mutations(corpus(name).derivation)) {
      INFO(name << " " << m.description);
      CHECK_FALSE(check_nc(m.tree).accepted);
      ++total;
    }
  }
  CHECK(total == 20);
}

TEST_CASE("open assumptions must be declared premises") {
  auto d = nd::infer(NCRule::AndE1, f("p"), {nd::assume("u", f("p & q"))});
  const Verdict v = check_nc(d);
  CHECK_FALSE(v.accepted);
  CHECK(v.path == std::vector<std::size_t>{0});
  CHECK(check_nc(d, std::vector{f("p & q")}));
  CHECK(open_assumptions(d) == std::vector{f("p & q")});
}

TEST_CASE("discharge scoping") {
  // vacuous discharge is allowed
  auto vac = nd::infer(NCRule::ImpI, f("q -> p"), {nd::assume("u", f("p"))}, {"w"});
  CHECK(check_nc(vac, std::vector{f("p")}));

  // one label on several leaves of the same formula
  auto both = nd::infer(NCRule::ImpI, f("p -> p & p"),
                        {nd::infer(NCRule::AndI, f("p & p"), {nd::assume("u", f("p")), nd::assume("u", f("p"))})},
                        {"u"});
  CHECK(check_nc(both));

  // a label naming two formulas
  auto clash = nd::infer(NCRule::AndI, f("p & q"), {nd::assume("u", f("p")), nd::assume("u", f("q"))});
  CHECK_FALSE(check_nc(clash, std::vector{f("p"), f("q")}));

  // discharging the wrong formula
  auto wrong = nd::infer(NCRule::ImpI, f("q -> p"), {nd::assume("u", f("p"))}, {"u"});
  CHECK_FALSE(check_nc(wrong, std::vector{f("p")}));

  // the same label discharged twice
  auto inner = nd::infer(NCRule::ImpI, f("p -> p"), {nd::assume("u", f("p"))}, {"u"});
  auto twice = nd::infer(NCRule::ImpI, f("p -> p -> p"), {inner}, {"u"});
  CHECK_FALSE(check_nc(twice));

  // a leaf outside the discharging subtree stays open
  auto outside = nd::infer(NCRule::AndI, f("(p -> p) & p"), {inner, nd::assume("u", f("p"))});
  const Verdict v = check_nc(outside, std::vector{f("p")});
  CHECK_FALSE(v.accepted);
  CHECK(v.reason.find("outside") != std::string::npos);
}

TEST_CASE("case rules bind their labels in the minor premises") {
  // ~(p & q) => ~q | ~p
  auto d = nd::infer(NCRule::NegAndE, f("~q | ~p"),
                     {nd::assume("h", f("~(p & q)")),
                      nd::infer(NCRule::OrI2, f("~q | ~p"), {nd::assume("u", f("~p"))}),
                      nd::infer(NCRule::OrI1, f("~q | ~p"), {nd::assume("v", f("~q"))})},
                     {"u", "v"});
  CHECK(check_nc(d, std::vector{f("~(p & q)")}));
  auto swapped = d;
  swapped.rule.discharges = {"v", "u"};
  CHECK_FALSE(check_nc(swapped, std::vector{f("~(p & q)")}));
  auto one = d;
  one.rule.discharges = {"u"};
  CHECK_FALSE(check_nc(one, std::vector{f("~(p & q)")}));

  // p | q => q | p
  auto e = nd::infer(NCRule::OrE, f("q | p"),
                     {nd::assume("h", f("p | q")), nd::infer(NCRule::OrI2, f("q | p"), {nd::assume("a", f("p"))}),
                      nd::infer(NCRule::OrI1, f("q | p"), {nd::assume("b", f("q"))})},
                     {"a", "b"});
  CHECK(check_nc(e, std::vector{f("p | q")}));
}

TEST_CASE("the remaining rules check their shapes") {
  const std::vector<Formula> prem{f("~~p"), f("~(p | q)"), f("~p"), f("~q")};
  CHECK(check_nc(nd::infer(NCRule::NegNegE, f("p"), {nd::assume("u", f("~~p"))}), prem));
  CHECK(check_nc(nd::infer(NCRule::NegOrE2, f("~q"), {nd::assume("u", f("~(p | q)"))}), prem));
  CHECK(check_nc(nd::infer(NCRule::NegOrI, f("~(p | q)"), {nd::assume("u", f("~p")), nd::assume("v", f("~q"))}), prem));
  CHECK(check_nc(nd::infer(NCRule::NegAndI1, f("~(p & r)"), {nd::assume("u", f("~p"))}), prem));
  CHECK_FALSE(check_nc(nd::infer(NCRule::NegAndI2, f("~(p & r)"), {nd::assume("u", f("~p"))}), prem));
  CHECK_FALSE(check_nc(nd::infer(NCRule::NegOrI, f("~(p | q)"), {nd::assume("u", f("~p"))}), prem));
  CHECK_FALSE(check_nc(nd::infer(NCRule::NegNegE, f("p"), {nd::assume("u", f("~~p"))}, {"u"}), prem));
}

TEST_CASE("user connectives are refused") {
  Signature sig{{"F", 2}};
  auto d = nd::assume("u", parse_formula("F(p, q)", {&sig, false}));
  CHECK_FALSE(check_nc(d, std::vector{parse_formula("F(p, q)", {&sig, false})}));
}

TEST_CASE("derivations survive the file format") {
  for (const char* name : {"bt.nc", "n4_negimp_intro.nc"}) {
    const auto file = corpus(name);
    const auto text = write_sexpr(to_sexpr(file.derivation, file.premises));
    const auto back = read_nc_file(parse_sexpr(text));
    CHECK(back.premises == file.premises);
    CHECK(write_sexpr(to_sexpr(back.derivation, back.premises)) == text);
  }
  CHECK_THROWS_AS(read_nc_file(parse_sexpr("(derivation nc (node bogus (fml \"p\")))")), SExprError);
  CHECK_THROWS_AS(read_nc_file(parse_sexpr("(derivation g3c (assume u \"p\"))")), SExprError);
}
