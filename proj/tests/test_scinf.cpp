#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "connexive/scinf.hpp"

using namespace connexive;

namespace {

RExpr r(std::string_view text) { return parse_rexpr(text); }
RSequent rs(std::string_view text) { return parse_sequent(text); }

void require_accepts(const SCDerivation& d, const Registry& env = {}) {
  auto v = check_scinf(d, env);
  INFO(v.describe());
  REQUIRE(v.accepted);
}

/// Every single-node change of rule tag or conclusion must be caught.
void mutations_rejected(const SCDerivation& d) {
  std::size_t count = 0;
  std::function<void(SCDerivation&)> visit;
  SCDerivation copy = d;
  visit = [&](SCDerivation& n) {
    const SCRule saved_rule = n.rule;
    const RSequent saved = n.conclusion;
    for (SCKind k : {SCKind::RF, SCKind::WL, SCKind::Cut, SCKind::NegL, SCKind::AndR, SCKind::ImpRStar}) {
      if (k == saved_rule.kind) continue;
      n.rule = k;
      CHECK_FALSE(check_scinf(copy).accepted);
      ++count;
    }
    n.rule = saved_rule;
    n.conclusion.succedent = r("zz");
    CHECK_FALSE(check_scinf(copy).accepted);
    n.conclusion = saved;
    n.conclusion.context.push_back(r("zz"));
    CHECK_FALSE(check_scinf(copy).accepted);
    n.conclusion = saved;
    for (auto& c : n.children) visit(c);
  };
  visit(copy);
  CHECK(count > 0);
  CHECK(check_scinf(copy).accepted);
}

}  // namespace

TEST_CASE("RF accepts any R-expression") {
  require_accepts(sc::rf(r("(p => q)")));
  SCDerivation bad = sc::node(SCKind::RF, rs("q => p"));
  CHECK_FALSE(check_scinf(bad));
}

TEST_CASE("RI- uses the --S convention") {
  auto closed = sc::node(SCKind::RIMinus, rs("-q => -(p => q)"),
                         {sc::adjust(sc::rf(r("-q")), {r("-q"), r("p")})});
  require_accepts(closed);
  auto flip = sc::node(SCKind::RIMinus, rs("q => -(p => -q)"),
                       {sc::adjust(sc::rf(r("q")), {r("q"), r("p")})});
  require_accepts(flip);
}

TEST_CASE("structural rules check their exact shapes") {
  auto base = sc::rf(r("p"));
  require_accepts(sc::weaken(base, r("q")));
  auto two = sc::weaken(base, r("q"));
  require_accepts(sc::swap(two, 0));
  require_accepts(sc::contract(sc::weaken(base, r("p"))));
  // PL with an unchanged context is refused
  CHECK_FALSE(check_scinf(sc::node(SCKind::PL, rs("p, q => p"), {two})));
  // WL may only add at the end
  CHECK_FALSE(check_scinf(sc::node(SCKind::WL, rs("q, p => p"), {base})));
  CHECK_THROWS_AS(sc::contract(base), std::logic_error);
}

TEST_CASE("adjust reaches any target containing the premise members") {
  auto d = sc::adjust(sc::rf(r("p")), {r("q"), r("p"), r("-(r => s)"), r("p")});
  require_accepts(d);
  CHECK(d.conclusion == rs("q, p, -(r => s), p => p"));
  auto shrunk = sc::adjust(d, {r("-(r => s)"), r("q"), r("p")});
  require_accepts(shrunk);
  CHECK(shrunk.conclusion == rs("-(r => s), q, p => p"));
  CHECK_THROWS_AS(sc::adjust(d, {r("p")}), std::logic_error);
}

TEST_CASE("LI+ reads G => D as one premise per member of D") {
  // (p, q => r), p, q => r  from  [p,q] => p ; [p,q] => q ; [p,q], r => r
  std::vector<RExpr> g{r("p"), r("q")};
  auto prem1 = sc::identity(r("p"), {r("q")});
  prem1 = sc::adjust(prem1, g);
  auto prem2 = sc::identity(r("q"), {r("p")});
  auto prem3 = sc::identity(r("r"), g);
  auto li = sc::node(SCKind::LIPlus, rs("p, q, (p, q => r) => r"), {prem1, prem2, prem3});
  require_accepts(li);
  auto missing = sc::node(SCKind::LIPlus, rs("p, q, (p, q => r) => r"), {prem1, prem3});
  CHECK_FALSE(check_scinf(missing));
}

TEST_CASE("primitive table has eighteen rules with the printed premises") {
  CHECK(primitive_rules().size() == 18);
  CHECK(starred_rules().size() == 4);
  CHECK(to_string(primitive_rules()[0]) == "~L: D, -A1 => T  ==>  D, ~A1 => T");
  CHECK(to_string(primitive_rules()[17]) == "impR-: D => -(A1 => A2)  ==>  D => -(A1 -> A2)");
  for (const auto& p : primitive_rules()) CHECK(parse_sc_kind(p.name));
}

TEST_CASE("derive_starred builds the two-node fragments") {
  // impR*: D, A => B  gives  D => A -> B
  auto rstar = derive_starred(SCKind::ImpRStar, {sc::adjust(sc::rf(r("q")), {r("q"), r("p")})});
  require_accepts(rstar);
  CHECK(rstar.conclusion == rs("q => p -> q"));
  CHECK(rstar.rule.kind == SCKind::ImpR);
  CHECK(rstar.children[0].rule.kind == SCKind::RIPlus);

  // impR*-: D, A => -B  gives  D => -(A -> B)
  auto prem = sc::adjust(sc::rf(r("-q")), {r("-q"), r("p")});
  auto rm = derive_starred(SCKind::ImpRStarm, {prem});
  require_accepts(rm);
  CHECK(rm.conclusion == rs("-q => -(p -> q)"));

  // impL*: D => A ; D, B => S  gives  D, A -> B => S
  auto left = sc::rf(r("p"));
  auto right = sc::adjust(sc::rf(r("q")), {r("p"), r("q")});
  auto lstar = derive_starred(SCKind::ImpLStar, {left, right});
  require_accepts(lstar);
  CHECK(lstar.conclusion == rs("p, p -> q => q"));

  auto rightm = sc::adjust(sc::rf(r("-q")), {r("p"), r("-q")});
  auto lm = derive_starred(SCKind::ImpLStarm, {left, rightm});
  require_accepts(lm);
  CHECK(lm.conclusion == rs("p, -(p -> q) => -q"));
}

TEST_CASE("starred rules are also accepted as single nodes") {
  auto d = sc::apply(SCKind::ImpRStar, {sc::adjust(sc::rf(r("q")), {r("q"), r("p")})}, rs("q => p -> q"));
  require_accepts(d);
}

TEST_CASE("the implication and negation equivalences have witnesses") {
  // ~A <=>s -A: ~p => -p, -p => ~p, -~p => p, p => -~p
  require_accepts(sc::apply(SCKind::NegL, {sc::rf(r("-p"))}, rs("~p => -p")));
  require_accepts(sc::apply(SCKind::NegR, {sc::rf(r("-p"))}, rs("-p => ~p")));
  require_accepts(sc::apply(SCKind::NegLm, {sc::rf(r("p"))}, rs("-~p => p")));
  require_accepts(sc::apply(SCKind::NegRm, {sc::rf(r("p"))}, rs("p => -~p")));
  // A -> B <=>s (A => B)
  require_accepts(sc::apply(SCKind::ImpL, {sc::rf(r("(p => q)"))}, rs("p -> q => (p => q)")));
  require_accepts(sc::apply(SCKind::ImpR, {sc::rf(r("(p => q)"))}, rs("(p => q) => p -> q")));
  require_accepts(sc::apply(SCKind::ImpLm, {sc::rf(r("-(p => q)"))}, rs("-(p -> q) => -(p => q)")));
  require_accepts(sc::apply(SCKind::ImpRm, {sc::rf(r("-(p => q)"))}, rs("-(p => q) => -(p -> q)")));
}

TEST_CASE("embedding of G3C proofs is accepted") {
  const char* goals[] = {
      "=> ~(~p -> p)",
      "=> ~(p -> ~p)",
      "=> (p -> q) -> ~(p -> ~q)",
      "=> (p -> ~q) -> ~(p -> q)",
      "=> p & ~p -> p",
      "=> ~(p & ~p -> p)",
      "p -> q, q -> r => p -> r",
      "=> ~(p & q) -> ~p | ~q",
      "=> ~~p -> p",
      "~(p | q) => ~p & ~q",
      "p, ~(p -> q) => ~q",
      "p, p, p -> q => q & q",
      "~(p & q), r => ~q | ~p",
      "~~(p | q) => q | p",
  };
  for (const char* g : goals) {
    auto res = prove_g3c(parse_g3_sequent(g));
    REQUIRE(res.derivation);
    auto e = embed_g3c(*res.derivation);
    INFO(g);
    require_accepts(e);
    CHECK(e.conclusion == to_rsequent(res.derivation->conclusion));
  }
}

TEST_CASE("single-node mutations of accepted trees are rejected") {
  auto res = prove_g3c(parse_g3_sequent("=> (p -> ~q) -> ~(p -> q)"));
  REQUIRE(res.derivation);
  mutations_rejected(embed_g3c(*res.derivation));
  mutations_rejected(derive_starred(SCKind::ImpRStar, {sc::adjust(sc::rf(r("q")), {r("q"), r("p")})}));
}

TEST_CASE("schema rules are checked against the environment") {
  Registry env;
  env.add(load_definition("connective F/2 { group { A1 } group { -A2 } }"));
  const ParseOptions opts{&env.signature(), false};
  auto s = [&](std::string_view t) { return parse_sequent(t, opts); };
  auto fp = sc::node(SCRule::schema_i("F", 1), s("p => F(p, q)"), {sc::rf(r("p"))});
  require_accepts(fp, env);
  auto wrong_group = sc::node(SCRule::schema_i("F", 2), s("p => F(p, q)"), {sc::rf(r("p"))});
  CHECK_FALSE(check_scinf(wrong_group, env));
  auto bad_index = sc::node(SCRule::schema_i("F", 3), s("p => F(p, q)"), {sc::rf(r("p"))});
  CHECK_FALSE(check_scinf(bad_index, env));
  CHECK_FALSE(check_scinf(fp));  // unknown connective without env
  auto sel = sc::node(SCRule::schema_iii("F", {1, 1}), s("-p, q => -F(p, q)"),
                      {sc::adjust(sc::rf(r("-p")), {r("-p"), r("q")}), sc::adjust(sc::rf(r("q")), {r("-p"), r("q")})});
  require_accepts(sel, env);
  auto bad_sel = sel;
  bad_sel.rule = SCRule::schema_iii("F", {1, 2});
  CHECK_FALSE(check_scinf(bad_sel, env));
}

TEST_CASE("derivations survive the file format with an env header") {
  auto res = prove_g3c(parse_g3_sequent("=> ~(p -> ~p)"));
  auto e = embed_g3c(*res.derivation);
  const EnvHeader h{"defs.conn", "abc123"};
  auto text = write_sexpr(to_sexpr(e, h));
  auto back = read_sc_file(parse_sexpr(text));
  REQUIRE(back.env);
  CHECK(back.env->path == "defs.conn");
  CHECK(back.env->hash == "abc123");
  CHECK(write_sexpr(to_sexpr(back.derivation, back.env)) == text);
  CHECK(check_scinf(back.derivation));

  Registry env;
  env.add(load_definition("connective F/2 { group { A1 } group { -A2 } }"));
  auto schema = sc::node(SCRule::schema_iii("F", {1, 1}), RSequent{{}, r("p")});
  auto schema_text = write_sexpr(to_sexpr(schema));
  CHECK(schema_text.find("(III F 1 1)") != std::string::npos);
  CHECK(read_sc_file(parse_sexpr(schema_text), env).derivation.rule == schema.rule);
}
