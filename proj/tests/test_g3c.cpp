#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "connexive/g3c.hpp"

using namespace connexive;

namespace {

G3Sequent seq(std::string_view text) { return parse_g3_sequent(text); }

SearchStatus status_of(std::string_view text, std::span<const G3Sequent> hyps = {}) {
  auto r = prove_g3c(seq(text), hyps);
  if (r.derivation) {
    auto v = check_g3c(*r.derivation, hyps);
    INFO(v.describe());
    CHECK(v.accepted);
    CHECK(r.derivation->conclusion == seq(text));
  }
  return r.status;
}

Formula f(std::string_view text) { return parse_formula(text); }

}  // namespace

TEST_CASE("rule names round-trip and match the shipped table") {
  const char* names[] = {"Rf",  "Rf~",    "Rand",   "Land",  "Ror1", "Ror2",  "Lor",
                         "Rimp", "Limp",  "R~~",    "L~~",   "R~and1", "R~and2", "L~and",
                         "R~or", "L~or",  "R~imp",  "L~imp", "Hyp",  "Cut"};
  for (const char* n : names) {
    auto r = parse_g3_rule(n);
    REQUIRE(r);
    CHECK(rule_name(*r) == n);
  }
  CHECK_FALSE(parse_g3_rule("R->"));
}

TEST_CASE("checker accepts an axiom and the contradiction tree") {
  G3Derivation ax{G3Rule::Rf, seq("q, p => p"), {}};
  CHECK(check_g3c(ax));

  // => (p & ~p) -> p  by Rimp over Land over Rf
  G3Derivation leaf{G3Rule::Rf, seq("p, ~p => p"), {}};
  G3Derivation land{G3Rule::LAnd, seq("p & ~p => p"), {leaf}};
  G3Derivation root{G3Rule::RImp, seq("=> p & ~p -> p"), {land}};
  CHECK(check_g3c(root));
}

TEST_CASE("checker rejects unproven leaves and names the node") {
  G3Derivation open{G3Rule::Rf, seq("=> p"), {}};
  G3Derivation root{G3Rule::RNegNeg, seq("=> ~~p"), {open}};
  auto v = check_g3c(root);
  CHECK_FALSE(v.accepted);
  CHECK(v.path == std::vector<std::size_t>{0});
}

TEST_CASE("checker uses multisets and repeats the principal of Limp") {
  // p, p -> q => q
  G3Derivation left{G3Rule::Rf, seq("p -> q, p => p"), {}};
  G3Derivation right{G3Rule::Rf, seq("q, p => q"), {}};
  G3Derivation ok{G3Rule::LImp, seq("p, p -> q => q"), {left, right}};
  CHECK(check_g3c(ok));

  G3Derivation dropped{G3Rule::Rf, seq("p => p"), {}};
  G3Derivation bad{G3Rule::LImp, seq("p, p -> q => q"), {dropped, right}};
  CHECK_FALSE(check_g3c(bad));

  G3Derivation bad_rf{G3Rule::Rf, seq("p, p => ~p"), {}};
  CHECK_FALSE(check_g3c(bad_rf));
}

TEST_CASE("Hyp and Cut are refused outside hypothesis mode") {
  G3Derivation hyp{G3Rule::Hyp, seq("p => q"), {}};
  CHECK_FALSE(check_g3c(hyp));
  const std::vector<G3Sequent> hyps{seq("p => q")};
  CHECK(check_g3c(hyp, hyps));
  G3Derivation weaker{G3Rule::Hyp, seq("r, p => q"), {}};
  CHECK(check_g3c(weaker, hyps));
}

TEST_CASE("connexive theses are provable") {
  CHECK(status_of("=> ~(~p -> p)") == SearchStatus::Found);
  CHECK(status_of("=> ~(p -> ~p)") == SearchStatus::Found);
  CHECK(status_of("=> (p -> q) -> ~(p -> ~q)") == SearchStatus::Found);
  CHECK(status_of("=> (p -> ~q) -> ~(p -> q)") == SearchStatus::Found);
}

TEST_CASE("non-theorems are refuted by exhausted search") {
  CHECK(status_of("=> (p -> q) -> (q -> p)") == SearchStatus::Unprovable);
  CHECK(status_of("p, ~p => q") == SearchStatus::Unprovable);
  CHECK(status_of("~(p -> q) => p") == SearchStatus::Unprovable);
  CHECK(status_of("=> p | ~p") == SearchStatus::Unprovable);
  CHECK(status_of("=> ((p -> q) -> p) -> p") == SearchStatus::Unprovable);
}

TEST_CASE("a formula and its negation are both theorems") {
  CHECK(status_of("=> p & ~p -> p") == SearchStatus::Found);
  CHECK(status_of("=> ~(p & ~p -> p)") == SearchStatus::Found);
}

TEST_CASE("intuitionistic and strong-negation laws") {
  CHECK(status_of("p -> q, q -> r => p -> r") == SearchStatus::Found);
  CHECK(status_of("=> ~(p & q) -> ~p | ~q") == SearchStatus::Found);
  CHECK(status_of("=> ~~p -> p") == SearchStatus::Found);
  CHECK(status_of("p, ~(p -> q) => ~q") == SearchStatus::Found);
  CHECK(status_of("~(p -> q) => ~q") == SearchStatus::Unprovable);
  CHECK(status_of("p, ~(p -> q) => p -> ~q") == SearchStatus::Found);
  CHECK(status_of("=> ((p -> q) -> q) -> p | q") == SearchStatus::Unprovable);
}

TEST_CASE("budget exhaustion is reported distinctly") {
  SearchBudget tiny{1, std::chrono::milliseconds(30'000)};
  auto r = prove_g3c(seq("=> (p -> q) -> (q -> p)"), {}, tiny);
  CHECK(r.status == SearchStatus::BudgetExceeded);
  CHECK_FALSE(r.derivation);
}

TEST_CASE("identity derivations check for every connective shape") {
  const char* cases[] = {"p", "~p", "p -> q", "~(p -> q)", "p & ~q", "~(p & q)",
                         "p | q", "~(p | ~q)", "~~(p -> q & r)", "(p -> q) -> ~(r | ~s)"};
  for (const char* c : cases) {
    auto d = identity_derivation(f(c), {f("r"), f("~q")});
    auto v = check_g3c(d);
    INFO(c << ": " << v.describe());
    CHECK(v.accepted);
  }
  CHECK(identity_derivation(f("p")).rule == G3Rule::Rf);
  CHECK(identity_derivation(f("~p")).rule == G3Rule::RfNeg);
  auto imp = identity_derivation(f("p -> q"));
  CHECK(imp.rule == G3Rule::RImp);
  CHECK(imp.children[0].rule == G3Rule::LImp);
}

TEST_CASE("hypothesis mode: a goal follows from itself and from weaker hypotheses") {
  const char* goals[] = {"p => q", "p & q => ~r", "~(p -> q), r => s | t", "=> p -> q"};
  for (const char* g : goals) {
    const std::vector<G3Sequent> hyps{seq(g)};
    CHECK(status_of(g, hyps) == SearchStatus::Found);
  }
  const std::vector<G3Sequent> hyps{seq("=> p"), seq("=> q")};
  CHECK(status_of("=> p & q", hyps) == SearchStatus::Found);
  CHECK(status_of("=> r", hyps) == SearchStatus::Unprovable);
}

TEST_CASE("hypothesis mode respects hypotheses on compound principals") {
  // p & q in a hypothesis context must not be decomposed eagerly
  const std::vector<G3Sequent> hyps{seq("p & q => r")};
  CHECK(status_of("p & q => r | s", hyps) == SearchStatus::Found);
  // cut on a hypothesis succedent
  const std::vector<G3Sequent> chain{seq("p => q"), seq("q => r")};
  CHECK(status_of("p => r", chain) == SearchStatus::Found);
}

TEST_CASE("hypothesis mode cuts on context members a left rule would consume") {
  // the goal needs ~~p twice: once unfolded to p, once kept for the hypothesis
  const std::vector<G3Sequent> hyps{seq("p, ~~p => q"), seq("~p, ~~p => q")};
  CHECK(status_of("~(~p & p | ~p) => q", hyps) == SearchStatus::Found);
}

TEST_CASE("monotonicity under sampled weakening") {
  const char* theorems[] = {"=> ~(~p -> p)", "p -> q, p => q", "~(p | q) => ~p & ~q", "=> p & ~p -> p"};
  const char* extras[] = {"r", "~p", "q -> p", "~(p -> q)", "p | r"};
  for (const char* t : theorems) {
    for (const char* e : extras) {
      auto g = seq(t);
      g.context.push_back(f(e));
      auto r = prove_g3c(g);
      CHECK(r.status == SearchStatus::Found);
      REQUIRE(r.derivation);
      CHECK(check_g3c(*r.derivation));
    }
  }
}

TEST_CASE("cut closure adds one negation to each subformula") {
  const std::vector<G3Sequent> s{seq("p => p & q")};
  auto cl = cut_closure(s);
  CHECK(cl.size() == 6);  // p, q, p&q and their negations
}

TEST_CASE("derivations survive the file format") {
  auto r = prove_g3c(seq("p, ~(p -> q) => ~q & (p | r)"));
  REQUIRE(r.derivation);
  const std::vector<G3Sequent> hyps{seq("p => q")};
  auto text = write_sexpr(to_sexpr(*r.derivation, hyps));
  auto back = read_g3_file(parse_sexpr(text));
  CHECK(back.hypotheses == hyps);
  CHECK(write_sexpr(to_sexpr(back.derivation, back.hypotheses)) == text);
  CHECK(check_g3c(back.derivation));
  CHECK_THROWS_AS(read_g3_file(parse_sexpr("(derivation g3c (node Bogus (seq \"\" \"p\")))")), SExprError);
}
