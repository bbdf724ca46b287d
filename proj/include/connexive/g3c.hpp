#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connexive/derivation.hpp"
#include "connexive/sexpr.hpp"
#include "connexive/syntax.hpp"

namespace connexive {

/// Γ => C over formulas. The context is a multiset; its order is presentation only.
struct G3Sequent {
  std::vector<Formula> context;
  Formula succedent;

  friend bool operator==(const G3Sequent&, const G3Sequent&) = default;
};

enum class G3Rule {
  Rf,
  RfNeg,
  RAnd,
  LAnd,
  ROr1,
  ROr2,
  LOr,
  RImp,
  LImp,
  RNegNeg,
  LNegNeg,
  RNegAnd1,
  RNegAnd2,
  LNegAnd,
  RNegOr,
  LNegOr,
  RNegImp,
  LNegImp,
  Hyp,          // hypothesis mode only
  AnalyticCut,  // hypothesis mode only
};

std::string_view rule_name(G3Rule r);
std::optional<G3Rule> parse_g3_rule(std::string_view name);

using G3Derivation = Derivation<G3Rule, G3Sequent>;

std::string to_string(const G3Sequent& s);
G3Sequent parse_g3_sequent(std::string_view text, const ParseOptions& opts = {});
/// Converts an R-sequent whose members are all formulas.
G3Sequent to_g3(const RSequent& s);
RSequent to_rsequent(const G3Sequent& s);

/// Checks every node against its rule; multiset contexts. Hyp leaves and
/// AnalyticCut nodes are admitted only against `hypotheses`.
Verdict check_g3c(const G3Derivation& d, std::span<const G3Sequent> hypotheses = {});

/// The principal formula of a left-rule node whose shape checks, if any.
std::optional<Formula> principal_formula(const G3Derivation& node);

/// Closure used for analytic cuts: subformulas of the sequents plus their ~-prefixed forms.
std::vector<Formula> cut_closure(std::span<const G3Sequent> sequents);

struct SearchBudget {
  std::size_t max_visited = 1'000'000;
  std::chrono::milliseconds time_limit{30'000};
};

enum class SearchStatus { Found, Unprovable, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::Unprovable;
  std::optional<G3Derivation> derivation;
  std::size_t visited = 0;
};

std::string_view to_string(SearchStatus s);

/// Backward proof search. Without hypotheses the answer is a decision for the
/// cut-free calculus. With hypotheses, leaves may close on a hypothesis up to
/// weakening and cuts on hypothesis members are tried last.
SearchResult prove_g3c(const G3Sequent& goal, std::span<const G3Sequent> hypotheses = {},
                       const SearchBudget& budget = {});

/// Derivation of `context, c => c` by structural induction on c; no search.
G3Derivation identity_derivation(const Formula& c, std::vector<Formula> context = {});

SExpr to_sexpr(const G3Derivation& d, std::span<const G3Sequent> hypotheses = {});

struct G3File {
  G3Derivation derivation;
  std::vector<G3Sequent> hypotheses;
};

/// Reads `(derivation g3c [(hyps (seq ..)*)] (node ...))`.
G3File read_g3_file(const SExpr& e, const ParseOptions& opts = {});

}  // namespace connexive
