#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "connexive/syntax.hpp"

namespace connexive {

/// An n-ary connective given by its right-introduction data: t groups, group i
/// holding s_i R-expressions over the placeholders A1..An.
struct ConnectiveDef {
  std::string name;
  std::size_t arity = 0;
  std::vector<std::vector<RExpr>> groups;

  /// r = s_1 * ... * s_t
  std::size_t selection_count() const;
  /// All selections (one 1-based index per group), lexicographic.
  std::vector<std::vector<std::size_t>> selections() const;
  /// Group members with placeholders replaced by `args`.
  std::vector<std::vector<RExpr>> instantiate(std::span<const Formula> args) const;
};

class DefinitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses exactly one definition.
ConnectiveDef load_definition(std::string_view text);
/// Parses a file of one or more definitions; names must be distinct.
std::vector<ConnectiveDef> load_definitions(std::string_view text);
/// Checks the invariants load_definition enforces; throws DefinitionError.
void validate(const ConnectiveDef& def);
std::string canonical_text(const ConnectiveDef& def);

/// Append-only name -> definition map.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<ConnectiveDef> defs);

  void add(ConnectiveDef def);
  const ConnectiveDef* find(std::string_view name) const;
  const ConnectiveDef& at(std::string_view name) const;
  const std::vector<ConnectiveDef>& definitions() const { return defs_; }
  const Signature& signature() const { return signature_; }
  bool empty() const { return defs_.empty(); }
  /// Hex SHA-256 of the canonical reprint of every definition, in order.
  std::string content_hash() const;

 private:
  std::vector<ConnectiveDef> defs_;
  Signature signature_;
};

/// Sequent pattern "Δ, extras => succedent". Δ is the rule's schematic context
/// and an absent succedent stands for the schematic right-hand side.
struct SequentPattern {
  std::vector<RExpr> extras;
  std::optional<RExpr> succedent;

  friend bool operator==(const SequentPattern&, const SequentPattern&) = default;
};

/// A rule schema over placeholder atoms A1..An.
struct RulePattern {
  std::string name;
  std::vector<SequentPattern> premises;
  SequentPattern conclusion;
};

struct PatternMatch {
  std::vector<RExpr> delta;
  std::map<std::size_t, Formula> bindings;  // placeholder index -> formula
  std::optional<RExpr> rhs;
};

/// Matches a concrete sequent against the conclusion pattern.
std::optional<PatternMatch> match_conclusion(const RulePattern& rule, const RSequent& conclusion);
/// Instantiates a premise pattern under a match.
RSequent instantiate(const SequentPattern& pattern, const PatternMatch& m);

/// Replaces placeholders A_j by args[j-1] throughout.
RExpr substitute(const RExpr& s, std::span<const Formula> args);
Formula substitute(const Formula& f, std::span<const Formula> args);
Formula substitute(const Formula& f, const std::map<std::size_t, Formula>& bindings);

struct GeneratedRules {
  std::vector<RulePattern> right;      // schema I, one per group
  RulePattern left;                    // schema II
  std::vector<RulePattern> right_neg;  // schema III, one per selection
  RulePattern left_neg;                // schema IV
};

GeneratedRules gen_rules(const ConnectiveDef& def);
std::string to_string(const SequentPattern& p);
std::string to_string(const RulePattern& r);

/// Collapses an R-expression to a formula: - to ~, series to a left-nested
/// conjunction, => to ->, and (=> S) to S.
Formula overline(const RExpr& s);
/// Left-nested conjunction; the series must be non-empty.
Formula conjoin(std::span<const Formula> parts);
/// Left-nested disjunction; the list must be non-empty.
Formula disjoin(std::span<const Formula> parts);

/// Disjunction over groups of conjunctions of overlined members, over placeholders.
Formula defining_formula(const ConnectiveDef& def);
/// Image of schema III: disjunction over selections of conjunctions of ~overline(S).
Formula dual_defining_formula(const ConnectiveDef& def);

/// Eliminates user connectives by their defining formulas; throws
/// DefinitionError for an unregistered connective.
Formula star(const Formula& f, const Registry& env);
Formula star(const RExpr& s, const Registry& env);

}  // namespace connexive
