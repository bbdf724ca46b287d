#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connexive/derivation.hpp"
#include "connexive/sexpr.hpp"
#include "connexive/syntax.hpp"

namespace connexive {

enum class NCRule {
  Assume,
  NegNegI,
  NegNegE,
  AndI,
  AndE1,
  AndE2,
  NegAndI1,
  NegAndI2,
  NegAndE,
  OrI1,
  OrI2,
  OrE,
  NegOrI,
  NegOrE1,
  NegOrE2,
  ImpI,
  ImpE,
  NegImpI,
  NegImpE,
  // Nelson-style negated implication elimination; readable so that it can be rejected by name.
  N4NegImpE1,
  N4NegImpE2,
};

std::string_view rule_name(NCRule r);
std::optional<NCRule> parse_nc_rule(std::string_view name);

/// Rule tag plus labels. An assumption leaf carries `label`; impI and ~impI
/// discharge A under each listed label; orE and ~andE take exactly two labels,
/// bound in the second and third premise.
struct NCStep {
  NCRule rule = NCRule::Assume;
  std::string label;
  std::vector<std::string> discharges;

  friend bool operator==(const NCStep&, const NCStep&) = default;
};

using NCDerivation = Derivation<NCStep, Formula>;

/// Accepts iff every node instantiates its rule, every discharge binds
/// assumptions of the required formula, no label is discharged twice or used
/// outside its discharging rule, and the open assumptions are among `premises`.
Verdict check_nc(const NCDerivation& d, std::span<const Formula> premises = {});

/// Formulas of the assumption leaves left open, sorted and deduplicated.
std::vector<Formula> open_assumptions(const NCDerivation& d);

struct NCMutation {
  std::string description;
  NCDerivation tree;
};

/// Per node in preorder: the rule tag swapped for its partner, the conclusion
/// negated, the conclusion replaced by a fresh atom, and the discharge list
/// dropped (or, on a leaf, the label renamed).
std::vector<NCMutation> single_node_mutations(const NCDerivation& d);

namespace nd {
NCDerivation assume(std::string label, Formula f);
NCDerivation infer(NCRule rule, Formula conclusion, std::vector<NCDerivation> children,
                   std::vector<std::string> discharges = {});
}  // namespace nd

SExpr to_sexpr(const NCDerivation& d, std::span<const Formula> premises = {});

struct NCFile {
  NCDerivation derivation;
  std::vector<Formula> premises;
};

/// Reads `(derivation nc [(premises "f"*)] <node-or-assume>)`.
NCFile read_nc_file(const SExpr& e);

}  // namespace connexive
