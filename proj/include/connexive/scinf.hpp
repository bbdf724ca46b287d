#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connexive/connectives.hpp"
#include "connexive/derivation.hpp"
#include "connexive/g3c.hpp"
#include "connexive/sexpr.hpp"
#include "connexive/syntax.hpp"

namespace connexive {

enum class SCKind {
  // structural
  RF,
  WL,
  PL,
  CL,
  Cut,
  RIPlus,
  LIPlus,
  RIMinus,
  LIMinus,
  // primitive connective rules
  NegL,
  NegR,
  NegLm,
  NegRm,
  AndL,
  AndR,
  AndLm,
  AndRm1,
  AndRm2,
  OrL,
  OrR1,
  OrR2,
  OrLm,
  OrRm,
  ImpL,
  ImpR,
  ImpLm,
  ImpRm,
  // derived implication rules
  ImpLStar,
  ImpRStar,
  ImpLStarm,
  ImpRStarm,
  // rules generated from a registered connective
  SchemaI,
  SchemaII,
  SchemaIII,
  SchemaIV,
};

struct SCRule {
  SCKind kind = SCKind::RF;
  std::string connective;            // schema rules only
  std::vector<std::size_t> indices;  // SchemaI: {group}; SchemaIII: the selection

  SCRule() = default;
  SCRule(SCKind k) : kind(k) {}  // NOLINT(google-explicit-constructor)
  static SCRule schema_i(std::string f, std::size_t group) { return {SCKind::SchemaI, std::move(f), {group}}; }
  static SCRule schema_ii(std::string f) { return {SCKind::SchemaII, std::move(f), {}}; }
  static SCRule schema_iii(std::string f, std::vector<std::size_t> sel) {
    return {SCKind::SchemaIII, std::move(f), std::move(sel)};
  }
  static SCRule schema_iv(std::string f) { return {SCKind::SchemaIV, std::move(f), {}}; }

  friend bool operator==(const SCRule&, const SCRule&) = default;

 private:
  SCRule(SCKind k, std::string f, std::vector<std::size_t> idx)
      : kind(k), connective(std::move(f)), indices(std::move(idx)) {}
};

/// "RF", "impL*-", "I(F,2)", "III(F,1,2)", ...
std::string rule_name(const SCRule& r);
std::optional<SCKind> parse_sc_kind(std::string_view name);

using SCDerivation = Derivation<SCRule, RSequent>;

/// The eighteen unstarred connective rules as schemas over A1, A2, principal last.
const std::vector<RulePattern>& primitive_rules();
/// The four starred implication rules.
const std::vector<RulePattern>& starred_rules();

/// Every node must be an exact instance of its rule; contexts are ordered.
/// Schema rules are generated from `env`.
Verdict check_scinf(const SCDerivation& d, const Registry& env = {});

/// Derivation builders. Each computes its conclusion and throws
/// std::logic_error when the premises do not fit.
namespace sc {

SCDerivation node(SCRule rule, RSequent conclusion, std::vector<SCDerivation> children = {});
SCDerivation rf(const RExpr& s);
SCDerivation weaken(SCDerivation d, const RExpr& t);
/// PL on positions i, i+1 of the premise context.
SCDerivation swap(SCDerivation d, std::size_t i);
/// CL on the last two (equal) context members.
SCDerivation contract(SCDerivation d);
SCDerivation cut(SCDerivation left, SCDerivation right);
/// WL, CL and PL steps turning d's context into `target`; every member of
/// d's context must occur in `target`.
SCDerivation adjust(SCDerivation d, const std::vector<RExpr>& target);
/// context, s => s
SCDerivation identity(const RExpr& s, std::vector<RExpr> context = {});
/// One primitive or starred rule application; the conclusion is read off the premises.
SCDerivation apply(SCKind kind, std::vector<SCDerivation> premises, const RSequent& conclusion);

}  // namespace sc

/// Replaces a starred implication rule by RI/LI followed by the unstarred rule.
/// Premises as printed: impR* (D,A => B); impL* (D => A)(D,B => S);
/// impL*- (D => A)(D,-B => S); impR*- (D,A => -B).
SCDerivation derive_starred(SCKind kind, std::vector<SCDerivation> premises);

/// Translates a G3C derivation without Hyp leaves into SC∞, same end sequent.
SCDerivation embed_g3c(const G3Derivation& d);

struct EnvHeader {
  std::string path;
  std::string hash;
};

SExpr to_sexpr(const SCDerivation& d, const std::optional<EnvHeader>& env = std::nullopt);

struct SCFile {
  SCDerivation derivation;
  std::optional<EnvHeader> env;
};

/// Reads `(derivation scinf [(env "<path>" "<sha256>")] (node ...))`; formulas
/// are parsed against `env`'s signature.
SCFile read_sc_file(const SExpr& e, const Registry& env = {});
/// Reads only the env header, if present.
std::optional<EnvHeader> read_env_header(const SExpr& e);

}  // namespace connexive
