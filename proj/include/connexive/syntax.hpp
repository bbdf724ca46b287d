#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace connexive {

enum class FormulaKind : std::uint8_t { Atom, Neg, And, Or, Imp, App };

/// Immutable propositional formula over {~, &, |, ->} and user connectives.
/// Copies share structure; equality and ordering are structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula neg(Formula body);
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula imp(Formula left, Formula right);
  static Formula app(std::string connective, std::vector<Formula> args);

  FormulaKind kind() const;
  bool is(FormulaKind k) const { return kind() == k; }
  /// Atom name, or connective name for App.
  const std::string& name() const;
  std::span<const Formula> args() const;
  const Formula& body() const { return args()[0]; }
  const Formula& left() const { return args()[0]; }
  const Formula& right() const { return args()[1]; }
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::string name, std::vector<Formula> args);
  std::shared_ptr<const Node> node_;
};

enum class RKind : std::uint8_t { Formula, Refutation, Sequent };

/// R-expression: a formula, a refutation -S, or a nested sequent (Δ => S).
/// A refutation never wraps a refutation; `refute` collapses --S to S.
class RExpr {
 public:
  RExpr(Formula f);  // NOLINT(google-explicit-constructor): every formula is an R-expression
  static RExpr refute(const RExpr& body);
  static RExpr sequent(std::vector<RExpr> context, RExpr succedent);

  RKind kind() const;
  bool is(RKind k) const { return kind() == k; }
  bool is_formula() const { return kind() == RKind::Formula; }
  const Formula& formula() const;
  const RExpr& body() const;
  std::span<const RExpr> context() const;
  const RExpr& succedent() const;
  std::size_t hash() const;

  friend bool operator==(const RExpr& a, const RExpr& b);
  friend std::strong_ordering operator<=>(const RExpr& a, const RExpr& b);

 private:
  struct Node;
  explicit RExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Judgment form Δ => S checked by the calculi. The context is an ordered series.
struct RSequent {
  std::vector<RExpr> context;
  RExpr succedent;

  friend bool operator==(const RSequent&, const RSequent&) = default;
};

RExpr mk_neg(const RExpr& s);
std::size_t r_degree(const RExpr& s);
std::set<RExpr> r_subformulas(const RExpr& s);
std::set<Formula> formula_components(const RExpr& s);

/// Connective name -> arity.
using Signature = std::map<std::string, std::size_t, std::less<>>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct ParseOptions {
  /// Connectives accepted in App position; null means none are known.
  const Signature* signature = nullptr;
  /// Accept A1, A2, ... as atoms (connective definition files).
  bool allow_placeholders = false;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});
RExpr parse_rexpr(std::string_view text, const ParseOptions& opts = {});
/// Inline sequent syntax: the R-expression sequent grammar without the outer parentheses.
RSequent parse_sequent(std::string_view text, const ParseOptions& opts = {});
/// Comma separated series of R-expressions; empty text gives an empty series.
std::vector<RExpr> parse_series(std::string_view text, const ParseOptions& opts = {});

std::string to_string(const Formula& f);
std::string to_string(const RExpr& s);
std::string to_string(const RSequent& s);
std::string to_string(std::span<const RExpr> series);

/// Placeholder atom A<index>, used by connective definitions.
Formula placeholder(std::size_t index);
/// Index of a placeholder atom, or 0 if `f` is not one.
std::size_t placeholder_index(const Formula& f);

}  // namespace connexive

template <>
struct std::hash<connexive::Formula> {
  std::size_t operator()(const connexive::Formula& f) const noexcept { return f.hash(); }
};

template <>
struct std::hash<connexive::RExpr> {
  std::size_t operator()(const connexive::RExpr& s) const noexcept { return s.hash(); }
};
