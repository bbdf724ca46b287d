#include "connexive/nc.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace connexive {

namespace {

constexpr std::array<std::pair<NCRule, std::string_view>, 21> kRuleNames{{
    {NCRule::Assume, "assume"},
    {NCRule::NegNegI, "~~I"},
    {NCRule::NegNegE, "~~E"},
    {NCRule::AndI, "andI"},
    {NCRule::AndE1, "andE1"},
    {NCRule::AndE2, "andE2"},
    {NCRule::NegAndI1, "~andI1"},
    {NCRule::NegAndI2, "~andI2"},
    {NCRule::NegAndE, "~andE"},
    {NCRule::OrI1, "orI1"},
    {NCRule::OrI2, "orI2"},
    {NCRule::OrE, "orE"},
    {NCRule::NegOrI, "~orI"},
    {NCRule::NegOrE1, "~orE1"},
    {NCRule::NegOrE2, "~orE2"},
    {NCRule::ImpI, "impI"},
    {NCRule::ImpE, "impE"},
    {NCRule::NegImpI, "~impI"},
    {NCRule::NegImpE, "~impE"},
    {NCRule::N4NegImpE1, "~impE1"},
    {NCRule::N4NegImpE2, "~impE2"},
}};

constexpr std::string_view kN4Intro = "N4-style ~-> introduction (from A and ~B) is not a rule of NC";
constexpr std::string_view kN4Elim = "N4-style ~-> elimination (from ~(A -> B) alone) is not a rule of NC";

using Path = std::vector<std::size_t>;

struct Rejection {
  Path path;
  std::string reason;
};

[[noreturn]] void reject(const Path& path, std::string reason) { throw Rejection{path, std::move(reason)}; }

bool has_app(const Formula& f) {
  if (f.is(FormulaKind::App)) return true;
  for (const auto& a : f.args()) {
    if (has_app(a)) return true;
  }
  return false;
}

bool is_neg_of(const Formula& f, FormulaKind k) { return f.is(FormulaKind::Neg) && f.body().is(k); }

/// Label -> assumed formula and the path of its first leaf.
using Open = std::map<std::string, std::pair<Formula, Path>>;

/// One discharge obligation: labels bound to `formula` in premise `premise`.
struct Binding {
  std::size_t premise;
  Formula formula;
  std::vector<std::string> labels;
};

class Checker {
 public:
  Open visit(const NCDerivation& d, Path& path) {
    const Formula& c = d.conclusion;
    if (has_app(c)) reject(path, "user connective in an NC formula: " + to_string(c));
    if (d.rule.rule == NCRule::Assume) {
      if (!d.children.empty()) reject(path, "assumption leaf with premises");
      if (d.rule.label.empty()) reject(path, "assumption without a label");
      if (!d.rule.discharges.empty()) reject(path, "assumption leaf with discharges");
      return Open{{d.rule.label, {c, path}}};
    }
    if (!d.rule.label.empty()) reject(path, "label on a non-assumption node");

    std::vector<Open> opens;
    for (std::size_t i = 0; i < d.children.size(); ++i) {
      path.push_back(i);
      opens.push_back(visit(d.children[i], path));
      path.pop_back();
    }
    std::vector<Formula> p;
    for (const auto& ch : d.children) p.push_back(ch.conclusion);

    for (const auto& b : shape(d, p, path)) {
      for (const auto& label : b.labels) {
        if (!discharged_.insert(label).second) reject(path, "label '" + label + "' discharged twice");
        auto it = opens[b.premise].find(label);
        if (it == opens[b.premise].end()) continue;  // vacuous
        if (it->second.first != b.formula) {
          reject(path, "label '" + label + "' assumes " + to_string(it->second.first) + " but the rule discharges " +
                           to_string(b.formula));
        }
        opens[b.premise].erase(it);
      }
    }

    Open merged;
    for (auto& o : opens) {
      for (auto& [label, entry] : o) {
        auto [it, inserted] = merged.emplace(label, entry);
        if (!inserted && it->second.first != entry.first) {
          reject(entry.second, "label '" + label + "' names both " + to_string(it->second.first) + " and " +
                                   to_string(entry.first));
        }
      }
    }
    return merged;
  }

  const std::set<std::string>& discharged() const { return discharged_; }

 private:
  static void arity(const NCDerivation& d, std::size_t n, const Path& path) {
    if (d.children.size() != n) {
      reject(path, std::string(rule_name(d.rule.rule)) + " takes " + std::to_string(n) + " premise(s), got " +
                       std::to_string(d.children.size()));
    }
  }

  static void no_discharges(const NCDerivation& d, const Path& path) {
    if (!d.rule.discharges.empty()) reject(path, std::string(rule_name(d.rule.rule)) + " discharges nothing");
  }

  static void expect(bool ok, const NCDerivation& d, const Path& path) {
    if (!ok) reject(path, "conclusion " + to_string(d.conclusion) + " does not fit " + std::string(rule_name(d.rule.rule)));
  }

  /// Checks the node against its rule and returns the discharges it performs.
  static std::vector<Binding> shape(const NCDerivation& d, const std::vector<Formula>& p, const Path& path) {
    const Formula& c = d.conclusion;
    const auto& ds = d.rule.discharges;
    switch (d.rule.rule) {
      case NCRule::Assume:
        break;
      case NCRule::NegNegI:
        arity(d, 1, path), no_discharges(d, path);
        expect(c == Formula::neg(Formula::neg(p[0])), d, path);
        return {};
      case NCRule::NegNegE:
        arity(d, 1, path), no_discharges(d, path);
        expect(p[0] == Formula::neg(Formula::neg(c)), d, path);
        return {};
      case NCRule::AndI:
        arity(d, 2, path), no_discharges(d, path);
        expect(c == Formula::conj(p[0], p[1]), d, path);
        return {};
      case NCRule::AndE1:
      case NCRule::AndE2: {
        arity(d, 1, path), no_discharges(d, path);
        const bool first = d.rule.rule == NCRule::AndE1;
        expect(p[0].is(FormulaKind::And) && c == (first ? p[0].left() : p[0].right()), d, path);
        return {};
      }
      case NCRule::NegAndI1:
      case NCRule::NegAndI2: {
        arity(d, 1, path), no_discharges(d, path);
        const bool first = d.rule.rule == NCRule::NegAndI1;
        expect(is_neg_of(c, FormulaKind::And) &&
                   p[0] == Formula::neg(first ? c.body().left() : c.body().right()),
               d, path);
        return {};
      }
      case NCRule::NegAndE: {
        arity(d, 3, path);
        if (ds.size() != 2) reject(path, "~andE discharges exactly two labels, for ~A and ~B");
        expect(is_neg_of(p[0], FormulaKind::And) && p[1] == c && p[2] == c, d, path);
        const Formula& ab = p[0].body();
        return {{1, Formula::neg(ab.left()), {ds[0]}}, {2, Formula::neg(ab.right()), {ds[1]}}};
      }
      case NCRule::OrI1:
      case NCRule::OrI2: {
        arity(d, 1, path), no_discharges(d, path);
        const bool first = d.rule.rule == NCRule::OrI1;
        expect(c.is(FormulaKind::Or) && p[0] == (first ? c.left() : c.right()), d, path);
        return {};
      }
      case NCRule::OrE: {
        arity(d, 3, path);
        if (ds.size() != 2) reject(path, "orE discharges exactly two labels, for A and B");
        expect(p[0].is(FormulaKind::Or) && p[1] == c && p[2] == c, d, path);
        return {{1, p[0].left(), {ds[0]}}, {2, p[0].right(), {ds[1]}}};
      }
      case NCRule::NegOrI:
        arity(d, 2, path), no_discharges(d, path);
        expect(is_neg_of(c, FormulaKind::Or) && p[0] == Formula::neg(c.body().left()) &&
                   p[1] == Formula::neg(c.body().right()),
               d, path);
        return {};
      case NCRule::NegOrE1:
      case NCRule::NegOrE2: {
        arity(d, 1, path), no_discharges(d, path);
        const bool first = d.rule.rule == NCRule::NegOrE1;
        expect(is_neg_of(p[0], FormulaKind::Or) &&
                   c == Formula::neg(first ? p[0].body().left() : p[0].body().right()),
               d, path);
        return {};
      }
      case NCRule::ImpI:
        arity(d, 1, path);
        expect(c.is(FormulaKind::Imp) && p[0] == c.right(), d, path);
        return {{0, c.left(), ds}};
      case NCRule::ImpE:
        arity(d, 2, path), no_discharges(d, path);
        expect(p[1].is(FormulaKind::Imp) && p[1].left() == p[0] && p[1].right() == c, d, path);
        return {};
      case NCRule::NegImpI:
        if (d.children.size() == 2 && is_neg_of(c, FormulaKind::Imp) && p[0] == c.body().left() &&
            p[1] == Formula::neg(c.body().right())) {
          reject(path, std::string(kN4Intro));
        }
        arity(d, 1, path);
        expect(is_neg_of(c, FormulaKind::Imp) && p[0] == Formula::neg(c.body().right()), d, path);
        return {{0, c.body().left(), ds}};
      case NCRule::NegImpE:
        if (d.children.size() == 1 && is_neg_of(p[0], FormulaKind::Imp) &&
            (c == p[0].body().left() || c == Formula::neg(p[0].body().right()))) {
          reject(path, std::string(kN4Elim));
        }
        arity(d, 2, path), no_discharges(d, path);
        expect(is_neg_of(p[1], FormulaKind::Imp) && p[1].body().left() == p[0] &&
                   c == Formula::neg(p[1].body().right()),
               d, path);
        return {};
      case NCRule::N4NegImpE1:
      case NCRule::N4NegImpE2:
        reject(path, std::string(kN4Elim));
    }
    return {};
  }

  std::set<std::string> discharged_;
};

void collect(const NCDerivation& d, std::vector<std::pair<std::string, Formula>>& leaves,
             std::set<std::string>& bound) {
  if (d.rule.rule == NCRule::Assume) leaves.emplace_back(d.rule.label, d.conclusion);
  for (const auto& l : d.rule.discharges) bound.insert(l);
  for (const auto& c : d.children) collect(c, leaves, bound);
}

NCRule partner(NCRule r) {
  switch (r) {
    case NCRule::NegNegI: return NCRule::NegNegE;
    case NCRule::NegNegE: return NCRule::NegNegI;
    case NCRule::AndE1: return NCRule::AndE2;
    case NCRule::AndE2: return NCRule::AndE1;
    case NCRule::NegAndI1: return NCRule::NegAndI2;
    case NCRule::NegAndI2: return NCRule::NegAndI1;
    case NCRule::OrI1: return NCRule::OrI2;
    case NCRule::OrI2: return NCRule::OrI1;
    case NCRule::NegOrE1: return NCRule::NegOrE2;
    case NCRule::NegOrE2: return NCRule::NegOrE1;
    case NCRule::ImpI: return NCRule::NegImpI;
    case NCRule::NegImpI: return NCRule::ImpI;
    case NCRule::ImpE: return NCRule::NegImpE;
    case NCRule::NegImpE: return NCRule::ImpE;
    case NCRule::AndI: return NCRule::NegOrI;
    case NCRule::NegOrI: return NCRule::AndI;
    case NCRule::OrE: return NCRule::NegAndE;
    case NCRule::NegAndE: return NCRule::OrE;
    default: return r;
  }
}

void mutate_at(const NCDerivation& root, NCDerivation& node, Path& path, std::vector<NCMutation>& out) {
  std::string where = "root";
  for (auto i : path) where += "." + std::to_string(i);
  auto emit = [&](std::string what, auto change) {
    NCDerivation saved = node;
    change(node);
    out.push_back({where + ": " + what, root});
    node = std::move(saved);
  };
  if (node.rule.rule != NCRule::Assume) {
    emit("rule tag swapped", [](NCDerivation& n) { n.rule.rule = partner(n.rule.rule); });
  }
  emit("conclusion negated", [](NCDerivation& n) { n.conclusion = Formula::neg(n.conclusion); });
  emit("conclusion replaced", [](NCDerivation& n) { n.conclusion = Formula::atom("r"); });
  if (node.rule.rule == NCRule::Assume) {
    emit("label renamed", [](NCDerivation& n) { n.rule.label += "_renamed"; });
  } else if (!node.rule.discharges.empty()) {
    emit("discharges dropped", [](NCDerivation& n) { n.rule.discharges.clear(); });
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(i);
    mutate_at(root, node.children[i], path, out);
    path.pop_back();
  }
}

SExpr node_sexpr(const NCDerivation& d) {
  if (d.rule.rule == NCRule::Assume) {
    return SExpr::list({SExpr::atom("assume"), SExpr::atom(d.rule.label), SExpr::string(to_string(d.conclusion))});
  }
  SExpr n = SExpr::list({SExpr::atom("node"), SExpr::atom(std::string(rule_name(d.rule.rule))),
                         SExpr::list({SExpr::atom("fml"), SExpr::string(to_string(d.conclusion))})});
  if (!d.rule.discharges.empty()) {
    SExpr ds = SExpr::list({SExpr::atom("discharges")});
    for (const auto& l : d.rule.discharges) ds.items.push_back(SExpr::atom(l));
    n.items.push_back(std::move(ds));
  }
  for (const auto& c : d.children) n.items.push_back(node_sexpr(c));
  return n;
}

NCDerivation read_node(const SExpr& e) {
  if (e.is_form("assume")) {
    if (e.items.size() != 3 || !e.items[1].is_atom() || !e.items[2].is_string()) {
      throw SExprError("expected (assume <label> \"<formula>\")");
    }
    return nd::assume(e.items[1].text, parse_formula(e.items[2].text));
  }
  if (!e.is_form("node") || e.items.size() < 3 || !e.items[1].is_atom() || !e.items[2].is_form("fml") ||
      e.items[2].items.size() != 2 || !e.items[2].items[1].is_string()) {
    throw SExprError("expected (node <rule> (fml \"<formula>\") [(discharges <label>*)] <child>*)");
  }
  auto rule = parse_nc_rule(e.items[1].text);
  if (!rule || *rule == NCRule::Assume) throw SExprError("unknown NC rule '" + e.items[1].text + "'");
  NCDerivation d{NCStep{*rule, {}, {}}, parse_formula(e.items[2].items[1].text), {}};
  std::size_t k = 3;
  if (k < e.items.size() && e.items[k].is_form("discharges")) {
    for (std::size_t j = 1; j < e.items[k].items.size(); ++j) {
      if (!e.items[k].items[j].is_atom()) throw SExprError("discharge labels are bare atoms");
      d.rule.discharges.push_back(e.items[k].items[j].text);
    }
    ++k;
  }
  for (; k < e.items.size(); ++k) d.children.push_back(read_node(e.items[k]));
  return d;
}

}  // namespace

std::string_view rule_name(NCRule r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<NCRule> parse_nc_rule(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (n == name) return rule;
  }
  return std::nullopt;
}

Verdict check_nc(const NCDerivation& d, std::span<const Formula> premises) {
  try {
    Checker checker;
    Path path;
    const Open open = checker.visit(d, path);
    for (const auto& [label, entry] : open) {
      if (checker.discharged().count(label)) {
        reject(entry.second, "label '" + label + "' used outside its discharging rule");
      }
      if (std::find(premises.begin(), premises.end(), entry.first) == premises.end()) {
        reject(entry.second, "open assumption " + to_string(entry.first) + " is not a declared premise");
      }
    }
    return Verdict::accept();
  } catch (const Rejection& r) {
    return Verdict::reject(r.path, r.reason);
  }
}

std::vector<Formula> open_assumptions(const NCDerivation& d) {
  std::vector<std::pair<std::string, Formula>> leaves;
  std::set<std::string> bound;
  collect(d, leaves, bound);
  std::set<Formula> out;
  for (const auto& [label, f] : leaves) {
    if (!bound.count(label)) out.insert(f);
  }
  return {out.begin(), out.end()};
}

std::vector<NCMutation> single_node_mutations(const NCDerivation& d) {
  NCDerivation work = d;
  std::vector<NCMutation> out;
  Path path;
  mutate_at(work, work, path, out);
  return out;
}

namespace nd {

NCDerivation assume(std::string label, Formula f) {
  return NCDerivation{NCStep{NCRule::Assume, std::move(label), {}}, std::move(f), {}};
}

NCDerivation infer(NCRule rule, Formula conclusion, std::vector<NCDerivation> children,
                   std::vector<std::string> discharges) {
  return NCDerivation{NCStep{rule, {}, std::move(discharges)}, std::move(conclusion), std::move(children)};
}

}  // namespace nd

SExpr to_sexpr(const NCDerivation& d, std::span<const Formula> premises) {
  SExpr root = SExpr::list({SExpr::atom("derivation"), SExpr::atom("nc")});
  if (!premises.empty()) {
    SExpr ps = SExpr::list({SExpr::atom("premises")});
    for (const auto& p : premises) ps.items.push_back(SExpr::string(to_string(p)));
    root.items.push_back(std::move(ps));
  }
  root.items.push_back(node_sexpr(d));
  return root;
}

NCFile read_nc_file(const SExpr& e) {
  if (!e.is_form("derivation") || e.items.size() < 3 || !e.items[1].is_atom("nc")) {
    throw SExprError("expected (derivation nc ...)");
  }
  std::vector<Formula> premises;
  std::optional<NCDerivation> tree;
  for (std::size_t k = 2; k < e.items.size(); ++k) {
    const auto& item = e.items[k];
    if (item.is_form("premises")) {
      for (std::size_t j = 1; j < item.items.size(); ++j) {
        if (!item.items[j].is_string()) throw SExprError("premises are quoted formulas");
        premises.push_back(parse_formula(item.items[j].text));
      }
    } else if (item.is_form("node") || item.is_form("assume")) {
      if (tree) throw SExprError("more than one root node");
      tree = read_node(item);
    } else {
      throw SExprError("unexpected item in nc derivation");
    }
  }
  if (!tree) throw SExprError("missing root node");
  return NCFile{std::move(*tree), std::move(premises)};
}

}  // namespace connexive
