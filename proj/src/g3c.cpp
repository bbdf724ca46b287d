#include "connexive/g3c.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <memory>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace connexive {

namespace {

constexpr std::array<std::pair<G3Rule, std::string_view>, 20> kRuleNames{{
    {G3Rule::Rf, "Rf"},
    {G3Rule::RfNeg, "Rf~"},
    {G3Rule::RAnd, "Rand"},
    {G3Rule::LAnd, "Land"},
    {G3Rule::ROr1, "Ror1"},
    {G3Rule::ROr2, "Ror2"},
    {G3Rule::LOr, "Lor"},
    {G3Rule::RImp, "Rimp"},
    {G3Rule::LImp, "Limp"},
    {G3Rule::RNegNeg, "R~~"},
    {G3Rule::LNegNeg, "L~~"},
    {G3Rule::RNegAnd1, "R~and1"},
    {G3Rule::RNegAnd2, "R~and2"},
    {G3Rule::LNegAnd, "L~and"},
    {G3Rule::RNegOr, "R~or"},
    {G3Rule::LNegOr, "L~or"},
    {G3Rule::RNegImp, "R~imp"},
    {G3Rule::LNegImp, "L~imp"},
    {G3Rule::Hyp, "Hyp"},
    {G3Rule::AnalyticCut, "Cut"},
}};

bool is_neg_of(const Formula& f, FormulaKind k) { return f.is(FormulaKind::Neg) && f.body().is(k); }

std::vector<Formula> without(const std::vector<Formula>& ctx, std::size_t i) {
  std::vector<Formula> out;
  out.reserve(ctx.size());
  for (std::size_t j = 0; j < ctx.size(); ++j) {
    if (j != i) out.push_back(ctx[j]);
  }
  return out;
}

std::vector<Formula> plus(std::vector<Formula> ctx, std::initializer_list<Formula> more) {
  for (const auto& f : more) ctx.push_back(f);
  return ctx;
}

bool same_multiset(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool same_sequent(const G3Sequent& a, const G3Sequent& b) {
  return a.succedent == b.succedent && same_multiset(a.context, b.context);
}

bool contains(const std::vector<Formula>& ctx, const Formula& f) {
  return std::find(ctx.begin(), ctx.end(), f) != ctx.end();
}

bool is_right_rule(G3Rule r) {
  switch (r) {
    case G3Rule::RAnd:
    case G3Rule::ROr1:
    case G3Rule::ROr2:
    case G3Rule::RImp:
    case G3Rule::RNegNeg:
    case G3Rule::RNegAnd1:
    case G3Rule::RNegAnd2:
    case G3Rule::RNegOr:
    case G3Rule::RNegImp:
      return true;
    default:
      return false;
  }
}

using Premises = std::vector<G3Sequent>;

std::optional<Premises> right_premises(G3Rule r, const G3Sequent& s) {
  const auto& g = s.context;
  const auto& c = s.succedent;
  switch (r) {
    case G3Rule::RAnd:
      if (!c.is(FormulaKind::And)) return std::nullopt;
      return Premises{{g, c.left()}, {g, c.right()}};
    case G3Rule::ROr1:
      if (!c.is(FormulaKind::Or)) return std::nullopt;
      return Premises{{g, c.left()}};
    case G3Rule::ROr2:
      if (!c.is(FormulaKind::Or)) return std::nullopt;
      return Premises{{g, c.right()}};
    case G3Rule::RImp:
      if (!c.is(FormulaKind::Imp)) return std::nullopt;
      return Premises{{plus(g, {c.left()}), c.right()}};
    case G3Rule::RNegNeg:
      if (!is_neg_of(c, FormulaKind::Neg)) return std::nullopt;
      return Premises{{g, c.body().body()}};
    case G3Rule::RNegAnd1:
      if (!is_neg_of(c, FormulaKind::And)) return std::nullopt;
      return Premises{{g, Formula::neg(c.body().left())}};
    case G3Rule::RNegAnd2:
      if (!is_neg_of(c, FormulaKind::And)) return std::nullopt;
      return Premises{{g, Formula::neg(c.body().right())}};
    case G3Rule::RNegOr:
      if (!is_neg_of(c, FormulaKind::Or)) return std::nullopt;
      return Premises{{g, Formula::neg(c.body().left())}, {g, Formula::neg(c.body().right())}};
    case G3Rule::RNegImp:
      if (!is_neg_of(c, FormulaKind::Imp)) return std::nullopt;
      return Premises{{plus(g, {c.body().left()}), Formula::neg(c.body().right())}};
    default:
      return std::nullopt;
  }
}

std::optional<Premises> left_premises(G3Rule r, const G3Sequent& s, std::size_t i) {
  const auto& g = s.context;
  const auto& c = s.succedent;
  const Formula& p = g[i];
  const auto rest = [&] { return without(g, i); };
  switch (r) {
    case G3Rule::LAnd:
      if (!p.is(FormulaKind::And)) return std::nullopt;
      return Premises{{plus(rest(), {p.left(), p.right()}), c}};
    case G3Rule::LOr:
      if (!p.is(FormulaKind::Or)) return std::nullopt;
      return Premises{{plus(rest(), {p.left()}), c}, {plus(rest(), {p.right()}), c}};
    case G3Rule::LImp:
      if (!p.is(FormulaKind::Imp)) return std::nullopt;
      return Premises{{g, p.left()}, {plus(rest(), {p.right()}), c}};
    case G3Rule::LNegNeg:
      if (!is_neg_of(p, FormulaKind::Neg)) return std::nullopt;
      return Premises{{plus(rest(), {p.body().body()}), c}};
    case G3Rule::LNegAnd:
      if (!is_neg_of(p, FormulaKind::And)) return std::nullopt;
      return Premises{{plus(rest(), {Formula::neg(p.body().left())}), c},
                      {plus(rest(), {Formula::neg(p.body().right())}), c}};
    case G3Rule::LNegOr:
      if (!is_neg_of(p, FormulaKind::Or)) return std::nullopt;
      return Premises{
          {plus(rest(), {Formula::neg(p.body().left()), Formula::neg(p.body().right())}), c}};
    case G3Rule::LNegImp:
      if (!is_neg_of(p, FormulaKind::Imp)) return std::nullopt;
      return Premises{{g, p.body().left()}, {plus(rest(), {Formula::neg(p.body().right())}), c}};
    default:
      return std::nullopt;
  }
}

bool children_match(const G3Derivation& d, const Premises& expected) {
  if (d.children.size() != expected.size()) return false;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (!same_sequent(d.children[k].conclusion, expected[k])) return false;
  }
  return true;
}

bool hyp_matches(const G3Sequent& hyp, const std::vector<Formula>& ctx, const Formula& succ) {
  if (hyp.succedent != succ) return false;
  return std::all_of(hyp.context.begin(), hyp.context.end(),
                     [&](const Formula& f) { return contains(ctx, f); });
}

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  for (const auto& a : f.args()) collect_subformulas(a, out);
}

struct Checker {
  std::span<const G3Sequent> hyps;
  std::set<Formula> closure;

  Verdict check(const G3Derivation& d, std::vector<std::size_t>& path) const {
    for (std::size_t k = 0; k < d.children.size(); ++k) {
      path.push_back(k);
      Verdict v = check(d.children[k], path);
      path.pop_back();
      if (!v) return v;
    }
    const auto reject = [&](std::string why) { return Verdict::reject(path, std::move(why)); };
    const auto& s = d.conclusion;
    const std::string name(rule_name(d.rule));
    switch (d.rule) {
      case G3Rule::Rf:
        if (!d.children.empty()) return reject("Rf has no premises");
        if (!s.succedent.is(FormulaKind::Atom)) return reject("Rf needs an atomic succedent");
        if (!contains(s.context, s.succedent)) return reject("succedent atom not in context");
        return Verdict::accept();
      case G3Rule::RfNeg:
        if (!d.children.empty()) return reject("Rf~ has no premises");
        if (!(s.succedent.is(FormulaKind::Neg) && s.succedent.body().is(FormulaKind::Atom))) {
          return reject("Rf~ needs a succedent ~p");
        }
        if (!contains(s.context, s.succedent)) return reject("succedent ~p not in context");
        return Verdict::accept();
      case G3Rule::Hyp:
        if (!d.children.empty()) return reject("Hyp has no premises");
        for (const auto& h : hyps) {
          if (hyp_matches(h, s.context, s.succedent)) return Verdict::accept();
        }
        return reject("no hypothesis matches " + to_string(s));
      case G3Rule::AnalyticCut: {
        if (hyps.empty()) return reject("Cut is only admitted in hypothesis mode");
        if (d.children.size() != 2) return reject("Cut needs 2 premises");
        const Formula& x = d.children[0].conclusion.succedent;
        if (closure.count(x) == 0) return reject("cut formula " + to_string(x) + " is not analytic");
        const Premises expected{{s.context, x}, {plus(s.context, {x}), s.succedent}};
        if (!children_match(d, expected)) return reject("premises do not match Cut");
        return Verdict::accept();
      }
      default:
        break;
    }
    if (is_right_rule(d.rule)) {
      auto expected = right_premises(d.rule, s);
      if (!expected) return reject("succedent does not fit " + name);
      if (!children_match(d, *expected)) return reject("premises do not match " + name);
      return Verdict::accept();
    }
    bool shaped = false;
    for (std::size_t i = 0; i < s.context.size(); ++i) {
      auto expected = left_premises(d.rule, s, i);
      if (!expected) continue;
      shaped = true;
      if (children_match(d, *expected)) return Verdict::accept();
    }
    return reject(shaped ? "premises do not match " + name : "no principal formula fits " + name);
  }
};

// ---------------------------------------------------------------------------
// Search

/// Context as a sorted set plus succedent.
struct State {
  std::vector<Formula> context;
  Formula succedent;

  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::size_t h = s.succedent.hash();
    for (const auto& f : s.context) h = h * 1099511628211ULL ^ f.hash();
    return h;
  }
};

State normalize(std::vector<Formula> ctx, Formula succ) {
  std::sort(ctx.begin(), ctx.end());
  ctx.erase(std::unique(ctx.begin(), ctx.end()), ctx.end());
  return State{std::move(ctx), std::move(succ)};
}

State with(const State& s, std::initializer_list<Formula> add, const Formula& succ) {
  std::vector<Formula> ctx = s.context;
  for (const auto& f : add) ctx.push_back(f);
  return normalize(std::move(ctx), succ);
}

State replace(const State& s, const Formula& removed, std::initializer_list<Formula> add) {
  std::vector<Formula> ctx;
  for (const auto& f : s.context) {
    if (f != removed) ctx.push_back(f);
  }
  for (const auto& f : add) ctx.push_back(f);
  return normalize(std::move(ctx), s.succedent);
}

struct Plan {
  G3Rule rule;
  std::optional<Formula> principal;  // left principal or cut formula
  std::vector<std::shared_ptr<const Plan>> children;
};

using PlanPtr = std::shared_ptr<const Plan>;

struct Alternative {
  G3Rule rule;
  std::optional<Formula> principal;
  std::vector<State> premises;
};

struct BudgetHit {};

constexpr std::size_t kNoLoop = std::numeric_limits<std::size_t>::max();

class Searcher {
 public:
  Searcher(std::span<const G3Sequent> hyps, const SearchBudget& budget)
      : budget_(budget), start_(std::chrono::steady_clock::now()) {
    for (const auto& h : hyps) {
      State n = normalize(h.context, h.succedent);
      for (const auto& f : n.context) hyp_left_.insert(f);
      hyp_right_.insert(n.succedent);
      hyps_.push_back(std::move(n));
    }
    // succedents first, then context members a left rule may have consumed
    for (const auto& f : hyp_right_) cut_candidates_.push_back(f);
    for (const auto& f : hyp_left_) {
      if (!hyp_right_.count(f)) cut_candidates_.push_back(f);
    }
  }

  PlanPtr run(const State& goal) { return search(goal, 0).plan; }
  std::size_t visited() const { return visited_; }

 private:
  struct Outcome {
    PlanPtr plan;
    std::size_t loop_depth = kNoLoop;
  };

  Outcome search(const State& s, std::size_t depth) {
    if (auto it = memo_.find(s); it != memo_.end()) return {it->second, kNoLoop};
    if (auto it = stack_.find(s); it != stack_.end()) return {nullptr, it->second};
    tick();

    if (auto leaf = axiom(s)) {
      memo_.emplace(s, leaf);
      return {leaf, kNoLoop};
    }

    stack_.emplace(s, depth);
    Outcome result;
    std::vector<Alternative> choices;
    if (auto committed = invertible(s, choices)) {
      result = conjunction(*committed, depth);
    } else {
      noninvertible(s, choices);
      result.loop_depth = kNoLoop;
      for (const auto& alt : choices) {
        Outcome o = conjunction(alt, depth);
        if (o.plan) {
          result = o;
          break;
        }
        result.loop_depth = std::min(result.loop_depth, o.loop_depth);
      }
    }
    stack_.erase(s);

    if (result.plan) {
      memo_.emplace(s, result.plan);
      result.loop_depth = kNoLoop;
    } else if (result.loop_depth >= depth) {
      memo_.emplace(s, nullptr);
      result.loop_depth = kNoLoop;
    }
    return result;
  }

  Outcome conjunction(const Alternative& alt, std::size_t depth) {
    auto plan = std::make_shared<Plan>(Plan{alt.rule, alt.principal, {}});
    for (const auto& p : alt.premises) {
      Outcome o = search(p, depth + 1);
      if (!o.plan) return {nullptr, o.loop_depth};
      plan->children.push_back(o.plan);
    }
    return {plan, kNoLoop};
  }

  PlanPtr axiom(const State& s) {
    const Formula& c = s.succedent;
    const bool in_ctx = std::binary_search(s.context.begin(), s.context.end(), c);
    if (in_ctx && c.is(FormulaKind::Atom)) return std::make_shared<Plan>(Plan{G3Rule::Rf, {}, {}});
    if (in_ctx && c.is(FormulaKind::Neg) && c.body().is(FormulaKind::Atom)) {
      return std::make_shared<Plan>(Plan{G3Rule::RfNeg, {}, {}});
    }
    for (const auto& h : hyps_) {
      if (h.succedent == c &&
          std::includes(s.context.begin(), s.context.end(), h.context.begin(), h.context.end())) {
        return std::make_shared<Plan>(Plan{G3Rule::Hyp, {}, {}});
      }
    }
    return nullptr;
  }

  /// Picks an invertible rule to commit to. Rules whose principal formula a
  /// hypothesis mentions are not invertible relative to the hypotheses; they
  /// are queued in `choices` instead.
  std::optional<Alternative> invertible(const State& s, std::vector<Alternative>& choices) {
    std::vector<Alternative> single;
    std::vector<Alternative> branching;
    const Formula& c = s.succedent;
    const bool right_relevant = hyp_right_.count(c) != 0;
    auto queue_right = [&](Alternative alt, bool branches) {
      if (right_relevant) {
        choices.push_back(std::move(alt));
      } else {
        (branches ? branching : single).push_back(std::move(alt));
      }
    };
    if (c.is(FormulaKind::Imp)) {
      queue_right({G3Rule::RImp, {}, {with(s, {c.left()}, c.right())}}, false);
    } else if (c.is(FormulaKind::And)) {
      queue_right({G3Rule::RAnd, {}, {with(s, {}, c.left()), with(s, {}, c.right())}}, true);
    } else if (is_neg_of(c, FormulaKind::Neg)) {
      queue_right({G3Rule::RNegNeg, {}, {with(s, {}, c.body().body())}}, false);
    } else if (is_neg_of(c, FormulaKind::Imp)) {
      queue_right({G3Rule::RNegImp, {}, {with(s, {c.body().left()}, Formula::neg(c.body().right()))}},
                  false);
    } else if (is_neg_of(c, FormulaKind::Or)) {
      queue_right({G3Rule::RNegOr,
                   {},
                   {with(s, {}, Formula::neg(c.body().left())), with(s, {}, Formula::neg(c.body().right()))}},
                  true);
    }
    for (const auto& p : s.context) {
      std::optional<Alternative> alt;
      bool branches = false;
      if (p.is(FormulaKind::And)) {
        alt = Alternative{G3Rule::LAnd, p, {replace(s, p, {p.left(), p.right()})}};
      } else if (p.is(FormulaKind::Or)) {
        alt = Alternative{G3Rule::LOr, p, {replace(s, p, {p.left()}), replace(s, p, {p.right()})}};
        branches = true;
      } else if (is_neg_of(p, FormulaKind::Neg)) {
        alt = Alternative{G3Rule::LNegNeg, p, {replace(s, p, {p.body().body()})}};
      } else if (is_neg_of(p, FormulaKind::Or)) {
        alt = Alternative{G3Rule::LNegOr, p,
                          {replace(s, p, {Formula::neg(p.body().left()), Formula::neg(p.body().right())})}};
      } else if (is_neg_of(p, FormulaKind::And)) {
        alt = Alternative{G3Rule::LNegAnd, p,
                          {replace(s, p, {Formula::neg(p.body().left())}),
                           replace(s, p, {Formula::neg(p.body().right())})}};
        branches = true;
      }
      if (!alt) continue;
      if (hyp_left_.count(p) != 0) {
        choices.push_back(std::move(*alt));
      } else {
        (branches ? branching : single).push_back(std::move(*alt));
      }
    }
    if (!single.empty()) return std::move(single.front());
    if (!branching.empty()) return std::move(branching.front());
    return std::nullopt;
  }

  void noninvertible(const State& s, std::vector<Alternative>& choices) {
    const Formula& c = s.succedent;
    if (c.is(FormulaKind::Or)) {
      choices.push_back({G3Rule::ROr1, {}, {with(s, {}, c.left())}});
      choices.push_back({G3Rule::ROr2, {}, {with(s, {}, c.right())}});
    } else if (is_neg_of(c, FormulaKind::And)) {
      choices.push_back({G3Rule::RNegAnd1, {}, {with(s, {}, Formula::neg(c.body().left()))}});
      choices.push_back({G3Rule::RNegAnd2, {}, {with(s, {}, Formula::neg(c.body().right()))}});
    }
    for (const auto& p : s.context) {
      if (p.is(FormulaKind::Imp)) {
        if (p.left() == c) continue;  // left premise would repeat this sequent
        choices.push_back({G3Rule::LImp, p, {with(s, {}, p.left()), replace(s, p, {p.right()})}});
      } else if (is_neg_of(p, FormulaKind::Imp)) {
        const Formula& a = p.body().left();
        if (a == c) continue;
        choices.push_back(
            {G3Rule::LNegImp, p, {with(s, {}, a), replace(s, p, {Formula::neg(p.body().right())})}});
      }
    }
    for (const auto& x : cut_candidates_) {
      if (x == c || std::binary_search(s.context.begin(), s.context.end(), x)) continue;
      choices.push_back({G3Rule::AnalyticCut, x, {with(s, {}, x), with(s, {x}, c)}});
    }
  }

  void tick() {
    ++visited_;
    if (visited_ > budget_.max_visited) throw BudgetHit{};
    if ((visited_ & 0x3ff) == 0 && std::chrono::steady_clock::now() - start_ > budget_.time_limit) {
      throw BudgetHit{};
    }
  }

  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<State> hyps_;
  std::set<Formula> hyp_left_;
  std::set<Formula> hyp_right_;
  std::vector<Formula> cut_candidates_;
  std::unordered_map<State, PlanPtr, StateHash> memo_;
  std::unordered_map<State, std::size_t, StateHash> stack_;
  std::size_t visited_ = 0;
};

/// Replays a set-based plan on a concrete multiset context.
G3Derivation emit(const Plan& plan, std::vector<Formula> ctx, Formula succ) {
  G3Derivation d{plan.rule, {ctx, succ}, {}};
  const auto kid = [&](std::size_t k, std::vector<Formula> c, Formula s) {
    d.children.push_back(emit(*plan.children[k], std::move(c), std::move(s)));
  };
  if (plan.rule == G3Rule::AnalyticCut) {
    const Formula& x = *plan.principal;
    kid(0, ctx, x);
    kid(1, plus(ctx, {x}), succ);
    return d;
  }
  if (is_right_rule(plan.rule)) {
    auto premises = right_premises(plan.rule, d.conclusion);
    for (std::size_t k = 0; k < premises->size(); ++k) {
      kid(k, std::move((*premises)[k].context), (*premises)[k].succedent);
    }
    return d;
  }
  if (!plan.principal) return d;  // axioms and hypotheses
  const auto it = std::find(ctx.begin(), ctx.end(), *plan.principal);
  auto premises = left_premises(plan.rule, d.conclusion, static_cast<std::size_t>(it - ctx.begin()));
  for (std::size_t k = 0; k < premises->size(); ++k) {
    kid(k, std::move((*premises)[k].context), (*premises)[k].succedent);
  }
  return d;
}

}  // namespace

std::string_view rule_name(G3Rule r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<G3Rule> parse_g3_rule(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (n == name) return rule;
  }
  return std::nullopt;
}

std::string to_string(const G3Sequent& s) { return to_string(to_rsequent(s)); }

RSequent to_rsequent(const G3Sequent& s) {
  std::vector<RExpr> ctx(s.context.begin(), s.context.end());
  return RSequent{std::move(ctx), RExpr(s.succedent)};
}

G3Sequent to_g3(const RSequent& s) {
  std::vector<Formula> ctx;
  for (const auto& c : s.context) {
    if (!c.is_formula()) throw std::invalid_argument("not a formula: " + to_string(c));
    ctx.push_back(c.formula());
  }
  if (!s.succedent.is_formula()) throw std::invalid_argument("not a formula: " + to_string(s.succedent));
  return G3Sequent{std::move(ctx), s.succedent.formula()};
}

G3Sequent parse_g3_sequent(std::string_view text, const ParseOptions& opts) {
  return to_g3(parse_sequent(text, opts));
}

std::vector<Formula> cut_closure(std::span<const G3Sequent> sequents) {
  std::set<Formula> sub;
  for (const auto& s : sequents) {
    for (const auto& f : s.context) collect_subformulas(f, sub);
    collect_subformulas(s.succedent, sub);
  }
  std::set<Formula> out = sub;
  for (const auto& f : sub) out.insert(Formula::neg(f));
  return {out.begin(), out.end()};
}

Verdict check_g3c(const G3Derivation& d, std::span<const G3Sequent> hypotheses) {
  Checker checker{hypotheses, {}};
  if (!hypotheses.empty()) {
    std::vector<G3Sequent> all(hypotheses.begin(), hypotheses.end());
    all.push_back(d.conclusion);
    auto cl = cut_closure(all);
    checker.closure.insert(cl.begin(), cl.end());
  }
  std::vector<std::size_t> path;
  return checker.check(d, path);
}

std::optional<Formula> principal_formula(const G3Derivation& node) {
  if (is_right_rule(node.rule)) return std::nullopt;
  for (std::size_t i = 0; i < node.conclusion.context.size(); ++i) {
    auto expected = left_premises(node.rule, node.conclusion, i);
    if (expected && children_match(node, *expected)) return node.conclusion.context[i];
  }
  return std::nullopt;
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::Unprovable:
      return "unprovable";
    case SearchStatus::BudgetExceeded:
      return "budget exceeded";
  }
  return "?";
}

SearchResult prove_g3c(const G3Sequent& goal, std::span<const G3Sequent> hypotheses,
                       const SearchBudget& budget) {
  Searcher searcher(hypotheses, budget);
  SearchResult result;
  try {
    PlanPtr plan = searcher.run(normalize(goal.context, goal.succedent));
    result.visited = searcher.visited();
    if (plan) {
      result.status = SearchStatus::Found;
      result.derivation = emit(*plan, goal.context, goal.succedent);
    } else {
      result.status = SearchStatus::Unprovable;
    }
  } catch (const BudgetHit&) {
    result.status = SearchStatus::BudgetExceeded;
    result.visited = searcher.visited();
  }
  return result;
}

G3Derivation identity_derivation(const Formula& c, std::vector<Formula> context) {
  std::vector<Formula> full = plus(context, {c});
  const G3Sequent goal{full, c};
  switch (c.kind()) {
    case FormulaKind::Atom:
      return {G3Rule::Rf, goal, {}};
    case FormulaKind::And: {
      const auto side = plus(context, {c.right()});
      const auto other = plus(context, {c.left()});
      G3Derivation left{G3Rule::LAnd, {full, c.left()}, {identity_derivation(c.left(), side)}};
      G3Derivation right{G3Rule::LAnd, {full, c.right()}, {identity_derivation(c.right(), other)}};
      return {G3Rule::RAnd, goal, {std::move(left), std::move(right)}};
    }
    case FormulaKind::Or: {
      G3Derivation left{G3Rule::ROr1, {plus(context, {c.left()}), c}, {identity_derivation(c.left(), context)}};
      G3Derivation right{G3Rule::ROr2, {plus(context, {c.right()}), c}, {identity_derivation(c.right(), context)}};
      return {G3Rule::LOr, goal, {std::move(left), std::move(right)}};
    }
    case FormulaKind::Imp: {
      const auto with_a = plus(full, {c.left()});
      G3Derivation use{G3Rule::LImp,
                       {with_a, c.right()},
                       {identity_derivation(c.left(), full),
                        identity_derivation(c.right(), plus(context, {c.left()}))}};
      return {G3Rule::RImp, goal, {std::move(use)}};
    }
    case FormulaKind::Neg:
      break;
    case FormulaKind::App:
      throw std::invalid_argument("no G3C rules for user connective " + c.name());
  }
  const Formula& b = c.body();
  switch (b.kind()) {
    case FormulaKind::Atom:
      return {G3Rule::RfNeg, goal, {}};
    case FormulaKind::Neg: {
      G3Derivation inner{G3Rule::LNegNeg, {full, b.body()}, {identity_derivation(b.body(), context)}};
      return {G3Rule::RNegNeg, goal, {std::move(inner)}};
    }
    case FormulaKind::And: {
      const Formula na = Formula::neg(b.left());
      const Formula nb = Formula::neg(b.right());
      G3Derivation left{G3Rule::RNegAnd1, {plus(context, {na}), c}, {identity_derivation(na, context)}};
      G3Derivation right{G3Rule::RNegAnd2, {plus(context, {nb}), c}, {identity_derivation(nb, context)}};
      return {G3Rule::LNegAnd, goal, {std::move(left), std::move(right)}};
    }
    case FormulaKind::Or: {
      const Formula na = Formula::neg(b.left());
      const Formula nb = Formula::neg(b.right());
      G3Derivation left{G3Rule::LNegOr, {full, na}, {identity_derivation(na, plus(context, {nb}))}};
      G3Derivation right{G3Rule::LNegOr, {full, nb}, {identity_derivation(nb, plus(context, {na}))}};
      return {G3Rule::RNegOr, goal, {std::move(left), std::move(right)}};
    }
    case FormulaKind::Imp: {
      const Formula nb = Formula::neg(b.right());
      const auto with_a = plus(full, {b.left()});
      G3Derivation use{G3Rule::LNegImp,
                       {with_a, nb},
                       {identity_derivation(b.left(), full), identity_derivation(nb, plus(context, {b.left()}))}};
      return {G3Rule::RNegImp, goal, {std::move(use)}};
    }
    case FormulaKind::App:
      throw std::invalid_argument("no G3C rules for user connective " + b.name());
  }
  return {G3Rule::Rf, goal, {}};
}

// ---------------------------------------------------------------------------
// Files

namespace {

SExpr seq_sexpr(const G3Sequent& s) {
  std::vector<RExpr> ctx(s.context.begin(), s.context.end());
  return SExpr::list({SExpr::atom("seq"), SExpr::string(to_string(std::span<const RExpr>(ctx))),
                      SExpr::string(to_string(s.succedent))});
}

SExpr node_sexpr(const G3Derivation& d) {
  SExpr n = SExpr::list({SExpr::atom("node"), SExpr::atom(std::string(rule_name(d.rule))), seq_sexpr(d.conclusion)});
  for (const auto& c : d.children) n.items.push_back(node_sexpr(c));
  return n;
}

G3Sequent read_seq(const SExpr& e, const ParseOptions& opts) {
  if (!e.is_form("seq") || e.items.size() != 3 || !e.items[1].is_string() || !e.items[2].is_string()) {
    throw SExprError("expected (seq \"<context>\" \"<succedent>\")");
  }
  std::vector<Formula> ctx;
  for (const auto& r : parse_series(e.items[1].text, opts)) {
    if (!r.is_formula()) throw SExprError("G3C contexts hold formulas only: " + to_string(r));
    ctx.push_back(r.formula());
  }
  return G3Sequent{std::move(ctx), parse_formula(e.items[2].text, opts)};
}

G3Derivation read_node(const SExpr& e, const ParseOptions& opts) {
  if (!e.is_form("node") || e.items.size() < 3 || !e.items[1].is_atom()) {
    throw SExprError("expected (node <rule> (seq ...) <child>*)");
  }
  auto rule = parse_g3_rule(e.items[1].text);
  if (!rule) throw SExprError("unknown G3C rule '" + e.items[1].text + "'");
  G3Derivation d{*rule, read_seq(e.items[2], opts), {}};
  for (std::size_t k = 3; k < e.items.size(); ++k) d.children.push_back(read_node(e.items[k], opts));
  return d;
}

}  // namespace

SExpr to_sexpr(const G3Derivation& d, std::span<const G3Sequent> hypotheses) {
  SExpr root = SExpr::list({SExpr::atom("derivation"), SExpr::atom("g3c")});
  if (!hypotheses.empty()) {
    SExpr hyps = SExpr::list({SExpr::atom("hyps")});
    for (const auto& h : hypotheses) hyps.items.push_back(seq_sexpr(h));
    root.items.push_back(std::move(hyps));
  }
  root.items.push_back(node_sexpr(d));
  return root;
}

G3File read_g3_file(const SExpr& e, const ParseOptions& opts) {
  if (!e.is_form("derivation") || e.items.size() < 3 || !e.items[1].is_atom("g3c")) {
    throw SExprError("expected (derivation g3c ...)");
  }
  std::vector<G3Sequent> hyps;
  std::optional<G3Derivation> tree;
  for (std::size_t k = 2; k < e.items.size(); ++k) {
    const auto& item = e.items[k];
    if (item.is_form("hyps")) {
      for (std::size_t j = 1; j < item.items.size(); ++j) hyps.push_back(read_seq(item.items[j], opts));
    } else if (item.is_form("node")) {
      if (tree) throw SExprError("more than one root node");
      tree = read_node(item, opts);
    } else {
      throw SExprError("unexpected item in g3c derivation");
    }
  }
  if (!tree) throw SExprError("missing root node");
  return G3File{std::move(*tree), std::move(hyps)};
}

}  // namespace connexive
