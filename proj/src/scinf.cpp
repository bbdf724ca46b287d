#include "connexive/scinf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <stdexcept>
#include <utility>

namespace connexive {

namespace {

constexpr std::array<std::pair<SCKind, std::string_view>, 31> kNames{{
    {SCKind::RF, "RF"},         {SCKind::WL, "WL"},          {SCKind::PL, "PL"},
    {SCKind::CL, "CL"},         {SCKind::Cut, "Cut"},        {SCKind::RIPlus, "RI+"},
    {SCKind::LIPlus, "LI+"},    {SCKind::RIMinus, "RI-"},    {SCKind::LIMinus, "LI-"},
    {SCKind::NegL, "~L"},       {SCKind::NegR, "~R"},        {SCKind::NegLm, "~L-"},
    {SCKind::NegRm, "~R-"},     {SCKind::AndL, "andL"},      {SCKind::AndR, "andR"},
    {SCKind::AndLm, "andL-"},   {SCKind::AndRm1, "andR-1"},  {SCKind::AndRm2, "andR-2"},
    {SCKind::OrL, "orL"},       {SCKind::OrR1, "orR1"},      {SCKind::OrR2, "orR2"},
    {SCKind::OrLm, "orL-"},     {SCKind::OrRm, "orR-"},      {SCKind::ImpL, "impL"},
    {SCKind::ImpR, "impR"},     {SCKind::ImpLm, "impL-"},    {SCKind::ImpRm, "impR-"},
    {SCKind::ImpLStar, "impL*"}, {SCKind::ImpRStar, "impR*"}, {SCKind::ImpLStarm, "impL*-"},
    {SCKind::ImpRStarm, "impR*-"},
}};

std::string_view kind_name(SCKind k) {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name;
  }
  return "?";
}

SequentPattern pat(std::initializer_list<const char*> extras, const char* succ = nullptr) {
  const ParseOptions opts{nullptr, true};
  SequentPattern p;
  for (const char* e : extras) p.extras.push_back(parse_rexpr(e, opts));
  if (succ) p.succedent = parse_rexpr(succ, opts);
  return p;
}

RulePattern rule(SCKind k, std::vector<SequentPattern> premises, SequentPattern conclusion) {
  return RulePattern{std::string(kind_name(k)), std::move(premises), std::move(conclusion)};
}

bool is_primitive(SCKind k) { return k >= SCKind::NegL && k <= SCKind::ImpRm; }

const RulePattern& pattern_for(SCKind k) {
  if (is_primitive(k)) return primitive_rules()[static_cast<std::size_t>(k) - static_cast<std::size_t>(SCKind::NegL)];
  return starred_rules()[static_cast<std::size_t>(k) - static_cast<std::size_t>(SCKind::ImpLStar)];
}

std::vector<RExpr> concat(std::vector<RExpr> a, std::span<const RExpr> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<RExpr> drop_last(const std::vector<RExpr>& v) { return {v.begin(), v.end() - 1}; }

std::optional<std::string> match_pattern(const RulePattern& r, const SCDerivation& d) {
  auto m = match_conclusion(r, d.conclusion);
  if (!m) return "conclusion does not fit " + r.name;
  if (d.children.size() != r.premises.size()) {
    return r.name + " needs " + std::to_string(r.premises.size()) + " premises";
  }
  for (std::size_t k = 0; k < r.premises.size(); ++k) {
    const RSequent expected = instantiate(r.premises[k], *m);
    if (!(d.children[k].conclusion == expected)) {
      return "premise " + std::to_string(k + 1) + " should be " + to_string(expected);
    }
  }
  return std::nullopt;
}

class Checker {
 public:
  explicit Checker(const Registry& env) : env_(env) {}

  Verdict check(const SCDerivation& d, std::vector<std::size_t>& path) {
    for (std::size_t k = 0; k < d.children.size(); ++k) {
      path.push_back(k);
      Verdict v = check(d.children[k], path);
      path.pop_back();
      if (!v) return v;
    }
    if (auto why = node_error(d)) return Verdict::reject(path, *why);
    return Verdict::accept();
  }

 private:
  std::optional<std::string> node_error(const SCDerivation& d) {
    const auto& ctx = d.conclusion.context;
    const auto& succ = d.conclusion.succedent;
    const auto premises = [&](std::size_t n) -> std::optional<std::string> {
      if (d.children.size() == n) return std::nullopt;
      return rule_name(d.rule) + " needs " + std::to_string(n) + " premises";
    };
    const auto premise_is = [&](std::size_t k, const RSequent& expected) -> std::optional<std::string> {
      if (d.children[k].conclusion == expected) return std::nullopt;
      return "premise " + std::to_string(k + 1) + " should be " + to_string(expected);
    };

    switch (d.rule.kind) {
      case SCKind::RF:
        if (auto e = premises(0)) return e;
        if (ctx.size() != 1 || !(ctx[0] == succ)) return "RF concludes S => S";
        return std::nullopt;
      case SCKind::WL:
        if (auto e = premises(1)) return e;
        if (ctx.empty()) return "WL needs a non-empty context";
        return premise_is(0, {drop_last(ctx), succ});
      case SCKind::PL: {
        if (auto e = premises(1)) return e;
        const auto& prem = d.children[0].conclusion;
        if (!(prem.succedent == succ) || prem.context.size() != ctx.size()) return "PL keeps the sequent's shape";
        for (std::size_t i = 0; i + 1 < ctx.size(); ++i) {
          auto swapped = ctx;
          std::swap(swapped[i], swapped[i + 1]);
          if (swapped == prem.context) return std::nullopt;
        }
        return "PL premise is not one adjacent exchange of the conclusion";
      }
      case SCKind::CL:
        if (auto e = premises(1)) return e;
        if (ctx.empty()) return "CL needs a non-empty context";
        {
          auto more = ctx;
          more.push_back(ctx.back());
          return premise_is(0, {std::move(more), succ});
        }
      case SCKind::Cut: {
        if (auto e = premises(2)) return e;
        const RExpr& s = d.children[0].conclusion.succedent;
        if (auto e = premise_is(0, {ctx, s})) return e;
        return premise_is(1, {concat(ctx, std::span(&s, 1)), succ});
      }
      case SCKind::RIPlus:
        if (auto e = premises(1)) return e;
        if (!succ.is(RKind::Sequent)) return "RI+ concludes a sequent expression";
        return premise_is(0, {concat(ctx, succ.context()), succ.succedent()});
      case SCKind::RIMinus: {
        if (auto e = premises(1)) return e;
        if (!(succ.is(RKind::Refutation) && succ.body().is(RKind::Sequent))) {
          return "RI- concludes a refuted sequent expression";
        }
        const RExpr& seq = succ.body();
        return premise_is(0, {concat(ctx, seq.context()), mk_neg(seq.succedent())});
      }
      case SCKind::LIPlus:
      case SCKind::LIMinus: {
        const bool minus = d.rule.kind == SCKind::LIMinus;
        const std::string name = minus ? "LI-" : "LI+";
        if (ctx.empty()) return name + " needs a principal expression";
        const RExpr& p = ctx.back();
        const bool fits = minus ? p.is(RKind::Refutation) && p.body().is(RKind::Sequent) : p.is(RKind::Sequent);
        if (!fits) return name + " principal must be " + (minus ? "-(G => S)" : "(G => S)");
        const RExpr& seq = minus ? p.body() : p;
        const auto gamma = drop_last(ctx);
        const auto inner = seq.context();
        if (auto e = premises(inner.size() + 1)) return e;
        for (std::size_t j = 0; j < inner.size(); ++j) {
          if (auto e = premise_is(j, {gamma, inner[j]})) return e;
        }
        const RExpr side = minus ? mk_neg(seq.succedent()) : seq.succedent();
        return premise_is(inner.size(), {concat(gamma, std::span(&side, 1)), succ});
      }
      case SCKind::SchemaI:
      case SCKind::SchemaII:
      case SCKind::SchemaIII:
      case SCKind::SchemaIV:
        return schema_error(d);
      default:
        return match_pattern(pattern_for(d.rule.kind), d);
    }
  }

  std::optional<std::string> schema_error(const SCDerivation& d) {
    const ConnectiveDef* def = env_.find(d.rule.connective);
    if (!def) return "unknown connective '" + d.rule.connective + "'";
    auto it = cache_.find(def->name);
    if (it == cache_.end()) it = cache_.emplace(def->name, gen_rules(*def)).first;
    const GeneratedRules& g = it->second;
    const auto& idx = d.rule.indices;
    switch (d.rule.kind) {
      case SCKind::SchemaI:
        if (idx.size() != 1 || idx[0] < 1 || idx[0] > g.right.size()) return "malformed group index";
        return match_pattern(g.right[idx[0] - 1], d);
      case SCKind::SchemaII:
        return match_pattern(g.left, d);
      case SCKind::SchemaIII: {
        const auto sels = def->selections();
        const auto pos = std::find(sels.begin(), sels.end(), idx);
        if (pos == sels.end()) return "malformed selection index";
        return match_pattern(g.right_neg[static_cast<std::size_t>(pos - sels.begin())], d);
      }
      default:
        return match_pattern(g.left_neg, d);
    }
  }

  const Registry& env_;
  std::map<std::string, GeneratedRules, std::less<>> cache_;
};

}  // namespace

std::string rule_name(const SCRule& r) {
  const auto with = [&](const char* schema) {
    std::string out = std::string(schema) + "(" + r.connective;
    for (auto i : r.indices) out += "," + std::to_string(i);
    return out + ")";
  };
  switch (r.kind) {
    case SCKind::SchemaI:
      return with("I");
    case SCKind::SchemaII:
      return with("II");
    case SCKind::SchemaIII:
      return with("III");
    case SCKind::SchemaIV:
      return with("IV");
    default:
      return std::string(kind_name(r.kind));
  }
}

std::optional<SCKind> parse_sc_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

const std::vector<RulePattern>& primitive_rules() {
  static const std::vector<RulePattern> rules = [] {
    using K = SCKind;
    return std::vector<RulePattern>{
        rule(K::NegL, {pat({"-A1"})}, pat({"~A1"})),
        rule(K::NegR, {pat({}, "-A1")}, pat({}, "~A1")),
        rule(K::NegLm, {pat({"A1"})}, pat({"-~A1"})),
        rule(K::NegRm, {pat({}, "A1")}, pat({}, "-~A1")),
        rule(K::AndL, {pat({"A1", "A2"})}, pat({"A1 & A2"})),
        rule(K::AndR, {pat({}, "A1"), pat({}, "A2")}, pat({}, "A1 & A2")),
        rule(K::AndLm, {pat({"-A1"}), pat({"-A2"})}, pat({"-(A1 & A2)"})),
        rule(K::AndRm1, {pat({}, "-A1")}, pat({}, "-(A1 & A2)")),
        rule(K::AndRm2, {pat({}, "-A2")}, pat({}, "-(A1 & A2)")),
        rule(K::OrL, {pat({"A1"}), pat({"A2"})}, pat({"A1 | A2"})),
        rule(K::OrR1, {pat({}, "A1")}, pat({}, "A1 | A2")),
        rule(K::OrR2, {pat({}, "A2")}, pat({}, "A1 | A2")),
        rule(K::OrLm, {pat({"-A1", "-A2"})}, pat({"-(A1 | A2)"})),
        rule(K::OrRm, {pat({}, "-A1"), pat({}, "-A2")}, pat({}, "-(A1 | A2)")),
        rule(K::ImpL, {pat({"(A1 => A2)"})}, pat({"A1 -> A2"})),
        rule(K::ImpR, {pat({}, "(A1 => A2)")}, pat({}, "A1 -> A2")),
        rule(K::ImpLm, {pat({"-(A1 => A2)"})}, pat({"-(A1 -> A2)"})),
        rule(K::ImpRm, {pat({}, "-(A1 => A2)")}, pat({}, "-(A1 -> A2)")),
    };
  }();
  return rules;
}

const std::vector<RulePattern>& starred_rules() {
  static const std::vector<RulePattern> rules = [] {
    using K = SCKind;
    return std::vector<RulePattern>{
        rule(K::ImpLStar, {pat({}, "A1"), pat({"A2"})}, pat({"A1 -> A2"})),
        rule(K::ImpRStar, {pat({"A1"}, "A2")}, pat({}, "A1 -> A2")),
        rule(K::ImpLStarm, {pat({}, "A1"), pat({"-A2"})}, pat({"-(A1 -> A2)"})),
        rule(K::ImpRStarm, {pat({"A1"}, "-A2")}, pat({}, "-(A1 -> A2)")),
    };
  }();
  return rules;
}

Verdict check_scinf(const SCDerivation& d, const Registry& env) {
  Checker checker(env);
  std::vector<std::size_t> path;
  return checker.check(d, path);
}

// ---------------------------------------------------------------------------
// Builders

namespace sc {

namespace {

[[noreturn]] void misfit(const std::string& what) { throw std::logic_error("derivation builder: " + what); }

const RSequent& end(const SCDerivation& d) { return d.conclusion; }

}  // namespace

SCDerivation node(SCRule rule, RSequent conclusion, std::vector<SCDerivation> children) {
  return SCDerivation{std::move(rule), std::move(conclusion), std::move(children)};
}

SCDerivation rf(const RExpr& s) { return node(SCKind::RF, {{s}, s}); }

SCDerivation weaken(SCDerivation d, const RExpr& t) {
  RSequent c = end(d);
  c.context.push_back(t);
  return node(SCKind::WL, std::move(c), {std::move(d)});
}

SCDerivation swap(SCDerivation d, std::size_t i) {
  RSequent c = end(d);
  if (i + 1 >= c.context.size()) misfit("PL position out of range");
  std::swap(c.context[i], c.context[i + 1]);
  return node(SCKind::PL, std::move(c), {std::move(d)});
}

SCDerivation contract(SCDerivation d) {
  RSequent c = end(d);
  const auto n = c.context.size();
  if (n < 2 || !(c.context[n - 1] == c.context[n - 2])) misfit("CL needs two equal last members");
  c.context.pop_back();
  return node(SCKind::CL, std::move(c), {std::move(d)});
}

SCDerivation cut(SCDerivation left, SCDerivation right) {
  const RSequent& l = end(left);
  const RSequent& r = end(right);
  auto expected = l.context;
  expected.push_back(l.succedent);
  if (!(expected == r.context)) misfit("Cut premises disagree: " + to_string(l) + " / " + to_string(r));
  RSequent c{l.context, r.succedent};
  return node(SCKind::Cut, std::move(c), {std::move(left), std::move(right)});
}

SCDerivation adjust(SCDerivation d, const std::vector<RExpr>& target) {
  const auto count = [](const std::vector<RExpr>& v, const RExpr& x) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), x));
  };
  // contract surplus copies
  while (true) {
    const auto& ctx = end(d).context;
    const auto surplus = std::find_if(ctx.begin(), ctx.end(), [&](const RExpr& x) {
      const std::size_t want = count(target, x);
      if (want == 0) misfit(to_string(x) + " is not in the target context");
      return count(ctx, x) > want;
    });
    if (surplus == ctx.end()) break;
    const RExpr x = *surplus;
    std::vector<RExpr> order;
    std::size_t taken = 0;
    for (const auto& y : ctx) {
      if (y == x && taken < 2) {
        ++taken;
      } else {
        order.push_back(y);
      }
    }
    order.push_back(x);
    order.push_back(x);
    d = contract(adjust(std::move(d), order));
  }
  // weaken in missing copies
  for (const auto& x : target) {
    while (count(end(d).context, x) < count(target, x)) d = weaken(std::move(d), x);
  }
  // bubble into order
  for (std::size_t k = 0; k < target.size(); ++k) {
    const auto& ctx = end(d).context;
    std::size_t j = k;
    while (j < ctx.size() && !(ctx[j] == target[k])) ++j;
    if (j == ctx.size()) misfit("adjust lost " + to_string(target[k]));
    for (; j > k; --j) d = swap(std::move(d), j - 1);
  }
  return d;
}

SCDerivation identity(const RExpr& s, std::vector<RExpr> context) {
  context.push_back(s);
  return adjust(rf(s), context);
}

SCDerivation apply(SCKind kind, std::vector<SCDerivation> premises, const RSequent& conclusion) {
  SCDerivation d = node(kind, conclusion, std::move(premises));
  if (auto why = match_pattern(pattern_for(kind), d)) misfit(std::string(kind_name(kind)) + ": " + *why);
  return d;
}

}  // namespace sc

// ---------------------------------------------------------------------------
// Starred rules

namespace {

const Formula& as_formula(const RExpr& e) {
  if (!e.is_formula()) throw std::logic_error("expected a formula, got " + to_string(e));
  return e.formula();
}

/// B from -B
const Formula& refuted_formula(const RExpr& e) {
  if (!e.is(RKind::Refutation)) throw std::logic_error("expected a refuted formula, got " + to_string(e));
  return as_formula(e.body());
}

}  // namespace

SCDerivation derive_starred(SCKind kind, std::vector<SCDerivation> premises) {
  const auto need = [&](std::size_t n) {
    if (premises.size() != n) throw std::logic_error("derive_starred: wrong premise count");
  };
  switch (kind) {
    case SCKind::ImpRStar:
    case SCKind::ImpRStarm: {
      need(1);
      const RSequent p = premises[0].conclusion;
      if (p.context.empty()) throw std::logic_error("derive_starred: premise lacks A");
      const Formula a = as_formula(p.context.back());
      const auto delta = drop_last(p.context);
      if (kind == SCKind::ImpRStar) {
        const Formula b = as_formula(p.succedent);
        const RExpr seq = RExpr::sequent({a}, b);
        auto ri = sc::node(SCKind::RIPlus, {delta, seq}, std::move(premises));
        return sc::apply(SCKind::ImpR, {std::move(ri)}, {delta, Formula::imp(a, b)});
      }
      const Formula b = refuted_formula(p.succedent);
      const RExpr seq = RExpr::refute(RExpr::sequent({a}, b));
      auto ri = sc::node(SCKind::RIMinus, {delta, seq}, std::move(premises));
      return sc::apply(SCKind::ImpRm, {std::move(ri)}, {delta, RExpr::refute(Formula::imp(a, b))});
    }
    case SCKind::ImpLStar:
    case SCKind::ImpLStarm: {
      need(2);
      const RSequent& left = premises[0].conclusion;
      const RSequent right = premises[1].conclusion;
      if (right.context.empty()) throw std::logic_error("derive_starred: premise lacks B");
      const auto& delta = left.context;
      const Formula a = as_formula(left.succedent);
      const bool minus = kind == SCKind::ImpLStarm;
      const Formula b = minus ? refuted_formula(right.context.back()) : as_formula(right.context.back());
      const RExpr seq = RExpr::sequent({a}, b);
      auto li_ctx = delta;
      li_ctx.push_back(minus ? RExpr::refute(seq) : seq);
      auto li = sc::node(minus ? SCKind::LIMinus : SCKind::LIPlus, {li_ctx, right.succedent}, std::move(premises));
      auto ctx = delta;
      ctx.push_back(minus ? RExpr::refute(Formula::imp(a, b)) : RExpr(Formula::imp(a, b)));
      return sc::apply(minus ? SCKind::ImpLm : SCKind::ImpL, {std::move(li)}, {ctx, right.succedent});
    }
    default:
      throw std::invalid_argument("derive_starred: not a starred rule");
  }
}

// ---------------------------------------------------------------------------
// G3C embedding

namespace {

std::vector<RExpr> lift(const std::vector<Formula>& ctx) { return {ctx.begin(), ctx.end()}; }

std::vector<RExpr> lift(const std::vector<Formula>& ctx, std::initializer_list<RExpr> more) {
  std::vector<RExpr> out(ctx.begin(), ctx.end());
  out.insert(out.end(), more);
  return out;
}

/// T, ~X => C  to  T, -X => C
SCDerivation ctx_to_ref(SCDerivation d, const std::vector<RExpr>& t, const Formula& x) {
  const RExpr minus = RExpr::refute(x);
  const Formula tilde = Formula::neg(x);
  auto with_minus = t;
  with_minus.push_back(minus);
  auto left = sc::apply(SCKind::NegR, {sc::identity(minus, t)}, {with_minus, tilde});
  auto full = with_minus;
  full.push_back(tilde);
  return sc::cut(std::move(left), sc::adjust(std::move(d), full));
}

/// S => ~X  to  S => -X
SCDerivation succ_to_ref(SCDerivation d, const Formula& x) {
  const RExpr minus = RExpr::refute(x);
  auto sigma = d.conclusion.context;
  auto ctx = sigma;
  ctx.push_back(Formula::neg(x));
  auto right = sc::apply(SCKind::NegL, {sc::identity(minus, sigma)}, {ctx, minus});
  return sc::cut(std::move(d), std::move(right));
}

std::vector<Formula> remove_one(const std::vector<Formula>& ctx, const Formula& p) {
  std::vector<Formula> out = ctx;
  out.erase(std::find(out.begin(), out.end(), p));
  return out;
}

class Embedder {
 public:
  SCDerivation embed(const G3Derivation& d) {
    const auto& g = d.conclusion.context;
    const Formula& c = d.conclusion.succedent;
    const std::vector<RExpr> gamma = lift(g);
    const auto kid = [&](std::size_t k, const std::vector<RExpr>& ctx) { return sc::adjust(embed(d.children[k]), ctx); };

    switch (d.rule) {
      case G3Rule::Rf:
      case G3Rule::RfNeg:
        return sc::adjust(sc::rf(c), gamma);
      case G3Rule::Hyp:
        throw std::invalid_argument("Hyp leaves have no SC∞ counterpart");
      case G3Rule::AnalyticCut: {
        const Formula& x = d.children[0].conclusion.succedent;
        return sc::cut(kid(0, gamma), kid(1, lift(g, {x})));
      }
      case G3Rule::RAnd:
        return sc::apply(SCKind::AndR, {kid(0, gamma), kid(1, gamma)}, {gamma, c});
      case G3Rule::ROr1:
        return sc::apply(SCKind::OrR1, {kid(0, gamma)}, {gamma, c});
      case G3Rule::ROr2:
        return sc::apply(SCKind::OrR2, {kid(0, gamma)}, {gamma, c});
      case G3Rule::RImp:
        return derive_starred(SCKind::ImpRStar, {kid(0, lift(g, {c.left()}))});
      case G3Rule::RNegNeg: {
        auto inner = sc::apply(SCKind::NegRm, {kid(0, gamma)}, {gamma, RExpr::refute(c.body())});
        return sc::apply(SCKind::NegR, {std::move(inner)}, {gamma, c});
      }
      case G3Rule::RNegAnd1:
      case G3Rule::RNegAnd2: {
        const bool first = d.rule == G3Rule::RNegAnd1;
        const Formula& part = first ? c.body().left() : c.body().right();
        auto ref = succ_to_ref(kid(0, gamma), part);
        auto inner = sc::apply(first ? SCKind::AndRm1 : SCKind::AndRm2, {std::move(ref)}, {gamma, RExpr::refute(c.body())});
        return sc::apply(SCKind::NegR, {std::move(inner)}, {gamma, c});
      }
      case G3Rule::RNegOr: {
        auto l = succ_to_ref(kid(0, gamma), c.body().left());
        auto r = succ_to_ref(kid(1, gamma), c.body().right());
        auto inner = sc::apply(SCKind::OrRm, {std::move(l), std::move(r)}, {gamma, RExpr::refute(c.body())});
        return sc::apply(SCKind::NegR, {std::move(inner)}, {gamma, c});
      }
      case G3Rule::RNegImp: {
        const Formula& a = c.body().left();
        const Formula& b = c.body().right();
        auto ref = succ_to_ref(kid(0, lift(g, {a})), b);
        auto inner = derive_starred(SCKind::ImpRStarm, {std::move(ref)});
        return sc::apply(SCKind::NegR, {std::move(inner)}, {gamma, c});
      }
      default:
        break;
    }

    const Formula p = *principal_formula(d);
    const std::vector<Formula> rest = remove_one(g, p);
    const std::vector<RExpr> base = lift(rest);
    const auto at_end = [&](const RExpr& principal) { return lift(rest, {principal}); };
    SCDerivation out = [&]() -> SCDerivation {
      switch (d.rule) {
        case G3Rule::LAnd:
          return sc::apply(SCKind::AndL, {kid(0, lift(rest, {p.left(), p.right()}))}, {at_end(p), c});
        case G3Rule::LOr:
          return sc::apply(SCKind::OrL, {kid(0, lift(rest, {p.left()})), kid(1, lift(rest, {p.right()}))},
                           {at_end(p), c});
        case G3Rule::LImp: {
          const auto delta = at_end(p);
          auto both = derive_starred(SCKind::ImpLStar, {kid(0, delta), kid(1, lift(rest, {p, p.right()}))});
          return sc::contract(std::move(both));
        }
        case G3Rule::LNegNeg: {
          const RExpr minus = RExpr::refute(p.body());
          auto inner = sc::apply(SCKind::NegLm, {kid(0, lift(rest, {p.body().body()}))}, {at_end(minus), c});
          return sc::apply(SCKind::NegL, {std::move(inner)}, {at_end(p), c});
        }
        case G3Rule::LNegAnd: {
          const Formula& a = p.body().left();
          const Formula& b = p.body().right();
          auto l = ctx_to_ref(kid(0, lift(rest, {Formula::neg(a)})), base, a);
          auto r = ctx_to_ref(kid(1, lift(rest, {Formula::neg(b)})), base, b);
          auto inner = sc::apply(SCKind::AndLm, {std::move(l), std::move(r)}, {at_end(RExpr::refute(p.body())), c});
          return sc::apply(SCKind::NegL, {std::move(inner)}, {at_end(p), c});
        }
        case G3Rule::LNegOr: {
          const Formula& a = p.body().left();
          const Formula& b = p.body().right();
          auto step = ctx_to_ref(kid(0, lift(rest, {Formula::neg(a), Formula::neg(b)})), lift(rest, {Formula::neg(b)}), a);
          step = ctx_to_ref(std::move(step), lift(rest, {RExpr::refute(a)}), b);
          auto inner = sc::apply(SCKind::OrLm, {std::move(step)}, {at_end(RExpr::refute(p.body())), c});
          return sc::apply(SCKind::NegL, {std::move(inner)}, {at_end(p), c});
        }
        case G3Rule::LNegImp: {
          const Formula& b = p.body().right();
          const auto delta = at_end(p);
          auto right = ctx_to_ref(kid(1, lift(rest, {Formula::neg(b)})), base, b);
          right = sc::adjust(std::move(right), lift(rest, {p, RExpr::refute(b)}));
          auto both = derive_starred(SCKind::ImpLStarm, {kid(0, delta), std::move(right)});
          auto ctx = delta;
          ctx.push_back(p);
          auto neg = sc::apply(SCKind::NegL, {std::move(both)}, {ctx, c});
          return sc::contract(std::move(neg));
        }
        default:
          throw std::logic_error("unexpected G3C rule");
      }
    }();
    return sc::adjust(std::move(out), gamma);
  }
};

}  // namespace

SCDerivation embed_g3c(const G3Derivation& d) { return Embedder{}.embed(d); }

// ---------------------------------------------------------------------------
// Files

namespace {

SExpr rule_sexpr(const SCRule& r) {
  const char* head = nullptr;
  switch (r.kind) {
    case SCKind::SchemaI:
      head = "I";
      break;
    case SCKind::SchemaII:
      head = "II";
      break;
    case SCKind::SchemaIII:
      head = "III";
      break;
    case SCKind::SchemaIV:
      head = "IV";
      break;
    default:
      return SExpr::atom(std::string(kind_name(r.kind)));
  }
  SExpr out = SExpr::list({SExpr::atom(head), SExpr::atom(r.connective)});
  for (auto i : r.indices) out.items.push_back(SExpr::atom(std::to_string(i)));
  return out;
}

SExpr node_sexpr(const SCDerivation& d) {
  SExpr seq = SExpr::list({SExpr::atom("seq"), SExpr::string(to_string(std::span<const RExpr>(d.conclusion.context))),
                           SExpr::string(to_string(d.conclusion.succedent))});
  SExpr n = SExpr::list({SExpr::atom("node"), rule_sexpr(d.rule), std::move(seq)});
  for (const auto& c : d.children) n.items.push_back(node_sexpr(c));
  return n;
}

std::size_t read_index(const SExpr& e) {
  if (!e.is_atom() || e.text.empty() || !std::all_of(e.text.begin(), e.text.end(), ::isdigit)) {
    throw SExprError("expected an index");
  }
  return std::stoul(e.text);
}

SCRule read_rule(const SExpr& e) {
  if (e.is_atom()) {
    auto k = parse_sc_kind(e.text);
    if (!k) throw SExprError("unknown SC rule '" + e.text + "'");
    return *k;
  }
  if (!e.is_list() || e.items.size() < 2 || !e.items[0].is_atom() || !e.items[1].is_atom()) {
    throw SExprError("expected a rule name or (I|II|III|IV <connective> <index>*)");
  }
  const std::string& head = e.items[0].text;
  const std::string& f = e.items[1].text;
  std::vector<std::size_t> idx;
  for (std::size_t k = 2; k < e.items.size(); ++k) idx.push_back(read_index(e.items[k]));
  if (head == "I" && idx.size() == 1) return SCRule::schema_i(f, idx[0]);
  if (head == "II" && idx.empty()) return SCRule::schema_ii(f);
  if (head == "III" && !idx.empty()) return SCRule::schema_iii(f, idx);
  if (head == "IV" && idx.empty()) return SCRule::schema_iv(f);
  throw SExprError("malformed schema rule");
}

SCDerivation read_node(const SExpr& e, const ParseOptions& opts) {
  if (!e.is_form("node") || e.items.size() < 3) throw SExprError("expected (node <rule> (seq ...) <child>*)");
  const SExpr& s = e.items[2];
  if (!s.is_form("seq") || s.items.size() != 3 || !s.items[1].is_string() || !s.items[2].is_string()) {
    throw SExprError("expected (seq \"<context>\" \"<succedent>\")");
  }
  RSequent conclusion{parse_series(s.items[1].text, opts), parse_rexpr(s.items[2].text, opts)};
  SCDerivation d{read_rule(e.items[1]), std::move(conclusion), {}};
  for (std::size_t k = 3; k < e.items.size(); ++k) d.children.push_back(read_node(e.items[k], opts));
  return d;
}

void expect_scinf(const SExpr& e) {
  if (!e.is_form("derivation") || e.items.size() < 3 || !e.items[1].is_atom("scinf")) {
    throw SExprError("expected (derivation scinf ...)");
  }
}

}  // namespace

SExpr to_sexpr(const SCDerivation& d, const std::optional<EnvHeader>& env) {
  SExpr root = SExpr::list({SExpr::atom("derivation"), SExpr::atom("scinf")});
  if (env) root.items.push_back(SExpr::list({SExpr::atom("env"), SExpr::string(env->path), SExpr::string(env->hash)}));
  root.items.push_back(node_sexpr(d));
  return root;
}

std::optional<EnvHeader> read_env_header(const SExpr& e) {
  expect_scinf(e);
  for (std::size_t k = 2; k < e.items.size(); ++k) {
    const auto& item = e.items[k];
    if (!item.is_form("env")) continue;
    if (item.items.size() != 3 || !item.items[1].is_string() || !item.items[2].is_string()) {
      throw SExprError("expected (env \"<path>\" \"<sha256>\")");
    }
    return EnvHeader{item.items[1].text, item.items[2].text};
  }
  return std::nullopt;
}

SCFile read_sc_file(const SExpr& e, const Registry& env) {
  expect_scinf(e);
  const ParseOptions opts{&env.signature(), false};
  std::optional<SCDerivation> tree;
  for (std::size_t k = 2; k < e.items.size(); ++k) {
    const auto& item = e.items[k];
    if (item.is_form("env")) continue;
    if (!item.is_form("node")) throw SExprError("unexpected item in scinf derivation");
    if (tree) throw SExprError("more than one root node");
    tree = read_node(item, opts);
  }
  if (!tree) throw SExprError("missing root node");
  return SCFile{std::move(*tree), read_env_header(e)};
}

}  // namespace connexive
