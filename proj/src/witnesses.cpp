#include "connexive/witnesses.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace connexive {

namespace {

using D = SCDerivation;

std::vector<RExpr> lift(std::span<const Formula> fs) { return {fs.begin(), fs.end()}; }

std::vector<RExpr> refuted(std::span<const Formula> fs) {
  std::vector<RExpr> out;
  for (const auto& f : fs) out.push_back(RExpr::refute(f));
  return out;
}

std::vector<RExpr> cat(std::vector<RExpr> a, std::initializer_list<RExpr> b) {
  a.insert(a.end(), b);
  return a;
}

std::vector<RExpr> cat(std::vector<RExpr> a, std::span<const RExpr> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Shape of a left-nested chain: A & B & C or A | B | C, optionally refuted.
struct Chain {
  bool conj;
  bool neg;

  Formula join(std::span<const Formula> parts) const { return conj ? conjoin(parts) : disjoin(parts); }
  RExpr item(const Formula& f) const { return neg ? RExpr::refute(f) : RExpr(f); }
};

constexpr Chain kConj{true, false};
constexpr Chain kDisj{false, false};
constexpr Chain kNegConj{true, true};
constexpr Chain kNegDisj{false, true};

/// Right rule with one premise per part: andR, orR-.
D all_intro(const std::vector<RExpr>& delta, std::span<const Formula> parts, std::vector<D> ds, SCKind rule,
            Chain c) {
  D acc = std::move(ds[0]);
  for (std::size_t k = 1; k < parts.size(); ++k) {
    acc = sc::apply(rule, {std::move(acc), std::move(ds[k])}, {delta, c.item(c.join(parts.first(k + 1)))});
  }
  return acc;
}

/// Right rule picking one part: orR1/orR2, andR-1/andR-2.
D pick_intro(const std::vector<RExpr>& delta, std::span<const Formula> parts, std::size_t i, D d, SCKind first,
             SCKind second, Chain c) {
  if (parts.size() == 1) return d;
  const RSequent end{delta, c.item(c.join(parts))};
  if (i + 1 == parts.size()) return sc::apply(second, {std::move(d)}, end);
  D inner = pick_intro(delta, parts.first(parts.size() - 1), i, std::move(d), first, second, c);
  return sc::apply(first, {std::move(inner)}, end);
}

/// Left rule with one premise per part: orL, andL-. Case k concludes x, part_k => S.
D branch_elim(const std::vector<RExpr>& x, std::span<const Formula> parts, std::vector<D> cases, SCKind rule,
              Chain c) {
  if (parts.size() == 1) return std::move(cases[0]);
  const RExpr& succ = cases[0].conclusion.succedent;
  RSequent end{cat(x, {c.item(c.join(parts))}), succ};
  D last = std::move(cases.back());
  cases.pop_back();
  D left = branch_elim(x, parts.first(parts.size() - 1), std::move(cases), rule, c);
  return sc::apply(rule, {std::move(left), std::move(last)}, end);
}

/// Left rule splitting one member into all parts: andL, orL-. d concludes x, parts... => S.
D chain_elim(const std::vector<RExpr>& x, std::span<const Formula> parts, D d, SCKind rule, Chain c) {
  if (parts.size() == 1) return d;
  const RExpr succ = d.conclusion.succedent;
  const Formula& last = parts.back();
  const auto init = parts.first(parts.size() - 1);
  std::vector<RExpr> reordered = cat(x, {c.item(last)});
  for (const auto& f : init) reordered.push_back(c.item(f));
  d = sc::adjust(std::move(d), reordered);
  d = chain_elim(cat(x, {c.item(last)}), init, std::move(d), rule, c);
  d = sc::adjust(std::move(d), cat(x, {c.item(c.join(init)), c.item(last)}));
  return sc::apply(rule, {std::move(d)}, {cat(x, {c.item(c.join(parts))}), succ});
}

std::vector<Formula> overlines(std::span<const RExpr> xs) {
  std::vector<Formula> out;
  for (const auto& x : xs) out.push_back(overline(x));
  return out;
}

}  // namespace

std::array<RSequent, 4> strict_equiv_sequents(const RExpr& s, const RExpr& t) {
  return {RSequent{{s}, t}, RSequent{{t}, s}, RSequent{{mk_neg(t)}, mk_neg(s)}, RSequent{{mk_neg(s)}, mk_neg(t)}};
}

Verdict check_witness(const StrictEquivWitness& w, const RExpr& s, const RExpr& t, const Registry& env) {
  const auto ends = strict_equiv_sequents(s, t);
  const D* parts[] = {&w.fwd, &w.bwd, &w.fwd_neg, &w.bwd_neg};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(parts[k]->conclusion == ends[k])) {
      return Verdict::reject({k}, "ends in " + to_string(parts[k]->conclusion) + ", expected " + to_string(ends[k]));
    }
    Verdict v = check_scinf(*parts[k], env);
    if (!v) {
      v.path.insert(v.path.begin(), k);
      return v;
    }
  }
  return Verdict::accept();
}

StrictEquivWitness overline_witness(const RExpr& s) {
  switch (s.kind()) {
    case RKind::Formula:
      return {sc::rf(s), sc::rf(s), sc::rf(mk_neg(s)), sc::rf(mk_neg(s))};
    case RKind::Refutation: {
      const RExpr& u = s.body();
      StrictEquivWitness w = overline_witness(u);
      const Formula ou = overline(u);
      const Formula o = Formula::neg(ou);
      const RExpr mo = RExpr::refute(o);
      return {
          sc::apply(SCKind::NegL, {std::move(w.bwd_neg)}, {{o}, s}),
          sc::apply(SCKind::NegR, {std::move(w.fwd_neg)}, {{s}, o}),
          sc::apply(SCKind::NegRm, {std::move(w.bwd)}, {{u}, mo}),
          sc::apply(SCKind::NegLm, {std::move(w.fwd)}, {{mo}, u}),
      };
    }
    case RKind::Sequent:
      break;
  }
  const RExpr& v = s.succedent();
  const RExpr ms = RExpr::refute(s);
  StrictEquivWitness wv = overline_witness(v);
  const Formula ov = overline(v);
  const RExpr mov = RExpr::refute(ov);
  if (s.context().empty()) {
    return {
        sc::node(SCKind::RIPlus, {{ov}, s}, {std::move(wv.fwd)}),
        sc::node(SCKind::LIPlus, {{s}, ov}, {std::move(wv.bwd)}),
        sc::node(SCKind::LIMinus, {{ms}, mov}, {std::move(wv.fwd_neg)}),
        sc::node(SCKind::RIMinus, {{mov}, ms}, {std::move(wv.bwd_neg)}),
    };
  }

  const std::vector<RExpr> us(s.context().begin(), s.context().end());
  std::vector<StrictEquivWitness> wu;
  for (const auto& u : us) wu.push_back(overline_witness(u));
  const std::vector<Formula> os = overlines(us);
  const std::vector<RExpr> gamma = lift(os);
  const Formula c = conjoin(os);
  const Formula o = Formula::imp(c, ov);
  const RExpr mo = RExpr::refute(o);

  // us => C
  const auto conj_of_us = [&] {
    std::vector<D> ds;
    for (const auto& w : wu) ds.push_back(sc::adjust(w.bwd, us));
    return all_intro(us, os, std::move(ds), SCKind::AndR, kConj);
  };
  // overline(u_j) members => u_j, one premise per context member
  const auto li_premises = [&] {
    std::vector<D> ds;
    for (const auto& w : wu) ds.push_back(sc::adjust(w.fwd, gamma));
    return ds;
  };

  StrictEquivWitness out{sc::rf(s), sc::rf(s), sc::rf(s), sc::rf(s)};

  // C -> ov => (us => v)
  {
    D right = sc::adjust(std::move(wv.fwd), cat(us, {RExpr(ov)}));
    D l = derive_starred(SCKind::ImpLStar, {conj_of_us(), std::move(right)});
    l = sc::adjust(std::move(l), cat({RExpr(o)}, us));
    out.fwd = sc::node(SCKind::RIPlus, {{o}, s}, {std::move(l)});
  }
  // (us => v) => C -> ov
  {
    auto ds = li_premises();
    ds.push_back(sc::adjust(std::move(wv.bwd), cat(gamma, {v})));
    D li = sc::node(SCKind::LIPlus, {cat(gamma, {s}), ov}, std::move(ds));
    li = sc::adjust(std::move(li), cat({s}, gamma));
    out.bwd = derive_starred(SCKind::ImpRStar, {chain_elim({s}, os, std::move(li), SCKind::AndL, kConj)});
  }
  // -(us => v) => -(C -> ov)
  {
    auto ds = li_premises();
    ds.push_back(sc::adjust(std::move(wv.fwd_neg), cat(gamma, {mk_neg(v)})));
    D li = sc::node(SCKind::LIMinus, {cat(gamma, {ms}), mov}, std::move(ds));
    li = sc::adjust(std::move(li), cat({ms}, gamma));
    out.fwd_neg = derive_starred(SCKind::ImpRStarm, {chain_elim({ms}, os, std::move(li), SCKind::AndL, kConj)});
  }
  // -(C -> ov) => -(us => v)
  {
    D right = sc::adjust(std::move(wv.bwd_neg), cat(us, {mov}));
    D l = derive_starred(SCKind::ImpLStarm, {conj_of_us(), std::move(right)});
    l = sc::adjust(std::move(l), cat({mo}, us));
    out.bwd_neg = sc::node(SCKind::RIMinus, {{mo}, ms}, {std::move(l)});
  }
  return out;
}

std::vector<Formula> fresh_atoms(std::size_t n) {
  std::vector<Formula> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back(Formula::atom("p" + std::to_string(j)));
  return out;
}

Formula applied(const ConnectiveDef& def) { return Formula::app(def.name, fresh_atoms(def.arity)); }

Formula applied_defining_formula(const ConnectiveDef& def) {
  return substitute(defining_formula(def), fresh_atoms(def.arity));
}

Formula applied_dual_formula(const ConnectiveDef& def) {
  return substitute(dual_defining_formula(def), fresh_atoms(def.arity));
}

StrictEquivWitness definition_witness(const ConnectiveDef& def) {
  const auto args = fresh_atoms(def.arity);
  const RExpr f = Formula::app(def.name, args);
  const RExpr mf = RExpr::refute(f.formula());
  const auto groups = def.instantiate(args);
  const std::size_t t = groups.size();

  std::vector<std::vector<Formula>> o(t);
  std::vector<std::vector<StrictEquivWitness>> w(t);
  std::vector<Formula> k;
  for (std::size_t i = 0; i < t; ++i) {
    o[i] = overlines(groups[i]);
    for (const auto& s : groups[i]) w[i].push_back(overline_witness(s));
    k.push_back(conjoin(o[i]));
  }
  const Formula d = disjoin(k);
  const RExpr md = RExpr::refute(d);

  StrictEquivWitness out{sc::rf(f), sc::rf(f), sc::rf(f), sc::rf(f)};

  // F => D: schema II, each case closes its own disjunct
  {
    std::vector<D> cases;
    for (std::size_t i = 0; i < t; ++i) {
      std::vector<D> parts;
      for (const auto& wk : w[i]) parts.push_back(sc::adjust(wk.bwd, groups[i]));
      D conj = all_intro(groups[i], o[i], std::move(parts), SCKind::AndR, kConj);
      cases.push_back(pick_intro(groups[i], k, i, std::move(conj), SCKind::OrR1, SCKind::OrR2, kDisj));
    }
    out.fwd = sc::node(SCRule::schema_ii(def.name), {{f}, d}, std::move(cases));
  }
  // D => F: case split on the disjuncts, schema I in each case
  {
    std::vector<D> cases;
    for (std::size_t i = 0; i < t; ++i) {
      const auto ctx = lift(o[i]);
      std::vector<D> parts;
      for (const auto& wk : w[i]) parts.push_back(sc::adjust(wk.fwd, ctx));
      D intro = sc::node(SCRule::schema_i(def.name, i + 1), {ctx, f}, std::move(parts));
      cases.push_back(chain_elim({}, o[i], std::move(intro), SCKind::AndL, kConj));
    }
    out.bwd = branch_elim({}, k, std::move(cases), SCKind::OrL, kDisj);
  }
  // -D => -F: split -D into the -K_i, then branch on each -K_i; one schema III leaf per selection
  {
    std::function<D(std::vector<RExpr>, std::size_t, std::vector<std::size_t>)> split =
        [&](std::vector<RExpr> done, std::size_t i, std::vector<std::size_t> sel) -> D {
      if (i == t) {
        std::vector<D> parts;
        for (std::size_t g = 0; g < t; ++g) parts.push_back(sc::adjust(w[g][sel[g] - 1].bwd_neg, done));
        return sc::node(SCRule::schema_iii(def.name, sel), {done, mf}, std::move(parts));
      }
      const auto later = refuted(std::span(k).subspan(i + 1));
      std::vector<D> cases;
      for (std::size_t m = 0; m < o[i].size(); ++m) {
        auto next = sel;
        next.push_back(m + 1);
        D sub = split(cat(done, {RExpr::refute(o[i][m])}), i + 1, std::move(next));
        cases.push_back(sc::adjust(std::move(sub), cat(cat(done, later), {RExpr::refute(o[i][m])})));
      }
      D joined = branch_elim(cat(done, later), o[i], std::move(cases), SCKind::AndLm, kNegConj);
      return sc::adjust(std::move(joined), cat(done, refuted(std::span(k).subspan(i))));
    };
    out.fwd_neg = chain_elim({}, k, split({}, 0, {}), SCKind::OrLm, kNegDisj);
  }
  // -F => -D: schema IV, one premise per selection
  {
    std::vector<D> premises;
    for (const auto& sel : def.selections()) {
      std::vector<RExpr> ctx;
      for (std::size_t i = 0; i < t; ++i) ctx.push_back(mk_neg(groups[i][sel[i] - 1]));
      std::vector<D> negk;
      for (std::size_t i = 0; i < t; ++i) {
        D leaf = sc::adjust(w[i][sel[i] - 1].fwd_neg, ctx);
        negk.push_back(pick_intro(ctx, o[i], sel[i] - 1, std::move(leaf), SCKind::AndRm1, SCKind::AndRm2, kNegConj));
      }
      premises.push_back(all_intro(ctx, k, std::move(negk), SCKind::OrRm, kNegDisj));
    }
    out.bwd_neg = sc::node(SCRule::schema_iv(def.name), {{mf}, md}, std::move(premises));
  }
  return out;
}

std::array<G3Sequent, 4> dual_sequents(const ConnectiveDef& def) {
  const Formula nd = Formula::neg(applied_defining_formula(def));
  const Formula dual = applied_dual_formula(def);
  return {G3Sequent{{nd}, dual}, G3Sequent{{dual}, nd}, G3Sequent{{Formula::neg(dual)}, Formula::neg(nd)},
          G3Sequent{{Formula::neg(nd)}, Formula::neg(dual)}};
}

G3Sequent star_sequent(const RSequent& s, const Registry& env) {
  std::vector<Formula> ctx;
  for (const auto& c : s.context) ctx.push_back(star(c, env));
  return G3Sequent{std::move(ctx), star(s.succedent, env)};
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

namespace {

CheckRecord timed(std::string name, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec{std::move(name), false, {}, {}};
  try {
    rec.detail = body();
    rec.passed = rec.detail.empty();
  } catch (const std::exception& e) {
    rec.detail = std::string("error: ") + e.what();
  }
  rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return rec;
}

/// Empty on success, otherwise the reason.
std::string prove_and_check(const G3Sequent& goal, std::span<const G3Sequent> hyps, const SearchBudget& budget) {
  auto r = prove_g3c(goal, hyps, budget);
  if (r.status != SearchStatus::Found) return std::string(to_string(r.status)) + ": " + to_string(goal);
  Verdict v = check_g3c(*r.derivation, hyps);
  return v ? "" : v.describe();
}

std::vector<RulePattern> all_rules(const GeneratedRules& g) {
  std::vector<RulePattern> out = g.right;
  out.push_back(g.left);
  out.insert(out.end(), g.right_neg.begin(), g.right_neg.end());
  out.push_back(g.left_neg);
  return out;
}

}  // namespace

VerificationReport verify_definition(const ConnectiveDef& def, const Registry& env, const SearchBudget& budget) {
  VerificationReport report{def.name, {}};
  const RExpr f = applied(def);
  const RExpr d = applied_defining_formula(def);

  StrictEquivWitness witness{sc::rf(f), sc::rf(f), sc::rf(f), sc::rf(f)};
  report.checks.push_back(timed("witness " + to_string(f) + " <=>s " + to_string(d), [&]() -> std::string {
    witness = definition_witness(def);
    Verdict v = check_witness(witness, f, d, env);
    return v ? "" : v.describe();
  }));

  PatternMatch m;
  const auto args = fresh_atoms(def.arity);
  for (std::size_t j = 0; j < args.size(); ++j) m.bindings.emplace(j + 1, args[j]);
  m.rhs = RExpr(Formula::atom("q"));
  for (const auto& rule : all_rules(gen_rules(def))) {
    report.checks.push_back(timed("derived rule " + rule.name, [&]() -> std::string {
      std::vector<G3Sequent> hyps;
      for (const auto& p : rule.premises) hyps.push_back(star_sequent(instantiate(p, m), env));
      return prove_and_check(star_sequent(instantiate(rule.conclusion, m), env), hyps, budget);
    }));
  }

  const auto ends = strict_equiv_sequents(f, d);
  for (const auto& end : ends) {
    const G3Sequent goal = star_sequent(end, env);
    report.checks.push_back(timed("embedding " + to_string(goal), [&]() -> std::string {
      auto r = prove_g3c(goal, {}, budget);
      if (r.status != SearchStatus::Found) return std::string(to_string(r.status));
      Verdict v = check_scinf(embed_g3c(*r.derivation), env);
      return v ? "" : v.describe();
    }));
  }

  for (const auto& goal : dual_sequents(def)) {
    report.checks.push_back(
        timed("dual " + to_string(goal), [&]() -> std::string { return prove_and_check(goal, {}, budget); }));
  }
  return report;
}

std::string to_text(const VerificationReport& r, bool timings) {
  std::string out = "connective " + r.connective + "\n";
  for (const auto& c : r.checks) {
    out += c.passed ? "  pass  " : "  FAIL  ";
    out += c.name;
    if (timings) out += "  (" + std::to_string(c.millis.count()) + " ms)";
    if (!c.passed) out += "\n        " + c.detail;
    out += '\n';
  }
  out += r.passed() ? "result: pass\n" : "result: FAIL\n";
  return out;
}

std::string to_json_lines(const VerificationReport& r, bool timings) {
  std::string out;
  for (const auto& c : r.checks) {
    nlohmann::ordered_json j;
    j["connective"] = r.connective;
    j["name"] = c.name;
    j["status"] = c.passed ? "pass" : "fail";
    if (timings) j["millis"] = c.millis.count();
    if (!c.passed) j["detail"] = c.detail;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace connexive
