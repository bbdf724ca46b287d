#include "connexive/battery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "connexive/g3c.hpp"
#include "connexive/nc.hpp"
#include "connexive/scinf.hpp"
#include "connexive/witnesses.hpp"

#ifndef CONNEXIVE_CORPUS_DIR
#define CONNEXIVE_CORPUS_DIR "corpus"
#endif

namespace connexive {

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Runs `body` and stamps the result with its wall time.
CriterionResult timed(int id, std::string title, const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.millis = since(start);
  return r;
}

std::string ms(std::chrono::milliseconds m) { return std::to_string(m.count()) + " ms"; }

struct Timed {
  SearchResult result;
  std::chrono::milliseconds millis;
};

Timed prove_timed(std::string_view goal) {
  const auto start = Clock::now();
  auto res = prove_g3c(parse_g3_sequent(goal));
  return {std::move(res), since(start)};
}

const std::vector<std::string> kTheses = {
    "=> ~(~p -> p)",
    "=> ~(p -> ~p)",
    "=> (p -> q) -> ~(p -> ~q)",
    "=> (p -> ~q) -> ~(p -> q)",
};

const std::vector<std::string> kContradiction = {"=> p & ~p -> p", "=> ~(p & ~p -> p)"};
const std::vector<std::string> kNonTheorems = {"p, ~p => q", "~(p -> q) => p"};

/// Sequences of length 0..2 over `items`.
std::vector<std::vector<RExpr>> short_series(const std::vector<RExpr>& items, std::size_t max_len) {
  std::vector<std::vector<RExpr>> out{{}};
  for (const auto& a : items) out.push_back({a});
  if (max_len >= 2) {
    for (const auto& a : items) {
      for (const auto& b : items) out.push_back({a, b});
    }
  }
  return out;
}

Formula rewrite_standard(const Formula& f) {
  std::vector<Formula> args;
  for (const auto& a : f.args()) args.push_back(rewrite_standard(a));
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(args[0]);
    case FormulaKind::And:
      return Formula::conj(args[0], args[1]);
    case FormulaKind::Or:
      return Formula::disj(args[0], args[1]);
    case FormulaKind::Imp:
      return Formula::imp(args[0], args[1]);
    case FormulaKind::App:
      break;
  }
  if (f.name() == "neg") return Formula::neg(args[0]);
  if (f.name() == "and") return Formula::conj(args[0], args[1]);
  if (f.name() == "or") return Formula::disj(args[0], args[1]);
  if (f.name() == "imp") return Formula::imp(args[0], args[1]);
  return Formula::app(f.name(), std::move(args));
}

RExpr rewrite_standard(const RExpr& s) {
  switch (s.kind()) {
    case RKind::Formula:
      return rewrite_standard(s.formula());
    case RKind::Refutation:
      return RExpr::refute(rewrite_standard(s.body()));
    case RKind::Sequent: {
      std::vector<RExpr> ctx;
      for (const auto& c : s.context()) ctx.push_back(rewrite_standard(c));
      return RExpr::sequent(std::move(ctx), rewrite_standard(s.succedent()));
    }
  }
  return s;
}

SequentPattern rewrite_standard(const SequentPattern& p) {
  SequentPattern out;
  for (const auto& e : p.extras) out.extras.push_back(rewrite_standard(e));
  if (p.succedent) out.succedent = rewrite_standard(*p.succedent);
  return out;
}

/// Shape equality after rewriting; names are compared by the caller's pairing.
bool same_shape(const RulePattern& generated, const RulePattern& primitive) {
  if (generated.premises.size() != primitive.premises.size()) return false;
  for (std::size_t i = 0; i < generated.premises.size(); ++i) {
    if (rewrite_standard(generated.premises[i]) != primitive.premises[i]) return false;
  }
  return rewrite_standard(generated.conclusion) == primitive.conclusion;
}

}  // namespace

Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms) {
  if (depth == 0 || pick(rng, 0, 3) == 0) return Formula::atom(atoms[pick(rng, 0, atoms.size() - 1)]);
  switch (pick(rng, 0, 3)) {
    case 0:
      return Formula::neg(random_formula(rng, depth - 1, atoms));
    case 1:
      return Formula::conj(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
    case 2:
      return Formula::disj(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
    default:
      return Formula::imp(random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
  }
}

RExpr random_rexpr(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms) {
  if (depth == 0) return random_formula(rng, 2, atoms);
  switch (pick(rng, 0, 3)) {
    case 0:
      return random_formula(rng, depth, atoms);
    case 1:
      return RExpr::refute(random_rexpr(rng, depth - 1, atoms));
    default: {
      std::vector<RExpr> ctx;
      const std::size_t n = pick(rng, 0, 3);
      for (std::size_t i = 0; i < n; ++i) ctx.push_back(random_rexpr(rng, depth - 1, atoms));
      return RExpr::sequent(std::move(ctx), random_rexpr(rng, depth - 1, atoms));
    }
  }
}

ConnectiveDef random_definition(Rng& rng, std::string name, const DefinitionLimits& limits) {
  ConnectiveDef def;
  def.name = std::move(name);
  def.arity = pick(rng, 1, limits.max_arity);
  auto leaf = [&]() -> RExpr {
    RExpr a = placeholder(pick(rng, 1, def.arity));
    return pick(rng, 0, 1) == 0 ? a : RExpr::refute(a);
  };
  auto member = [&]() -> RExpr {
    const std::size_t kind = pick(rng, 0, 3);
    if (kind < 2) {
      RExpr a = placeholder(pick(rng, 1, def.arity));
      return kind == 0 ? a : RExpr::refute(a);
    }
    std::vector<RExpr> ctx;
    const std::size_t n = pick(rng, 0, 2);
    for (std::size_t i = 0; i < n; ++i) ctx.push_back(leaf());
    RExpr s = RExpr::sequent(std::move(ctx), leaf());
    return kind == 2 ? s : RExpr::refute(s);
  };
  const std::size_t t = pick(rng, 1, limits.max_groups);
  for (std::size_t g = 0; g < t; ++g) {
    std::vector<RExpr> group;
    const std::size_t s = pick(rng, 1, limits.max_group_size);
    for (std::size_t i = 0; i < s; ++i) group.push_back(member());
    def.groups.push_back(std::move(group));
  }
  validate(def);
  return def;
}

std::vector<ConnectiveDef> definition_corpus(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ConnectiveDef> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(random_definition(rng, "R" + std::to_string(i)));
  return out;
}

std::vector<RExpr> degree_two_corpus() {
  const Formula p = Formula::atom("p");
  const Formula q = Formula::atom("q");
  const std::vector<RExpr> e0{p, q, RExpr::refute(p), RExpr::refute(q)};

  std::vector<RExpr> out = e0;
  for (const auto& ctx : short_series(e0, 2)) {
    for (const auto& succ : e0) {
      RExpr s = RExpr::sequent(ctx, succ);
      out.push_back(s);
      out.push_back(RExpr::refute(s));
    }
  }

  std::vector<RExpr> small;
  for (const auto& ctx : short_series(e0, 1)) {
    for (const auto& succ : e0) small.push_back(RExpr::sequent(ctx, succ));
  }
  std::vector<RExpr> base = e0;
  base.insert(base.end(), small.begin(), small.end());
  for (const auto& ctx : short_series(base, 2)) {
    for (const auto& succ : base) {
      RExpr s = RExpr::sequent(ctx, succ);
      if (r_degree(s) != 2) continue;
      out.push_back(s);
      out.push_back(RExpr::refute(s));
    }
  }
  return out;
}

std::vector<ConnectiveDef> standard_definitions() {
  return load_definitions(R"(
    connective neg/1 { group { -A1 } }
    connective and/2 { group { A1; A2 } }
    connective or/2 { group { A1 } group { A2 } }
    connective imp/2 { group { (A1 => A2) } }
  )");
}

std::vector<std::string> schema_mismatches() {
  const std::map<std::string, std::string> pairing{
      {"I(neg,1)", "~R"},        {"II(neg)", "~L"},         {"III(neg,1)", "~R-"},    {"IV(neg)", "~L-"},
      {"I(and,1)", "andR"},      {"II(and)", "andL"},       {"III(and,1)", "andR-1"}, {"III(and,2)", "andR-2"},
      {"IV(and)", "andL-"},      {"I(or,1)", "orR1"},       {"I(or,2)", "orR2"},      {"II(or)", "orL"},
      {"III(or,1,1)", "orR-"},   {"IV(or)", "orL-"},        {"I(imp,1)", "impR"},     {"II(imp)", "impL"},
      {"III(imp,1)", "impR-"},   {"IV(imp)", "impL-"},
  };
  std::map<std::string, const RulePattern*> primitive;
  for (const auto& r : primitive_rules()) primitive[r.name] = &r;

  std::vector<std::string> out;
  std::map<std::string, int> used;
  for (const auto& def : standard_definitions()) {
    const GeneratedRules g = gen_rules(def);
    std::vector<const RulePattern*> all;
    for (const auto& r : g.right) all.push_back(&r);
    all.push_back(&g.left);
    for (const auto& r : g.right_neg) all.push_back(&r);
    all.push_back(&g.left_neg);
    for (const RulePattern* r : all) {
      auto pair = pairing.find(r->name);
      if (pair == pairing.end()) {
        out.push_back("generated rule " + r->name + " has no primitive counterpart");
        continue;
      }
      ++used[pair->second];
      const RulePattern& prim = *primitive.at(pair->second);
      if (!same_shape(*r, prim)) out.push_back(to_string(*r) + "  differs from  " + to_string(prim));
    }
  }
  for (const auto& [name, rule] : primitive) {
    if (used[name] != 1) out.push_back("primitive rule " + name + " matched " + std::to_string(used[name]) + " times");
  }
  return out;
}

std::filesystem::path default_corpus_dir() { return CONNEXIVE_CORPUS_DIR; }

CriterionResult criterion_theses() {
  return timed(1, "connexive theses", [](CriterionResult& r) {
    std::size_t ok = 0;
    std::string failures;
    for (const auto& g : kTheses) {
      auto t = prove_timed(g);
      const bool found = t.result.derivation && check_g3c(*t.result.derivation).accepted;
      if (found && t.millis < std::chrono::seconds(1)) {
        ++ok;
      } else {
        failures += "; " + g + ": " + std::string(to_string(t.result.status)) +
                    (t.result.derivation ? " over 1 s" : "");
      }
    }
    r.passed = ok == kTheses.size();
    r.detail = std::to_string(ok) + "/4 found and checked in under 1 s" + failures;
  });
}

CriterionResult criterion_non_symmetry() {
  return timed(2, "non-symmetry", [](CriterionResult& r) {
    auto t = prove_timed("=> (p -> q) -> (q -> p)");
    r.passed = t.result.status == SearchStatus::Unprovable && t.millis < std::chrono::seconds(5);
    r.detail = std::string(to_string(t.result.status)) + " after " + std::to_string(t.result.visited) + " states";
    if (t.millis >= std::chrono::seconds(5)) r.detail += ", over 5 s";
  });
}

CriterionResult criterion_contradiction() {
  return timed(3, "contradictory non-triviality", [](CriterionResult& r) {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& g : kContradiction) {
      auto t = prove_timed(g);
      const bool found = t.result.derivation && check_g3c(*t.result.derivation).accepted;
      ok = ok && found && t.millis < std::chrono::seconds(5);
      detail << g << ": " << to_string(t.result.status) << "; ";
      if (t.millis >= std::chrono::seconds(5)) detail << "over 5 s; ";
    }
    for (const auto& g : kNonTheorems) {
      auto t = prove_timed(g);
      ok = ok && t.result.status == SearchStatus::Unprovable && t.millis < std::chrono::seconds(5);
      detail << g << ": " << to_string(t.result.status) << "; ";
      if (t.millis >= std::chrono::seconds(5)) detail << "over 5 s; ";
    }
    r.passed = ok;
    r.detail = detail.str();
    r.detail.resize(r.detail.size() - 2);
  });
}

CriterionResult criterion_overline_coverage() {
  return timed(4, "overline witnesses, R-degree <= 2", [](CriterionResult& r) {
    const auto start = Clock::now();
    const auto corpus = degree_two_corpus();
    std::size_t failed = 0;
    std::string first;
    for (const auto& s : corpus) {
      const Verdict v = check_witness(overline_witness(s), overline(s), s);
      if (!v.accepted) {
        if (failed++ == 0) first = "; first failure " + to_string(s) + ": " + v.describe();
      }
    }
    const auto elapsed = since(start);
    r.passed = failed == 0 && corpus.size() >= 200 && elapsed < std::chrono::seconds(60);
    r.detail = std::to_string(corpus.size()) + " expressions, " + std::to_string(4 * corpus.size()) +
               " derivations, " + std::to_string(failed) + " rejected" + first;
  });
}

CriterionResult criterion_definition_witnesses() {
  return timed(5, "definition witnesses and derived rules", [](CriterionResult& r) {
    const auto start = Clock::now();
    const auto defs = definition_corpus();
    const Registry env(defs);
    std::size_t checks = 0;
    std::size_t failed = 0;
    std::string first;
    for (const auto& def : defs) {
      const auto report = verify_definition(def, env);
      for (const auto& c : report.checks) {
        ++checks;
        if (!c.passed && failed++ == 0) first = "; first failure " + def.name + " " + c.name + ": " + c.detail;
      }
    }
    const auto elapsed = since(start);
    r.passed = failed == 0 && elapsed < std::chrono::minutes(5);
    r.detail = std::to_string(defs.size()) + " definitions (seed " + std::to_string(kDefinitionSeed) + "), " +
               std::to_string(checks) + " checks, " + std::to_string(failed) + " failed" + first;
  });
}

CriterionResult criterion_schema_regeneration() {
  return timed(6, "schema regeneration of the primitive rules", [](CriterionResult& r) {
    const auto mismatches = schema_mismatches();
    r.passed = mismatches.empty();
    r.detail = std::to_string(primitive_rules().size()) + " primitive rules, " + std::to_string(mismatches.size()) +
               " mismatches";
    if (!mismatches.empty()) r.detail += "; first: " + mismatches.front();
  });
}

CriterionResult criterion_embedding() {
  return timed(7, "embedding round-trip", [](CriterionResult& r) {
    std::size_t embedded = 0;
    std::size_t failed = 0;
    std::string first;
    std::vector<std::string> goals = kTheses;
    goals.insert(goals.end(), kContradiction.begin(), kContradiction.end());
    for (const auto& g : goals) {
      auto res = prove_g3c(parse_g3_sequent(g));
      const bool ok = res.derivation && check_scinf(embed_g3c(*res.derivation)).accepted;
      ok ? ++embedded : ++failed;
      if (!ok && first.empty()) first = "; embedding failed for " + g;
    }
    const auto defs = definition_corpus();
    const Registry env(defs);
    std::size_t proved = 0;
    for (const auto& def : defs) {
      for (const auto& s : strict_equiv_sequents(applied(def), applied_defining_formula(def))) {
        const G3Sequent g = star_sequent(s, env);
        const bool ok = prove_g3c(g).status == SearchStatus::Found;
        ok ? ++proved : ++failed;
        if (!ok && first.empty()) first = "; not proved: " + to_string(g);
      }
    }
    r.passed = failed == 0;
    r.detail = std::to_string(embedded) + " embedded proofs accepted, " + std::to_string(proved) +
               " starred witness ends proved" + first;
  });
}

CriterionResult criterion_nc_golden(const std::filesystem::path& corpus_dir) {
  return timed(8, "NC golden derivations", [&](CriterionResult& r) {
    std::size_t accepted = 0;
    std::size_t mutations = 0;
    std::size_t caught = 0;
    std::string first;
    for (const char* name : {"contradiction_left.nc", "contradiction_right.nc"}) {
      const NCFile file = read_nc_file(read_sexpr_file(corpus_dir / "nc" / name));
      const Verdict v = check_nc(file.derivation, file.premises);
      if (v.accepted) {
        ++accepted;
      } else if (first.empty()) {
        first = std::string("; ") + name + " " + v.describe();
      }
      for (const auto& m : single_node_mutations(file.derivation)) {
        ++mutations;
        if (!check_nc(m.tree, file.premises).accepted) {
          ++caught;
        } else if (first.empty()) {
          first = std::string("; mutation accepted: ") + name + " " + m.description;
        }
      }
    }
    r.passed = accepted == 2 && mutations == 20 && caught == mutations;
    r.detail = std::to_string(accepted) + "/2 trees accepted, " + std::to_string(caught) + "/" +
               std::to_string(mutations) + " mutations rejected" + first;
  });
}

CriterionResult criterion_syntax_round_trip() {
  return timed(9, "syntax round-trip", [](CriterionResult& r) {
    Rng rng(kSyntaxSeed);
    std::size_t failed = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
      if (failed++ == 0) first = "; first failure: " + what;
    };
    for (int i = 0; i < 500; ++i) {
      const Formula f = random_formula(rng, 6);
      if (parse_formula(to_string(f)) != f) fail(to_string(f));
      const RExpr s = f;
      if (mk_neg(mk_neg(s)) != s) fail("mk_neg " + to_string(f));
    }
    for (int i = 0; i < 500; ++i) {
      const RExpr s = random_rexpr(rng, 6);
      const RExpr back = parse_rexpr(to_string(s));
      if (back != s) fail(to_string(s));
      if (mk_neg(mk_neg(s)) != s) fail("mk_neg " + to_string(s));
      if (r_degree(back) != r_degree(s) || r_degree(mk_neg(s)) != r_degree(s)) fail("r_degree " + to_string(s));
    }
    r.passed = failed == 0;
    r.detail = "1000 expressions (seed " + std::to_string(kSyntaxSeed) + "), " + std::to_string(failed) + " failures" +
               first;
  });
}

CriterionResult criterion_duals() {
  return timed(10, "De Morgan duals", [](CriterionResult& r) {
    const auto start = Clock::now();
    auto defs = definition_corpus();
    defs.resize(50);
    std::size_t proved = 0;
    std::size_t failed = 0;
    std::string first;
    for (const auto& def : defs) {
      for (const auto& g : dual_sequents(def)) {
        const bool ok = prove_g3c(g).status == SearchStatus::Found;
        ok ? ++proved : ++failed;
        if (!ok && first.empty()) first = "; not proved: " + def.name + " " + to_string(g);
      }
    }
    const auto elapsed = since(start);
    r.passed = failed == 0 && elapsed < std::chrono::minutes(2);
    r.detail = "50 definitions, " + std::to_string(proved) + "/" + std::to_string(proved + failed) +
               " dual sequents proved" + first;
  });
}

std::vector<CriterionResult> run_battery(const BatteryOptions& options) {
  const std::filesystem::path dir = options.corpus_dir.empty() ? default_corpus_dir() : options.corpus_dir;
  const std::vector<std::pair<int, std::function<CriterionResult()>>> all{
      {1, criterion_theses},
      {2, criterion_non_symmetry},
      {3, criterion_contradiction},
      {4, criterion_overline_coverage},
      {5, criterion_definition_witnesses},
      {6, criterion_schema_regeneration},
      {7, criterion_embedding},
      {8, [&] { return criterion_nc_golden(dir); }},
      {9, criterion_syntax_round_trip},
      {10, criterion_duals},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, run] : all) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    out.push_back(run());
  }
  return out;
}

std::string format_line(const CriterionResult& r, bool timings) {
  std::string line = std::string(r.passed ? "[pass] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title;
  if (timings) line += " (" + ms(r.millis) + ")";
  return line + ": " + r.detail;
}

}  // namespace connexive
