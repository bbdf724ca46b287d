#include "connexive/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>

#include "connexive/battery.hpp"
#include "connexive/connectives.hpp"
#include "connexive/g3c.hpp"
#include "connexive/nc.hpp"
#include "connexive/scinf.hpp"
#include "connexive/witnesses.hpp"

namespace connexive {

namespace {

struct Env {
  std::string path;
  Registry registry;
};

std::optional<Env> load_env(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return Env{path, Registry(load_definitions(read_text_file(path)))};
}

void echo_env(const std::optional<Env>& env, std::ostream& out) {
  if (env) out << "env " << env->path << " sha256 " << env->registry.content_hash() << "\n";
}

ParseOptions options_for(const std::optional<Env>& env) {
  return ParseOptions{env ? &env->registry.signature() : nullptr, false};
}

/// Parses a G3C goal, eliminating user connectives when an env is given.
G3Sequent read_goal(const std::string& text, const std::optional<Env>& env) {
  G3Sequent s = parse_g3_sequent(text, options_for(env));
  if (!env) return s;
  for (auto& f : s.context) f = star(f, env->registry);
  s.succedent = star(s.succedent, env->registry);
  return s;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw std::runtime_error("cannot write " + path);
}

struct ProveArgs {
  std::string goal;
  std::vector<std::string> hyps;
  std::string emit;
  std::size_t budget = SearchBudget{}.max_visited;
  double seconds = 30;
  std::string defs;
};

int prove(const ProveArgs& a, std::ostream& out) {
  const auto env = load_env(a.defs);
  echo_env(env, out);
  const G3Sequent goal = read_goal(a.goal, env);
  std::vector<G3Sequent> hyps;
  for (const auto& h : a.hyps) hyps.push_back(read_goal(h, env));
  SearchBudget budget;
  budget.max_visited = a.budget;
  budget.time_limit = std::chrono::milliseconds(static_cast<long long>(a.seconds * 1000));
  const SearchResult r = prove_g3c(goal, hyps, budget);
  out << to_string(r.status) << " (" << r.visited << " states)\n";
  if (r.derivation && !a.emit.empty()) write_output(a.emit, write_sexpr(to_sexpr(*r.derivation, hyps)), out);
  switch (r.status) {
    case SearchStatus::Found:
      return kExitOk;
    case SearchStatus::Unprovable:
      return kExitNegative;
    case SearchStatus::BudgetExceeded:
      break;
  }
  return kExitBudget;
}

int check(const std::string& file, const std::string& calculus, const std::string& defs, std::ostream& out,
          std::ostream& err) {
  const auto env = load_env(defs);
  echo_env(env, out);
  const SExpr e = read_sexpr_file(file);
  Verdict v;
  if (calculus == "g3c") {
    const G3File f = read_g3_file(e, options_for(env));
    v = check_g3c(f.derivation, f.hypotheses);
  } else if (calculus == "scinf") {
    const Registry empty;
    const Registry& registry = env ? env->registry : empty;
    const SCFile f = read_sc_file(e, registry);
    if (f.env && env && f.env->hash != env->registry.content_hash()) {
      err << "env hash mismatch: derivation was written against " << f.env->hash << "\n";
      return kExitUsage;
    }
    v = check_scinf(f.derivation, registry);
  } else {
    const NCFile f = read_nc_file(e);
    v = check_nc(f.derivation, f.premises);
  }
  out << v.describe() << "\n";
  return v ? kExitOk : kExitNegative;
}

int define(const std::string& file, bool rules, bool formula, std::ostream& out) {
  const auto env = load_env(file);
  echo_env(env, out);
  if (!rules && !formula) rules = formula = true;
  for (const auto& def : env->registry.definitions()) {
    out << "connective " << def.name << "/" << def.arity << "\n";
    if (formula) {
      std::vector<Formula> args;
      for (std::size_t j = 1; j <= def.arity; ++j) args.push_back(placeholder(j));
      out << "  formula  " << to_string(Formula::app(def.name, args)) << " := " << to_string(defining_formula(def))
          << "\n";
    }
    if (rules) {
      const GeneratedRules g = gen_rules(def);
      for (const auto& r : g.right) out << "  " << to_string(r) << "\n";
      out << "  " << to_string(g.left) << "\n";
      for (const auto& r : g.right_neg) out << "  " << to_string(r) << "\n";
      out << "  " << to_string(g.left_neg) << "\n";
    }
  }
  return kExitOk;
}

int verify(const std::string& file, std::size_t budget, bool json, bool timings, std::ostream& out) {
  const auto env = load_env(file);
  if (!json) echo_env(env, out);
  SearchBudget b;
  b.max_visited = budget;
  bool passed = true;
  bool budget_hit = false;
  for (const auto& def : env->registry.definitions()) {
    const VerificationReport report = verify_definition(def, env->registry, b);
    out << (json ? to_json_lines(report, timings) : to_text(report, timings));
    passed = passed && report.passed();
    for (const auto& c : report.checks) {
      if (!c.passed && c.detail.rfind(to_string(SearchStatus::BudgetExceeded), 0) == 0) budget_hit = true;
    }
  }
  if (passed) return kExitOk;
  return budget_hit ? kExitBudget : kExitNegative;
}

int theses(const std::string& corpus, const std::vector<int>& only, bool timings, std::ostream& out) {
  BatteryOptions opts;
  if (!corpus.empty()) opts.corpus_dir = corpus;
  opts.only = only;
  bool all = true;
  for (const auto& r : run_battery(opts)) {
    out << format_line(r, timings) << "\n";
    all = all && r.passed;
  }
  return all ? kExitOk : kExitNegative;
}

/// R-expressions may start with '-', so the free argument of `parse` is
/// moved behind a "--" separator before option parsing.
std::vector<std::string> protect_expression(const std::vector<std::string>& args) {
  if (args.empty() || args[0] != "parse") return args;
  std::vector<std::string> opts{args[0]};
  std::vector<std::string> free;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--") {
      free.insert(free.end(), args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.end());
      break;
    }
    if (args[i] == "--defs" && i + 1 < args.size()) {
      opts.push_back(args[i]);
      opts.push_back(args[++i]);
    } else if (args[i] == "-h" || args[i] == "--help" || args[i].rfind("--defs=", 0) == 0) {
      opts.push_back(args[i]);
    } else {
      free.push_back(args[i]);
    }
  }
  if (!free.empty()) opts.push_back("--");
  opts.insert(opts.end(), free.begin(), free.end());
  return opts;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof kernel for the connexive logic C", "connex"};
  app.require_subcommand(1);

  std::string expr;
  std::string defs;
  auto* parse_cmd = app.add_subcommand("parse", "Reprint an R-expression and its R-degree");
  parse_cmd->add_option("expr", expr, "R-expression")->required();
  parse_cmd->add_option("--defs", defs, "Connective definitions file");

  ProveArgs pa;
  auto* prove_cmd = app.add_subcommand("prove", "Decide a G3C sequent");
  prove_cmd->add_option("sequent", pa.goal, "\"<ctx> => <formula>\"")->required();
  prove_cmd->add_option("--hyp", pa.hyps, "Hypothesis sequent (repeatable)");
  prove_cmd->add_option("--emit", pa.emit, "Write the derivation to this path ('-' for stdout)");
  prove_cmd->add_option("--budget", pa.budget, "Maximum number of visited states");
  prove_cmd->add_option("--time", pa.seconds, "Time limit in seconds");
  prove_cmd->add_option("--defs", pa.defs, "Connective definitions file");

  std::string file;
  std::string calculus;
  auto* check_cmd = app.add_subcommand("check", "Check a derivation file");
  check_cmd->add_option("file", file, "Derivation file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--calculus", calculus, "g3c, scinf or nc")
      ->required()
      ->check(CLI::IsMember({"g3c", "scinf", "nc"}));
  check_cmd->add_option("--defs", defs, "Connective definitions file");

  bool rules = false;
  bool formula = false;
  auto* define_cmd = app.add_subcommand("define", "Print generated rules and defining formulas");
  define_cmd->add_option("file", file, "Connective definitions file")->required()->check(CLI::ExistingFile);
  define_cmd->add_flag("--rules", rules, "Print the generated rules");
  define_cmd->add_flag("--formula", formula, "Print the defining formula");

  std::size_t budget = SearchBudget{}.max_visited;
  bool json = false;
  bool no_timings = false;
  auto* verify_cmd = app.add_subcommand("verify", "Verify connective definitions");
  verify_cmd->add_option("file", file, "Connective definitions file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--budget", budget, "Maximum number of visited states per search");
  verify_cmd->add_flag("--json", json, "One JSON object per check");
  verify_cmd->add_flag("--no-timings", no_timings, "Omit timings");

  std::string corpus;
  std::vector<int> only;
  auto* theses_cmd = app.add_subcommand("theses", "Run the acceptance battery");
  theses_cmd->add_option("--corpus", corpus, "Directory with nc/ golden derivations");
  theses_cmd->add_option("--only", only, "Criterion numbers to run");
  theses_cmd->add_flag("--no-timings", no_timings, "Omit timings");

  try {
    const std::vector<std::string> protected_args = protect_expression(args);
    std::vector<std::string> reversed(protected_args.rbegin(), protected_args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*parse_cmd) {
      const auto env = load_env(defs);
      echo_env(env, out);
      const RExpr s = parse_rexpr(expr, options_for(env));
      out << to_string(s) << "\ndegree " << r_degree(s) << "\n";
      return kExitOk;
    }
    if (*prove_cmd) return prove(pa, out);
    if (*check_cmd) return check(file, calculus, defs, out, err);
    if (*define_cmd) return define(file, rules, formula, out);
    if (*verify_cmd) return verify(file, budget, json, !no_timings, out);
    if (*theses_cmd) return theses(corpus, only, !no_timings, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace connexive
