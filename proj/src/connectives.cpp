#include "connexive/connectives.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <iomanip>
#include <set>
#include <sstream>

namespace connexive {

// ---------------------------------------------------------------------------
// Definitions

std::size_t ConnectiveDef::selection_count() const {
  std::size_t r = 1;
  for (const auto& g : groups) r *= g.size();
  return r;
}

std::vector<std::vector<std::size_t>> ConnectiveDef::selections() const {
  std::vector<std::vector<std::size_t>> out;
  if (groups.empty()) return out;
  std::vector<std::size_t> sigma(groups.size(), 1);
  while (true) {
    out.push_back(sigma);
    std::size_t i = groups.size();
    while (i > 0) {
      --i;
      if (sigma[i] < groups[i].size()) {
        ++sigma[i];
        break;
      }
      sigma[i] = 1;
      if (i == 0) return out;
    }
  }
}

std::vector<std::vector<RExpr>> ConnectiveDef::instantiate(std::span<const Formula> args) const {
  std::vector<std::vector<RExpr>> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    std::vector<RExpr> inst;
    inst.reserve(g.size());
    for (const auto& s : g) inst.push_back(substitute(s, args));
    out.push_back(std::move(inst));
  }
  return out;
}

void validate(const ConnectiveDef& def) {
  if (def.name.empty()) throw DefinitionError("connective name is empty");
  if (def.arity == 0) throw DefinitionError("connective '" + def.name + "' must have arity >= 1");
  if (def.groups.empty()) throw DefinitionError("connective '" + def.name + "' has no groups");
  for (const auto& g : def.groups) {
    if (g.empty()) throw DefinitionError("connective '" + def.name + "' has an empty group");
    for (const auto& s : g) {
      for (const auto& c : formula_components(s)) {
        const std::size_t j = placeholder_index(c);
        if (j == 0) {
          throw DefinitionError("connective '" + def.name + "': component '" + to_string(c) +
                                "' is not a placeholder A1..A" + std::to_string(def.arity));
        }
        if (j > def.arity) {
          throw DefinitionError("connective '" + def.name + "': placeholder " + to_string(c) +
                                " exceeds arity " + std::to_string(def.arity));
        }
      }
    }
  }
}

namespace {

class DefScanner {
 public:
  explicit DefScanner(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_word(std::string_view w) {
    skip();
    return text_.substr(pos_, w.size()) == w;
  }

  /// Raw text up to the next ';' or '}' outside parentheses.
  std::string_view member() {
    skip();
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ';' || c == '}')) break;
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DefinitionError(what + " at offset " + std::to_string(pos_));
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

ConnectiveDef scan_definition(DefScanner& sc) {
  if (sc.word() != "connective") sc.fail("expected 'connective'");
  ConnectiveDef def;
  def.name = sc.word();
  if (!std::isalpha(static_cast<unsigned char>(def.name[0]))) sc.fail("invalid connective name");
  sc.expect('/');
  const std::string n = sc.word();
  if (n.size() > 6 || n.find_first_not_of("0123456789") != std::string::npos) {
    sc.fail("invalid arity '" + n + "'");
  }
  def.arity = std::stoul(n);
  sc.expect('{');
  const ParseOptions opts{nullptr, true};
  while (!sc.accept('}')) {
    if (sc.word() != "group") sc.fail("expected 'group'");
    sc.expect('{');
    std::vector<RExpr> group;
    if (!sc.accept('}')) {
      do {
        const auto text = sc.member();
        try {
          group.push_back(parse_rexpr(text, opts));
        } catch (const ParseError& e) {
          sc.fail(std::string("in group member: ") + e.what());
        }
      } while (sc.accept(';'));
      sc.expect('}');
    }
    def.groups.push_back(std::move(group));
  }
  validate(def);
  return def;
}

}  // namespace

std::vector<ConnectiveDef> load_definitions(std::string_view text) {
  DefScanner sc(text);
  std::vector<ConnectiveDef> out;
  std::set<std::string> names;
  while (!sc.at_end()) {
    auto def = scan_definition(sc);
    if (!names.insert(def.name).second) {
      throw DefinitionError("duplicate connective '" + def.name + "'");
    }
    out.push_back(std::move(def));
  }
  if (out.empty()) throw DefinitionError("no connective definition found");
  return out;
}

ConnectiveDef load_definition(std::string_view text) {
  auto defs = load_definitions(text);
  if (defs.size() != 1) throw DefinitionError("expected exactly one connective definition");
  return std::move(defs.front());
}

std::string canonical_text(const ConnectiveDef& def) {
  std::string out = "connective " + def.name + "/" + std::to_string(def.arity) + " {";
  for (const auto& g : def.groups) {
    out += " group { ";
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k > 0) out += "; ";
      out += to_string(g[k]);
    }
    out += " }";
  }
  out += " }";
  return out;
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(std::vector<ConnectiveDef> defs) {
  for (auto& d : defs) add(std::move(d));
}

void Registry::add(ConnectiveDef def) {
  validate(def);
  if (signature_.count(def.name) != 0) {
    throw DefinitionError("duplicate connective '" + def.name + "'");
  }
  signature_.emplace(def.name, def.arity);
  defs_.push_back(std::move(def));
}

const ConnectiveDef* Registry::find(std::string_view name) const {
  for (const auto& d : defs_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const ConnectiveDef& Registry::at(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw DefinitionError("unregistered connective '" + std::string(name) + "'");
}

std::string Registry::content_hash() const {
  std::string text;
  for (const auto& d : defs_) {
    text += canonical_text(d);
    text += '\n';
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Substitution and patterns

Formula substitute(const Formula& f, const std::map<std::size_t, Formula>& bindings) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      const std::size_t j = placeholder_index(f);
      if (j != 0) {
        if (auto it = bindings.find(j); it != bindings.end()) return it->second;
      }
      return f;
    }
    case FormulaKind::Neg:
      return Formula::neg(substitute(f.body(), bindings));
    case FormulaKind::And:
      return Formula::conj(substitute(f.left(), bindings), substitute(f.right(), bindings));
    case FormulaKind::Or:
      return Formula::disj(substitute(f.left(), bindings), substitute(f.right(), bindings));
    case FormulaKind::Imp:
      return Formula::imp(substitute(f.left(), bindings), substitute(f.right(), bindings));
    case FormulaKind::App: {
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(substitute(a, bindings));
      return Formula::app(f.name(), std::move(args));
    }
  }
  return f;
}

Formula substitute(const Formula& f, std::span<const Formula> args) {
  std::map<std::size_t, Formula> b;
  for (std::size_t i = 0; i < args.size(); ++i) b.emplace(i + 1, args[i]);
  return substitute(f, b);
}

namespace {

RExpr substitute_r(const RExpr& s, const std::map<std::size_t, Formula>& b) {
  switch (s.kind()) {
    case RKind::Formula:
      return RExpr(substitute(s.formula(), b));
    case RKind::Refutation:
      return mk_neg(substitute_r(s.body(), b));
    case RKind::Sequent: {
      std::vector<RExpr> ctx;
      for (const auto& c : s.context()) ctx.push_back(substitute_r(c, b));
      return RExpr::sequent(std::move(ctx), substitute_r(s.succedent(), b));
    }
  }
  return s;
}

bool match_formula(const Formula& pat, const Formula& f, std::map<std::size_t, Formula>& b) {
  if (const std::size_t j = placeholder_index(pat); j != 0) {
    auto [it, fresh] = b.emplace(j, f);
    return fresh || it->second == f;
  }
  if (pat.kind() != f.kind() || pat.name() != f.name() || pat.args().size() != f.args().size()) {
    return false;
  }
  for (std::size_t i = 0; i < pat.args().size(); ++i) {
    if (!match_formula(pat.args()[i], f.args()[i], b)) return false;
  }
  return true;
}

bool match_rexpr(const RExpr& pat, const RExpr& s, std::map<std::size_t, Formula>& b) {
  if (pat.kind() != s.kind()) return false;
  switch (pat.kind()) {
    case RKind::Formula:
      return match_formula(pat.formula(), s.formula(), b);
    case RKind::Refutation:
      return match_rexpr(pat.body(), s.body(), b);
    case RKind::Sequent: {
      if (pat.context().size() != s.context().size()) return false;
      for (std::size_t i = 0; i < pat.context().size(); ++i) {
        if (!match_rexpr(pat.context()[i], s.context()[i], b)) return false;
      }
      return match_rexpr(pat.succedent(), s.succedent(), b);
    }
  }
  return false;
}

}  // namespace

RExpr substitute(const RExpr& s, std::span<const Formula> args) {
  std::map<std::size_t, Formula> b;
  for (std::size_t i = 0; i < args.size(); ++i) b.emplace(i + 1, args[i]);
  return substitute_r(s, b);
}

std::optional<PatternMatch> match_conclusion(const RulePattern& rule, const RSequent& conclusion) {
  const auto& pat = rule.conclusion;
  if (conclusion.context.size() < pat.extras.size()) return std::nullopt;
  PatternMatch m;
  const std::size_t split = conclusion.context.size() - pat.extras.size();
  m.delta.assign(conclusion.context.begin(), conclusion.context.begin() + static_cast<std::ptrdiff_t>(split));
  for (std::size_t i = 0; i < pat.extras.size(); ++i) {
    if (!match_rexpr(pat.extras[i], conclusion.context[split + i], m.bindings)) return std::nullopt;
  }
  if (pat.succedent) {
    if (!match_rexpr(*pat.succedent, conclusion.succedent, m.bindings)) return std::nullopt;
  } else {
    m.rhs = conclusion.succedent;
  }
  return m;
}

RSequent instantiate(const SequentPattern& pattern, const PatternMatch& m) {
  std::vector<RExpr> ctx = m.delta;
  for (const auto& e : pattern.extras) ctx.push_back(substitute_r(e, m.bindings));
  if (pattern.succedent) return RSequent{std::move(ctx), substitute_r(*pattern.succedent, m.bindings)};
  return RSequent{std::move(ctx), *m.rhs};
}

std::string to_string(const SequentPattern& p) {
  std::string out = "D";
  for (const auto& e : p.extras) out += ", " + to_string(e);
  out += " => ";
  out += p.succedent ? to_string(*p.succedent) : "T";
  return out;
}

std::string to_string(const RulePattern& r) {
  std::string out = r.name + ": ";
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i > 0) out += "  ;  ";
    out += to_string(r.premises[i]);
  }
  out += "  ==>  " + to_string(r.conclusion);
  return out;
}

// ---------------------------------------------------------------------------
// Schema generation

GeneratedRules gen_rules(const ConnectiveDef& def) {
  std::vector<Formula> params;
  for (std::size_t j = 1; j <= def.arity; ++j) params.push_back(placeholder(j));
  const RExpr principal(Formula::app(def.name, params));
  const RExpr refuted = mk_neg(principal);

  GeneratedRules out;
  for (std::size_t i = 0; i < def.groups.size(); ++i) {
    RulePattern rule{"I(" + def.name + "," + std::to_string(i + 1) + ")", {}, {{}, principal}};
    for (const auto& s : def.groups[i]) rule.premises.push_back({{}, s});
    out.right.push_back(std::move(rule));
  }

  out.left = RulePattern{"II(" + def.name + ")", {}, {{principal}, std::nullopt}};
  for (const auto& g : def.groups) out.left.premises.push_back({g, std::nullopt});

  out.left_neg = RulePattern{"IV(" + def.name + ")", {}, {{refuted}, std::nullopt}};
  for (const auto& sigma : def.selections()) {
    std::string tag;
    std::vector<RExpr> negs;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      tag += "," + std::to_string(sigma[i]);
      negs.push_back(mk_neg(def.groups[i][sigma[i] - 1]));
    }
    RulePattern rule{"III(" + def.name + tag + ")", {}, {{}, refuted}};
    for (const auto& n : negs) rule.premises.push_back({{}, n});
    out.right_neg.push_back(std::move(rule));
    out.left_neg.premises.push_back({std::move(negs), std::nullopt});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Translations

Formula conjoin(std::span<const Formula> parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

Formula disjoin(std::span<const Formula> parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
  return acc;
}

Formula overline(const RExpr& s) {
  switch (s.kind()) {
    case RKind::Formula:
      return s.formula();
    case RKind::Refutation:
      return Formula::neg(overline(s.body()));
    case RKind::Sequent: {
      if (s.context().empty()) return overline(s.succedent());
      std::vector<Formula> parts;
      for (const auto& c : s.context()) parts.push_back(overline(c));
      return Formula::imp(conjoin(parts), overline(s.succedent()));
    }
  }
  return s.formula();
}

Formula defining_formula(const ConnectiveDef& def) {
  std::vector<Formula> disjuncts;
  for (const auto& g : def.groups) {
    std::vector<Formula> conjuncts;
    for (const auto& s : g) conjuncts.push_back(overline(s));
    disjuncts.push_back(conjoin(conjuncts));
  }
  return disjoin(disjuncts);
}

Formula dual_defining_formula(const ConnectiveDef& def) {
  std::vector<Formula> disjuncts;
  for (const auto& sigma : def.selections()) {
    std::vector<Formula> conjuncts;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      conjuncts.push_back(Formula::neg(overline(def.groups[i][sigma[i] - 1])));
    }
    disjuncts.push_back(conjoin(conjuncts));
  }
  return disjoin(disjuncts);
}

Formula star(const Formula& f, const Registry& env) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Neg:
      return Formula::neg(star(f.body(), env));
    case FormulaKind::And:
      return Formula::conj(star(f.left(), env), star(f.right(), env));
    case FormulaKind::Or:
      return Formula::disj(star(f.left(), env), star(f.right(), env));
    case FormulaKind::Imp:
      return Formula::imp(star(f.left(), env), star(f.right(), env));
    case FormulaKind::App: {
      const auto& def = env.at(f.name());
      std::vector<Formula> args;
      for (const auto& a : f.args()) args.push_back(star(a, env));
      return substitute(defining_formula(def), args);
    }
  }
  return f;
}

Formula star(const RExpr& s, const Registry& env) { return star(overline(s), env); }

}  // namespace connexive
