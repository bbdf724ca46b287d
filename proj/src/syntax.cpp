#include "connexive/syntax.hpp"

#include <cctype>
#include <functional>
#include <optional>
#include <utility>

namespace connexive {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Formula> args;
  std::size_t hash;
};

Formula Formula::make(FormulaKind kind, std::string name, std::vector<Formula> args) {
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(name));
  for (const auto& a : args) h = mix(h, a.hash());
  return Formula(std::make_shared<const Node>(Node{kind, std::move(name), std::move(args), h}));
}

Formula Formula::atom(std::string name) { return make(FormulaKind::Atom, std::move(name), {}); }
Formula Formula::neg(Formula body) { return make(FormulaKind::Neg, {}, {std::move(body)}); }
Formula Formula::conj(Formula l, Formula r) {
  return make(FormulaKind::And, {}, {std::move(l), std::move(r)});
}
Formula Formula::disj(Formula l, Formula r) {
  return make(FormulaKind::Or, {}, {std::move(l), std::move(r)});
}
Formula Formula::imp(Formula l, Formula r) {
  return make(FormulaKind::Imp, {}, {std::move(l), std::move(r)});
}
Formula Formula::app(std::string connective, std::vector<Formula> args) {
  return make(FormulaKind::App, std::move(connective), std::move(args));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
std::span<const Formula> Formula::args() const { return node_->args; }
std::size_t Formula::hash() const { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  return a.node_->name == b.node_->name && a.node_->args == b.node_->args;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  const auto& x = a.node_->args;
  const auto& y = b.node_->args;
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// RExpr

struct RExpr::Node {
  RKind kind;
  std::optional<Formula> formula;
  std::vector<RExpr> items;  // Refutation: {body}; Sequent: context..., succedent
  std::size_t hash;
};

RExpr::RExpr(Formula f) {
  std::size_t h = mix(0x51, f.hash());
  node_ = std::make_shared<const Node>(Node{RKind::Formula, std::move(f), {}, h});
}

RExpr RExpr::refute(const RExpr& body) {
  if (body.is(RKind::Refutation)) return body.body();
  std::size_t h = mix(0x52, body.hash());
  return RExpr(std::make_shared<const Node>(Node{RKind::Refutation, std::nullopt, {body}, h}));
}

RExpr RExpr::sequent(std::vector<RExpr> context, RExpr succedent) {
  std::size_t h = mix(0x53, context.size());
  for (const auto& c : context) h = mix(h, c.hash());
  h = mix(h, succedent.hash());
  context.push_back(std::move(succedent));
  return RExpr(std::make_shared<const Node>(Node{RKind::Sequent, std::nullopt, std::move(context), h}));
}

RKind RExpr::kind() const { return node_->kind; }
const Formula& RExpr::formula() const { return *node_->formula; }
const RExpr& RExpr::body() const { return node_->items.front(); }
std::span<const RExpr> RExpr::context() const {
  return std::span<const RExpr>(node_->items).first(node_->items.size() - 1);
}
const RExpr& RExpr::succedent() const { return node_->items.back(); }
std::size_t RExpr::hash() const { return node_->hash; }

bool operator==(const RExpr& a, const RExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  return a.node_->formula == b.node_->formula && a.node_->items == b.node_->items;
}

std::strong_ordering operator<=>(const RExpr& a, const RExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (a.node_->kind == RKind::Formula) return *a.node_->formula <=> *b.node_->formula;
  const auto& x = a.node_->items;
  const auto& y = b.node_->items;
  if (auto c = x.size() <=> y.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

RExpr mk_neg(const RExpr& s) { return RExpr::refute(s); }

std::size_t r_degree(const RExpr& s) {
  switch (s.kind()) {
    case RKind::Formula:
      return 0;
    case RKind::Refutation:
      return r_degree(s.body());
    case RKind::Sequent: {
      std::size_t m = r_degree(s.succedent());
      for (const auto& c : s.context()) m = std::max(m, r_degree(c));
      return m + 1;
    }
  }
  return 0;
}

namespace {

void collect_subformulas(const RExpr& s, std::set<RExpr>& out) {
  if (!out.insert(s).second) return;
  if (s.is(RKind::Refutation)) {
    collect_subformulas(s.body(), out);
  } else if (s.is(RKind::Sequent)) {
    for (const auto& c : s.context()) collect_subformulas(c, out);
    collect_subformulas(s.succedent(), out);
  }
}

}  // namespace

std::set<RExpr> r_subformulas(const RExpr& s) {
  std::set<RExpr> out;
  collect_subformulas(s, out);
  return out;
}

std::set<Formula> formula_components(const RExpr& s) {
  std::set<Formula> out;
  for (const auto& sub : r_subformulas(s)) {
    if (sub.is_formula()) out.insert(sub.formula());
  }
  return out;
}

Formula placeholder(std::size_t index) { return Formula::atom("A" + std::to_string(index)); }

std::size_t placeholder_index(const Formula& f) {
  if (!f.is(FormulaKind::Atom)) return 0;
  const auto& n = f.name();
  if (n.size() < 2 || n[0] != 'A' || n[1] == '0') return 0;
  std::size_t v = 0;
  for (std::size_t i = 1; i < n.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(n[i]))) return 0;
    v = v * 10 + static_cast<std::size_t>(n[i] - '0');
    if (v > 1'000'000) return 0;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int level(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Imp:
      return 0;
    case FormulaKind::Or:
      return 1;
    case FormulaKind::And:
      return 2;
    default:
      return 3;
  }
}

void print(const Formula& f, int required, std::string& out) {
  const bool wrap = level(f) < required;
  if (wrap) out += '(';
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.name();
      break;
    case FormulaKind::App: {
      out += f.name();
      out += '(';
      bool first = true;
      for (const auto& a : f.args()) {
        if (!first) out += ", ";
        first = false;
        print(a, 0, out);
      }
      out += ')';
      break;
    }
    case FormulaKind::Neg:
      out += '~';
      print(f.body(), 3, out);
      break;
    case FormulaKind::And:
      print(f.left(), 2, out);
      out += " & ";
      print(f.right(), 3, out);
      break;
    case FormulaKind::Or:
      print(f.left(), 1, out);
      out += " | ";
      print(f.right(), 2, out);
      break;
    case FormulaKind::Imp:
      print(f.left(), 1, out);
      out += " -> ";
      print(f.right(), 0, out);
      break;
  }
  if (wrap) out += ')';
}

void print(const RExpr& s, std::string& out);

void print_series(std::span<const RExpr> series, std::string& out) {
  bool first = true;
  for (const auto& c : series) {
    if (!first) out += ", ";
    first = false;
    print(c, out);
  }
}

void print(const RExpr& s, std::string& out) {
  switch (s.kind()) {
    case RKind::Formula:
      print(s.formula(), 0, out);
      break;
    case RKind::Refutation:
      out += '-';
      if (s.body().is_formula()) {
        print(s.body().formula(), 3, out);  // -(p & q), not -p & q
      } else {
        print(s.body(), out);
      }
      break;
    case RKind::Sequent:
      out += '(';
      print_series(s.context(), out);
      out += s.context().empty() ? "=> " : " => ";
      print(s.succedent(), out);
      out += ')';
      break;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

std::string to_string(const RExpr& s) {
  std::string out;
  print(s, out);
  return out;
}

std::string to_string(std::span<const RExpr> series) {
  std::string out;
  print_series(series, out);
  return out;
}

std::string to_string(const RSequent& s) {
  std::string out;
  print_series(s.context, out);
  out += s.context.empty() ? "=> " : " => ";
  print(s.succedent, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Tilde, Amp, Bar, Arrow, Minus, DArrow, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, "->", start});
      i += 2;
      continue;
    }
    if (two == "=>") {
      out.push_back({Tok::DArrow, "=>", start});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case '~': k = Tok::Tilde; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      case '-': k = Tok::Minus; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({k, std::string(1, c), start});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(lex(text)), opts_(opts) {}

  Formula formula() { return imp(std::nullopt); }

  RExpr rexpr() {
    if (peek(Tok::Minus)) {
      ++at_;
      return mk_neg(rexpr());
    }
    if (!peek(Tok::LParen)) return RExpr(formula());
    const std::size_t open = cur().pos;
    ++at_;
    if (peek(Tok::DArrow)) {
      ++at_;
      RExpr succ = rexpr();
      expect(Tok::RParen, "')'");
      return RExpr::sequent({}, std::move(succ));
    }
    RExpr first = rexpr();
    if (peek(Tok::Comma) || peek(Tok::DArrow)) {
      std::vector<RExpr> ctx{std::move(first)};
      while (peek(Tok::Comma)) {
        ++at_;
        ctx.push_back(rexpr());
      }
      expect(Tok::DArrow, "'=>'");
      RExpr succ = rexpr();
      expect(Tok::RParen, "')'");
      return RExpr::sequent(std::move(ctx), std::move(succ));
    }
    if (!first.is_formula()) throw ParseError("only formulas may be parenthesized", open);
    expect(Tok::RParen, "')'");
    // The parenthesized formula may continue as an operand: "(p -> q) & r".
    return RExpr(imp(first.formula()));
  }

  RSequent sequent() {
    std::vector<RExpr> ctx;
    if (!peek(Tok::DArrow)) {
      ctx.push_back(rexpr());
      while (peek(Tok::Comma)) {
        ++at_;
        ctx.push_back(rexpr());
      }
    }
    expect(Tok::DArrow, "'=>'");
    RExpr succ = rexpr();
    return RSequent{std::move(ctx), std::move(succ)};
  }

  std::vector<RExpr> series() {
    std::vector<RExpr> out;
    if (peek(Tok::End)) return out;
    out.push_back(rexpr());
    while (peek(Tok::Comma)) {
      ++at_;
      out.push_back(rexpr());
    }
    return out;
  }

  void finish() {
    if (!peek(Tok::End)) throw ParseError("unexpected '" + cur().text + "'", cur().pos);
  }

 private:
  using Seed = std::optional<Formula>;

  Formula imp(Seed seed) {
    Formula lhs = disjunction(std::move(seed));
    if (peek(Tok::Arrow)) {
      ++at_;
      return Formula::imp(std::move(lhs), imp(std::nullopt));
    }
    return lhs;
  }

  Formula disjunction(Seed seed) {
    Formula lhs = conjunction(std::move(seed));
    while (peek(Tok::Bar)) {
      ++at_;
      lhs = Formula::disj(std::move(lhs), conjunction(std::nullopt));
    }
    return lhs;
  }

  Formula conjunction(Seed seed) {
    Formula lhs = seed ? *seed : negation();
    while (peek(Tok::Amp)) {
      ++at_;
      lhs = Formula::conj(std::move(lhs), negation());
    }
    return lhs;
  }

  Formula negation() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Tilde:
        ++at_;
        return Formula::neg(negation());
      case Tok::LParen: {
        ++at_;
        Formula inner = formula();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        return identifier();
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'",
                         t.pos);
    }
  }

  Formula identifier() {
    const Token t = cur();
    ++at_;
    if (peek(Tok::LParen)) {
      ++at_;
      std::vector<Formula> args{formula()};
      while (peek(Tok::Comma)) {
        ++at_;
        args.push_back(formula());
      }
      expect(Tok::RParen, "')'");
      if (opts_.signature == nullptr) throw ParseError("unknown connective '" + t.text + "'", t.pos);
      auto it = opts_.signature->find(t.text);
      if (it == opts_.signature->end()) throw ParseError("unknown connective '" + t.text + "'", t.pos);
      if (it->second != args.size()) {
        throw ParseError("connective '" + t.text + "' expects " + std::to_string(it->second) +
                             " arguments, got " + std::to_string(args.size()),
                         t.pos);
      }
      return Formula::app(t.text, std::move(args));
    }
    Formula a = Formula::atom(t.text);
    const bool lower = std::islower(static_cast<unsigned char>(t.text[0])) != 0;
    if (!lower && !(opts_.allow_placeholders && placeholder_index(a) != 0)) {
      throw ParseError("invalid atom '" + t.text + "'", t.pos);
    }
    return a;
  }

  const Token& cur() const { return toks_[at_]; }
  bool peek(Tok k) const { return toks_[at_].kind == k; }
  void expect(Tok k, const char* what) {
    if (!peek(k)) {
      throw ParseError(std::string("expected ") + what + ", found " +
                           (cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'"),
                       cur().pos);
    }
    ++at_;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  ParseOptions opts_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  Formula f = p.formula();
  p.finish();
  return f;
}

RExpr parse_rexpr(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  RExpr s = p.rexpr();
  p.finish();
  return s;
}

RSequent parse_sequent(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  RSequent s = p.sequent();
  p.finish();
  return s;
}

std::vector<RExpr> parse_series(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  auto s = p.series();
  p.finish();
  return s;
}

}  // namespace connexive
