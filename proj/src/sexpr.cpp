#include "connexive/sexpr.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace connexive {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr list = SExpr::list({});
      while (true) {
        skip();
        if (pos_ >= text_.size()) fail("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') return string();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"') {
      ++pos_;
    }
    return SExpr::atom(std::string(text_.substr(start, pos_ - start)));
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing input");
  }

 private:
  SExpr string() {
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') return SExpr::string(std::move(out));
      if (c == '\\') {
        if (pos_ >= text_.size()) fail("unterminated escape");
        out += text_[pos_++];
      } else {
        out += c;
      }
    }
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SExprError(what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write_flat(const SExpr& e, std::string& out) {
  switch (e.kind) {
    case SExpr::Kind::Atom:
      out += e.text;
      break;
    case SExpr::Kind::String:
      out += '"';
      for (char c : e.text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
      break;
    case SExpr::Kind::List:
      out += '(';
      for (std::size_t i = 0; i < e.items.size(); ++i) {
        if (i > 0) out += ' ';
        write_flat(e.items[i], out);
      }
      out += ')';
      break;
  }
}

bool breaks(const SExpr& e) { return e.is_form("node") || e.is_form("derivation"); }

void write_pretty(const SExpr& e, int indent, std::string& out) {
  if (!breaks(e)) {
    write_flat(e, out);
    return;
  }
  out += '(';
  bool first = true;
  for (const auto& item : e.items) {
    if (breaks(item)) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent + 2), ' ');
      write_pretty(item, indent + 2, out);
    } else {
      if (!first) out += ' ';
      write_flat(item, out);
    }
    first = false;
  }
  out += ')';
}

}  // namespace

SExpr parse_sexpr(std::string_view text) {
  Reader r(text);
  SExpr e = r.read();
  r.finish();
  return e;
}

std::string write_sexpr(const SExpr& e) {
  std::string out;
  write_pretty(e, 0, out);
  out += '\n';
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SExpr read_sexpr_file(const std::filesystem::path& path) { return parse_sexpr(read_text_file(path)); }

}  // namespace connexive
