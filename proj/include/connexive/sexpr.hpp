#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace connexive {

/// Minimal s-expression: bare atoms, double-quoted strings, and lists.
struct SExpr {
  enum class Kind { Atom, String, List };
  Kind kind = Kind::List;
  std::string text;
  std::vector<SExpr> items;

  static SExpr atom(std::string s) { return {Kind::Atom, std::move(s), {}}; }
  static SExpr string(std::string s) { return {Kind::String, std::move(s), {}}; }
  static SExpr list(std::vector<SExpr> items) { return {Kind::List, {}, std::move(items)}; }

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_atom(std::string_view s) const { return kind == Kind::Atom && text == s; }
  bool is_string() const { return kind == Kind::String; }
  bool is_list() const { return kind == Kind::List; }
  /// True for a list whose head is the atom `head`.
  bool is_form(std::string_view head) const {
    return is_list() && !items.empty() && items.front().is_atom(head);
  }
};

class SExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses exactly one expression; ';' starts a line comment.
SExpr parse_sexpr(std::string_view text);
/// Whole file as text; throws std::runtime_error if it cannot be read.
std::string read_text_file(const std::filesystem::path& path);
SExpr read_sexpr_file(const std::filesystem::path& path);
/// Lists headed by `node` break their nested lists onto indented lines.
std::string write_sexpr(const SExpr& e);

}  // namespace connexive
