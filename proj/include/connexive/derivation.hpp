#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace connexive {

/// Outcome of checking a derivation. A rejection names the first offending
/// node by its child-index path from the root.
struct Verdict {
  bool accepted = true;
  std::vector<std::size_t> path;
  std::string reason;

  static Verdict accept() { return {}; }
  static Verdict reject(std::vector<std::size_t> path, std::string reason) {
    return {false, std::move(path), std::move(reason)};
  }
  explicit operator bool() const { return accepted; }

  std::string describe() const {
    if (accepted) return "accepted";
    std::string p = "root";
    for (auto i : path) p += "." + std::to_string(i);
    return "rejected at " + p + ": " + reason;
  }
};

/// Rule-labelled tree with a conclusion at every node; shared by the calculi.
template <class Rule, class Judgment>
struct Derivation {
  Rule rule;
  Judgment conclusion;
  std::vector<Derivation> children;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

}  // namespace connexive
