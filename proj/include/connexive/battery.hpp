#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "connexive/connectives.hpp"
#include "connexive/syntax.hpp"

namespace connexive {

/// Seeds for the sampled corpora; changing them changes what the battery checks.
inline constexpr std::uint64_t kSyntaxSeed = 20250101;
inline constexpr std::uint64_t kDefinitionSeed = 0xC0EC7;

using Rng = std::mt19937_64;

/// Random formula over the given atoms with at most `depth` nested connectives.
Formula random_formula(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms = {"p", "q", "r"});
/// Random R-expression with nesting depth at most `depth`; contexts hold up to three members.
RExpr random_rexpr(Rng& rng, std::size_t depth, const std::vector<std::string>& atoms = {"p", "q", "r"});

struct DefinitionLimits {
  std::size_t max_arity = 3;
  std::size_t max_groups = 3;
  std::size_t max_group_size = 2;
};

/// Random definition whose members have R-degree at most 1.
ConnectiveDef random_definition(Rng& rng, std::string name, const DefinitionLimits& limits = {});
/// `count` definitions named R1, R2, ... from `seed`.
std::vector<ConnectiveDef> definition_corpus(std::size_t count = 100, std::uint64_t seed = kDefinitionSeed);

/// R-expressions over {p, q} of R-degree <= 2 with contexts of length <= 2:
/// every one of degree <= 1, and the degree-2 ones whose members come from
/// the atoms, their refutations and the unrefuted degree-1 sequents with at
/// most one context member.
std::vector<RExpr> degree_two_corpus();

/// ~, &, | and -> as user connectives named neg, and, or, imp.
std::vector<ConnectiveDef> standard_definitions();
/// Differences between the rules generated for the standard definitions and
/// the primitive rule table; empty when they coincide.
std::vector<std::string> schema_mismatches();

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  std::chrono::milliseconds millis{0};
};

struct BatteryOptions {
  /// Directory holding nc/*.nc golden derivations.
  std::filesystem::path corpus_dir;
  /// Run only these criteria; empty runs all.
  std::vector<int> only;
};

std::filesystem::path default_corpus_dir();

CriterionResult criterion_theses();
CriterionResult criterion_non_symmetry();
CriterionResult criterion_contradiction();
CriterionResult criterion_overline_coverage();
CriterionResult criterion_definition_witnesses();
CriterionResult criterion_schema_regeneration();
CriterionResult criterion_embedding();
CriterionResult criterion_nc_golden(const std::filesystem::path& corpus_dir);
CriterionResult criterion_syntax_round_trip();
CriterionResult criterion_duals();

std::vector<CriterionResult> run_battery(const BatteryOptions& options = {});

/// "[pass] 1 connexive theses (12 ms) ..." one line per criterion.
std::string format_line(const CriterionResult& r, bool timings = true);

}  // namespace connexive
