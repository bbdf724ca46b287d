#pragma once

#include <array>
#include <chrono>
#include <string>
#include <vector>

#include "connexive/connectives.hpp"
#include "connexive/g3c.hpp"
#include "connexive/scinf.hpp"

namespace connexive {

/// S <=>s T as four SC∞ derivations: S => T, T => S, -T => -S, -S => -T.
struct StrictEquivWitness {
  SCDerivation fwd;
  SCDerivation bwd;
  SCDerivation fwd_neg;
  SCDerivation bwd_neg;
};

/// The four end sequents a witness for (s, t) must have.
std::array<RSequent, 4> strict_equiv_sequents(const RExpr& s, const RExpr& t);

/// Checks all four derivations and their end sequents; the verdict path is
/// prefixed with the index of the failing derivation.
Verdict check_witness(const StrictEquivWitness& w, const RExpr& s, const RExpr& t, const Registry& env = {});

/// Witness for overline(s) <=>s s, by induction on s.
StrictEquivWitness overline_witness(const RExpr& s);

/// Fresh atoms p1..pn.
std::vector<Formula> fresh_atoms(std::size_t n);
/// F(p1, ..., pn)
Formula applied(const ConnectiveDef& def);
/// defining_formula(def) at p1..pn
Formula applied_defining_formula(const ConnectiveDef& def);
/// dual_defining_formula(def) at p1..pn
Formula applied_dual_formula(const ConnectiveDef& def);

/// Witness for F(p1..pn) <=>s D, D the defining formula at p1..pn, built
/// from the connective's own schema rules.
StrictEquivWitness definition_witness(const ConnectiveDef& def);

/// ~D => D-, D- => ~D, ~D- => ~~D, ~~D => ~D-, with D- the selection dual.
std::array<G3Sequent, 4> dual_sequents(const ConnectiveDef& def);

/// Each member starred separately.
G3Sequent star_sequent(const RSequent& s, const Registry& env);

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string detail;
  std::chrono::milliseconds millis{0};
};

struct VerificationReport {
  std::string connective;
  std::vector<CheckRecord> checks;

  bool passed() const;
};

/// Runs the witness, derived-rule, embedding and duality checks for a
/// definition registered in `env`.
VerificationReport verify_definition(const ConnectiveDef& def, const Registry& env, const SearchBudget& budget = {});

std::string to_text(const VerificationReport& r, bool timings = true);
/// One JSON object per line: {"connective","name","status","millis"[, "detail"]}.
std::string to_json_lines(const VerificationReport& r, bool timings = true);

}  // namespace connexive
