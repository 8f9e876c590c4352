#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalcheck/formula.hpp"
#include "modalcheck/kripke.hpp"
#include "modalcheck/tableau.hpp"

namespace modalcheck {

struct NamedFormula {
  std::string name;
  Formula formula;
};

struct Argument {
  std::string name;
  std::vector<NamedFormula> premises;
  FrameClass frame;
  Formula conclusion;

  std::vector<Formula> premise_formulas() const;
};

/// Thrown when an argument does not fit the two-premise triviality shape.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SuiteFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The eight reconstructions, each paired with one frame class.
std::vector<Argument> builtin_corpus();
/// Corpus entry by name; nothing if unknown.
std::optional<Argument> corpus_entry(const std::string& name);

/// The triviality query: premises {P1[p]} and conclusion <>p -> C[p], where p
/// is fresh and replaces the atom x of premise 2 (which must be <>x).
/// Throws ShapeError otherwise.
struct TrivialitySchema {
  std::vector<Formula> premises;
  Formula conclusion;
};
TrivialitySchema triviality_schema(const Argument& a);

/// Premise 1 with the possibility premise's atom renamed to a fresh p must
/// globally entail <>p -> C[p], over the argument's frame. Premise 2 must be
/// <>x for an atom x.
Verdict triviality_check(const Argument& a);
/// Validity of the single formula P1[p] -> (<>p -> C[p]) over the frame.
Verdict triviality_lifted(const Argument& a);

/// Minimal condition sets (by inclusion) under which the argument is valid,
/// sorted by size, then lexicographically in FrameCondition order.
std::vector<FrameClass> frame_requirement_search(const Argument& a);

struct AnalysisReport {
  std::string argument;
  Verdict verdict;
  Verdict verdict_without_frame;
  /// Absent when the argument does not have the triviality shape.
  std::optional<Verdict> triviality;
  /// Absent when the frame search was not requested.
  std::optional<std::vector<FrameClass>> minimal_frames;
};

AnalysisReport analyze(const Argument& a, bool frame_search = true);

/// One decide() call with an expected outcome.
struct SuiteCheck {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  FrameClass frame;
  bool expect_valid = true;
  /// Unasserted checks are reported but never count as mismatches.
  bool asserted = true;
};

struct CheckResult {
  SuiteCheck check;
  Verdict verdict;
  /// Smallest enumerator witness for an Invalid verdict, else the tableau's.
  std::optional<CountermodelWitness> witness;
  double millis = 0;

  bool matched() const { return !check.asserted || verdict.is_valid() == check.expect_valid; }
};

struct SuiteEntry {
  std::string name;
  std::vector<CheckResult> results;

  bool matched() const;
  /// False when every check in the entry is unasserted.
  bool asserted() const;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteEntry> entries;

  std::size_t asserted_count() const;
  std::size_t matched_count() const;
  bool all_matched() const { return matched_count() == asserted_count(); }
};

/// Runs one check; Invalid witnesses are minimized through the enumerator.
CheckResult run_check(const SuiteCheck& c);

/// Throws SuiteFailure naming the first asserted entry that did not match.
void require_all_matched(const SuiteReport& r);

/// Each entry: valid over its frame, invalid over {}.
SuiteReport corpus_suite();
/// K, T, D, B, 4, 5, B_in_S5, four_from_T5, dexpand, strict_equiv. The five
/// single-axiom entries also check invalidity over {}.
SuiteReport axiom_correspondence_suite();
/// tollens, tollens_bad, prop5, and the unasserted tollens_bad_strict.
SuiteReport jacquette_suite();
/// ER1 entails K1, H1 entails K1, K1 entails H1, all over {}.
SuiteReport premise_equivalence_suite();
/// Valid via triviality_check for the six entries whose lemma is asserted,
/// plus the unasserted lifted reading for each.
SuiteReport triviality_suite();

struct DerivationScript {
  std::string name;
  std::vector<NamedFormula> premises;
  FrameClass frame;
  std::vector<NamedFormula> steps;
};

struct StepResult {
  std::string name;
  Formula formula;
  Verdict verdict;
};

/// Step i is checked against the premises plus steps 0..i-1.
std::vector<StepResult> run_derivation(const DerivationScript& s);
DerivationScript eder_ramharter_manual();
/// The same checks as run_derivation, one entry per step, each expecting Valid.
SuiteReport derivation_suite(const DerivationScript& s);

}  // namespace modalcheck
