#include "modalcheck/argument_lab.hpp"

#include <algorithm>
#include <chrono>

#include "modalcheck/enumerator.hpp"

namespace modalcheck {

std::vector<Formula> Argument::premise_formulas() const {
  std::vector<Formula> out;
  out.reserve(premises.size());
  for (const auto& p : premises) out.push_back(p.formula);
  return out;
}

namespace {

using FC = FrameCondition;

Argument make(std::string name, std::vector<std::pair<std::string, std::string>> premises, FrameClass frame,
              const std::string& conclusion) {
  Argument a{std::move(name), {}, frame, parse(conclusion)};
  for (auto& [n, f] : premises) a.premises.push_back({std::move(n), parse(f)});
  return a;
}

bool lex_less(const FrameClass& a, const FrameClass& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto ca = a.conditions();
  const auto cb = b.conditions();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

SuiteCheck check(std::string name, std::vector<std::string> premises, const std::string& conclusion,
                 FrameClass frame, bool expect_valid, bool asserted = true) {
  SuiteCheck c{std::move(name), {}, parse(conclusion), frame, expect_valid, asserted};
  for (const auto& p : premises) c.premises.push_back(parse(p));
  return c;
}

SuiteEntry run_entry(std::string name, const std::vector<SuiteCheck>& checks) {
  SuiteEntry e{std::move(name), {}};
  for (const auto& c : checks) e.results.push_back(run_check(c));
  return e;
}

}  // namespace

TrivialitySchema triviality_schema(const Argument& a) {
  if (a.premises.size() != 2) {
    throw ShapeError(a.name + ": triviality check needs exactly two premises, got " +
                     std::to_string(a.premises.size()));
  }
  const Formula& second = a.premises[1].formula;
  if (second.op() != Op::Diamond || !second.lhs().is_atom()) {
    throw ShapeError(a.name + ": second premise must be <>x for an atom x, got " + print(second));
  }
  const AtomName& x = second.lhs().name();
  std::set<AtomName> used = atoms(a.conclusion);
  for (const auto& p : a.premises) {
    auto more = atoms(p.formula);
    used.insert(more.begin(), more.end());
  }
  const Formula p = Formula::atom(fresh_atom(used));
  return {{substitute(a.premises[0].formula, x, p)},
          Formula::implies(Formula::diamond(p), substitute(a.conclusion, x, p))};
}

std::vector<Argument> builtin_corpus() {
  const FrameClass sym{FC::Symmetric};
  const FrameClass euc{FC::Euclidean};
  return {
      make("eder_ramharter", {{"ER1", "g -> []g"}, {"ER2", "<>g"}}, sym, "g"),
      make("kane", {{"K1", "[](g -> []g)"}, {"K2", "<>g"}}, sym, "g"),
      make("malcolm", {{"M1", "g -> []g"}, {"M2", "<>g"}}, euc, "[]g"),
      make("malcolm_alt", {{"M1", "g -> []g"}, {"M2", "<>g"}}, sym, "[]g"),
      make("adams", {{"A1", "[](g -> []g)"}, {"A2", "<>g"}}, euc, "[]g"),
      make("adams_alt", {{"A1", "[](g -> []g)"}, {"A2", "<>g"}}, sym, "[]g"),
      make("hartshorne", {{"H1", "g |> []g"}, {"H2", "<>g"}}, sym, "g"),
      make("hartshorne_alt", {{"H1", "g |> []g"}, {"H2", "<>g"}}, euc, "[]g"),
  };
}

std::optional<Argument> corpus_entry(const std::string& name) {
  for (auto& a : builtin_corpus()) {
    if (a.name == name) return a;
  }
  return std::nullopt;
}

Verdict triviality_check(const Argument& a) {
  auto [premises, conclusion] = triviality_schema(a);
  return decide(premises, conclusion, a.frame);
}

Verdict triviality_lifted(const Argument& a) {
  auto [premises, conclusion] = triviality_schema(a);
  return prove_valid(Formula::implies(premises.front(), conclusion), a.frame);
}

std::vector<FrameClass> frame_requirement_search(const Argument& a) {
  std::vector<FrameClass> subsets;
  for (unsigned bits = 0; bits < 32; ++bits) subsets.push_back(FrameClass::from_bits(static_cast<std::uint8_t>(bits)));
  std::sort(subsets.begin(), subsets.end(), lex_less);

  // Subsets come smallest first, so a set with a valid proper subset is
  // skipped without a decide() call: it cannot be minimal.
  const auto premises = a.premise_formulas();
  std::vector<FrameClass> minimal;
  for (const auto& s : subsets) {
    bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) { return m.subset_of(s); });
    if (!dominated && decide(premises, a.conclusion, s).is_valid()) minimal.push_back(s);
  }
  return minimal;
}

AnalysisReport analyze(const Argument& a, bool frame_search) {
  const auto premises = a.premise_formulas();
  AnalysisReport r{a.name, decide(premises, a.conclusion, a.frame), decide(premises, a.conclusion, {}),
                   std::nullopt, std::nullopt};
  try {
    r.triviality = triviality_check(a);
  } catch (const ShapeError&) {
  }
  if (frame_search) r.minimal_frames = frame_requirement_search(a);
  return r;
}

bool SuiteEntry::matched() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.matched(); });
}

bool SuiteEntry::asserted() const {
  return std::any_of(results.begin(), results.end(), [](const auto& r) { return r.check.asserted; });
}

std::size_t SuiteReport::asserted_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.asserted(); }));
}

std::size_t SuiteReport::matched_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const auto& e) { return e.asserted() && e.matched(); }));
}

CheckResult run_check(const SuiteCheck& c) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v = decide(c.premises, c.conclusion, c.frame);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::optional<CountermodelWitness> w;
  if (!v.is_valid()) w = minimize_countermodel(v.witness(), c.premises, c.conclusion, c.frame);
  return {c, std::move(v), std::move(w), ms};
}

void require_all_matched(const SuiteReport& r) {
  for (const auto& e : r.entries) {
    if (e.asserted() && !e.matched()) throw SuiteFailure(r.name + ": entry " + e.name + " did not match");
  }
}

SuiteReport corpus_suite() {
  SuiteReport r{"corpus", {}};
  for (const auto& a : builtin_corpus()) {
    SuiteCheck stated{a.name, a.premise_formulas(), a.conclusion, a.frame, true, true};
    SuiteCheck bare{a.name + "_no_frame", a.premise_formulas(), a.conclusion, {}, false, true};
    r.entries.push_back(run_entry(a.name, {stated, bare}));
  }
  return r;
}

SuiteReport axiom_correspondence_suite() {
  struct Axiom {
    const char* name;
    const char* formula;
    FrameClass frame;
  };
  const Axiom single[] = {
      {"T", "[]p -> p", {FC::Reflexive}},     {"D", "[]p -> <>p", {FC::Serial}},
      {"B", "p -> []<>p", {FC::Symmetric}},   {"4", "[]p -> [][]p", {FC::Transitive}},
      {"5", "<>p -> []<>p", {FC::Euclidean}},
  };

  SuiteReport r{"axioms", {}};
  r.entries.push_back(run_entry("K", {check("K", {}, "[](p -> q) -> ([]p -> []q)", {}, true)}));
  for (const auto& ax : single) {
    const std::string n = ax.name;
    r.entries.push_back(
        run_entry(n, {check(n, {}, ax.formula, ax.frame, true), check(n + "_over_K", {}, ax.formula, {}, false)}));
  }
  const FrameClass s5{FC::Reflexive, FC::Euclidean};
  r.entries.push_back(run_entry("B_in_S5", {check("B_in_S5", {}, "p -> []<>p", s5, true)}));
  r.entries.push_back(run_entry("four_from_T5", {check("four_from_T5", {}, "[]p -> [][]p", s5, true)}));
  r.entries.push_back(run_entry("dexpand", {check("dexpand", {}, "<>p <-> ~[]~p", {}, true)}));
  r.entries.push_back(
      run_entry("strict_equiv", {check("strict_equiv", {}, "(p |> q) <-> [](p -> q)", {}, true)}));
  return r;
}

SuiteReport jacquette_suite() {
  const FrameClass rst{FC::Reflexive, FC::Symmetric, FC::Transitive};
  SuiteReport r{"jacquette", {}};
  r.entries.push_back(run_entry("tollens", {check("tollens", {"p -> q"}, "[]~q -> []~p", {}, true)}));
  r.entries.push_back(
      run_entry("tollens_bad", {check("tollens_bad", {}, "(p -> q) -> ([]~q -> []~p)", rst, false)}));
  r.entries.push_back(run_entry("prop5", {check("prop5", {"g -> []g"}, "[]~[]g -> []~g", {}, true)}));
  r.entries.push_back(run_entry(
      "tollens_bad_strict",
      {check("tollens_bad_strict", {}, "(p |> q) |> ([]~q |> []~p)", rst, true, false)}));
  return r;
}

SuiteReport premise_equivalence_suite() {
  SuiteReport r{"equivalences", {}};
  r.entries.push_back(run_entry("ER1_entails_K1", {check("ER1_entails_K1", {"g -> []g"}, "[](g -> []g)", {}, true)}));
  r.entries.push_back(run_entry("H1_entails_K1", {check("H1_entails_K1", {"g |> []g"}, "[](g -> []g)", {}, true)}));
  r.entries.push_back(run_entry("K1_entails_H1", {check("K1_entails_H1", {"[](g -> []g)"}, "g |> []g", {}, true)}));
  return r;
}

SuiteReport triviality_suite() {
  const std::pair<const char*, const char*> lemmas[] = {
      {"ER_triv", "eder_ramharter"}, {"K_triv", "kane"},      {"M_triv", "malcolm"},
      {"A_triv", "adams"},           {"H_triv", "hartshorne"}, {"H_triv_alt", "hartshorne_alt"},
  };
  SuiteReport r{"triviality", {}};
  for (const auto& [lemma, entry] : lemmas) {
    const Argument a = *corpus_entry(entry);
    auto [premises, conclusion] = triviality_schema(a);
    const std::string n = lemma;
    SuiteCheck schema{n, premises, conclusion, a.frame, true, true};
    SuiteCheck lifted{n + "_lifted", {}, Formula::implies(premises.front(), conclusion), a.frame, true, false};
    r.entries.push_back(run_entry(n, {schema, lifted}));
  }
  return r;
}

std::vector<StepResult> run_derivation(const DerivationScript& s) {
  std::vector<Formula> known;
  for (const auto& p : s.premises) known.push_back(p.formula);
  std::vector<StepResult> out;
  for (const auto& step : s.steps) {
    out.push_back({step.name, step.formula, decide(known, step.formula, s.frame)});
    known.push_back(step.formula);
  }
  return out;
}

SuiteReport derivation_suite(const DerivationScript& s) {
  SuiteReport r{s.name, {}};
  std::vector<Formula> known;
  for (const auto& p : s.premises) known.push_back(p.formula);
  for (const auto& step : s.steps) {
    r.entries.push_back(run_entry(step.name, {SuiteCheck{step.name, known, step.formula, s.frame, true, true}}));
    known.push_back(step.formula);
  }
  return r;
}

DerivationScript eder_ramharter_manual() {
  DerivationScript s{"eder_ramharter_manual", {}, {FC::Reflexive, FC::Euclidean}, {}};
  s.premises = {{"ER1", parse("g -> []g")}, {"ER2", parse("<>g")}};
  const char* steps[] = {"[]g | []~[]g", "[]~[]g -> []~g", "[]g | []~g", "[]g", "g"};
  int i = 1;
  for (const char* f : steps) s.steps.push_back({"step" + std::to_string(i++), parse(f)});
  return s;
}

}  // namespace modalcheck
