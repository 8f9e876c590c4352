// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "modalcheck/argument_lab.hpp"
#include "modalcheck/cli.hpp"
#include "modalcheck/enumerator.hpp"
#include "support.hpp"

using namespace modalcheck;
using FC = FrameCondition;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Valid verdicts gathered from criteria 1-7 for proof replay.
struct ProvedQuery {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
  FrameClass frame;
  ProofObject proof;
};

std::vector<ProvedQuery> proved;

void keep(const std::string& name, const std::vector<Formula>& premises, const Formula& conclusion,
          const FrameClass& frame, const Verdict& v) {
  if (v.is_valid()) proved.push_back({name, premises, conclusion, frame, v.proof()});
}

void keep_suite(const SuiteReport& r) {
  for (const auto& e : r.entries) {
    for (const auto& c : e.results) keep(c.check.name, c.check.premises, c.check.conclusion, c.check.frame, c.verdict);
  }
}

bool witness_ok(const CheckResult& c) {
  return c.witness && testsupport::naive_witness(c.witness->model, c.witness->world, c.check.premises,
                                                 c.check.conclusion, c.check.frame);
}

int failures = 0;

void report(int n, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
}

void run(int n, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

void corpus_valid() {
  const auto t0 = Clock::now();
  int ok = 0;
  for (const auto& a : builtin_corpus()) {
    const auto v = decide(a.premise_formulas(), a.conclusion, a.frame);
    keep(a.name, a.premise_formulas(), a.conclusion, a.frame, v);
    if (v.is_valid()) ++ok;
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << "corpus valid under stated frames " << ok << "/8 in " << s << " s (limit 1 s)";
  report(1, ok == 8 && s < 1.0, d.str());
}

void corpus_invalid_bare() {
  const auto t0 = Clock::now();
  int ok = 0;
  for (const auto& a : builtin_corpus()) {
    const auto premises = a.premise_formulas();
    const auto v = decide(premises, a.conclusion, {});
    if (v.is_valid()) continue;
    const auto w = minimize_countermodel(v.witness(), premises, a.conclusion, {});
    const auto enumerated =
        find_countermodel(premises, a.conclusion, {}, EnumerationBudget::for_query(premises, a.conclusion, 2));
    if (w.model.world_count() <= 2 && enumerated && *enumerated == w &&
        testsupport::naive_witness(w.model, w.world, premises, a.conclusion, {}))
      ++ok;
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << "corpus invalid over {} with <=2-world re-verified witnesses " << ok << "/8 in " << s << " s (limit 5 s)";
  report(2, ok == 8 && s < 5.0, d.str());
}

void triviality() {
  const std::pair<const char*, const char*> lemmas[] = {
      {"ER_triv", "eder_ramharter"}, {"K_triv", "kane"},       {"M_triv", "malcolm"},
      {"A_triv", "adams"},           {"H_triv", "hartshorne"}, {"H_triv_alt", "hartshorne_alt"},
  };
  int ok = 0;
  std::string failed;
  for (const auto& [lemma, entry] : lemmas) {
    const auto a = *corpus_entry(entry);
    const auto v = triviality_check(a);
    const auto schema = triviality_schema(a);
    keep(lemma, schema.premises, schema.conclusion, a.frame, v);
    if (v.is_valid()) {
      ++ok;
    } else {
      failed += std::string(" ") + lemma;
    }
  }
  report(3, ok == 6, "triviality lemmas valid " + std::to_string(ok) + "/6" + failed);
}

void axioms() {
  const auto r = axiom_correspondence_suite();
  keep_suite(r);
  std::size_t witnesses = 0, verified = 0;
  for (const auto& e : r.entries) {
    for (const auto& c : e.results) {
      if (c.verdict.is_valid()) continue;
      ++witnesses;
      if (witness_ok(c)) ++verified;
    }
  }
  const bool pass = r.entries.size() == 10 && r.all_matched() && verified == witnesses;
  report(4, pass,
         "axiom correspondence " + std::to_string(r.matched_count()) + "/" + std::to_string(r.entries.size()) +
             " entries, " + std::to_string(verified) + "/" + std::to_string(witnesses) + " witnesses re-verified");
}

void derivation() {
  const auto script = eder_ramharter_manual();
  const auto steps = run_derivation(script);
  std::vector<Formula> known;
  for (const auto& p : script.premises) known.push_back(p.formula);
  int ok = 0;
  for (const auto& s : steps) {
    keep(s.name, known, s.formula, script.frame, s.verdict);
    if (s.verdict.is_valid()) ++ok;
    known.push_back(s.formula);
  }
  const bool pass = steps.size() == 5 && ok == 5 && script.frame == FrameClass{FC::Reflexive, FC::Euclidean};
  report(5, pass, "manual derivation steps valid " + std::to_string(ok) + "/5 over " + to_string(script.frame));
}

void jacquette() {
  const auto r = jacquette_suite();
  keep_suite(r);
  int ok = 0;
  for (const auto& e : r.entries) {
    for (const auto& c : e.results) {
      if (!c.check.asserted) continue;
      if (c.check.name == "tollens") ok += c.verdict.is_valid() && c.check.frame == FrameClass{};
      if (c.check.name == "tollens_bad")
        ok += !c.verdict.is_valid() && witness_ok(c) && c.witness->model.world_count() <= 2 &&
              c.check.frame == FrameClass{FC::Reflexive, FC::Symmetric, FC::Transitive};
      if (c.check.name == "prop5") ok += c.verdict.is_valid();
    }
  }
  report(6, ok == 3, "jacquette suite " + std::to_string(ok) + "/3");
}

void equivalences() {
  const auto r = premise_equivalence_suite();
  keep_suite(r);
  int ok = 0;
  for (const auto& e : r.entries) {
    for (const auto& c : e.results) ok += c.verdict.is_valid() && c.check.frame == FrameClass{};
  }
  report(7, ok == 3, "premise equivalences valid " + std::to_string(ok) + "/3");
}

void oracle_agreement() {
  const auto t0 = Clock::now();
  const FrameClass frames[] = {{}, {FC::Reflexive}, {FC::Symmetric}, {FC::Reflexive, FC::Euclidean}};
  testsupport::FormulaGen gen(20240601);
  int contradictions = 0, bad_witness = 0, limits = 0, valid = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> premises;
    for (int k = gen.pick(3); k > 0; --k) premises.push_back(gen(3));
    const Formula c = gen(3);
    const FrameClass& f = frames[i % 4];
    try {
      const auto v = decide(premises, c, f);
      const auto cm = find_countermodel(premises, c, f, EnumerationBudget::for_query(premises, c, 3));
      if (v.is_valid()) {
        ++valid;
        if (cm) ++contradictions;
      } else if (!testsupport::naive_witness(v.witness().model, v.witness().world, premises, c, f)) {
        ++bad_witness;
      }
    } catch (const ResourceLimit&) {
      ++limits;
    }
  }
  const double s = seconds_since(t0);
  std::ostringstream d;
  d << "500 random queries (" << valid << " valid): " << contradictions << " contradictions, " << bad_witness
    << " bad witnesses, " << limits << " resource limits in " << s << " s (limit 60 s)";
  report(8, contradictions == 0 && bad_witness == 0 && limits == 0 && s < 60.0, d.str());
}

void proof_replay() {
  std::size_t replayed = 0, mutants = 0, rejected = 0;
  std::string failed;
  for (const auto& q : proved) {
    if (check_proof(q.proof, q.premises, q.conclusion, q.frame)) {
      ++replayed;
    } else {
      failed += " " + q.name;
    }
    for (const auto& m : testsupport::leaf_deletions(q.proof)) {
      ++mutants;
      if (!check_proof(m, q.premises, q.conclusion, q.frame)) ++rejected;
    }
  }
  std::ostringstream d;
  d << replayed << "/" << proved.size() << " proofs replayed, " << rejected << "/" << mutants
    << " leaf-deleted mutants rejected" << failed;
  report(9, !proved.empty() && replayed == proved.size() && mutants > 0 && rejected == mutants, d.str());
}

void determinism() {
  std::string runs[2];
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream out, err;
    codes[i] = run_cli({"all", "--stable", "--json"}, out, err);
    runs[i] = out.str();
  }
  const bool pass = codes[0] == 0 && codes[1] == 0 && !runs[0].empty() && runs[0] == runs[1];
  report(10, pass, "two stable JSON suite runs byte-identical (" + std::to_string(runs[0].size()) + " bytes)");
}

}  // namespace

int main() {
  run(1, corpus_valid);
  run(2, corpus_invalid_bare);
  run(3, triviality);
  run(4, axioms);
  run(5, derivation);
  run(6, jacquette);
  run(7, equivalences);
  run(8, oracle_agreement);
  run(9, proof_replay);
  run(10, determinism);
  return failures == 0 ? 0 : 1;
}
