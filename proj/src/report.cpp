#include "modalcheck/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "modalcheck/enumerator.hpp"

namespace modalcheck {
namespace {

// Largest world count up to max whose search space stays around a million
// models (relations times valuations).
std::size_t searchable_worlds(std::size_t max, std::size_t atom_count) {
  std::size_t n = std::min(max, kMaxEnumeratedWorlds);
  while (n > 1 && n * n + n * atom_count > 20) --n;
  return n;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string glyphs(const Formula& f, bool unicode) { return print(f, unicode ? Glyphs::Unicode : Glyphs::Ascii); }

double timing(double ms, const ReportOptions& opts) { return opts.stable ? 0.0 : ms; }

std::string fixed(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

}  // namespace

CountermodelWitness display_witness(const CountermodelWitness& w, const std::vector<Formula>& premises,
                                    const Formula& conclusion, const FrameClass& frame,
                                    std::size_t max_worlds) {
  auto budget = EnumerationBudget::for_query(premises, conclusion);
  budget.max_worlds = searchable_worlds(max_worlds, budget.atoms.size());
  if (budget.max_worlds * budget.atoms.size() > 62) return w;
  auto found = find_countermodel(premises, conclusion, frame, budget);
  if (found && found->model.world_count() <= w.model.world_count()) return *found;
  return w;
}

ShownVerdict show(const Verdict& v, const std::vector<Formula>& premises, const Formula& conclusion,
                  const FrameClass& frame, const ReportOptions& opts, double millis) {
  ShownVerdict s;
  s.valid = v.is_valid();
  s.millis = timing(millis, opts);
  if (s.valid) {
    if (!check_proof(v.proof(), premises, conclusion, frame)) {
      throw std::logic_error("proof for " + print(conclusion) + " failed replay");
    }
    auto budget = EnumerationBudget::for_query(premises, conclusion);
    budget.max_worlds = searchable_worlds(opts.max_worlds, budget.atoms.size());
    if (budget.max_worlds * budget.atoms.size() <= 62 && find_countermodel(premises, conclusion, frame, budget)) {
      throw std::logic_error("enumerator refutes the Valid verdict for " + print(conclusion));
    }
    s.proof_nodes = v.proof().node_count();
    s.proof_id = fnv1a(to_json(v.proof()));
    return s;
  }
  CountermodelWitness w = display_witness(v.witness(), premises, conclusion, frame, opts.max_worlds);
  if (!verify_witness(w, premises, conclusion, frame)) {
    throw std::logic_error("countermodel for " + print(conclusion) + " failed re-verification");
  }
  s.witness = std::move(w);
  return s;
}

Json frame_json(const FrameClass& f) {
  Json j = Json::array();
  for (auto c : f.conditions()) j.push_back(to_string(c));
  return j;
}

Json witness_json(const CountermodelWitness& w) {
  Json j;
  j["model"] = Json::parse(to_json(w.model));
  j["world"] = w.world;
  return j;
}

Json verdict_json(const ShownVerdict& v) {
  Json j;
  j["verdict"] = verdict_word(v.valid);
  if (v.valid) {
    j["proof"] = {{"id", v.proof_id}, {"nodes", v.proof_nodes}, {"checked", true}};
  } else {
    j["witness"] = witness_json(*v.witness);
  }
  j["timing_ms"] = v.millis;
  return j;
}

std::string verdict_word(bool valid) { return valid ? "Valid" : "Invalid"; }

std::string render_witness(const CountermodelWitness& w, const std::string& indent) {
  std::ostringstream out;
  const auto& m = w.model;
  out << indent << "countermodel: " << m.world_count() << (m.world_count() == 1 ? " world" : " worlds")
      << ", fails at world " << w.world << "\n";
  for (World x = 0; x < m.world_count(); ++x) {
    std::string atoms_here;
    for (const auto& [a, worlds] : m.valuation()) {
      if (worlds.contains(x)) atoms_here += (atoms_here.empty() ? "" : ",") + a;
    }
    std::string succ;
    for (auto y : m.access().successors(x)) succ += (succ.empty() ? "" : ",") + std::to_string(y);
    out << indent << "  world " << x << "  true: " << (atoms_here.empty() ? "-" : atoms_here)
        << "  sees: " << (succ.empty() ? "-" : succ) << "\n";
  }
  return out.str();
}

std::string render_verdict(const ShownVerdict& v, const FrameClass& frame, const std::string& indent) {
  std::ostringstream out;
  out << verdict_word(v.valid) << " under " << to_string(frame);
  if (v.valid) out << " (proof " << v.proof_id << ", " << v.proof_nodes << " nodes, replayed)";
  out << "\n";
  if (!v.valid) out << render_witness(*v.witness, indent);
  return out.str();
}

Json check_json(const CheckReport& r) {
  Json j;
  j["argument"] = r.argument.name;
  Json premises = Json::array();
  for (const auto& p : r.argument.premises) premises.push_back({{"name", p.name}, {"formula", print(p.formula)}});
  j["premises"] = std::move(premises);
  j["conclusion"] = print(r.argument.conclusion);
  j["frame"] = frame_json(r.frame);
  j["result"] = verdict_json(r.verdict);
  j["without_frame"] = verdict_json(r.verdict_without_frame);
  j["triviality"] = r.triviality ? verdict_json(*r.triviality) : Json(nullptr);
  if (r.minimal_frames) {
    Json frames = Json::array();
    for (const auto& f : *r.minimal_frames) frames.push_back(frame_json(f));
    j["minimal_frames"] = std::move(frames);
  }
  return j;
}

std::string render_check(const CheckReport& r, const ReportOptions& opts) {
  std::ostringstream out;
  out << r.argument.name << "\n";
  for (const auto& p : r.argument.premises) out << "  premise " << p.name << ": " << glyphs(p.formula, opts.unicode) << "\n";
  out << "  conclusion: " << glyphs(r.argument.conclusion, opts.unicode) << "\n";
  out << "  " << render_verdict(r.verdict, r.frame, "  ");
  out << "  without frame: " << render_verdict(r.verdict_without_frame, {}, "    ");
  if (r.triviality) {
    out << "  triviality schema: " << render_verdict(*r.triviality, r.argument.frame, "    ");
  } else {
    out << "  triviality schema: not applicable\n";
  }
  if (r.minimal_frames) {
    out << "  minimal frames:";
    if (r.minimal_frames->empty()) out << " none";
    for (const auto& f : *r.minimal_frames) out << " " << to_string(f);
    out << "\n";
  }
  return out.str();
}

Json suite_json(const SuiteReport& r, const ReportOptions& opts) {
  Json j;
  j["suite"] = r.name;
  j["matched"] = r.matched_count();
  j["asserted"] = r.asserted_count();
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json ej;
    ej["name"] = e.name;
    ej["asserted"] = e.asserted();
    ej["matched"] = e.matched();
    Json checks = Json::array();
    for (const auto& c : e.results) {
      const ShownVerdict v = show(c.verdict, c.check.premises, c.check.conclusion, c.check.frame, opts, c.millis);
      Json cj;
      cj["name"] = c.check.name;
      Json premises = Json::array();
      for (const auto& p : c.check.premises) premises.push_back(print(p));
      cj["premises"] = std::move(premises);
      cj["conclusion"] = print(c.check.conclusion);
      cj["frame"] = frame_json(c.check.frame);
      cj["expected"] = c.check.asserted ? Json(verdict_word(c.check.expect_valid)) : Json(nullptr);
      cj["result"] = verdict_json(v);
      cj["matched"] = c.matched();
      checks.push_back(std::move(cj));
    }
    ej["checks"] = std::move(checks);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  return j;
}

std::string render_suite(const SuiteReport& r, const ReportOptions& opts) {
  std::ostringstream out;
  for (const auto& e : r.entries) {
    out << (e.asserted() ? (e.matched() ? "[ok]   " : "[FAIL] ") : "[info] ") << e.name << "\n";
    for (const auto& c : e.results) {
      const ShownVerdict v = show(c.verdict, c.check.premises, c.check.conclusion, c.check.frame, opts, c.millis);
      out << "       " << c.check.name << ": ";
      for (std::size_t i = 0; i < c.check.premises.size(); ++i) {
        out << (i ? ", " : "") << glyphs(c.check.premises[i], opts.unicode);
      }
      out << (c.check.premises.empty() ? "" : " ") << "|= " << glyphs(c.check.conclusion, opts.unicode) << "\n";
      out << "         expected " << (c.check.asserted ? verdict_word(c.check.expect_valid) : "(unasserted)")
          << ", got " << render_verdict(v, c.check.frame, "           ");
      out << "         time " << fixed(v.millis) << " ms\n";
    }
  }
  out << r.name << ": " << r.matched_count() << "/" << r.asserted_count() << " entries match\n";
  return out.str();
}

}  // namespace modalcheck
