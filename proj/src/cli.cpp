#include "modalcheck/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "modalcheck/report.hpp"

namespace modalcheck {

Argument argument_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("argument file is not JSON: ") + e.what());
  }
  try {
    std::vector<std::string> frame_names = j.at("frame").get<std::vector<std::string>>();
    Argument a{j.at("name").get<std::string>(), {}, parse_frame_list(frame_names),
               parse(j.at("conclusion").get<std::string>())};
    std::set<std::string> seen;
    for (const auto& p : j.at("premises")) {
      NamedFormula nf{p.at("name").get<std::string>(), parse(p.at("formula").get<std::string>())};
      if (!seen.insert(nf.name).second) throw std::invalid_argument("duplicate premise name " + nf.name);
      a.premises.push_back(std::move(nf));
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed argument file: ") + e.what());
  }
}

std::string argument_to_json(const Argument& a) {
  Json j;
  j["name"] = a.name;
  Json premises = Json::array();
  for (const auto& p : a.premises) premises.push_back({{"name", p.name}, {"formula", print(p.formula)}});
  j["premises"] = std::move(premises);
  j["frame"] = frame_json(a.frame);
  j["conclusion"] = print(a.conclusion);
  return j.dump(2);
}

FrameClass parse_frame_list(const std::vector<std::string>& items) {
  FrameClass f;
  for (const auto& item : items) {
    if (auto c = condition_from_string(item)) {
      f.insert(*c);
    } else if (auto l = logic_from_string(item)) {
      for (auto c2 : frame_of(*l).conditions()) f.insert(c2);
    } else {
      throw std::invalid_argument("unknown frame condition or logic: " + item);
    }
  }
  return f;
}

std::string export_dot(const CountermodelWitness& w) {
  std::ostringstream out;
  out << "digraph countermodel {\n  node [shape=circle];\n";
  for (World x = 0; x < w.model.world_count(); ++x) {
    std::string label = "w" + std::to_string(x);
    for (const auto& [a, worlds] : w.model.valuation()) {
      if (worlds.contains(x)) label += "\\n" + a;
    }
    out << "  w" << x << " [label=\"" << label << "\"" << (x == w.world ? ", shape=doublecircle" : "") << "];\n";
  }
  for (const auto& [u, v] : w.model.access().pairs()) out << "  w" << u << " -> w" << v << ";\n";
  out << "}\n";
  return out.str();
}

namespace {

struct Flags {
  bool json = false;
  bool stable = false;
  bool unicode = false;
  bool no_frame = false;
  bool minimal_frames = false;
  std::size_t max_worlds = 3;
  std::string dot;
  std::string logic;
  std::vector<std::string> frame;

  ReportOptions report() const { return {stable, unicode, max_worlds}; }

  std::optional<FrameClass> frame_override() const {
    if (logic.empty() && frame.empty()) return std::nullopt;
    std::vector<std::string> items = frame;
    if (!logic.empty()) {
      if (!logic_from_string(logic)) throw std::invalid_argument("unknown logic: " + logic);
      items.push_back(logic);
    }
    return parse_frame_list(items);
  }
};

void add_output_flags(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--json", f.json, "Emit a JSON report");
  cmd->add_flag("--stable", f.stable, "Zero all timings");
  cmd->add_flag("--unicode", f.unicode, "Render formulas with symbol glyphs");
  cmd->add_option("--max-worlds", f.max_worlds, "Enumerator budget for cross-checks and witnesses")
      ->check(CLI::Range(std::size_t{1}, kMaxEnumeratedWorlds));
}

void add_frame_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--logic", f.logic, "Logic alias: K, T, D, B, S4, S5");
  cmd->add_option("--frame", f.frame, "Frame conditions or logic aliases")->delimiter(',');
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Argument load_argument(const std::string& target) {
  if (auto a = corpus_entry(target)) return *a;
  std::ifstream in(target);
  if (!in) throw std::invalid_argument("no corpus entry or readable file named " + target);
  std::stringstream buf;
  buf << in.rdbuf();
  return argument_from_json(buf.str());
}

void write_dot(const Flags& f, const ShownVerdict& v, std::ostream& err) {
  if (f.dot.empty()) return;
  if (v.valid) {
    err << "note: verdict is Valid, no countermodel written to " << f.dot << "\n";
    return;
  }
  std::ofstream out(f.dot);
  if (!out) throw std::runtime_error("cannot write " + f.dot);
  out << export_dot(*v.witness);
}

int cmd_check(const std::string& target, const Flags& f, std::ostream& out, std::ostream& err) {
  Argument a = load_argument(target);
  if (auto fr = f.frame_override()) a.frame = *fr;
  const auto opts = f.report();
  const auto premises = a.premise_formulas();

  const auto start = std::chrono::steady_clock::now();
  AnalysisReport rep = analyze(a, f.minimal_frames);
  const double ms = elapsed_ms(start);

  CheckReport r{a, f.no_frame ? FrameClass{} : a.frame,
                show(f.no_frame ? rep.verdict_without_frame : rep.verdict, premises, a.conclusion,
                     f.no_frame ? FrameClass{} : a.frame, opts),
                show(rep.verdict_without_frame, premises, a.conclusion, {}, opts), std::nullopt,
                rep.minimal_frames};
  if (rep.triviality) {
    const auto schema = triviality_schema(a);
    r.triviality = show(*rep.triviality, schema.premises, schema.conclusion, a.frame, opts);
  }

  if (f.json) {
    Json j;
    j["command"] = f.no_frame ? "countermodel" : "check";
    const Json body = check_json(r);
    for (const auto& [k, v] : body.items()) j[k] = v;
    j["timing_ms"] = opts.stable ? 0.0 : ms;
    out << j.dump(2) << "\n";
  } else {
    out << render_check(r, opts);
  }
  write_dot(f, r.verdict, err);
  return r.verdict.valid ? 0 : 1;
}

int cmd_prove(const std::string& text, const Flags& f, std::ostream& out, std::ostream& err) {
  const Formula formula = parse(text);
  const FrameClass frame = f.frame_override().value_or(FrameClass{});
  const auto opts = f.report();
  const auto start = std::chrono::steady_clock::now();
  const Verdict v = prove_valid(formula, frame);
  const ShownVerdict shown = show(v, {}, formula, frame, opts, elapsed_ms(start));
  if (f.json) {
    Json j;
    j["command"] = "prove";
    j["formula"] = print(formula);
    j["frame"] = frame_json(frame);
    j["result"] = verdict_json(shown);
    out << j.dump(2) << "\n";
  } else {
    out << print(formula, f.unicode ? Glyphs::Unicode : Glyphs::Ascii) << "\n  "
        << render_verdict(shown, frame, "  ");
  }
  write_dot(f, shown, err);
  return shown.valid ? 0 : 1;
}

int cmd_suites(const std::string& command, const std::vector<SuiteReport>& suites, const Flags& f,
               std::ostream& out) {
  const auto opts = f.report();
  bool ok = true;
  for (const auto& s : suites) ok = ok && s.all_matched();
  if (f.json) {
    Json j;
    j["command"] = command;
    if (suites.size() == 1) {
      const Json body = suite_json(suites.front(), opts);
      for (const auto& [k, v] : body.items()) j[k] = v;
    } else {
      Json all = Json::array();
      for (const auto& s : suites) all.push_back(suite_json(s, opts));
      j["suites"] = std::move(all);
      j["all_matched"] = ok;
    }
    out << j.dump(2) << "\n";
  } else {
    for (const auto& s : suites) out << render_suite(s, opts);
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Propositional modal logic checker and ontological-argument workbench", "modalcheck"};
  app.require_subcommand(1);
  Flags f;
  std::string target;

  auto* check = app.add_subcommand("check", "Analyze a corpus entry or argument file");
  check->add_option("target", target, "Corpus entry name or argument JSON file")->required();
  check->add_flag("--no-frame", f.no_frame, "Check over the empty frame class");
  check->add_flag("--minimal-frames", f.minimal_frames, "Search the minimal sufficient frame classes");
  check->add_option("--dot", f.dot, "Write the countermodel as Graphviz DOT");
  add_output_flags(check, f);
  add_frame_flags(check, f);

  auto* counter = app.add_subcommand("countermodel", "Same as check --no-frame");
  counter->add_option("target", target, "Corpus entry name or argument JSON file")->required();
  counter->add_flag("--minimal-frames", f.minimal_frames, "Search the minimal sufficient frame classes");
  counter->add_option("--dot", f.dot, "Write the countermodel as Graphviz DOT");
  add_output_flags(counter, f);
  add_frame_flags(counter, f);

  auto* prove = app.add_subcommand("prove", "Decide validity of one formula");
  prove->add_option("formula", target, "Formula")->required();
  prove->add_option("--dot", f.dot, "Write the countermodel as Graphviz DOT");
  add_output_flags(prove, f);
  add_frame_flags(prove, f);

  const std::pair<const char*, const char*> suites[] = {
      {"corpus", "Check every corpus entry with and without its frame"},
      {"axioms", "Axiom and frame correspondence suite"},
      {"steps", "Replay the manual derivation step by step"},
      {"jacquette", "Modal tollens checks"},
      {"all", "Every suite, including triviality and premise equivalences"},
  };
  std::map<std::string, CLI::App*> suite_cmds;
  for (const auto& [name, help] : suites) {
    suite_cmds[name] = app.add_subcommand(name, help);
    add_output_flags(suite_cmds[name], f);
  }

  std::vector<const char*> argv{"modalcheck"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return cmd_check(target, f, out, err);
    if (counter->parsed()) {
      f.no_frame = true;
      return cmd_check(target, f, out, err);
    }
    if (prove->parsed()) return cmd_prove(target, f, out, err);
    if (suite_cmds["corpus"]->parsed()) return cmd_suites("corpus", {corpus_suite()}, f, out);
    if (suite_cmds["axioms"]->parsed()) return cmd_suites("axioms", {axiom_correspondence_suite()}, f, out);
    if (suite_cmds["steps"]->parsed()) {
      return cmd_suites("steps", {derivation_suite(eder_ramharter_manual())}, f, out);
    }
    if (suite_cmds["jacquette"]->parsed()) return cmd_suites("jacquette", {jacquette_suite()}, f, out);
    return cmd_suites("all",
                      {corpus_suite(), axiom_correspondence_suite(), derivation_suite(eder_ramharter_manual()),
                       jacquette_suite(), triviality_suite(), premise_equivalence_suite()},
                      f, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace modalcheck
