#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "modalcheck/argument_lab.hpp"

namespace modalcheck {

using Json = nlohmann::ordered_json;

struct ReportOptions {
  bool stable = false;   // zero every timing
  bool unicode = false;  // text reports only; JSON always uses ASCII
  std::size_t max_worlds = 3;
};

/// A verdict as reported: a Valid proof has been replayed and cross-checked
/// against the enumerator, an Invalid witness minimized and re-verified.
struct ShownVerdict {
  bool valid = false;
  std::optional<CountermodelWitness> witness;
  std::size_t proof_nodes = 0;
  std::string proof_id;  // FNV-1a of the proof's JSON
  double millis = 0;
};

/// Throws std::logic_error if the proof fails replay, the enumerator finds
/// a countermodel to a Valid verdict, or a witness fails re-verification.
ShownVerdict show(const Verdict& v, const std::vector<Formula>& premises, const Formula& conclusion,
                  const FrameClass& frame, const ReportOptions& opts, double millis = 0);

/// Smallest enumerator witness within max_worlds (shrunk if the atom count
/// makes that search too large), else w itself.
CountermodelWitness display_witness(const CountermodelWitness& w, const std::vector<Formula>& premises,
                                    const Formula& conclusion, const FrameClass& frame,
                                    std::size_t max_worlds);

Json frame_json(const FrameClass& f);
Json witness_json(const CountermodelWitness& w);
Json verdict_json(const ShownVerdict& v);

std::string verdict_word(bool valid);
/// "Valid under {symmetric}" style headline plus witness lines.
std::string render_verdict(const ShownVerdict& v, const FrameClass& frame, const std::string& indent);
std::string render_witness(const CountermodelWitness& w, const std::string& indent);

struct CheckReport {
  Argument argument;
  FrameClass frame;  // the frame actually checked
  ShownVerdict verdict;
  ShownVerdict verdict_without_frame;
  std::optional<ShownVerdict> triviality;
  std::optional<std::vector<FrameClass>> minimal_frames;
};

Json check_json(const CheckReport& r);
std::string render_check(const CheckReport& r, const ReportOptions& opts);

Json suite_json(const SuiteReport& r, const ReportOptions& opts);
std::string render_suite(const SuiteReport& r, const ReportOptions& opts);

}  // namespace modalcheck
