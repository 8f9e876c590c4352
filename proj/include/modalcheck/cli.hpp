#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "modalcheck/argument_lab.hpp"

namespace modalcheck {

/// Reads an argument file:
///   {"name": ..., "premises": [{"name": ..., "formula": ...}], "frame": [...], "conclusion": ...}
/// Throws std::invalid_argument on malformed JSON, bad formulas, unknown
/// frame names, or duplicate premise names.
Argument argument_from_json(const std::string& text);
std::string argument_to_json(const Argument& a);

/// Union of condition names ("reflexive", ...) and logic aliases ("S5", ...).
/// Throws std::invalid_argument on an unknown name.
FrameClass parse_frame_list(const std::vector<std::string>& items);

/// Graphviz digraph: one node per world labeled with its true atoms, one
/// edge per access pair, the failing world double-circled.
std::string export_dot(const CountermodelWitness& w);

/// Runs the command line (without the program name). Exit codes: 0 Valid or
/// every suite entry matched, 1 Invalid or a mismatch, 2 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modalcheck
