#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "modalcheck/enumerator.hpp"
#include "modalcheck/formula.hpp"
#include "modalcheck/kripke.hpp"

namespace modalcheck {

enum class RuleKind { Alpha, Beta, Box, Diamond, Serial, GlobalPremise, FrameClosure, Closure };

/// "alpha", "beta", "box", "diamond", "serial", "global-premise",
/// "frame-closure", "closure".
std::string to_string(RuleKind r);
std::optional<RuleKind> rule_from_string(const std::string& s);

/// One rule application in a closed tableau.
///
/// Field use by rule:
///   alpha          principal A & B at `label`; adds A and B.
///   beta           principal A | B at `label`; children[0] adds A, children[1] adds B.
///   box            principal []A at `label`; affected {y}, an existing edge label->y; adds A at y.
///   diamond        principal <>A at `label`; affected {y}, a new label; adds label->y and A at y.
///   serial         affected {y}, a new label; adds label->y. Needs a serial frame.
///   global-premise principal is a premise (in NNF); adds it at `label`.
///   frame-closure  condition c; affected {u, v}; adds u->v, derivable by c from present edges.
///   closure        principal atom p; both p and ~p are at `label`. Leaf.
struct ProofNode {
  std::size_t id = 0;
  RuleKind rule = RuleKind::Closure;
  std::size_t label = 0;
  std::optional<Formula> principal;
  std::vector<std::size_t> affected;
  std::optional<FrameCondition> condition;
  std::vector<ProofNode> children;
};

/// Closed tableau rooted at label 0 seeded with nnf(~conclusion).
struct ProofObject {
  ProofNode root;

  std::size_t node_count() const;
};

class Verdict {
 public:
  static Verdict valid(ProofObject proof) { return Verdict(std::move(proof)); }
  static Verdict invalid(CountermodelWitness witness) { return Verdict(std::move(witness)); }

  bool is_valid() const { return std::holds_alternative<ProofObject>(value_); }
  const ProofObject& proof() const { return std::get<ProofObject>(value_); }
  const CountermodelWitness& witness() const { return std::get<CountermodelWitness>(value_); }

 private:
  explicit Verdict(std::variant<ProofObject, CountermodelWitness> v) : value_(std::move(v)) {}
  std::variant<ProofObject, CountermodelWitness> value_;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSaturated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The next applicable rule on a branch, in priority order.
struct PendingRule {
  RuleKind rule;
  std::size_t label;
  std::optional<Formula> principal;
  std::vector<std::size_t> affected;
  std::optional<FrameCondition> condition;
};

/// One tableau branch: labels (candidate worlds) carrying NNF formula sets,
/// and an edge set standing for accessibility facts.
///
/// Rule priority: global-premise > frame-closure > alpha > box > beta >
/// diamond > serial, ties broken by label id then formula order. The first
/// two are applied eagerly by the prover, so every label carries every
/// premise and the edges stay closed under the frame's Horn conditions
/// whenever a branching rule is considered.
class Branch {
 public:
  /// Premises are NNF formulas that every label must carry.
  Branch(FrameClass frame, std::vector<Formula> premises);
  ~Branch();
  Branch(const Branch&);
  Branch& operator=(const Branch&);
  Branch(Branch&&) noexcept;
  Branch& operator=(Branch&&) noexcept;

  std::size_t add_label();
  /// Adds an NNF formula; returns false if already present.
  bool add(std::size_t label, const Formula& f);
  /// Adds a raw edge without frame closure.
  bool add_edge(std::size_t from, std::size_t to);

  const FrameClass& frame() const;
  const std::vector<Formula>& premises() const;
  std::size_t label_count() const;
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const;
  bool contains(std::size_t label, const Formula& f) const;
  /// Formulas of a label, in formula order.
  std::vector<Formula> formulas(std::size_t label) const;

  /// First complementary pair (label, atom), if any.
  std::optional<std::pair<std::size_t, Formula>> clash() const;
  std::optional<PendingRule> next_rule() const;
  /// Open and no rule applicable.
  bool saturated() const;

  /// Applies a non-branching rule (global-premise, frame-closure, alpha, box).
  void apply(const PendingRule& r);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Reads a model off an open saturated branch: worlds are labels, access is
/// the edge set, an atom holds where its positive literal is present. The
/// witness world is the root label 0. Throws NotSaturated otherwise.
CountermodelWitness extract_countermodel(const Branch& b);

struct DecideOptions {
  /// Ceiling on labels created over the whole search.
  std::size_t node_ceiling = 10000;
};

/// Global consequence over the frame class: Valid iff the conclusion holds at
/// every world of every frame-class model where each premise holds at every
/// world. Throws ResourceLimit when the node ceiling is exceeded.
Verdict decide(const std::vector<Formula>& premises, const Formula& conclusion, const FrameClass& frame,
               const DecideOptions& options = {});

Verdict prove_valid(const Formula& f, const FrameClass& frame, const DecideOptions& options = {});

/// desugar, then expand_iff, then nnf.
Formula tableau_normal_form(const Formula& f);

/// Replays a proof from the seeded root; true iff every step is licensed
/// under `frame` and every leaf closes. Shares no state with the prover.
bool check_proof(const ProofObject& p, const std::vector<Formula>& premises, const Formula& conclusion,
                 const FrameClass& frame);

/// Nested JSON, fields in the order id, rule, label, principal, affected,
/// condition, children; absent optionals are omitted.
std::string to_json(const ProofObject& p, int indent = -1);
/// Throws std::invalid_argument on a malformed document.
ProofObject proof_from_json(const std::string& text);

}  // namespace modalcheck
