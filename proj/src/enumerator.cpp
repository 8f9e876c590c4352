// Bitmask kernel for countermodel search. A world set is a uint32 mask; each
// formula is compiled once into a post-order program over its distinct
// subformulas and evaluated for all worlds of a model at once.

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <stdexcept>

#include "modalcheck/enumerator.hpp"

namespace modalcheck {
namespace {

using Mask = std::uint32_t;

struct Instr {
  Op op;
  std::int32_t a = -1;  // operand slot, or atom index for Op::Atom (-1: unknown atom)
  std::int32_t b = -1;
};

class Program {
 public:
  Program(const std::vector<AtomName>& atoms) {
    for (std::size_t i = 0; i < atoms.size(); ++i) atom_index_[atoms[i]] = static_cast<std::int32_t>(i);
  }

  std::int32_t compile(const Formula& f) {
    if (auto it = slots_.find(f); it != slots_.end()) return it->second;
    Instr in{f.op()};
    if (f.op() == Op::StrictImplies) return compile(desugar(f));
    if (f.op() == Op::Atom) {
      auto it = atom_index_.find(f.name());
      in.a = it == atom_index_.end() ? -1 : it->second;
    } else {
      in.a = compile(f.lhs());
      if (is_binary(f.op())) in.b = compile(f.rhs());
    }
    code_.push_back(in);
    auto slot = static_cast<std::int32_t>(code_.size() - 1);
    slots_.emplace(f, slot);
    return slot;
  }

  // Evaluates every instruction; regs must hold code_.size() entries.
  void run(std::size_t n, const Mask* succ, const Mask* atom_masks, Mask* regs) const {
    const Mask full = (Mask{1} << n) - 1;
    for (std::size_t k = 0; k < code_.size(); ++k) {
      const Instr& in = code_[k];
      Mask m = 0;
      switch (in.op) {
        case Op::Atom: m = in.a < 0 ? 0 : atom_masks[in.a]; break;
        case Op::Not: m = ~regs[in.a] & full; break;
        case Op::And: m = regs[in.a] & regs[in.b]; break;
        case Op::Or: m = regs[in.a] | regs[in.b]; break;
        case Op::Implies: m = (~regs[in.a] | regs[in.b]) & full; break;
        case Op::Iff: m = ~(regs[in.a] ^ regs[in.b]) & full; break;
        case Op::Box:
          for (std::size_t w = 0; w < n; ++w) {
            if ((succ[w] & ~regs[in.a]) == 0) m |= Mask{1} << w;
          }
          break;
        case Op::Diamond:
          for (std::size_t w = 0; w < n; ++w) {
            if (succ[w] & regs[in.a]) m |= Mask{1} << w;
          }
          break;
        case Op::StrictImplies: break;
      }
      regs[k] = m;
    }
  }

  std::size_t size() const { return code_.size(); }

 private:
  std::map<AtomName, std::int32_t> atom_index_;
  std::map<Formula, std::int32_t> slots_;
  std::vector<Instr> code_;
};

// Bit string -> per-world successor masks (world w is bit w of the mask).
void successor_masks(std::size_t n, std::uint64_t bits, Mask* succ) {
  const std::size_t total = n * n;
  for (std::size_t i = 0; i < n; ++i) {
    succ[i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if ((bits >> (total - 1 - (i * n + j))) & 1u) succ[i] |= Mask{1} << j;
    }
  }
}

bool satisfies(std::size_t n, const Mask* succ, FrameCondition c) {
  const Mask full = (Mask{1} << n) - 1;
  switch (c) {
    case FrameCondition::Reflexive:
      for (std::size_t u = 0; u < n; ++u) {
        if (!(succ[u] >> u & 1u)) return false;
      }
      return true;
    case FrameCondition::Symmetric:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if ((succ[u] >> v & 1u) && !(succ[v] >> u & 1u)) return false;
        }
      }
      return true;
    case FrameCondition::Transitive:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if ((succ[u] >> v & 1u) && (succ[v] & ~succ[u] & full)) return false;
        }
      }
      return true;
    case FrameCondition::Euclidean:
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          if ((succ[u] >> v & 1u) && (succ[u] & ~succ[v])) return false;
        }
      }
      return true;
    case FrameCondition::Serial:
      for (std::size_t u = 0; u < n; ++u) {
        if (succ[u] == 0) return false;
      }
      return true;
  }
  return false;
}

constexpr std::size_t kMaxProgram = 4096;

}  // namespace

std::vector<std::uint64_t> frame_relations(std::size_t n, const FrameClass& frame) {
  if (n == 0 || n > kMaxEnumeratedWorlds) throw std::invalid_argument("world count out of range");
  std::vector<std::uint64_t> out;
  const std::uint64_t count = std::uint64_t{1} << (n * n);
  Mask succ[kMaxEnumeratedWorlds];
  const auto conds = frame.conditions();
  for (std::uint64_t r = 0; r < count; ++r) {
    successor_masks(n, r, succ);
    if (std::all_of(conds.begin(), conds.end(), [&](auto c) { return satisfies(n, succ, c); })) {
      out.push_back(r);
    }
  }
  return out;
}

std::optional<CountermodelWitness> find_countermodel(const std::vector<Formula>& premises,
                                                     const Formula& conclusion, const FrameClass& frame,
                                                     const EnumerationBudget& budget) {
  if (budget.max_worlds == 0 || budget.max_worlds > kMaxEnumeratedWorlds ||
      budget.max_worlds * budget.atoms.size() > 62) {
    throw std::invalid_argument("enumeration budget out of range");
  }
  Program prog(budget.atoms);
  std::vector<std::int32_t> premise_slots;
  for (const auto& p : premises) premise_slots.push_back(prog.compile(p));
  const std::int32_t conclusion_slot = prog.compile(conclusion);
  if (prog.size() > kMaxProgram) throw std::invalid_argument("formulas too large for the enumerator");

  const std::size_t k = budget.atoms.size();
  for (std::size_t n = 1; n <= budget.max_worlds; ++n) {
    const auto relations = frame_relations(n, frame);
    const Mask full = (Mask{1} << n) - 1;
    const std::uint64_t valuations = std::uint64_t{1} << (n * k);
    const auto count = static_cast<std::int64_t>(relations.size());

    // Candidates are (relation position, valuation, world); the coordinator
    // keeps the smallest relation position, which fixes the valuation too.
    std::atomic<std::int64_t> best{count};
    std::uint64_t best_valuation = 0;
    World best_world = 0;

#pragma omp parallel
    {
      std::vector<Mask> regs(prog.size());
      Mask succ[kMaxEnumeratedWorlds];
      std::vector<Mask> atom_masks(k);
#pragma omp for schedule(dynamic, 4)
      for (std::int64_t pos = 0; pos < count; ++pos) {
        if (pos >= best.load(std::memory_order_relaxed)) continue;
        successor_masks(n, relations[static_cast<std::size_t>(pos)], succ);
        for (std::uint64_t v = 0; v < valuations; ++v) {
          const std::size_t total = n * k;
          for (std::size_t a = 0; a < k; ++a) {
            Mask m = 0;
            for (std::size_t w = 0; w < n; ++w) {
              if ((v >> (total - 1 - (a * n + w))) & 1u) m |= Mask{1} << w;
            }
            atom_masks[a] = m;
          }
          prog.run(n, succ, atom_masks.data(), regs.data());
          bool premises_hold = true;
          for (auto s : premise_slots) premises_hold = premises_hold && regs[s] == full;
          if (!premises_hold || regs[conclusion_slot] == full) continue;
          const auto world = static_cast<World>(std::countr_zero(~regs[conclusion_slot] & full));
#pragma omp critical(modalcheck_best_witness)
          {
            if (pos < best.load()) {
              best.store(pos);
              best_valuation = v;
              best_world = world;
            }
          }
          break;
        }
      }
    }

    if (best.load() < count) {
      const auto rel = relations[static_cast<std::size_t>(best.load())];
      return CountermodelWitness{
          KripkeModel(n, relation_from_bits(n, rel), valuation_from_bits(n, budget.atoms, best_valuation)),
          best_world};
    }
  }
  return std::nullopt;
}

CountermodelWitness minimize_countermodel(const CountermodelWitness& w,
                                          const std::vector<Formula>& premises, const Formula& conclusion,
                                          const FrameClass& frame) {
  const std::size_t bound = std::min(w.model.world_count(), kMaxEnumeratedWorlds);
  auto budget = EnumerationBudget::for_query(premises, conclusion, bound);
  if (bound * budget.atoms.size() > 62) return w;
  auto found = find_countermodel(premises, conclusion, frame, budget);
  return found ? *found : w;
}

}  // namespace modalcheck
