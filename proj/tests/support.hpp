#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "modalcheck/formula.hpp"
#include "modalcheck/kripke.hpp"
#include "modalcheck/tableau.hpp"

namespace testsupport {

using modalcheck::Formula;
using modalcheck::KripkeModel;
using modalcheck::Op;

struct FormulaGen {
  std::mt19937 rng;
  std::vector<std::string> atoms{"p", "q"};
  bool sugar = true;  // allow Iff and StrictImplies

  explicit FormulaGen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Formula atom() { return Formula::atom(atoms[static_cast<std::size_t>(pick(static_cast<int>(atoms.size())))]); }

  // Depth counts connectives on the longest path; atoms have depth 0.
  Formula operator()(int depth) {
    if (depth == 0 || pick(4) == 0) return atom();
    const int kinds = sugar ? 9 : 7;
    switch (pick(kinds)) {
      case 0: return Formula::neg((*this)(depth - 1));
      case 1: return Formula::box((*this)(depth - 1));
      case 2: return Formula::diamond((*this)(depth - 1));
      case 3: return Formula::conj((*this)(depth - 1), (*this)(depth - 1));
      case 4: return Formula::disj((*this)(depth - 1), (*this)(depth - 1));
      case 5: return Formula::implies((*this)(depth - 1), (*this)(depth - 1));
      case 6: return atom();
      case 7: return Formula::iff((*this)(depth - 1), (*this)(depth - 1));
      default: return Formula::strict((*this)(depth - 1), (*this)(depth - 1));
    }
  }
};

inline KripkeModel random_model(std::mt19937& rng, std::size_t max_worlds, const std::vector<std::string>& atoms) {
  std::uniform_int_distribution<std::size_t> worlds(1, max_worlds);
  std::bernoulli_distribution coin(0.5);
  const std::size_t n = worlds(rng);
  modalcheck::AccessRelation r;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coin(rng)) r.insert(i, j);
    }
  }
  modalcheck::Valuation v;
  for (const auto& a : atoms) {
    auto& ws = v[a];
    for (std::size_t w = 0; w < n; ++w) {
      if (coin(rng)) ws.insert(w);
    }
  }
  return KripkeModel(n, r, v);
}

// Test-side semantics, written against the truth conditions directly and
// sharing nothing with the library's evaluator.
inline bool naive_eval(const KripkeModel& m, std::size_t w, const Formula& f) {
  auto sees = [&](std::size_t v) { return m.access().pairs().count({w, v}) > 0; };
  switch (f.op()) {
    case Op::Atom: {
      auto it = m.valuation().find(f.name());
      return it != m.valuation().end() && it->second.count(w) > 0;
    }
    case Op::Not: return !naive_eval(m, w, f.lhs());
    case Op::And: return naive_eval(m, w, f.lhs()) && naive_eval(m, w, f.rhs());
    case Op::Or: return naive_eval(m, w, f.lhs()) || naive_eval(m, w, f.rhs());
    case Op::Implies: return !naive_eval(m, w, f.lhs()) || naive_eval(m, w, f.rhs());
    case Op::Iff: return naive_eval(m, w, f.lhs()) == naive_eval(m, w, f.rhs());
    case Op::Box:
      for (std::size_t v = 0; v < m.world_count(); ++v) {
        if (sees(v) && !naive_eval(m, v, f.lhs())) return false;
      }
      return true;
    case Op::Diamond:
      for (std::size_t v = 0; v < m.world_count(); ++v) {
        if (sees(v) && naive_eval(m, v, f.lhs())) return true;
      }
      return false;
    case Op::StrictImplies:
      // No accessible world where the antecedent holds and the consequent fails.
      for (std::size_t v = 0; v < m.world_count(); ++v) {
        if (sees(v) && naive_eval(m, v, f.lhs()) && !naive_eval(m, v, f.rhs())) return false;
      }
      return true;
  }
  return false;
}

inline bool naive_global(const KripkeModel& m, const Formula& f) {
  for (std::size_t w = 0; w < m.world_count(); ++w) {
    if (!naive_eval(m, w, f)) return false;
  }
  return true;
}

inline bool naive_frame(const KripkeModel& m, modalcheck::FrameCondition c) {
  const std::size_t n = m.world_count();
  auto R = [&](std::size_t a, std::size_t b) { return m.access().pairs().count({a, b}) > 0; };
  using modalcheck::FrameCondition;
  for (std::size_t u = 0; u < n; ++u) {
    bool has_succ = false;
    for (std::size_t v = 0; v < n; ++v) {
      has_succ = has_succ || R(u, v);
      for (std::size_t x = 0; x < n; ++x) {
        if (c == FrameCondition::Transitive && R(u, v) && R(v, x) && !R(u, x)) return false;
        if (c == FrameCondition::Euclidean && R(u, v) && R(u, x) && !R(v, x)) return false;
      }
      if (c == FrameCondition::Symmetric && R(u, v) && !R(v, u)) return false;
    }
    if (c == FrameCondition::Reflexive && !R(u, u)) return false;
    if (c == FrameCondition::Serial && !has_succ) return false;
  }
  return true;
}

inline bool naive_frame(const KripkeModel& m, const modalcheck::FrameClass& f) {
  for (auto c : f.conditions()) {
    if (!naive_frame(m, c)) return false;
  }
  return true;
}

// Independent witness check: frame, premises globally, conclusion fails at w.
inline bool naive_witness(const KripkeModel& m, std::size_t w, const std::vector<Formula>& premises,
                          const Formula& conclusion, const modalcheck::FrameClass& frame) {
  if (w >= m.world_count() || !naive_frame(m, frame)) return false;
  for (const auto& p : premises) {
    if (!naive_global(m, p)) return false;
  }
  return !naive_eval(m, w, conclusion);
}

inline std::size_t node_count(const Formula& f) {
  if (f.is_atom()) return 1;
  return 1 + node_count(f.lhs()) + (modalcheck::is_binary(f.op()) ? node_count(f.rhs()) : 0);
}

// Every proof obtained by deleting exactly one closure leaf.
inline std::vector<modalcheck::ProofObject> leaf_deletions(const modalcheck::ProofObject& p) {
  std::vector<modalcheck::ProofObject> out;
  std::vector<std::size_t> path;
  std::function<void(const modalcheck::ProofNode&)> walk = [&](const modalcheck::ProofNode& n) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (n.children[i].rule == modalcheck::RuleKind::Closure) {
        modalcheck::ProofObject copy = p;
        modalcheck::ProofNode* cur = &copy.root;
        for (auto k : path) cur = &cur->children[k];
        cur->children.erase(cur->children.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(std::move(copy));
      }
      path.push_back(i);
      walk(n.children[i]);
      path.pop_back();
    }
  };
  walk(p.root);
  return out;
}

}  // namespace testsupport
