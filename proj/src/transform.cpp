#include <functional>
#include <stdexcept>

#include "modalcheck/formula.hpp"

namespace modalcheck {
namespace {

Formula rebuild(const Formula& f, const std::function<Formula(const Formula&)>& rec) {
  switch (f.op()) {
    case Op::Atom: return f;
    case Op::Not: return Formula::neg(rec(f.lhs()));
    case Op::Box: return Formula::box(rec(f.lhs()));
    case Op::Diamond: return Formula::diamond(rec(f.lhs()));
    case Op::And: return Formula::conj(rec(f.lhs()), rec(f.rhs()));
    case Op::Or: return Formula::disj(rec(f.lhs()), rec(f.rhs()));
    case Op::Implies: return Formula::implies(rec(f.lhs()), rec(f.rhs()));
    case Op::Iff: return Formula::iff(rec(f.lhs()), rec(f.rhs()));
    case Op::StrictImplies: return Formula::strict(rec(f.lhs()), rec(f.rhs()));
  }
  throw std::logic_error("unreachable");
}

void require_sugar_free(const Formula& f, const char* who) {
  if (!is_sugar_free(f)) {
    throw std::invalid_argument(std::string(who) + ": formula contains strict implication");
  }
}

Formula nnf_of(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::Atom:
      return negated ? Formula::neg(f) : f;
    case Op::Not:
      return nnf_of(f.lhs(), !negated);
    case Op::And:
      return negated ? Formula::disj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                     : Formula::conj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::Or:
      return negated ? Formula::conj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                     : Formula::disj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::Implies:
      return negated ? Formula::conj(nnf_of(f.lhs(), false), nnf_of(f.rhs(), true))
                     : Formula::disj(nnf_of(f.lhs(), true), nnf_of(f.rhs(), false));
    case Op::Iff:
      return nnf_of(Formula::conj(Formula::implies(f.lhs(), f.rhs()),
                                  Formula::implies(f.rhs(), f.lhs())),
                    negated);
    case Op::Box:
      return negated ? Formula::diamond(nnf_of(f.lhs(), true)) : Formula::box(nnf_of(f.lhs(), false));
    case Op::Diamond:
      return negated ? Formula::box(nnf_of(f.lhs(), true)) : Formula::diamond(nnf_of(f.lhs(), false));
    case Op::StrictImplies:
      break;
  }
  throw std::logic_error("nnf: strict implication must be desugared first");
}

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.op() == Op::Atom) return;
  collect(f.lhs(), out);
  if (is_binary(f.op())) collect(f.rhs(), out);
}

}  // namespace

bool is_sugar_free(const Formula& f) {
  if (f.op() == Op::StrictImplies) return false;
  if (f.op() == Op::Atom) return true;
  return is_sugar_free(f.lhs()) && (!is_binary(f.op()) || is_sugar_free(f.rhs()));
}

Formula desugar(const Formula& f) {
  if (f.op() == Op::StrictImplies) {
    return Formula::neg(Formula::diamond(Formula::conj(desugar(f.lhs()), Formula::neg(desugar(f.rhs())))));
  }
  return rebuild(f, desugar);
}

Formula dual_expand(const Formula& f) {
  require_sugar_free(f, "dual_expand");
  if (f.op() == Op::Diamond) {
    return Formula::neg(Formula::box(Formula::neg(dual_expand(f.lhs()))));
  }
  return rebuild(f, dual_expand);
}

Formula expand_iff(const Formula& f) {
  if (f.op() == Op::Iff) {
    Formula a = expand_iff(f.lhs());
    Formula b = expand_iff(f.rhs());
    return Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
  }
  return rebuild(f, expand_iff);
}

Formula nnf(const Formula& f) {
  require_sugar_free(f, "nnf");
  return nnf_of(f, false);
}

Formula substitute(const Formula& f, const AtomName& atom, const Formula& replacement) {
  if (f.op() == Op::Atom) return f.name() == atom ? replacement : f;
  return rebuild(f, [&](const Formula& g) { return substitute(g, atom, replacement); });
}

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect(f, out);
  return out;
}

std::set<AtomName> atoms(const Formula& f) {
  std::set<AtomName> out;
  for (const auto& g : subformulas(f)) {
    if (g.is_atom()) out.insert(g.name());
  }
  return out;
}

AtomName fresh_atom(const std::set<AtomName>& avoid) {
  for (std::size_t i = 0;; ++i) {
    AtomName candidate = "p" + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace modalcheck
