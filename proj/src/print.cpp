#include "modalcheck/formula.hpp"

namespace modalcheck {
namespace {

// Binding strength, loosest first. Mirrors the parser's grammar levels.
enum Level : int { kIff = 0, kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

int level_of(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies:
    case Op::StrictImplies: return kImp;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    default: return kUnary;
  }
}

struct Spelling {
  const char* neg;
  const char* conj;
  const char* disj;
  const char* implies;
  const char* strict;
  const char* iff;
  const char* box;
  const char* diamond;
};

constexpr Spelling kAscii{"~", " & ", " | ", " -> ", " |> ", " <-> ", "[]", "<>"};
constexpr Spelling kUnicodeGlyphs{"¬", " ∧ ", " ∨ ", " ⊃ ",
                                  " ⥽ ", " ≡ ", "□", "◇"};

void emit(const Formula& f, int min_level, const Spelling& sp, std::string& out) {
  const int lvl = level_of(f.op());
  const bool parens = lvl < min_level;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += f.name();
      break;
    case Op::Not:
    case Op::Box:
    case Op::Diamond:
      out += f.op() == Op::Not ? sp.neg : f.op() == Op::Box ? sp.box : sp.diamond;
      emit(f.lhs(), kUnary, sp, out);
      break;
    case Op::And:
      emit(f.lhs(), kAnd, sp, out);
      out += sp.conj;
      emit(f.rhs(), kUnary, sp, out);
      break;
    case Op::Or:
      emit(f.lhs(), kOr, sp, out);
      out += sp.disj;
      emit(f.rhs(), kAnd, sp, out);
      break;
    case Op::Implies:
    case Op::StrictImplies:
      // right-associative
      emit(f.lhs(), kOr, sp, out);
      out += f.op() == Op::Implies ? sp.implies : sp.strict;
      emit(f.rhs(), kImp, sp, out);
      break;
    case Op::Iff:
      emit(f.lhs(), kIff, sp, out);
      out += sp.iff;
      emit(f.rhs(), kImp, sp, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const Formula& f, Glyphs glyphs) {
  std::string out;
  emit(f, kIff, glyphs == Glyphs::Ascii ? kAscii : kUnicodeGlyphs, out);
  return out;
}

}  // namespace modalcheck
