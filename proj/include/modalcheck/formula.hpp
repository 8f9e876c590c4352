#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modalcheck {

/// Connective of a formula node. StrictImplies is sugar for ~<>(a & ~b).
enum class Op : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Box,
  Diamond,
  StrictImplies,
};

bool is_unary(Op op);
bool is_binary(Op op);

/// Immutable propositional modal formula. Copies share structure; equality is
/// structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Formula f);
  static Formula diamond(Formula f);
  static Formula strict(Formula a, Formula b);

  Op op() const;
  /// Atom name; empty for non-atoms.
  const std::string& name() const;
  /// Sole operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;

  bool is_atom() const { return op() == Op::Atom; }
  bool is_literal() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, const Formula* a, const Formula* b);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using AtomName = std::string;

bool is_identifier(std::string_view s);

/// Raised by parse() on malformed input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

Formula parse(std::string_view text);

enum class Glyphs { Ascii, Unicode };

std::string print(const Formula& f, Glyphs glyphs = Glyphs::Ascii);

// Syntactic transformations.

bool is_sugar_free(const Formula& f);
Formula desugar(const Formula& f);
Formula dual_expand(const Formula& f);
/// Rewrites a <-> b as (a -> b) & (b -> a).
Formula expand_iff(const Formula& f);
/// Negation normal form over {atom, ~atom, &, |, [], <>}. Input must be
/// sugar-free.
Formula nnf(const Formula& f);
Formula substitute(const Formula& f, const AtomName& atom, const Formula& replacement);
std::set<Formula> subformulas(const Formula& f);
std::set<AtomName> atoms(const Formula& f);
AtomName fresh_atom(const std::set<AtomName>& avoid);

}  // namespace modalcheck
