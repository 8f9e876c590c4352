#include "modalcheck/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace modalcheck {

struct Formula::Node {
  Op op;
  std::string name;
  std::array<Formula, 2> kids;
  std::size_t arity;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

bool is_unary(Op op) { return op == Op::Not || op == Op::Box || op == Op::Diamond; }

bool is_binary(Op op) { return op != Op::Atom && !is_unary(op); }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, const Formula* a, const Formula* b) {
  // Unused operand slots hold a null node.
  auto node = std::shared_ptr<Node>(new Node{op, std::move(name),
                                             {a ? *a : Formula(nullptr), b ? *b : Formula(nullptr)},
                                             std::size_t{a != nullptr} + std::size_t{b != nullptr},
                                             0, 1, 1});
  std::size_t h = std::hash<int>{}(static_cast<int>(op));
  if (op == Op::Atom) {
    h = mix(h, std::hash<std::string>{}(node->name));
  }
  for (std::size_t i = 0; i < node->arity; ++i) {
    const auto& k = node->kids[i];
    h = mix(h, k.hash());
    node->size += k.size();
    node->depth = std::max(node->depth, k.depth() + 1);
  }
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  return make(Op::Atom, std::move(name), nullptr, nullptr);
}

Formula Formula::neg(Formula f) { return make(Op::Not, {}, &f, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {}, &a, &b); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, {}, &a, &b); }
Formula Formula::box(Formula f) { return make(Op::Box, {}, &f, nullptr); }
Formula Formula::diamond(Formula f) { return make(Op::Diamond, {}, &f, nullptr); }
Formula Formula::strict(Formula a, Formula b) { return make(Op::StrictImplies, {}, &a, &b); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->kids[0]; }
const Formula& Formula::rhs() const { return node_->kids[1]; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

bool Formula::is_literal() const {
  return op() == Op::Atom || (op() == Op::Not && lhs().op() == Op::Atom);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.size() != b.size()) return false;
  if (a.op() == Op::Atom) return a.name() == b.name();
  if (!(a.lhs() == b.lhs())) return false;
  return a.node_->arity < 2 || a.rhs() == b.rhs();
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (a.op() == Op::Atom) return a.name() <=> b.name();
  if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
  if (a.node_->arity < 2) return std::strong_ordering::equal;
  return a.rhs() <=> b.rhs();
}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "syntax error at offset " << offset << ": found " << found << ", expected one of {";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          os << (i ? ", " : "") << expected[i];
        }
        os << "}";
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace modalcheck
