// Recursive-descent parser for the formula grammar:
//
//   formula := iff
//   iff     := imp ("<->" imp)*
//   imp     := or (("->" | "|>") imp)?
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := ("~" | "[]" | "<>")* primary
//   primary := IDENT | "(" formula ")"
//
// '#' starts a comment that runs to end of line. The Unicode glyphs
// ¬ ∧ ∨ ⊃ → ≡ ↔ □ ◇ ⥽ are accepted as aliases.

#include <cctype>
#include <optional>

#include "modalcheck/formula.hpp"

namespace modalcheck {
namespace {

enum class Tok { Ident, Not, And, Or, Implies, Strict, Iff, Box, Diamond, LParen, RParen, End };

const char* spelling(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Strict: return "'|>'";
    case Tok::Iff: return "'<->'";
    case Tok::Box: return "'[]'";
    case Tok::Diamond: return "'<>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

struct Alias {
  std::string_view glyph;
  Tok kind;
};

constexpr Alias kUnicode[] = {
    {"¬", Tok::Not},     {"∧", Tok::And},     {"∨", Tok::Or},
    {"⊃", Tok::Implies}, {"→", Tok::Implies}, {"≡", Tok::Iff},
    {"↔", Tok::Iff},     {"□", Tok::Box},     {"◇", Tok::Diamond},
    {"⥽", Tok::Strict},
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) return {Tok::End, at, {}};
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::Ident, at, std::string(src_.substr(at, pos_ - at))};
    }
    auto take = [&](Tok k, std::size_t n) {
      pos_ += n;
      return Token{k, at, std::string(src_.substr(at, n))};
    };
    auto rest = src_.substr(pos_);
    if (rest.starts_with("<->")) return take(Tok::Iff, 3);
    if (rest.starts_with("<>")) return take(Tok::Diamond, 2);
    if (rest.starts_with("->")) return take(Tok::Implies, 2);
    if (rest.starts_with("|>")) return take(Tok::Strict, 2);
    if (rest.starts_with("[]")) return take(Tok::Box, 2);
    switch (c) {
      case '~': return take(Tok::Not, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      default: break;
    }
    for (const auto& a : kUnicode) {
      if (rest.starts_with(a.glyph)) return take(a.kind, a.glyph.size());
    }
    throw SyntaxError(at, {"formula token"}, "'" + std::string(1, c) + "'");
  }

 private:
  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src), cur_(lexer_.next()) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (cur_.kind != Tok::End) fail({Tok::Iff, Tok::Implies, Tok::Strict, Tok::Or, Tok::And, Tok::End});
    return f;
  }

 private:
  Formula parse_iff() {
    Formula f = parse_imp();
    while (cur_.kind == Tok::Iff) {
      advance();
      f = Formula::iff(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (cur_.kind == Tok::Implies) {
      advance();
      return Formula::implies(f, parse_imp());
    }
    if (cur_.kind == Tok::Strict) {
      advance();
      return Formula::strict(f, parse_imp());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (cur_.kind == Tok::Or) {
      advance();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (cur_.kind == Tok::And) {
      advance();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (cur_.kind) {
      case Tok::Not: advance(); return Formula::neg(parse_unary());
      case Tok::Box: advance(); return Formula::box(parse_unary());
      case Tok::Diamond: advance(); return Formula::diamond(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    if (cur_.kind == Tok::Ident) {
      std::string name = cur_.text;
      advance();
      return Formula::atom(std::move(name));
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      Formula f = parse_iff();
      if (cur_.kind != Tok::RParen) {
        fail({Tok::RParen, Tok::Iff, Tok::Implies, Tok::Strict, Tok::Or, Tok::And});
      }
      advance();
      return f;
    }
    fail({Tok::Ident, Tok::LParen, Tok::Not, Tok::Box, Tok::Diamond});
  }

  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.emplace_back(spelling(t));
    std::string found = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw SyntaxError(cur_.offset, std::move(names), found);
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text) {
  Parser parser(text);
  return parser.parse_all();
}

}  // namespace modalcheck
