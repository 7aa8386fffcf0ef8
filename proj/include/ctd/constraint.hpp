/// @file  constraint.hpp
/// @brief Constraint expression language.
///
/// Grammar (keywords case-insensitive, names and labels case-sensitive):
///
///     expr   := iff
///     iff    := impl ( "<->" impl )*
///     impl   := or ( "->" impl )?
///     or     := and ( OR and )*
///     and    := unary ( AND unary )*
///     unary  := NOT unary | "(" expr ")" | atom
///     atom   := name "=" label | name "!=" label
///             | name IN "{" label ( "," label )* "}" | TRUE | FALSE
///
/// Names and labels are bare words (letters, digits, `_`, `.`, and `-` when
/// not followed by `>`) or double-quoted strings with `\"` and `\\` escapes.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ctd/bdd.hpp"
#include "ctd/model.hpp"

namespace ctd::constraint {

enum class ErrorKind { Lexical, Syntax, UnknownAttribute, UnknownValue };

class ConstraintError : public ModelError {
 public:
  ConstraintError(ErrorKind kind, std::size_t position, std::string offender,
                  const std::string& message)
      : ModelError(message), kind_(kind), position_(position), offender_(std::move(offender)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// Byte offset into the source; meaningful for Lexical and Syntax.
  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  /// The unknown attribute or value, or the offending token text.
  [[nodiscard]] const std::string& offender() const noexcept { return offender_; }

 private:
  ErrorKind kind_;
  std::size_t position_;
  std::string offender_;
};

enum class Kind { BoolLit, Equals, NotEquals, In, Not, And, Or, Implies, Iff };

/// Parsed expression. Atoms carry `attribute` and `values`; connectives carry
/// `children` (Not: 1, Implies/Iff: 2, And/Or: 2 or more).
struct Expr {
  Kind kind = Kind::BoolLit;
  bool literal = false;
  std::string attribute;
  std::vector<std::string> values;
  std::vector<Expr> children;

  friend bool operator==(const Expr&, const Expr&) = default;

  static Expr boolean(bool v) { return {Kind::BoolLit, v, {}, {}, {}}; }
  static Expr equals(std::string attr, std::string value) {
    return {Kind::Equals, false, std::move(attr), {std::move(value)}, {}};
  }
  static Expr not_equals(std::string attr, std::string value) {
    return {Kind::NotEquals, false, std::move(attr), {std::move(value)}, {}};
  }
  static Expr in(std::string attr, std::vector<std::string> values) {
    return {Kind::In, false, std::move(attr), std::move(values), {}};
  }
  static Expr negate(Expr e) { return {Kind::Not, false, {}, {}, {std::move(e)}}; }
  static Expr connective(Kind k, std::vector<Expr> children) {
    return {k, false, {}, {}, std::move(children)};
  }
};

/// Expression with names resolved to attribute/value indices.
struct CheckedExpr {
  Kind kind = Kind::BoolLit;
  bool literal = false;
  std::uint32_t attribute = 0;
  std::vector<std::uint32_t> values;
  std::vector<CheckedExpr> children;
};

enum class TokenKind {
  Word,
  Quoted,
  And,
  Or,
  Not,
  In,
  True,
  False,
  Arrow,
  DoubleArrow,
  Eq,
  NotEq,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  End
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;
};

/// Splits `source` into tokens, ending with TokenKind::End.
[[nodiscard]] std::vector<Token> tokenize(std::string_view source);

[[nodiscard]] Expr parse(std::string_view source);

/// Canonical source text; parse(print(e)) == e.
[[nodiscard]] std::string print(const Expr& expr);

[[nodiscard]] CheckedExpr typecheck(const Expr& expr, const Model& model);

[[nodiscard]] Bdd compile(const CheckedExpr& expr, const Encoding& encoding, BddManager& mgr);

/// parse + typecheck + compile.
[[nodiscard]] Bdd compile_source(std::string_view source, const Model& model,
                                 const Encoding& encoding, BddManager& mgr);

}  // namespace ctd::constraint
