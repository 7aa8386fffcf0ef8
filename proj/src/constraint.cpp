#include "ctd/constraint.hpp"

#include <algorithm>
#include <cctype>

namespace ctd::constraint {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

TokenKind keyword_kind(std::string_view word) {
  const std::string u = upper(word);
  if (u == "AND") return TokenKind::And;
  if (u == "OR") return TokenKind::Or;
  if (u == "NOT") return TokenKind::Not;
  if (u == "IN") return TokenKind::In;
  if (u == "TRUE") return TokenKind::True;
  if (u == "FALSE") return TokenKind::False;
  return TokenKind::Word;
}

bool is_keyword(std::string_view word) { return keyword_kind(word) != TokenKind::Word; }

std::string describe(const Token& t) {
  return t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

  Expr parse_all() {
    Expr e = parse_iff();
    if (peek().kind != TokenKind::End) fail("unexpected " + describe(peek()));
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(TokenKind k) {
    if (peek().kind != k) return false;
    advance();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ConstraintError(ErrorKind::Syntax, t.position, t.text,
                          "syntax error at position " + std::to_string(t.position) + ": " + what);
  }
  void expect(TokenKind k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  }

  Expr parse_iff() {
    Expr lhs = parse_impl();
    while (accept(TokenKind::DoubleArrow)) {
      Expr rhs = parse_impl();
      lhs = Expr::connective(Kind::Iff, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr parse_impl() {
    Expr lhs = parse_or();
    if (accept(TokenKind::Arrow)) {
      Expr rhs = parse_impl();
      return Expr::connective(Kind::Implies, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Expr parse_or() {
    std::vector<Expr> items{parse_and()};
    while (accept(TokenKind::Or)) items.push_back(parse_and());
    if (items.size() == 1) return std::move(items.front());
    return Expr::connective(Kind::Or, std::move(items));
  }

  Expr parse_and() {
    std::vector<Expr> items{parse_unary()};
    while (accept(TokenKind::And)) items.push_back(parse_unary());
    if (items.size() == 1) return std::move(items.front());
    return Expr::connective(Kind::And, std::move(items));
  }

  Expr parse_unary() {
    if (accept(TokenKind::Not)) return Expr::negate(parse_unary());
    if (accept(TokenKind::LParen)) {
      Expr inner = parse_iff();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    return parse_atom();
  }

  static bool starts_relation(TokenKind k) {
    return k == TokenKind::Eq || k == TokenKind::NotEq || k == TokenKind::In;
  }

  Expr parse_atom() {
    const Token& t = peek();
    // TRUE/FALSE are literals unless used as an attribute name.
    if ((t.kind == TokenKind::True || t.kind == TokenKind::False) &&
        !starts_relation(peek(1).kind)) {
      advance();
      return Expr::boolean(t.kind == TokenKind::True);
    }
    std::string attr = parse_name("attribute name");
    if (accept(TokenKind::Eq)) return Expr::equals(std::move(attr), parse_name("value"));
    if (accept(TokenKind::NotEq)) return Expr::not_equals(std::move(attr), parse_name("value"));
    if (accept(TokenKind::In)) {
      expect(TokenKind::LBrace, "'{'");
      std::vector<std::string> values{parse_name("value")};
      while (accept(TokenKind::Comma)) values.push_back(parse_name("value"));
      expect(TokenKind::RBrace, "'}'");
      return Expr::in(std::move(attr), std::move(values));
    }
    fail("expected '=', '!=' or IN after '" + attr + "', found " + describe(peek()));
  }

  // Keywords are accepted as names so that labels like `true` stay usable.
  std::string parse_name(const char* what) {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Word:
      case TokenKind::Quoted:
      case TokenKind::And:
      case TokenKind::Or:
      case TokenKind::Not:
      case TokenKind::In:
      case TokenKind::True:
      case TokenKind::False:
        advance();
        return t.text;
      default:
        fail(std::string("expected ") + what + ", found " + describe(t));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool needs_quotes(const std::string& s) {
  if (s.empty() || is_keyword(s)) return true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_word_char(s[i])) continue;
    if (s[i] == '-' && i > 0 && (i + 1 == s.size() || s[i + 1] != '>')) continue;
    return true;
  }
  return false;
}

std::string quote_name(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void print_to(const Expr& e, std::string& out);

void print_operand(const Expr& e, std::string& out) {
  const bool atomic = e.kind == Kind::BoolLit || e.kind == Kind::Equals ||
                      e.kind == Kind::NotEquals || e.kind == Kind::In || e.kind == Kind::Not;
  if (atomic) {
    print_to(e, out);
  } else {
    out += '(';
    print_to(e, out);
    out += ')';
  }
}

void print_to(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Kind::BoolLit:
      out += e.literal ? "TRUE" : "FALSE";
      return;
    case Kind::Equals:
      out += quote_name(e.attribute) + "=" + quote_name(e.values.at(0));
      return;
    case Kind::NotEquals:
      out += quote_name(e.attribute) + "!=" + quote_name(e.values.at(0));
      return;
    case Kind::In: {
      out += quote_name(e.attribute) + " IN {";
      for (std::size_t i = 0; i < e.values.size(); ++i) {
        if (i) out += ", ";
        out += quote_name(e.values[i]);
      }
      out += '}';
      return;
    }
    case Kind::Not:
      out += "NOT ";
      print_operand(e.children.at(0), out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: {
      const char* op = e.kind == Kind::And ? " AND "
                       : e.kind == Kind::Or ? " OR "
                       : e.kind == Kind::Implies ? " -> "
                                                 : " <-> ";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += op;
        print_operand(e.children[i], out);
      }
      return;
    }
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto lex_error = [&](std::size_t at, const std::string& what) {
    throw ConstraintError(ErrorKind::Lexical, at, std::string(src.substr(at, 1)),
                          "lexical error at position " + std::to_string(at) + ": " + what);
  };

  while (i < src.size()) {
    const char c = src[i];
    const std::size_t start = i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::LParen, "(", start});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::RParen, ")", start});
      ++i;
    } else if (c == '{') {
      tokens.push_back({TokenKind::LBrace, "{", start});
      ++i;
    } else if (c == '}') {
      tokens.push_back({TokenKind::RBrace, "}", start});
      ++i;
    } else if (c == ',') {
      tokens.push_back({TokenKind::Comma, ",", start});
      ++i;
    } else if (c == '=') {
      tokens.push_back({TokenKind::Eq, "=", start});
      ++i;
    } else if (src.substr(i, 2) == "!=") {
      tokens.push_back({TokenKind::NotEq, "!=", start});
      i += 2;
    } else if (src.substr(i, 3) == "<->") {
      tokens.push_back({TokenKind::DoubleArrow, "<->", start});
      i += 3;
    } else if (src.substr(i, 2) == "->") {
      tokens.push_back({TokenKind::Arrow, "->", start});
      i += 2;
    } else if (c == '"') {
      std::string text;
      ++i;
      for (;;) {
        if (i >= src.size()) lex_error(start, "unterminated quoted string");
        if (src[i] == '"') break;
        if (src[i] == '\\') {
          if (i + 1 >= src.size()) lex_error(start, "unterminated quoted string");
          ++i;
        }
        text += src[i++];
      }
      ++i;
      tokens.push_back({TokenKind::Quoted, std::move(text), start});
    } else if (is_word_char(c)) {
      while (i < src.size() &&
             (is_word_char(src[i]) ||
              (src[i] == '-' && (i + 1 >= src.size() || src[i + 1] != '>')))) {
        ++i;
      }
      std::string word(src.substr(start, i - start));
      tokens.push_back({keyword_kind(word), std::move(word), start});
    } else {
      lex_error(start, std::string("unexpected character '") + c + "'");
    }
  }
  tokens.push_back({TokenKind::End, "", src.size()});
  return tokens;
}

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string print(const Expr& expr) {
  std::string out;
  print_to(expr, out);
  return out;
}

CheckedExpr typecheck(const Expr& expr, const Model& model) {
  CheckedExpr out;
  out.kind = expr.kind;
  out.literal = expr.literal;
  switch (expr.kind) {
    case Kind::BoolLit:
      return out;
    case Kind::Equals:
    case Kind::NotEquals:
    case Kind::In: {
      const auto attr = model.find_attribute(expr.attribute);
      if (!attr) {
        throw ConstraintError(ErrorKind::UnknownAttribute, 0, expr.attribute,
                              "unknown attribute '" + expr.attribute + "'");
      }
      out.attribute = *attr;
      for (const auto& label : expr.values) {
        const auto value = model.attributes[*attr].find_value(label);
        if (!value) {
          throw ConstraintError(ErrorKind::UnknownValue, 0, label,
                                "unknown value '" + label + "' for attribute '" +
                                    expr.attribute + "'");
        }
        out.values.push_back(*value);
      }
      return out;
    }
    default:
      for (const auto& child : expr.children) out.children.push_back(typecheck(child, model));
      return out;
  }
}

Bdd compile(const CheckedExpr& expr, const Encoding& encoding, BddManager& mgr) {
  switch (expr.kind) {
    case Kind::BoolLit:
      return mgr.constant(expr.literal);
    case Kind::Equals:
      return encoding.value_equals(mgr, {expr.attribute, expr.values.at(0)});
    case Kind::NotEquals:
      return !encoding.value_equals(mgr, {expr.attribute, expr.values.at(0)});
    case Kind::In: {
      Bdd any = mgr.bdd_false();
      for (auto v : expr.values) any |= encoding.value_equals(mgr, {expr.attribute, v});
      return any;
    }
    case Kind::Not:
      return !compile(expr.children.at(0), encoding, mgr);
    case Kind::And: {
      Bdd acc = mgr.bdd_true();
      for (const auto& c : expr.children) acc &= compile(c, encoding, mgr);
      return acc;
    }
    case Kind::Or: {
      Bdd acc = mgr.bdd_false();
      for (const auto& c : expr.children) acc |= compile(c, encoding, mgr);
      return acc;
    }
    case Kind::Implies:
      return mgr.implies(compile(expr.children.at(0), encoding, mgr),
                         compile(expr.children.at(1), encoding, mgr));
    case Kind::Iff:
      return mgr.iff(compile(expr.children.at(0), encoding, mgr),
                     compile(expr.children.at(1), encoding, mgr));
  }
  return mgr.bdd_false();
}

Bdd compile_source(std::string_view source, const Model& model, const Encoding& encoding,
                   BddManager& mgr) {
  return compile(typecheck(parse(source), model), encoding, mgr);
}

}  // namespace ctd::constraint
