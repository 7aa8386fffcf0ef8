#include "ctd/constraint.hpp"

#include <random>

#include <gtest/gtest.h>

#include "ctd/space.hpp"
#include "oracles.hpp"

namespace ctd::constraint {
namespace {

ErrorKind kind_of(std::string_view src) {
  try {
    (void)parse(src);
  } catch (const ConstraintError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << src;
  return ErrorKind::Syntax;
}

TEST(Parse, Atoms) {
  EXPECT_EQ(parse("Color=Red"), Expr::equals("Color", "Red"));
  EXPECT_EQ(parse("Color != Red"), Expr::not_equals("Color", "Red"));
  EXPECT_EQ(parse("Len IN {1, 2,3}"), Expr::in("Len", {"1", "2", "3"}));
  EXPECT_EQ(parse("true"), Expr::boolean(true));
  EXPECT_EQ(parse("FALSE"), Expr::boolean(false));
  EXPECT_EQ(parse("\"Delivery Schedule\" = \"One Day\""),
            Expr::equals("Delivery Schedule", "One Day"));
  EXPECT_EQ(parse(R"(A = "say \"hi\" \\")"), Expr::equals("A", "say \"hi\" \\"));
}

TEST(Parse, KeywordsAsValuesAndHyphens) {
  EXPECT_EQ(parse("WriteAction=true"), Expr::equals("WriteAction", "true"));
  EXPECT_EQ(parse("PowerFailure=during-write"), Expr::equals("PowerFailure", "during-write"));
  EXPECT_EQ(parse("A=x->B=y"), Expr::connective(Kind::Implies, {Expr::equals("A", "x"),
                                                                Expr::equals("B", "y")}));
}

TEST(Parse, ImplicationExample) {
  const Expr e = parse("WriteAction=true -> ReadAction=false");
  EXPECT_EQ(e, Expr::connective(Kind::Implies, {Expr::equals("WriteAction", "true"),
                                                Expr::equals("ReadAction", "false")}));
}

TEST(Parse, Precedence) {
  const Expr a = Expr::equals("A", "1");
  const Expr b = Expr::equals("B", "1");
  const Expr c = Expr::equals("C", "1");
  EXPECT_EQ(parse("A=1 OR B=1 AND C=1"),
            Expr::connective(Kind::Or, {a, Expr::connective(Kind::And, {b, c})}));
  EXPECT_EQ(parse("NOT A=1 AND B=1"), Expr::connective(Kind::And, {Expr::negate(a), b}));
  EXPECT_EQ(parse("A=1 -> B=1 -> C=1"),
            Expr::connective(Kind::Implies, {a, Expr::connective(Kind::Implies, {b, c})}));
  EXPECT_EQ(parse("A=1 -> B=1 <-> C=1"),
            Expr::connective(Kind::Iff, {Expr::connective(Kind::Implies, {a, b}), c}));
  EXPECT_EQ(parse("A=1 or B=1 or C=1"), Expr::connective(Kind::Or, {a, b, c}));
  EXPECT_EQ(parse("(A=1 OR B=1) AND C=1"),
            Expr::connective(Kind::And, {Expr::connective(Kind::Or, {a, b}), c}));
}

TEST(Parse, LexicalVersusSyntaxErrors) {
  EXPECT_EQ(kind_of("A=1 & B=2"), ErrorKind::Lexical);
  EXPECT_EQ(kind_of("A=\"open"), ErrorKind::Lexical);
  EXPECT_EQ(kind_of("A=1 AND"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("(A=1"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("A IN {}"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("A=1 B=2"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of(""), ErrorKind::Syntax);
}

TEST(Parse, ErrorPositions) {
  try {
    (void)parse("A=1 AND & B=2");
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(Typecheck, UnknownNames) {
  const Model m = oracle::load("xyz");
  try {
    (void)typecheck(parse("W=a"), m);
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownAttribute);
    EXPECT_EQ(e.offender(), "W");
  }
  try {
    (void)typecheck(parse("X IN {a, q}"), m);
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownValue);
    EXPECT_EQ(e.offender(), "q");
  }
}

TEST(Compile, DispatchAfterBound) {
  const CompiledModel space(oracle::load("dispatch_after"));
  const Model& m = space.model();
  EXPECT_TRUE(space.count(space.project({{"DA", "5"}, {"LenCBchain", "3"}})) == 0);
  EXPECT_TRUE(space.count(space.project({{"DA", "4"}, {"LenCBchain", "3"}})) > 0);
  // DA <= LenCBchain + 1 for every legal test.
  for (const ctd::Test& t : space.enumerate(space.legal())) {
    EXPECT_LE(std::stoi(m.label({6, t[6]})), std::stoi(m.label({0, t[0]})) + 1);
  }
}

// Random expressions over the xyz-style model for property tests.
Expr random_expr(std::mt19937_64& rng, const Model& m, int depth) {
  const auto& attr = m.attributes[rng() % m.attribute_count()];
  auto label = [&] { return attr.values[rng() % attr.size()].label; };
  const int choice = static_cast<int>(rng() % (depth > 0 ? 9 : 4));
  switch (choice) {
    case 0: return Expr::equals(attr.name, label());
    case 1: return Expr::not_equals(attr.name, label());
    case 2: return Expr::in(attr.name, {label(), label()});
    case 3: return Expr::boolean(rng() & 1u);
    case 4: return Expr::negate(random_expr(rng, m, depth - 1));
    case 5:
    case 6: {
      std::vector<Expr> kids;
      const int n = 2 + static_cast<int>(rng() % 2);
      for (int i = 0; i < n; ++i) kids.push_back(random_expr(rng, m, depth - 1));
      return Expr::connective(choice == 5 ? Kind::And : Kind::Or, kids);
    }
    default:
      return Expr::connective(choice == 7 ? Kind::Implies : Kind::Iff,
                              {random_expr(rng, m, depth - 1), random_expr(rng, m, depth - 1)});
  }
}

TEST(Print, RoundTripProperty) {
  const Model m = oracle::load("shopping");
  std::mt19937_64 rng(29);
  for (int i = 0; i < 500; ++i) {
    const Expr e = random_expr(rng, m, 4);
    const std::string text = print(e);
    EXPECT_EQ(parse(text), e) << text;
  }
}

TEST(Compile, HomomorphismAgainstDirectEvaluation) {
  const Model m = oracle::load("shopping");
  const Encoding enc(m);
  BddManager mgr(enc.var_count());
  const auto tuples = oracle::cartesian(m);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 150; ++i) {
    const CheckedExpr c = typecheck(random_expr(rng, m, 3), m);
    const Bdd f = compile(c, enc, mgr);
    for (std::size_t k = 0; k < tuples.size(); k += 7) {
      EXPECT_EQ(mgr.eval(f, enc.encode(tuples[k])), oracle::eval(c, tuples[k]));
    }
  }
}

}  // namespace
}  // namespace ctd::constraint
