#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dibbl/dibbl.hpp"
#include "json.hpp"
#include "support/random_expr.hpp"

using namespace dibbl;

namespace {

Expr num(std::int64_t n) { return Expr::constant(n); }
Expr x() { return Expr::variable("x"); }

std::size_t error_position(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError &e) {
    return e.position();
  }
  ADD_FAILURE() << "expected a parse error for '" << text << "'";
  return 0;
}

std::vector<std::string> corpus_expressions() {
  std::ifstream in(DIBBL_CORPUS_PATH);
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<std::string> out;
  for (const auto &c : nlohmann::json::parse(ss.str()))
    if (c.contains("expression"))
      out.push_back(c.at("expression").get<std::string>());
  return out;
}

} // namespace

TEST(Parse, Juxtaposition) {
  EXPECT_EQ(parse("5x^17"), Expr::mul(num(5), Expr::pow(x(), Rational(17))));
  EXPECT_EQ(parse("(1/7)x^5"),
            Expr::mul(Expr::constant(Rational(1, 7)), Expr::pow(x(), Rational(5))));
  EXPECT_EQ(parse("2sin(x)"), Expr::mul(num(2), Expr::sin(x())));
}

TEST(Parse, Atom) { EXPECT_EQ(parse("x"), x()); }

TEST(Parse, FractionalPowers) {
  auto t = Expr::variable("t");
  auto t53 = Expr::pow(t, Rational(5, 3));
  auto expected = Expr::pow(Expr::div(t53, Expr::add(num(5), Expr::mul(num(6), t53))),
                            Rational(2, 7));
  EXPECT_EQ(parse("(t^(5/3)/(5+6t^(5/3)))^(2/7)"), expected);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(eval_numeric(parse("2+3*4^2"), "x", 0), 50.0);
  EXPECT_EQ(eval_numeric(parse("-x^2"), "x", 3), -9.0);
  EXPECT_EQ(eval_numeric(parse("2-3-4"), "x", 0), -5.0);
  EXPECT_EQ(eval_numeric(parse("24/4/2"), "x", 0), 3.0);
  EXPECT_EQ(parse("x^2^3"), Expr::pow(x(), Rational(8))); // right-associative
  EXPECT_EQ(parse("x^-2"), Expr::pow(x(), Rational(-2)));
  EXPECT_EQ(parse("x^0.5"), Expr::pow(x(), Rational(1, 2)));
}

TEST(Parse, RationalLiterals) {
  EXPECT_EQ(parse("(-128/7)"), Expr::constant(Rational(-128, 7)));
  EXPECT_EQ(parse("(-5)"), Expr::constant(Rational(-5)));
  EXPECT_EQ(parse("-5"), Expr::neg(num(5)));
  EXPECT_EQ(parse("0.04"), Expr::constant(Rational(1, 25)));
  EXPECT_EQ(parse("(1 / 7)"), Expr::constant(Rational(1, 7)));
  EXPECT_EQ(parse("((1)/7)"), Expr::div(num(1), num(7)));
  EXPECT_TRUE(std::holds_alternative<double>(parse("1e-30").value()));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("   "), ParseError);
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_EQ(error_position("x # 2"), 2u);
  EXPECT_EQ(error_position("(x+1"), 4u);
  EXPECT_EQ(error_position("x+1)"), 3u);
  EXPECT_EQ(error_position("x^y"), 2u);
  EXPECT_EQ(error_position("x^(1+x)"), 2u);
  EXPECT_EQ(error_position("sin x"), 4u);
  EXPECT_EQ(error_position("2 x"), 2u);
  EXPECT_EQ(error_position("x*"), 2u);
  EXPECT_EQ(error_position("()"), 1u);
  EXPECT_EQ(error_position("x−1"), 1u); // U+2212 is not an operator
}

TEST(Parse, ErrorPositionWithinInput) {
  for (std::string_view s : {"", "(", "((x)", "x^", "sin(", "1e999", "x+*", ")"}) {
    try {
      parse(s);
      ADD_FAILURE() << s;
    } catch (const ParseError &e) {
      EXPECT_LE(e.position(), s.size()) << s;
    }
  }
}

TEST(Unparse, CanonicalForms) {
  EXPECT_EQ(unparse(Expr::mul(num(5), Expr::pow(x(), Rational(17)))), "5*x^17");
  EXPECT_EQ(unparse(Expr::constant(Rational(-128, 7))), "(-128/7)");
  EXPECT_EQ(unparse(Expr::pow(x(), Rational(5, 3))), "x^(5/3)");
  EXPECT_EQ(unparse(Expr::neg(Expr::pow(x(), Rational(2)))), "-x^2");
  EXPECT_EQ(unparse(Expr::pow(Expr::neg(x()), Rational(2))), "(-x)^2");
  EXPECT_EQ(unparse(Expr::sub(x(), Expr::sub(x(), num(1)))), "x-(x-1)");
  EXPECT_EQ(unparse(Expr::neg(num(5))), "-(5)");
  EXPECT_EQ(unparse(Expr::mul(Expr::div(num(1), num(7)), x())), "1/7*x");
  EXPECT_EQ(unparse(Expr::pow(Expr::div(num(1), num(7)), Rational(2))), "((1)/7)^2");
}

TEST(Unparse, CorpusRoundTrip) {
  const auto exprs = corpus_expressions();
  ASSERT_FALSE(exprs.empty());
  for (const auto &text : exprs) {
    Expr e = parse(text);
    EXPECT_EQ(parse(unparse(e)), e) << text << " -> " << unparse(e);
    EXPECT_EQ(unparse(parse(unparse(e))), unparse(e));
  }
}

TEST(Unparse, RandomTreeRoundTrip) {
  test_support::ExprGenerator gen(2024);
  for (int i = 0; i < 500; ++i) {
    Expr e = gen.tree(6);
    ASSERT_LE(e.depth(), 6u);
    const std::string text = unparse(e);
    EXPECT_EQ(parse(text), e) << text;
  }
}

TEST(Unparse, DoubleConstantsRoundTrip) {
  for (double v : {1e-30, 2.5e-300, -1e-30, 0.12345678901234568, 1e20}) {
    Expr e = Expr::mul(Expr::constant(Number{v}), x());
    EXPECT_EQ(parse(unparse(e)), e) << unparse(e);
  }
}

TEST(EvalNumeric, Examples) {
  EXPECT_EQ(eval_numeric(parse("3t^3"), "t", 2), 24.0);
  EXPECT_NEAR(eval_numeric(parse("x^2"), "x", 0.2), 0.04, 1e-17);
  EXPECT_EQ(eval_numeric(parse("sin(x)"), "x", 90, AngleUnit::degrees), 1.0);
}

TEST(EvalNumeric, Errors) {
  EXPECT_THROW(eval_numeric(parse("1/x"), "x", 0), DivisionByZeroError);
  EXPECT_THROW(eval_numeric(parse("x^(1/2)"), "x", -1), DomainError);
  EXPECT_THROW(eval_numeric(parse("y+1"), "x", 0), UnboundVariableError);
  EXPECT_THROW(eval_numeric(parse("x^400"), "x", 1e10), RangeError);
}

TEST(EvalNumeric, MatchesDualRealPartExactly) {
  test_support::ExprGenerator gen(99);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Expr e = gen.tree(5);
    const double xv = gen.real(-4, 4);
    const AngleUnit unit = static_cast<AngleUnit>(gen.pick(0, 2));
    std::optional<double> plain;
    std::optional<double> dual;
    try {
      plain = eval_numeric(e, "x", xv, unit);
    } catch (const MathError &) {
    }
    try {
      dual = evaluate_dual(e, "x", Dual<double>::constant(xv), unit).real;
    } catch (const MathError &) {
    }
    ASSERT_EQ(plain.has_value(), dual.has_value()) << unparse(e);
    if (plain) {
      EXPECT_EQ(*plain, *dual) << unparse(e) << " at " << xv;
      ++checked;
    }
  }
  EXPECT_GT(checked, 700);
}

TEST(Substitute, ReplacesNamedVariableOnly) {
  Expr e = parse("H*sin(theta) + h");
  Expr s = substitute(substitute(e, "H", Rational(200)), "h", Rational(5));
  EXPECT_EQ(s, parse("200*sin(theta) + 5"));
}
