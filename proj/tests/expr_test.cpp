#include "jacring/expr.hpp"

#include <gtest/gtest.h>

using namespace jacring;

namespace {

const std::vector<std::string> kCorpus{
    "theta",
    "pt",
    "one",
    "H",
    "Sy",
    "Sz",
    "e1",
    "f2",
    "e1*f1",
    "W[0]",
    "W[2]",
    "Wt[1]",
    "5/2",
    "2/4*theta",
    "-theta",
    "--theta",
    "-(theta + pt)",
    "-theta*pt",
    "-(theta*pt)",
    "theta + pt - W[1]",
    "theta - (pt - W[1])",
    "theta - pt - W[1]",
    "(theta + pt)*(theta - pt)",
    "theta*theta*theta",
    "theta*(theta*theta)",
    "F(theta)",
    "F(F(W[1]))",
    "Fx(H)",
    "inv(e1 + f1)",
    "nstar(2, theta)",
    "nstar(-1, H)",
    "nlow(3, W[1])",
    "pi*(theta)",
    "pi*(theta)*H + Sy",
    "pipush(H*H)",
    "pont(W[1], W[1])",
    "pontx(H, pi*(pt))",
    "integrate(theta*theta)",
    "pair(theta, W[1])",
    "beauville(theta + W[0])",
    "3*(theta + 1)",
    "  theta   +\tpt ",
};

Value eval(const std::string& s, unsigned g, Preset p = Preset::kGeometric) {
  return eval_expr(s, EvalContext(g, p));
}

std::size_t parse_error_at(const std::string& s) {
  try {
    parse_expr(s);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

std::size_t sort_error_at(const std::string& s) {
  try {
    check_sort(parse_expr(s));
  } catch (const SortError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST(ExprParse, RoundTripCorpus) {
  ASSERT_GE(kCorpus.size(), 30u);
  for (const auto& src : kCorpus) {
    const Expr once = parse_expr(src);
    const std::string printed = print_expr(once);
    EXPECT_EQ(parse_expr(printed), once) << src << " -> " << printed;
    EXPECT_EQ(print_expr(parse_expr(printed)), printed) << src;
  }
}

TEST(ExprParse, CanonicalPrinting) {
  EXPECT_EQ(print_expr(parse_expr("theta-(pt-W[1])")), "theta - (pt - W[1])");
  EXPECT_EQ(print_expr(parse_expr("(theta-pt)-W[1]")), "theta - pt - W[1]");
  EXPECT_EQ(print_expr(parse_expr("-(theta*pt)")), "-(theta*pt)");
  EXPECT_EQ(print_expr(parse_expr("(-theta)*pt")), "-theta*pt");
  EXPECT_EQ(print_expr(parse_expr("6/4")), "3/2");
  EXPECT_EQ(print_expr(parse_expr("nstar( -1 ,theta)")), "nstar(-1, theta)");
}

TEST(ExprParse, ErrorPositions) {
  EXPECT_EQ(parse_error_at(""), 0u);
  EXPECT_EQ(parse_error_at("theta +"), 7u);
  EXPECT_EQ(parse_error_at("theta + foo"), 8u);
  EXPECT_EQ(parse_error_at("F(theta"), 7u);
  EXPECT_EQ(parse_error_at("W[x]"), 2u);
  EXPECT_EQ(parse_error_at("theta pt"), 6u);
  EXPECT_EQ(parse_error_at("nstar(theta, pt)"), 6u);
  EXPECT_EQ(parse_error_at("pont(theta)"), 10u);
  EXPECT_EQ(parse_error_at("1/0"), 0u);
  EXPECT_EQ(parse_error_at("e0"), 0u);
  try {
    parse_expr("F(theta");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("expected ')'"), std::string::npos);
  }
}

TEST(ExprSort, MixedAndMisappliedOperandsAreRejected) {
  EXPECT_EQ(sort_error_at("theta + H"), 6u);
  EXPECT_EQ(sort_error_at("F(H)"), 0u);
  EXPECT_EQ(sort_error_at("Fx(theta)"), 0u);
  EXPECT_EQ(sort_error_at("pi*(H)"), 0u);
  EXPECT_EQ(sort_error_at("pipush(theta)"), 0u);
  EXPECT_EQ(sort_error_at("pt * beauville(theta)"), 3u);
  EXPECT_EQ(sort_error_at("pair(theta, H)"), 0u);
  EXPECT_EQ(check_sort(parse_expr("2 + theta")), Sort::kJ);
  EXPECT_EQ(check_sort(parse_expr("2 * H")), Sort::kP);
  EXPECT_EQ(check_sort(parse_expr("integrate(H*H) + 1")), Sort::kScalar);
  EXPECT_EQ(check_sort(parse_expr("beauville(theta)")), Sort::kDecomp);
  EXPECT_EQ(check_sort(parse_expr("inv(H)")), Sort::kP);
}

TEST(ExprEval, MatchesDirectLibraryCalls) {
  for (unsigned g = 1; g <= 3; ++g) {
    const GpbContext gpb(g);
    const JacContext& jac = gpb.jac();
    const JacClass th = jac.theta();
    EXPECT_EQ(std::get<JacClass>(eval("theta*theta", g)), wedge(th, th));
    EXPECT_EQ(std::get<JacClass>(eval("F(W[1])", g)), fourier(jac, w_class(jac, 1)));
    EXPECT_EQ(std::get<JacClass>(eval("pont(theta, pt)", g)), pontryagin(jac, th, jac.point()));
    EXPECT_EQ(std::get<JacClass>(eval("nstar(3, theta)", g)), mult_pullback(jac, 3, th));
    EXPECT_EQ(std::get<JacClass>(eval("nlow(2, pt)", g)), mult_pushforward(jac, 2, jac.point()));
    EXPECT_EQ(std::get<JacClass>(eval("inv(e1)", g)), involution(jac, jac.monomial(1)));
    EXPECT_EQ(std::get<Rat>(eval("pair(theta, W[1])", g)), pair(jac, th, w_class(jac, 1)));
    EXPECT_EQ(std::get<JacClass>(eval("1/2 + theta", g)), Rat(1, 2) * jac.one() + th);
    for (Preset p : {Preset::kGeometric, Preset::kPaper}) {
      const GpbClass h = h_class(gpb);
      EXPECT_EQ(std::get<GpbClass>(eval("H*H", g, p)), gpb_mul(gpb, h, h));
      EXPECT_EQ(std::get<GpbClass>(eval("Wt[1]", g, p)), wtilde(gpb, 1));
      EXPECT_EQ(std::get<GpbClass>(eval("nstar(2, H)", g, p)), ext_mult_pullback(gpb, 2, h, p));
      EXPECT_EQ(std::get<GpbClass>(eval("nlow(2, H)", g, p)), ext_mult_pushforward(gpb, 2, h, p));
      EXPECT_EQ(std::get<GpbClass>(eval("pontx(H, H)", g, p)), ext_pontryagin(gpb, h, h, p));
      EXPECT_EQ(std::get<GpbClass>(eval("Fx(H)", g, p)), ext_fourier(gpb, h));
      EXPECT_EQ(std::get<GpbClass>(eval("pi*(theta)", g, p)), pi_pullback(gpb, th));
      EXPECT_EQ(std::get<JacClass>(eval("pipush(H*pi*(theta))", g, p)),
                pi_pushforward(gpb, gpb_mul(gpb, h, pi_pullback(gpb, th))));
      EXPECT_EQ(std::get<Rat>(eval("integrate(H*pi*(pt))", g, p)),
                gpb_integrate(gpb, gpb_mul(gpb, h, pi_pullback(gpb, jac.point()))));
    }
  }
}

TEST(ExprEval, ScalarArithmeticIsExact) {
  EXPECT_EQ(std::get<Rat>(eval("1/2 + 1/3*3/2", 1)), Rat(1));
  EXPECT_EQ(std::get<Rat>(eval("integrate(theta*theta)", 2)), Rat(2));
  EXPECT_EQ(std::get<Rat>(eval("integrate(pt)", 3)), Rat(1));
}

TEST(ExprEval, PrintsExampleValues) {
  const EvalContext g2(2);
  EXPECT_EQ(format_value(g2, eval_expr("Wt[0]", g2)), "H + pi*(theta)");
  EXPECT_EQ(format_value(g2, eval_expr("W[1]", g2)), "theta");
  EXPECT_EQ(format_value(g2, eval_expr("theta*theta", g2)), "2*pt");
  EXPECT_EQ(format_value(g2, eval_expr("e1*f1", g2)), "e1*f1");
  EXPECT_EQ(format_value(g2, eval_expr("integrate(theta*theta)", g2)), "2");
}

TEST(ExprEval, BeauvilleSplitsByExponent) {
  const EvalContext g2(2);
  const auto v = eval_expr("beauville(theta + W[0])", g2);
  const auto& comps = std::get<Decomposition>(v);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0].exponent, 2u);
  EXPECT_EQ(comps[1].exponent, 4u);
  EXPECT_EQ(comps[0].component, g2.jac().theta());
  EXPECT_EQ(comps[1].component, g2.jac().point());
  EXPECT_NE(format_value(g2, v).find("exponent 4"), std::string::npos);
}

TEST(ExprEval, FourierSquaredIsSignedInversion) {
  for (unsigned g = 1; g <= 3; ++g) {
    const EvalContext ctx(g);
    const Value lhs = eval_expr("F(F(W[1] + e1))", ctx);
    const Value rhs = eval_expr((g % 2 ? "-" : "") + std::string("inv(W[1] + e1)"), ctx);
    EXPECT_TRUE(values_equal(ctx, lhs, rhs)) << g;
  }
}

TEST(ExprEval, RuntimeRangeErrors) {
  EXPECT_THROW(eval("W[5]", 2), EvalError);
  EXPECT_THROW(eval("Wt[9]", 2), EvalError);
  EXPECT_THROW(eval("e3", 2), EvalError);
  EXPECT_THROW(eval("W[-1]", 2), EvalError);
  EXPECT_EQ(std::get<JacClass>(eval("nstar(0, theta + 1)", 2)), EvalContext(2).jac().one());
}

TEST(ExprEval, ValuesEqualPromotesScalars) {
  const EvalContext ctx(2);
  EXPECT_TRUE(values_equal(ctx, eval_expr("1", ctx), eval_expr("one", ctx)));
  EXPECT_TRUE(values_equal(ctx, eval_expr("pi*(one)", ctx), eval_expr("1", ctx)));
  EXPECT_FALSE(values_equal(ctx, eval_expr("theta", ctx), eval_expr("W[0]", ctx)));
  EXPECT_THROW(values_equal(ctx, eval_expr("theta", ctx), eval_expr("H", ctx)), SortError);
}
