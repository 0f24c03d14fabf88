#include <gtest/gtest.h>

#include "bdq/ratfunc.hpp"
#include "support/generators.hpp"

using namespace bdq;

namespace {

AlphabetPtr ru() { return make_alphabet({"u", "r"}); }

TEST(Poly, MonomialProduct) {
  auto a = ru();
  Poly r = Poly::var(a, "r");
  EXPECT_EQ(r.pow(2) * r, parse_poly("r^3", a));
  Poly p = parse_poly("3*u^2 - 2/3*r + I*u*r", a);
  EXPECT_TRUE((p + (-p)).is_zero());
}

TEST(Poly, ParseAndPrintRoundTrip) {
  auto a = complex_alphabet(1);
  Poly p = parse_poly("1 - z_0*zb_0 - (z_1*zb_1)^2", a);
  EXPECT_EQ(parse_poly(p.to_string(), a), p);
  EXPECT_THROW(parse_poly("w + 1", a), Error);
  EXPECT_THROW(parse_poly("z_0 +", a), Error);
}

TEST(Poly, Derivatives) {
  auto a = ru();
  EXPECT_EQ(parse_poly("r^2", a).derivative("r"), parse_poly("2*r", a));
  auto c = complex_alphabet(0);
  EXPECT_EQ(parse_poly("1 - z_0*zb_0", c).derivative("zb_0"), parse_poly("-z_0", c));
  EXPECT_THROW(parse_poly("r", a).derivative("q"), Error);
}

TEST(Poly, ExactDivide) {
  auto a = complex_alphabet(0);
  Poly psi = parse_poly("1 - z_0*zb_0", a);
  EXPECT_EQ(*(psi * psi - psi).exact_divide(psi), psi - Poly(1));
  EXPECT_FALSE((psi + Poly(1)).exact_divide(psi).has_value());
  Poly sq = parse_poly("(1 - z_0*zb_0)^2", a);
  EXPECT_EQ(*(psi * sq).exact_divide(psi), sq);
  EXPECT_THROW((void)psi.exact_divide(Poly()), Error);
}

TEST(Poly, AlphabetMismatchRejected) {
  Poly x = Poly::var(ru(), "r");
  Poly y = Poly::var(make_alphabet({"q", "p"}), "p");
  EXPECT_THROW(x + y, Error);
  EXPECT_THROW(x * y, Error);
}

TEST(Poly, ConjugationInvolution) {
  auto a = complex_alphabet(1);
  Poly p = parse_poly("I*z_0*zb_1 + 2*z_1", a);
  EXPECT_EQ(p.conjugate(), parse_poly("-I*zb_0*z_1 + 2*zb_1", a));
  EXPECT_EQ(p.conjugate().conjugate(), p);
}

TEST(PolyProperty, RingAxiomsAndDivision) {
  check::Gen gen(20240611);
  auto a = make_alphabet({"x", "y", "z"});
  for (int trial = 0; trial < 60; ++trial) {
    Poly p = gen.poly(a, 4, 3), q = gen.poly(a, 4, 3), s = gen.poly(a, 4, 3);
    EXPECT_EQ((p * q) * s, p * (q * s));
    EXPECT_EQ(p * (q + s), p * q + p * s);
    EXPECT_EQ(p * q, q * p);
    Poly d = gen.nonzero_poly(a, 3, 2);
    EXPECT_EQ(*(p * d).exact_divide(d), p);
    EXPECT_EQ(p.derivative(0).derivative(1), p.derivative(1).derivative(0));
  }
}

TEST(RatFunc, CrossMultiplicationSum) {
  auto a = complex_alphabet(0);
  Poly psi = parse_poly("1 - z_0*zb_0", a);
  RatFunc lhs = RatFunc::quotient(Poly(1) - psi, psi) + RatFunc::quotient(Poly(1), psi);
  RatFunc rhs = RatFunc::quotient(Poly(2) - psi, psi);
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs.numerator() * rhs.denominator(), rhs.numerator() * lhs.denominator());
}

TEST(RatFunc, MoserDenominatorDerivative) {
  auto a = make_alphabet({"u", "r", "t"});
  Poly den = parse_poly("1 + r*t*2*u", a);  // 1 + r t da/du for a = u^2
  EXPECT_EQ(RatFunc(den).derivative("u"), RatFunc(parse_poly("2*r*t", a)));
}

TEST(RatFunc, PsiRegularity) {
  auto a = complex_alphabet(0);
  Poly psi = parse_poly("1 - z_0*zb_0", a);
  RatFunc f = RatFunc::quotient(psi * Poly::var(a, "z_0"), psi * Poly::var(a, "zb_0"));
  EXPECT_TRUE(f.is_psi_regular(psi));
  EXPECT_EQ(f, RatFunc::quotient(Poly::var(a, "z_0"), Poly::var(a, "zb_0")));
  EXPECT_FALSE(RatFunc::quotient(Poly(1), psi).is_psi_regular(psi));
  EXPECT_TRUE(RatFunc(psi * psi).divisible_by(psi));
}

TEST(RatFuncProperty, FieldAxioms) {
  check::Gen gen(77);
  auto a = make_alphabet({"x", "y"});
  for (int trial = 0; trial < 40; ++trial) {
    RatFunc f = RatFunc::quotient(gen.poly(a, 3, 2), gen.nonzero_poly(a, 3, 2));
    RatFunc g = RatFunc::quotient(gen.poly(a, 3, 2), gen.nonzero_poly(a, 3, 2));
    RatFunc h = RatFunc::quotient(gen.nonzero_poly(a, 3, 2), gen.nonzero_poly(a, 2, 2));
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ((f * g) / h * h, f * g);
    EXPECT_EQ((f * g).derivative(0), f.derivative(0) * g + f * g.derivative(0));
    EXPECT_EQ(f.derivative(0).derivative(1), f.derivative(1).derivative(0));
    EXPECT_EQ((f / h).conjugate(), f.conjugate() / h.conjugate());
  }
}

}  // namespace
