#include <gtest/gtest.h>

#include "bdq/jets.hpp"
#include "support/generators.hpp"

using namespace bdq;
using namespace bdq::fq;

namespace {

Jet random_jet(check::Gen& gen, const cr::Domain& d, int rank, int order) {
  Jet l;
  for (const auto& w : normal_words(rank, order)) l[w] = RatFunc(gen.poly(d.alpha, 2, 2));
  return l;
}

}  // namespace

TEST(JetPoly, Arithmetic) {
  JetPoly f = JetPoly::symbol(0, {});
  JetPoly g1 = JetPoly::symbol(1, {2});
  JetPoly x = (f + g1) * (f - g1);
  EXPECT_EQ(x, f * f - g1 * g1);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_TRUE(JetPoly(RatFunc(3)).is_constant());
  EXPECT_EQ(f.to_string(), "(1)*f");
  EXPECT_EQ(g1.to_string(), "(1)*g[2]");
}

TEST(JetCalculus, ActMatchesRealization) {
  auto d = cr::ball(1);
  auto e = cr::build_frame(d);
  JetCalculus jc(e);
  check::Gen gen(3);
  std::vector<RatFunc> funcs{RatFunc(gen.poly(d.alpha, 3, 3)), RatFunc(gen.poly(d.alpha, 3, 3))};
  JetPoly p = JetPoly::symbol(0, {1}) * JetPoly::symbol(1, {0, 2}) * RatFunc(gen.poly(d.alpha, 2, 2)) +
              JetPoly::symbol(0, {}) * JetPoly::symbol(0, {});
  auto& u = jc.enveloping();
  for (int a = 0; a < e.rank(); ++a) EXPECT_EQ(realize(u, jc.act(a, p), funcs), e.act(a, realize(u, p, funcs)));
  EXPECT_EQ(realize(u, jc.apply({3, 0}, p), funcs), e.act(3, e.act(0, realize(u, p, funcs))));
}

TEST(Grothendieck, EvaluationExample) {
  auto d = cr::ball(1);
  auto e = cr::build_frame(d);
  cr::Enveloping u(e);
  check::Gen gen(5);
  Jet l = random_jet(gen, d, e.rank(), 2);
  for (int a = 0; a < e.rank(); ++a) {
    Jet x = grothendieck_connection(u, a, l);
    RatFunc expect = e.act(a, l[{}]) - l[{a}];
    EXPECT_EQ(x.count({}) ? x.at({}) : RatFunc(), expect);
  }
}

TEST(Grothendieck, HolonomicJetsAreFlatSections) {
  auto d = cr::ball(1);
  auto e = cr::build_frame(d);
  cr::Enveloping u(e);
  RatFunc f(parse_poly("z_0*zb_1^2 - 2*I*z_1*zb_0", d.alpha));
  Jet l = holonomic_jet(u, f, 3);
  for (int a = 0; a < e.rank(); ++a) EXPECT_TRUE(grothendieck_connection(u, a, l).empty());
}

TEST(Grothendieck, ZeroAnchorOnConstants) {
  cr::Algebroid e;
  e.domain = cr::ball(0);
  e.anchor = zero_matrix<RatFunc>(2, 2);
  e.structure.assign(2, std::vector<std::vector<RatFunc>>(2, std::vector<RatFunc>(2)));
  e.structure[0][1][1] = RatFunc(1);
  e.structure[1][0][1] = RatFunc(-1);
  cr::Enveloping u(e);
  Jet l{{{}, RatFunc(7)}};
  for (const auto& w : normal_words(2, 2))
    if (!w.empty()) l[w] = RatFunc();
  for (int a = 0; a < 2; ++a) EXPECT_TRUE(grothendieck_connection(u, a, l).empty());
}

TEST(Grothendieck, Flat) {
  auto d = cr::ball(1);
  auto e = cr::build_frame(d);
  cr::Enveloping u(e);
  check::Gen gen(11);
  Jet l = random_jet(gen, d, e.rank(), 5);
  for (int a = 0; a < e.rank(); ++a)
    for (int b = a + 1; b < e.rank(); ++b) EXPECT_TRUE(grothendieck_flatness_residual(u, a, b, l).empty()) << a << b;
}
