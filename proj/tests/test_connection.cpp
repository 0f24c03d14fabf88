#include <gtest/gtest.h>

#include "bdq/connection.hpp"
#include "support/generators.hpp"

using namespace bdq;
using namespace bdq::pk;

namespace {

// Algebroid with zero anchor and given constant structure constants on ball(n)'s alphabet.
cr::Algebroid lie_algebra(int n) {
  cr::Algebroid e;
  e.domain = cr::ball(n);
  const std::size_t dim = std::size_t(e.rank());
  e.anchor = zero_matrix<RatFunc>(dim, dim);
  e.v = e.anchor;
  e.coframe = identity_matrix<RatFunc>(dim);
  e.structure = zero_tensor3(dim);
  return e;
}

void set_bracket(cr::Algebroid& e, int a, int b, int k, const Scalar& c) {
  e.structure[std::size_t(a)][std::size_t(b)][std::size_t(k)] = RatFunc(c);
  e.structure[std::size_t(b)][std::size_t(a)][std::size_t(k)] = RatFunc(-c);
}

Alternating standard_pairing(int n) {
  Alternating w(2 * n + 2);
  for (int i = 0; i <= n; ++i) w.add_term(mask_of({i, n + 1 + i}), RatFunc(1));
  return w;
}

ParaKahlerData ball_data(int n) { return para_kahler_data(cr::build_frame(cr::ball(n))); }

}  // namespace

TEST(ParaKahler, RejectsBadForms) {
  auto e = cr::build_frame(cr::ball(1));
  Alternating w = standard_pairing(1);
  w.add_term(mask_of({0, 1}), RatFunc(1));
  EXPECT_THROW(para_kahler_data(lie_algebra(1), w), Error);
  Alternating degenerate(4);
  degenerate.add_term(mask_of({0, 2}), RatFunc(1));
  EXPECT_THROW(para_kahler_data(lie_algebra(1), degenerate), Error);
  EXPECT_NO_THROW(para_kahler_data(e));
}

TEST(ParaKahler, FlatDataHasZeroConnection) {
  auto d = para_kahler_data(lie_algebra(1), standard_pairing(1));
  auto c = build_connection(d);
  EXPECT_TRUE(is_zero(c.gamma));
  EXPECT_TRUE(is_zero(torsion(c, d)));
  EXPECT_TRUE(is_zero(compatibility_residual(c, d)));
  EXPECT_TRUE(is_zero(curvature(c, d).r));
  EXPECT_TRUE(is_zero(quotient_bott(d)));
}

TEST(ParaKahler, InteriorChartHasZeroBott) {
  auto d = para_kahler_data(cr::build_frame(cr::ball(1), cr::ChartKind::interior));
  auto b = quotient_bott(d);
  EXPECT_TRUE(is_zero(b));
}

TEST(ParaKahler, BottIsQuotientBracketAndFlat) {
  auto d = ball_data(1);
  auto b = quotient_bott(d);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k)
        EXPECT_EQ(b[std::size_t(i)][std::size_t(j)][std::size_t(k)],
                  d.e.structure[std::size_t(i)][std::size_t(2 + j)][std::size_t(2 + k)]);
  EXPECT_FALSE(is_zero(b));
  EXPECT_TRUE(is_zero(bott_curvature(d, b)));
}

TEST(ParaKahler, BallConnectionCertified) {
  for (int n : {0, 1}) {
    auto d = ball_data(n);
    auto c = build_connection(d);
    EXPECT_TRUE(is_zero(torsion(c, d))) << n;
    EXPECT_TRUE(is_zero(compatibility_residual(c, d))) << n;
    EXPECT_TRUE(is_zero(compatibility_residual(c, d, symmetric_pairing(d)))) << n;
    auto r = curvature(c, d);
    EXPECT_TRUE(r.bidegree_11) << n;
    EXPECT_FALSE(is_zero(r.r)) << n;
    // Splitting invariance.
    for (int a = 0; a < d.rank(); ++a)
      for (int b = 0; b < d.rank(); ++b)
        for (int k = 0; k < d.rank(); ++k)
          if (d.e.holomorphic(b) != d.e.holomorphic(k))
            EXPECT_TRUE(c.gamma[std::size_t(a)][std::size_t(b)][std::size_t(k)].is_zero());
  }
}

TEST(ParaKahler, ZeroedEntryBreaksTorsion) {
  auto d = ball_data(1);
  auto c = build_connection(d);
  bool found = false;
  for (std::size_t a = 0; a < c.gamma.size() && !found; ++a)
    for (std::size_t b = 0; b < c.gamma.size() && !found; ++b)
      for (auto& x : c.gamma[a][b])
        if (a != b && !x.is_zero() && !found) {
          x = RatFunc();
          found = true;
        }
  ASSERT_TRUE(found);
  EXPECT_FALSE(is_zero(torsion(c, d)));
}

TEST(ParaKahler, KahlerInteriorFormulas) {
  auto d = para_kahler_data(cr::build_frame(cr::ball(1), cr::ChartKind::interior));
  auto c = build_connection(d);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k) {
        RatFunc expect;
        for (int l = 0; l <= 1; ++l)
          expect += d.pi[std::size_t(l)][std::size_t(k)] * d.pairing[std::size_t(j)][std::size_t(l)].derivative(std::size_t(i));
        EXPECT_EQ(c.gamma[d.hol(i)][d.hol(j)][d.hol(k)], expect);
        EXPECT_TRUE(c.gamma[d.hol(i)][d.anti(j)][d.anti(k)].is_zero());
      }
}

TEST(ParaKahler, NormalizedBases) {
  auto e = cr::build_frame(cr::ball(1));
  auto d0 = para_kahler_data(e);
  auto p = identity_matrix<RatFunc>(4);
  for (int j = 0; j <= 1; ++j)
    for (int l = 0; l <= 1; ++l) p[d0.anti(j)][d0.anti(l)] = d0.pi[std::size_t(l)][std::size_t(j)];
  auto d = para_kahler_data(cr::change_frame(e, p));
  EXPECT_EQ(d.pairing, identity_matrix<RatFunc>(2));
  auto c = build_connection(d);
  EXPECT_TRUE(is_zero(torsion(c, d)));
  EXPECT_TRUE(is_zero(compatibility_residual(c, d)));
  bool transposed_differs = false;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k) {
        EXPECT_EQ(c.gamma[d.hol(i)][d.hol(j)][d.hol(k)], -d.m_prime(i, k, j));
        EXPECT_EQ(c.gamma[d.hol(i)][d.anti(j)][d.anti(k)], d.m_prime(i, j, k));
        if (!(d.m_prime(i, j, k) == d.m_prime(i, k, j))) transposed_differs = true;
      }
  // The (0,1) coefficients are m'^k_{ij}, not the index-transposed m'^j_{ik}.
  EXPECT_TRUE(transposed_differs);
}

TEST(ParaKahler, TwoDimensionalLieAlgebra) {
  // [xi, xi'] = xi' with omega(xi, xi') = 1.
  auto e = lie_algebra(0);
  set_bracket(e, 0, 1, 1, Scalar(1));
  auto d = para_kahler_data(e, standard_pairing(0));
  auto c = build_connection(d);
  EXPECT_EQ(c.gamma[0][0][0], RatFunc(-1));
  EXPECT_EQ(c.gamma[0][1][1], RatFunc(1));
  EXPECT_TRUE(is_zero(torsion(c, d)));
  EXPECT_TRUE(is_zero(compatibility_residual(c, d)));
}

TEST(ParaKahler, DiscCurvature) {
  auto d = para_kahler_data(cr::build_frame(cr::ball(0), cr::ChartKind::interior));
  auto c = build_connection(d);
  auto r = curvature(c, d);
  auto alpha = d.e.domain.alpha;
  RatFunc s(parse_poly("1 - z_0*zb_0", alpha));
  // -d_zb d_z log(1/s^2) = -2 / s^2
  EXPECT_EQ(r.r[0][1][0][0], RatFunc(-2) / (s * s));
  EXPECT_EQ(r.r[0][1][1][1], RatFunc(2) / (s * s));
  EXPECT_EQ(r.r[1][0][1][1], RatFunc(-2) / (s * s));
  EXPECT_TRUE(r.bidegree_11);
}

TEST(ParaKahler, Bianchi) {
  auto d = ball_data(1);
  auto c = build_connection(d);
  auto r = curvature(c, d);
  for (const auto& t : bianchi_residual(c, d, r.r)) EXPECT_TRUE(is_zero(t));
}

TEST(ParaKahler, UniquenessProbe) {
  auto d = ball_data(1);
  auto base = build_connection(d);
  check::Gen gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = base;
    // Splitting-preserving perturbation with a random support.
    int a = int(gen.integer(0, 3)), b = int(gen.integer(0, 3));
    int lo = d.e.holomorphic(b) ? 0 : 2;
    int k = lo + int(gen.integer(0, 1));
    Scalar s = gen.scalar();
    if (s.is_zero()) s = Scalar(1);
    c.gamma[std::size_t(a)][std::size_t(b)][std::size_t(k)] += RatFunc(s);
    EXPECT_TRUE(!is_zero(torsion(c, d)) || !is_zero(compatibility_residual(c, d))) << trial;
  }
}
