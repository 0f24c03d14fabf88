#include <gtest/gtest.h>

#include "bdq/bergman.hpp"
#include "support/generators.hpp"

using namespace bdq;
using namespace bdq::bt;

namespace {

AlphaRational frac(long num, std::map<long, int> den) { return AlphaRational({Scalar(num)}, std::move(den)); }

AlphaRational coefficient(const HolVector& v, const MultiIndex& m) {
  auto it = v.find(m);
  return it == v.end() ? AlphaRational() : it->second;
}

HolVector basis_vector(const MultiIndex& m) { return {{m, AlphaRational(1)}}; }

Poly holomorphic_part(const Poly& p, int d) {
  Poly r = p;
  for (int j = 0; j < d; ++j) r = r.substitute(std::size_t(d + j), Poly(0));
  return r;
}

std::vector<Scalar> disc_points() {
  return {Scalar::rational(1, 3), Scalar(mpq_class(1, 4), mpq_class(1, 5)), Scalar(mpq_class(-1, 2), mpq_class(1, 7)),
          Scalar(mpq_class(0), mpq_class(-2, 3)), Scalar::rational(-1, 9)};
}

}  // namespace

TEST(AlphaRational, ArithmeticAndSeries) {
  AlphaRational a = frac(1, {{1, 1}}), b = frac(1, {{2, 1}});
  // 1/(a+1) - 1/(a+2) = 1/((a+1)(a+2)).
  EXPECT_EQ(a - b, frac(1, {{1, 1}, {2, 1}}));
  // (a+1) / (a+1)^2 cancels.
  EXPECT_EQ(AlphaRational::linear(1) * frac(1, {{1, 2}}), a);
  auto s = a.series(3);
  EXPECT_EQ(s, (std::vector<Scalar>{0, 1, -1, 1}));
  EXPECT_EQ((a * b).series(3), (std::vector<Scalar>{0, 0, 1, -3}));
  EXPECT_EQ(a.evaluate(Scalar(3)), Scalar::rational(1, 4));
  EXPECT_THROW(AlphaRational::linear(0).series(2), Error);
  EXPECT_THROW(a.evaluate(Scalar(-1)), Error);
}

TEST(Bergman, MonomialNorms) {
  auto s = disc(6);
  EXPECT_EQ(monomial_norm(s, {0}).value, frac(1, {{1, 1}}));
  EXPECT_EQ(monomial_norm(s, {0}).pi_power, 1);
  EXPECT_EQ(monomial_norm(s, {1}).value, frac(1, {{1, 1}, {2, 1}}));
  for (int m = 1; m <= 6; ++m) {
    AlphaRational ratio = monomial_norm(s, {m}).value * AlphaRational::linear(m + 1);
    EXPECT_EQ(ratio, monomial_norm(s, {m - 1}).value * AlphaRational(m));
  }
  EXPECT_THROW(monomial_norm(s, {7}), Error);
  // Ball in C^2: ||z_0 z_1||^2 = pi^2 / ((a+1)(a+2)(a+3)(a+4)).
  auto b = ball_space(2, 4);
  EXPECT_EQ(monomial_norm(b, {1, 1}).value, frac(1, {{1, 1}, {2, 1}, {3, 1}, {4, 1}}));
  EXPECT_EQ(monomial_norm(b, {1, 1}).pi_power, 2);
}

TEST(Bergman, DiscToeplitzExamples) {
  auto s = disc(12);
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  for (int m = 0; m <= 10; ++m) {
    EXPECT_EQ(toeplitz_apply(s, z, basis_vector({m})), (HolVector{{{m + 1}, AlphaRational(1)}}));
    EXPECT_EQ(coefficient(toeplitz_apply(s, zb, basis_vector({m})), {m - 1}), frac(m, {{m + 1, 1}}));
    EXPECT_EQ(toeplitz_apply(s, zb * z, basis_vector({m})), (HolVector{{{m}, frac(m + 1, {{m + 2, 1}})}}));
    HolVector zzb = toeplitz_apply(s, z, toeplitz_apply(s, zb, basis_vector({m})));
    AlphaRational diff = coefficient(zzb, {m}) - coefficient(toeplitz_apply(s, z * zb, basis_vector({m})), {m});
    EXPECT_EQ(diff, -AlphaRational::linear(1) * frac(1, {{m + 1, 1}, {m + 2, 1}}));
  }
  auto tz = toeplitz_matrix(s, z), tzb = toeplitz_matrix(s, zb), tzzb = toeplitz_matrix(s, zb * z);
  for (int m = 0; m < 12; ++m) {
    // T_zb T_z = T_{zb z} entrywise.
    AlphaRational prod = tzb.entry({m}, {m + 1}) * tz.entry({m + 1}, {m});
    EXPECT_EQ(prod, tzzb.entry({m}, {m}));
  }
  EXPECT_THROW(tz.entry({13}, {12}), Error);
  EXPECT_THROW(toeplitz_matrix(s, z, true), Error);
  EXPECT_NO_THROW(toeplitz_matrix(s, zb, true));
}

TEST(Bergman, HolomorphicFactorsAreExact) {
  check::Gen gen(41);
  auto s = disc(10);
  for (int trial = 0; trial < 15; ++trial) {
    Poly f = gen.poly(s.alpha, 3, 3), g = gen.poly(s.alpha, 3, 3);
    Poly gh = holomorphic_part(g, 1);
    Poly fa = holomorphic_part(f.conjugate(), 1).conjugate();
    for (int m = 0; m <= 4; ++m) {
      HolVector v = basis_vector({m});
      EXPECT_EQ(toeplitz_apply(s, f, toeplitz_apply(s, gh, v)), toeplitz_apply(s, f * gh, v));
      EXPECT_EQ(toeplitz_apply(s, fa, toeplitz_apply(s, g, v)), toeplitz_apply(s, fa * g, v));
    }
  }
}

TEST(Bergman, EntriesHavePositiveShifts) {
  check::Gen gen(42);
  for (int d = 1; d <= 2; ++d) {
    auto s = ball_space(d, 5);
    for (int trial = 0; trial < 10; ++trial) {
      auto t = toeplitz_matrix(s, gen.poly(s.alpha, 4, 4));
      for (const auto& [ij, x] : t.entries) EXPECT_TRUE(x.poles_negative()) << x.to_string();
    }
  }
}

TEST(Bergman, HermitianSymmetry) {
  check::Gen gen(43);
  for (int d = 1; d <= 2; ++d) {
    auto s = ball_space(d, 8);
    for (int trial = 0; trial < 8; ++trial) EXPECT_TRUE(hermitian_pair(s, gen.poly(s.alpha, 3, 3), 3));
  }
  // A non-real symbol differs from its conjugate, so the pairing is not trivial.
  auto s = disc(6);
  Poly z = Poly::var(s.alpha, 0);
  EXPECT_NE(toeplitz_matrix(s, z).entries, toeplitz_matrix(s, z.conjugate()).entries);
}

TEST(Bergman, ExpansionExamples) {
  auto s = disc(30);
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  auto r = bt_expansion(s, z, zb, 2);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.c[0], z * zb);
  EXPECT_EQ(r.c[1], -(Poly(1) - z * zb).pow(2));
  auto sep = bt_expansion(s, zb, z, 3);
  EXPECT_EQ(sep.c[0], z * zb);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(sep.c[std::size_t(k)].is_zero()) << k;
  EXPECT_THROW(bt_expansion(disc(8), z, zb, 2), Error);
  EXPECT_THROW(bt_expansion(ball_space(2, 10), Poly(1), Poly(1), 1), Error);
}

// Independent reference: on the disc, c_1(f, g) = -(1 - z zb)^2 f_z g_zb.
TEST(Bergman, FirstCoefficientMatchesReference) {
  check::Gen gen(44);
  auto s = disc(34);
  Poly psi = Poly(1) - Poly::var(s.alpha, 0) * Poly::var(s.alpha, 1);
  for (int trial = 0; trial < 6; ++trial) {
    Poly f = gen.poly(s.alpha, 2, 2), g = gen.poly(s.alpha, 2, 2);
    auto r = bt_expansion(s, f, g, 1);
    EXPECT_TRUE(r.consistent);
    EXPECT_EQ(r.c[0], f * g);
    EXPECT_EQ(r.c[1], -(psi * psi * f.derivative(0) * g.derivative(1)));
  }
}

TEST(Bergman, CutoffIndependence) {
  check::Gen gen(45);
  for (int trial = 0; trial < 4; ++trial) {
    auto a = disc(30), b = disc(38);
    Poly f = gen.poly(a.alpha, 2, 2), g = gen.poly(a.alpha, 2, 2);
    EXPECT_EQ(bt_expansion(a, f, g, 2).c, bt_expansion(b, f, g, 2).c);
  }
}

TEST(Bergman, CrossValidation) {
  auto s = disc(30);
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  std::vector<std::pair<Poly, Poly>> pairs{{z, zb}, {z * z, zb}, {z * zb, z}, {z, zb * zb}};
  for (auto kind : {cr::ChartKind::boundary, cr::ChartKind::interior}) {
    fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(0), kind)));
    auto star = fq::extract_bidiff(sys, fq::solve_r(sys, fq::mu_symplectic(sys), 5), 2);
    auto v = cross_validate(s, sys, star, pairs, disc_points(), false);
    EXPECT_EQ(v.kappa, -Scalar::i());
    for (const auto& c : v.checks) EXPECT_TRUE(c.pass) << c.label << ": " << c.detail;
    // Reversed factors still fit the antisymmetric part but lose separation of variables.
    auto op = cross_validate(s, sys, star, pairs, disc_points(), true);
    EXPECT_EQ(op.kappa, Scalar::i());
    for (const auto& c : op.checks)
      if (c.k == 1 && c.label.rfind("antisymmetric", 0) == 0) EXPECT_TRUE(c.pass) << c.label;
    EXPECT_FALSE(op.pass_through(1));
  }
}
