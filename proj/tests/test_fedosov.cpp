#include <gtest/gtest.h>

#include "bdq/fedosov.hpp"
#include "support/generators.hpp"

using namespace bdq;
using namespace bdq::fq;

namespace {

WeylElement random_section(check::Gen& gen, const AlphabetPtr& alpha, int rank, int terms, int max_form) {
  WeylElement w(rank);
  for (int t = 0; t < terms; ++t) {
    WeylKey k;
    k.hbar = gen.integer(0, 1);
    for (int s = 0; s < rank; ++s) k.fiber[std::size_t(s)] = std::uint8_t(gen.integer(0, 1) * gen.integer(0, 2));
    for (int s = 0; s < rank; ++s)
      if (mask_degree(k.form) < max_form && gen.integer(0, 3) == 0) k.form |= Mask(1) << s;
    w.add(k, RatFunc(gen.poly(alpha, 2, 2)));
  }
  return w;
}

// Coordinate frame on C with constant omega = i dz ^ dzb.
pk::ParaKahlerData flat_data() {
  auto e = cr::build_frame(cr::ball(0), cr::ChartKind::interior);
  Alternating w(2);
  w.add_term(mask_of({0, 1}), RatFunc(Scalar::i()));
  return pk::para_kahler_data(e, w);
}

struct BallCase {
  FedosovSystem sys;
  FedosovData omega;
  FedosovData canonical;
  StarProduct star;

  BallCase() : sys(pk::para_kahler_data(cr::build_frame(cr::ball(1)))) {
    omega = solve_r(sys, mu_symplectic(sys), 5);
    canonical = solve_r(sys, mu_canonical(sys), 5);
    star = extract_bidiff(sys, omega, 2);
  }
};

BallCase& ball_case() {
  static BallCase c;
  return c;
}

JetPoly sym(int f, cr::Word w = {}) { return JetPoly::symbol(f, w); }

}  // namespace

TEST(Fedosov, FlatData) {
  FedosovSystem s(flat_data());
  EXPECT_TRUE(s.curvature().is_zero());
  auto f = solve_r(s, mu_symplectic(s), 5);
  EXPECT_TRUE(f.r.is_zero());
  // nabla is the coefficient derivative.
  WeylElement a = WeylElement::constant(2, RatFunc(parse_poly("z_0^2*zb_0", s.data().e.domain.alpha)));
  WeylElement da(2);
  da.add(WeylKey{mask_of({0}), 0, {}}, RatFunc(parse_poly("2*z_0*zb_0", s.data().e.domain.alpha)));
  da.add(WeylKey{mask_of({1}), 0, {}}, RatFunc(parse_poly("z_0^2", s.data().e.domain.alpha)));
  EXPECT_EQ(s.nabla(a), da);
  // The lift is the Taylor expansion in the jet symbols.
  WeylElement lift = flat_lift(s, f, sym(0), 3);
  for (const auto& [k, c] : lift.terms()) {
    cr::Word w;
    long fact = 1;
    for (int v = 0; v < 2; ++v)
      for (int j = 0; j < k.fiber[std::size_t(v)]; ++j) {
        w.push_back(v);
        fact *= j + 1;
      }
    EXPECT_EQ(c, JetPoly(RatFunc(Scalar::rational(1, fact))) * sym(0, w));
  }
  EXPECT_EQ(lift.terms().size(), 10u);
  // B_k = (1/k!) lambda^k (e_0^k (x) e_1^k).
  auto sp = extract_bidiff(s, f, 3);
  RatFunc lam = s.product().lambda()[0][1];
  RatFunc pk_(1);
  long fact = 1;
  for (int k = 0; k <= 3; ++k) {
    if (k) {
      pk_ *= lam;
      fact *= k;
    }
    Bidifferential expect{{{cr::Word(std::size_t(k), 0), cr::Word(std::size_t(k), 1)}, pk_ / RatFunc(fact)}};
    EXPECT_EQ(sp.b[std::size_t(k)], expect) << k;
  }
}

TEST(Fedosov, CurvatureOfLift) {
  auto& c = ball_case();
  auto& s = c.sys;
  for (const auto& [k, x] : s.curvature().terms()) {
    EXPECT_EQ(mask_degree(k.form & s.holomorphic()), 1);
    EXPECT_EQ(mask_degree(k.form & s.antiholomorphic()), 1);
  }
  check::Gen gen(31);
  auto alpha = s.data().e.domain.alpha;
  for (int t = 0; t < 3; ++t) {
    auto a = random_section(gen, alpha, 4, 3, 1);
    EXPECT_EQ(s.nabla(s.nabla(a)), s.bracket(s.curvature(), a, -1));
  }
}

TEST(Fedosov, NablaIsDerivation) {
  auto& s = ball_case().sys;
  check::Gen gen(32);
  auto alpha = s.data().e.domain.alpha;
  for (int t = 0; t < 3; ++t) {
    auto a = random_section(gen, alpha, 4, 3, 0);
    auto b = random_section(gen, alpha, 4, 3, 1);
    const auto& p = s.product();
    EXPECT_EQ(s.nabla(p(a, b)), p(s.nabla(a), b) + p(a, s.nabla(b)));
  }
}

TEST(Fedosov, SolveSymplectic) {
  auto& c = ball_case();
  auto rep = verify(c.sys, c.omega);
  EXPECT_TRUE(rep.delta_inverse_vanishes);
  EXPECT_EQ(rep.min_degree, 3);
  EXPECT_TRUE(rep.equation_holds);
  EXPECT_TRUE(rep.d_squared_vanishes);
  EXPECT_EQ(c.omega.r.degree_part(3), delta_inverse(c.sys.curvature()));
}

TEST(Fedosov, SolveCanonical) {
  auto& c = ball_case();
  auto rep = verify(c.sys, c.canonical);
  EXPECT_TRUE(rep.delta_inverse_vanishes);
  EXPECT_EQ(rep.min_degree, 3);
  EXPECT_TRUE(rep.equation_holds);
  EXPECT_TRUE(rep.d_squared_vanishes);
  // r_0 = R - i h omega_can.
  WeylElement shift = delta_inverse(c.canonical.mu - mu_symplectic(c.sys));
  EXPECT_EQ(c.canonical.r.degree_part(3) - c.omega.r.degree_part(3), WeylElement(4) - shift);
}

TEST(Fedosov, RejectsInvalidMu) {
  auto& s = ball_case().sys;
  EXPECT_THROW(solve_r(s, WeylElement(4), 3), Error);
  Alternating w(4);
  w.add_term(mask_of({0, 2}), RatFunc(parse_poly("z_1", s.data().e.domain.alpha)));
  EXPECT_THROW(solve_r(s, mu_symplectic(s) + WeylElement::form(w, 1), 3), Error);
  Alternating hh(4);
  hh.add_term(mask_of({0, 1}), RatFunc(1));
  EXPECT_THROW(solve_r(s, mu_symplectic(s) + WeylElement::form(hh, 1), 3), Error);
}

TEST(Fedosov, LiftIsFlat) {
  auto& c = ball_case();
  WeylElement lift = flat_lift(c.sys, c.omega, sym(0), 4);
  EXPECT_EQ(sigma(lift).filter([](const WeylKey& k) { return k.hbar == 0; }), WeylElement::constant(4, sym(0)));
  EXPECT_TRUE(fedosov_d(c.sys, c.omega, lift, 3).is_zero());
}

TEST(Star, UnitAndAntisymmetry) {
  auto& c = ball_case();
  auto x = star(c.sys, c.omega, sym(0), JetPoly(RatFunc(1)), 2);
  EXPECT_EQ(x[0], sym(0));
  EXPECT_TRUE(x[1].is_zero() && x[2].is_zero());
  auto y = star(c.sys, c.omega, JetPoly(RatFunc(1)), sym(0), 2);
  EXPECT_EQ(y[0], sym(0));
  EXPECT_TRUE(y[1].is_zero() && y[2].is_zero());
  EXPECT_EQ(antisymmetrize(c.star.b[1]), poisson_bidiff(c.sys.data()));
  EXPECT_EQ(c.star.b[0], (Bidifferential{{{{}, {}}, RatFunc(1)}}));
}

TEST(Star, BipolarizedAndRegular) {
  auto& c = ball_case();
  EXPECT_TRUE(c.star.bipolarized);
  const Poly& psi = c.sys.data().e.psi();
  for (const auto& b : c.star.b)
    for (const auto& [vw, x] : b) EXPECT_TRUE(x.is_psi_regular(psi)) << x.to_string();
}

TEST(Star, Associative) {
  auto& c = ball_case();
  auto a = associator(c.sys.jets(), c.star, sym(0), sym(1), sym(2));
  for (const auto& x : a) EXPECT_TRUE(x.is_zero());
  StarProduct broken = c.star;
  for (auto& [vw, x] : broken.b[2]) x *= RatFunc(2);
  auto b = associator(c.sys.jets(), broken, sym(0), sym(1), sym(2));
  EXPECT_TRUE(b[1].is_zero());
  EXPECT_FALSE(b[2].is_zero());
}

TEST(Star, SeparationOfVariables) {
  auto& c = ball_case();
  auto alpha = c.sys.data().e.domain.alpha;
  RatFunc f(parse_poly("zb_0^2 + 3*zb_1 - I*zb_0*zb_1", alpha));
  RatFunc g(parse_poly("z_0*z_1 + 2*z_1^2", alpha));
  RatFunc h(parse_poly("z_0*zb_1 + zb_0", alpha));
  auto& u = c.sys.jets().enveloping();
  for (int k = 1; k <= 2; ++k) {
    JetPoly bk = apply_bidiff(c.sys.jets(), c.star.b[std::size_t(k)], sym(0), sym(1));
    EXPECT_TRUE(realize(u, bk, {f, h}).is_zero());
    EXPECT_TRUE(realize(u, bk, {h, g}).is_zero());
    EXPECT_FALSE(realize(u, bk, {h, h}).is_zero());
  }
}

TEST(Star, PolarizedLifts) {
  auto& c = ball_case();
  auto& s = c.sys;
  WeylElement fl = polarized_lift(s, c.omega, sym(0), Side::holomorphic, 4);
  WeylElement gl = polarized_lift(s, c.omega, sym(1), Side::antiholomorphic, 4);
  EXPECT_EQ(fl, tau(flat_lift(s, c.omega, sym(0), 4), s.holomorphic()));
  EXPECT_EQ(gl, tau(flat_lift(s, c.omega, sym(1), 4), s.antiholomorphic()));
  WeylElement p = sigma(s.product()(fl, gl, 4));
  auto x = star(s, c.omega, sym(0), sym(1), 2);
  for (int k = 0; k <= 2; ++k) {
    JetPoly pk_;
    for (const auto& [key, v] : p.terms())
      if (key.hbar == k) pk_ += v;
    EXPECT_EQ(pk_, x[std::size_t(k)]) << k;
  }
  auto alpha = s.data().e.domain.alpha;
  JetPoly fa(RatFunc(parse_poly("zb_0*zb_1 - 2*zb_1^3", alpha)));
  EXPECT_EQ(polarized_lift(s, c.omega, fa, Side::holomorphic, 4), WeylElement::constant(4, fa));
  JetPoly gh(RatFunc(parse_poly("z_0^2 + I*z_1", alpha)));
  EXPECT_EQ(polarized_lift(s, c.omega, gh, Side::antiholomorphic, 4), WeylElement::constant(4, gh));
}
