#include <gtest/gtest.h>

#include "bdq/connection.hpp"
#include "bdq/weyl.hpp"
#include "support/generators.hpp"

using namespace bdq;
using namespace bdq::fq;

namespace {

WeylElement random_element(check::Gen& gen, const AlphabetPtr& alpha, int rank, int terms, int max_form) {
  WeylElement w(rank);
  for (int t = 0; t < terms; ++t) {
    WeylKey k;
    k.hbar = gen.integer(0, 1);
    for (int s = 0; s < rank; ++s) k.fiber[std::size_t(s)] = std::uint8_t(gen.integer(0, 1) * gen.integer(0, 2));
    for (int s = 0; s < rank; ++s)
      if (mask_degree(k.form) < max_form && gen.integer(0, 3) == 0) k.form |= Mask(1) << s;
    w.add(k, RatFunc(gen.poly(alpha, 2, 1)));
  }
  return w;
}

WeylElement y(int rank, int s) { return WeylElement::fiber_var(rank, s); }

WeylElement c(int rank, const Scalar& x, int hbar = 0) {
  WeylElement w(rank);
  w.add(WeylKey{0, hbar, {}}, RatFunc(x));
  return w;
}

}  // namespace

TEST(AntiWick, Examples) {
  auto d = pk::para_kahler_data(cr::build_frame(cr::ball(1)));
  auto prod = FiberProduct::anti_wick(d.pi);
  const int r = 4;
  EXPECT_EQ(prod(c(r, 3), c(r, 5)), c(r, 15));
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      WeylElement lhs = prod(y(r, a), y(r, 2 + b));
      WeylElement expect = FiberProduct()(y(r, a), y(r, 2 + b));
      WeylElement corr(r);
      corr.add(WeylKey{0, 1, {}}, d.pi[std::size_t(a)][std::size_t(b)] * RatFunc(Scalar(0, mpq_class(-1, 2))));
      EXPECT_EQ(lhs, expect + corr);
      EXPECT_EQ(prod(y(r, 2 + b), y(r, a)), FiberProduct()(y(r, 2 + b), y(r, a)));
    }
}

TEST(AntiWick, Associative) {
  auto d = pk::para_kahler_data(cr::build_frame(cr::ball(1)));
  check::Gen gen(21);
  for (auto prod : {FiberProduct::anti_wick(d.pi), FiberProduct::from_symplectic(d.omega)}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto a = random_element(gen, d.e.domain.alpha, 4, 3, 2);
      auto b = random_element(gen, d.e.domain.alpha, 4, 3, 2);
      auto x = random_element(gen, d.e.domain.alpha, 4, 3, 2);
      EXPECT_EQ(prod(prod(a, b), x), prod(a, prod(b, x)));
    }
  }
}

TEST(AntiWick, CommutatorsDivisibleByHbar) {
  auto d = pk::para_kahler_data(cr::build_frame(cr::ball(1)));
  auto prod = FiberProduct::from_symplectic(d.omega);
  check::Gen gen(22);
  auto a = random_element(gen, d.e.domain.alpha, 4, 4, 1);
  auto b = random_element(gen, d.e.domain.alpha, 4, 4, 1);
  EXPECT_NO_THROW(divide_hbar(prod.commutator(a, b)));
}

TEST(Delta, Examples) {
  const int r = 4;
  WeylElement th1 = WeylElement::form(Alternating::basis(r, 1));
  EXPECT_EQ(delta(y(r, 1)), th1);
  EXPECT_EQ(delta_inverse(th1), y(r, 1));
  EXPECT_TRUE(delta_inverse(c(r, 4)).is_zero());
}

TEST(Delta, HodgeIdentity) {
  check::Gen gen(23);
  auto alpha = cr::ball(1).alpha;
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_element(gen, alpha, 4, 6, 3);
    EXPECT_TRUE(delta(delta(a)).is_zero());
    EXPECT_TRUE(delta_inverse(delta_inverse(a)).is_zero());
    EXPECT_EQ(delta(delta_inverse(a)) + delta_inverse(delta(a)), a - projection_00(a));
  }
}

TEST(Delta, InnerForSymplecticProduct) {
  // theta = -Omega_ab theta^a y^b satisfies (i/h)[theta, .] = -delta and (i/h) theta*theta = -omega.
  auto d = pk::para_kahler_data(cr::build_frame(cr::ball(1)));
  auto prod = FiberProduct::from_symplectic(d.omega);
  WeylElement th(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      WeylKey k;
      k.form = Mask(1) << a;
      k.fiber[std::size_t(b)] = 1;
      th.add(k, -d.omega[std::size_t(a)][std::size_t(b)]);
    }
  JetPoly i_unit(RatFunc(Scalar::i()));
  auto omega = WeylElement::form(Alternating::from_matrix(d.omega));
  EXPECT_EQ(i_unit * divide_hbar(prod(th, th)), WeylElement(4) - omega);
  check::Gen gen(24);
  auto a = random_element(gen, d.e.domain.alpha, 4, 4, 2);
  EXPECT_EQ(i_unit * divide_hbar(prod.commutator(th, a)), WeylElement(4) - delta(a));
}
