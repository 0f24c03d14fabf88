#pragma once

#include <random>

#include "bdq/ratfunc.hpp"

namespace bdq::check {

// Seeded generators for property tests. Small integer and Gaussian rational
// coefficients keep exact arithmetic cheap.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Scalar scalar(bool complex = true) {
    Scalar s = Scalar::rational(integer(-5, 5), integer(1, 3));
    if (complex && integer(0, 2) == 0) s += Scalar::rational(integer(-3, 3), integer(1, 2)) * Scalar::i();
    return s;
  }

  Poly poly(const AlphabetPtr& alpha, int max_terms, int max_degree, bool complex = true) {
    Poly p(alpha, Scalar(0));
    int terms = integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exponent e{};
      int budget = integer(0, max_degree);
      for (int k = 0; k < budget; ++k) e[integer(0, int(alpha->size()) - 1)] += 1;
      p += Poly::monomial(alpha, e, scalar(complex));
    }
    return p;
  }

  Poly nonzero_poly(const AlphabetPtr& alpha, int max_terms, int max_degree, bool complex = true) {
    for (;;) {
      Poly p = poly(alpha, max_terms, max_degree, complex);
      if (!p.is_zero()) return p;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace bdq::check
