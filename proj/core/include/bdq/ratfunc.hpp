#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "bdq/poly.hpp"

namespace bdq {

// Quotient of polynomials with a factored denominator. Denominator atoms are
// monic, sorted and never repeated; atoms dividing the numerator are cancelled
// eagerly by trial division. No multivariate gcd is attempted, so two equal
// values may have different representations; equality cross-multiplies.
class RatFunc {
 public:
  using Factor = std::pair<Poly, int>;

  RatFunc() = default;
  RatFunc(Poly p) : num_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(Scalar c) : num_(std::move(c)) {}  // NOLINT
  RatFunc(long c) : num_(Scalar(c)) {}  // NOLINT

  static RatFunc quotient(const Poly& n, const Poly& d);

  const Poly& numerator() const { return num_; }
  const std::vector<Factor>& factors() const { return den_; }
  Poly denominator() const;
  AlphabetPtr alphabet() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(int k) const;
  RatFunc derivative(std::size_t var) const;
  RatFunc derivative(const std::string& name) const;
  RatFunc conjugate() const;
  // Replaces symbol `var` by a polynomial; throws when the denominator vanishes.
  RatFunc substitute(std::size_t var, const Poly& value) const;

  // Throws "pole" when the denominator vanishes at the point.
  Scalar evaluate(const std::vector<Scalar>& point) const;
  std::complex<double> evaluate_complex(const std::vector<std::complex<double>>& point) const;
  double evaluate_double(const std::vector<double>& point) const;

  // Same value with every power of p split out of the denominator atoms into a
  // separate atom and cancelled against the numerator where possible.
  RatFunc isolate(const Poly& p) const;

  // Net multiplicity of the factor psi (numerator minus denominator), assuming
  // psi is irreducible. Zero numerators report a large positive order.
  int psi_order(const Poly& psi) const;
  // Denominator coprime to psi after cancellation.
  bool is_psi_regular(const Poly& psi) const { return psi_order(psi) >= 0; }
  // Regular and vanishing along psi = 0.
  bool divisible_by(const Poly& psi) const { return psi_order(psi) >= 1; }

  std::string to_string() const;

 private:
  void normalize();
  void divide_by_poly(Poly p, const std::vector<Factor>& hints);

  Poly num_;
  std::vector<Factor> den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

}  // namespace bdq
