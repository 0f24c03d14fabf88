#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdq/alphabet.hpp"
#include "bdq/scalar.hpp"

namespace bdq {

inline constexpr std::size_t kMaxVars = 16;
using Exponent = std::array<std::uint8_t, kMaxVars>;

/// Sparse multivariate polynomial over Q(i). Terms are kept in a map keyed by
/// exponent vectors under lex order (symbol 0 most significant); zero
/// coefficients are never stored, so equal polynomials compare equal.
///
/// A polynomial with a null alphabet is a constant; it adopts the alphabet of
/// whatever it is combined with.
class Poly {
 public:
  using Terms = std::map<Exponent, Scalar>;

  Poly() = default;
  Poly(Scalar c) { if (!c.is_zero()) terms_.emplace(Exponent{}, std::move(c)); }  // NOLINT
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT
  Poly(AlphabetPtr alpha, Scalar c) : alpha_(std::move(alpha)) {
    if (!c.is_zero()) terms_.emplace(Exponent{}, std::move(c));
  }

  static Poly var(const AlphabetPtr& alpha, std::size_t i);
  static Poly var(const AlphabetPtr& alpha, const std::string& name);
  static Poly monomial(const AlphabetPtr& alpha, const Exponent& e, Scalar c);

  const AlphabetPtr& alphabet() const { return alpha_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Scalar constant_term() const;
  /// Largest term under lex order; requires a nonzero polynomial.
  const std::pair<const Exponent, Scalar>& leading() const { return *terms_.rbegin(); }
  int total_degree() const;
  int degree_in(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Total order used to sort denominator factors.
  friend bool operator<(const Poly& a, const Poly& b);

  Poly pow(unsigned k) const;
  /// Formal partial derivative; z and zb are independent symbols.
  Poly derivative(std::size_t var) const;
  Poly derivative(const std::string& name) const;

  /// q with *this == q * d, or nullopt when d does not divide *this.
  std::optional<Poly> exact_divide(const Poly& d) const;
  /// Same as exact_divide but throws when the division is not exact.
  Poly divide_or_throw(const Poly& d) const;

  /// Coefficient conjugation combined with the symbol involution z <-> zb.
  Poly conjugate() const;
  /// Substitutes values for every symbol.
  Scalar evaluate(const std::vector<Scalar>& point) const;
  double evaluate_double(const std::vector<double>& point) const;
  /// Replaces symbol `var` by polynomial `value`.
  Poly substitute(std::size_t var, const Poly& value) const;

  /// Scales so the leading coefficient is one; returns the factor removed.
  Scalar make_monic();

  std::string to_string() const;

  /// Rebinds a constant polynomial to an alphabet.
  Poly with_alphabet(const AlphabetPtr& alpha) const;

 private:
  static AlphabetPtr merge_alphabets(const AlphabetPtr& a, const AlphabetPtr& b, const char* where);

  AlphabetPtr alpha_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Parses expressions such as "1 - z_0*zb_0 - (z_1*zb_1)^2" or "u^2 + 3/2*r*I".
/// `I` denotes the imaginary unit; every other identifier must be in the alphabet.
Poly parse_poly(const std::string& text, const AlphabetPtr& alpha);

}  // namespace bdq
