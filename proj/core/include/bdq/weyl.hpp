#pragma once

#include <map>
#include <string>
#include <vector>

#include "bdq/jets.hpp"

namespace bdq::fq {

// theta^form (x) hbar^hbar y^fiber, where y^s is the fiber coordinate dual to e_s.
struct WeylKey {
  Mask form = 0;
  int hbar = 0;
  Exponent fiber{};
  auto operator<=>(const WeylKey&) const = default;
};

int fiber_degree(const WeylKey& k);
// Fiber degree plus twice the power of hbar.
int total_degree(const WeylKey& k);

// E-form valued section of the Weyl bundle with jet-polynomial coefficients.
class WeylElement {
 public:
  using Terms = std::map<WeylKey, JetPoly>;

  explicit WeylElement(int rank = 0) : rank_(rank) {}
  static WeylElement constant(int rank, const JetPoly& c);
  static WeylElement fiber_var(int rank, int s);
  // Scalar-valued E-form with the given power of hbar.
  static WeylElement form(const Alternating& w, int hbar = 0);

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  void add(const WeylKey& k, const JetPoly& c);
  bool is_zero() const { return terms_.empty(); }
  // -1 for zero.
  int min_degree() const;
  int max_degree() const;

  template <class Pred>
  WeylElement filter(Pred keep) const {
    WeylElement out(rank_);
    for (const auto& [k, c] : terms_)
      if (keep(k)) out.terms_.emplace(k, c);
    return out;
  }
  WeylElement degree_part(int d) const;
  WeylElement truncate(int max_degree) const;
  WeylElement form_degree_part(int q) const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const JetPoly& c);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const JetPoly& c, WeylElement a) { return a *= c; }
  friend WeylElement operator*(WeylElement a, const JetPoly& c) { return a *= c; }
  friend bool operator==(const WeylElement& a, const WeylElement& b);

  std::string to_string() const;

 private:
  int rank_ = 0;
  Terms terms_;
};

// f * g = exp(i hbar sum lambda[s][t] d/dy^s (x) d/dy^t)(f (x) g), forms multiplied by wedge.
class FiberProduct {
 public:
  FiberProduct() = default;
  explicit FiberProduct(Matrix<RatFunc> lambda);
  // The anti-Wick product with coefficient -pi^{ab}/2 between y^a (E^{1,0} dual) on the
  // left and y^{n+1+b} (E^{0,1} dual) on the right.
  static FiberProduct anti_wick(const Matrix<RatFunc>& pi);
  // lambda = -Omega^{-1} for the full frame matrix Omega of omega; the commutator then
  // satisfies [y^s, y^t] = i hbar lambda[s][t] - i hbar lambda[t][s].
  static FiberProduct from_symplectic(const Matrix<RatFunc>& omega);

  int rank() const { return int(lambda_.size()); }
  const Matrix<RatFunc>& lambda() const { return lambda_; }
  // Terms of total degree above max_degree are dropped; negative means no truncation.
  WeylElement operator()(const WeylElement& a, const WeylElement& b, int max_degree = -1) const;
  // Graded commutator a*b - (-1)^{|a||b|} b*a.
  WeylElement commutator(const WeylElement& a, const WeylElement& b, int max_degree = -1) const;
  // Drops the memoized monomial expansions.
  void clear_cache() const { cache_.clear(); }

 private:
  struct Expansion {
    Exponent fiber;
    int k;
    RatFunc coeff;
  };
  const std::vector<Expansion>& expand(const Exponent& a, const Exponent& b) const;

  Matrix<RatFunc> lambda_;
  std::vector<std::pair<int, int>> pairs_;
  mutable std::map<std::pair<Exponent, Exponent>, std::vector<Expansion>> cache_;
};

// delta a = sum_s theta^s ^ d a / d y^s.
WeylElement delta(const WeylElement& a);
// delta^{-1} a = (1/(p+q)) sum_s y^s i_{e_s} a on fiber degree p, form degree q, p+q > 0.
WeylElement delta_inverse(const WeylElement& a);
// Restriction to the frame indices in `indices` for both fiber variables and forms.
WeylElement delta_inverse(const WeylElement& a, const std::vector<int>& indices);
// Sets all fiber variables to zero.
WeylElement sigma(const WeylElement& a);
// Keeps terms with no fiber variables outside `allowed` (bit s for y^s).
WeylElement tau(const WeylElement& a, Mask allowed);
// Keeps terms whose form part only involves theta^s for s in `allowed`.
WeylElement restrict_forms(const WeylElement& a, Mask allowed);
// Divides by hbar; throws "internal" if a term without hbar is present.
WeylElement divide_hbar(const WeylElement& a);
WeylElement multiply_hbar(const WeylElement& a, int k = 1);
// The (0,0) component: no fiber variables and form degree 0.
WeylElement projection_00(const WeylElement& a);

}  // namespace bdq::fq
