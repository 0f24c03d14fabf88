#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "bdq/matrix.hpp"
#include "bdq/ratfunc.hpp"

namespace bdq {

// Bit i set means basis element i is present; the canonical order of a wedge
// monomial is increasing index.
using Mask = std::uint32_t;

int mask_degree(Mask m);
std::vector<int> mask_indices(Mask m);
Mask mask_of(std::initializer_list<int> indices);
// Sign of e_a ^ e_b relative to the canonical order of a | b; 0 when a & b != 0.
int wedge_sign(Mask a, Mask b);

// Element of the exterior algebra over `dim` generators with rational function
// coefficients. Used both for differential forms (generators = coframe) and for
// multivector fields (generators = frame).
class Alternating {
 public:
  using Terms = std::map<Mask, RatFunc>;

  explicit Alternating(int dim = 0) : dim_(dim) {}
  static Alternating scalar(int dim, RatFunc f);
  static Alternating basis(int dim, int i, RatFunc coeff = RatFunc(1));
  static Alternating monomial(int dim, Mask m, RatFunc coeff);
  // sum_{i<j} m[i][j] e_i ^ e_j.
  static Alternating from_matrix(const Matrix<RatFunc>& m);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  RatFunc component(Mask m) const;
  void add_term(Mask m, const RatFunc& c);
  bool is_zero() const { return terms_.empty(); }
  // Largest degree present; -1 for zero.
  int degree() const;
  Alternating part(int degree) const;
  // Antisymmetric matrix of the degree-2 part: M[i][j] = component(i,j).
  Matrix<RatFunc> to_matrix() const;

  Alternating operator-() const;
  Alternating& operator+=(const Alternating& o);
  Alternating& operator-=(const Alternating& o);
  Alternating& operator*=(const RatFunc& f);
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(Alternating a, const RatFunc& f) { return a *= f; }
  friend Alternating operator*(const RatFunc& f, Alternating a) { return a *= f; }
  friend bool operator==(const Alternating& a, const Alternating& b);
  friend bool operator!=(const Alternating& a, const Alternating& b) { return !(a == b); }

  // Applies g to every coefficient, dropping zeros.
  template <class F>
  Alternating map(F&& g) const {
    Alternating r(dim_);
    for (const auto& [m, c] : terms_) r.add_term(m, g(c));
    return r;
  }

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  int dim_;
  Terms terms_;
};

Alternating wedge(const Alternating& a, const Alternating& b);
Alternating wedge_power(const Alternating& a, int k);
// Contraction with the single generator i dual to the algebra of w.
Alternating interior(int i, const Alternating& w);
// Contraction of v = e_{j1}^...^e_{jk} (j1 < ... < jk) as i_{jk} o ... o i_{j1}.
Alternating interior(const Alternating& v, const Alternating& w);

// Coordinate chart: generator i corresponds to alphabet symbol vars[i].
struct Chart {
  AlphabetPtr alpha;
  std::vector<std::size_t> vars;

  static Chart named(const AlphabetPtr& alpha, const std::vector<std::string>& names);
  int dim() const { return int(vars.size()); }
  RatFunc coordinate(int i) const { return RatFunc(Poly::var(alpha, vars.at(std::size_t(i)))); }
};

Alternating exterior_derivative(const Alternating& w, const Chart& chart);
// Graded Schouten-Nijenhuis bracket of coordinate multivector fields. On a
// vector field and a function it is the derivative, on two vector fields the
// Lie bracket.
Alternating schouten(const Alternating& p, const Alternating& q, const Chart& chart);
// Bivector with matrix -M^{-1} of a nondegenerate 2-form, so dq ^ dp maps to
// d/dq ^ d/dp. Applied to a bivector it returns the 2-form it inverts.
Alternating invert_two_tensor(const Alternating& sigma);

}  // namespace bdq
