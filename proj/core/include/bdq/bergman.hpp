#pragma once

#include <map>
#include <string>
#include <vector>

#include "bdq/fedosov.hpp"
#include "bdq/poly.hpp"

namespace bdq::bt {

// Rational function of the weight exponent alpha whose denominator is a
// product of linear factors (alpha + c) with integer c.
class AlphaRational {
 public:
  AlphaRational() = default;
  AlphaRational(Scalar c);  // NOLINT
  AlphaRational(long c) : AlphaRational(Scalar(c)) {}  // NOLINT
  // num(alpha) / prod (alpha + c)^k over the entries (c, k) of den.
  AlphaRational(std::vector<Scalar> num, std::map<long, int> den);

  // alpha + c.
  static AlphaRational linear(long c);

  // Coefficients by ascending power of alpha.
  const std::vector<Scalar>& numerator() const { return num_; }
  const std::map<long, int>& denominator() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  // True when every pole alpha = -c has c > 0.
  bool poles_negative() const;

  AlphaRational& operator+=(const AlphaRational& o);
  AlphaRational& operator-=(const AlphaRational& o);
  AlphaRational& operator*=(const AlphaRational& o);
  friend AlphaRational operator+(AlphaRational a, const AlphaRational& b) { return a += b; }
  friend AlphaRational operator-(AlphaRational a, const AlphaRational& b) { return a -= b; }
  friend AlphaRational operator*(AlphaRational a, const AlphaRational& b) { return a *= b; }
  AlphaRational operator-() const;
  AlphaRational conj() const;
  friend bool operator==(const AlphaRational& a, const AlphaRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  Scalar evaluate(const Scalar& alpha) const;
  // Coefficients s_j of t^j, j = 0..order, of the expansion at t = 1/alpha = 0;
  // throws "not_bounded" when the function grows at infinity.
  std::vector<Scalar> series(int order) const;
  std::string to_string() const;

 private:
  void normalize();

  std::vector<Scalar> num_;
  std::map<long, int> den_;
};

using MultiIndex = std::vector<int>;

// Holomorphic polynomials on the unit ball of C^d with inner product
// int f conj(g) psi^alpha, psi = 1 - |z|^2.
struct WeightedSpace {
  int d = 1;
  int cutoff = 8;
  AlphabetPtr alpha;  // z_0..z_{d-1}, zb_0..zb_{d-1}
};

WeightedSpace disc(int cutoff);
WeightedSpace ball_space(int d, int cutoff);

// ||z^m||^2 = pi^d m! / ((alpha+1)...(alpha+|m|+d)); the factor pi^d is
// returned separately in `pi_power`.
struct MonomialNorm {
  AlphaRational value;
  int pi_power = 0;
};
MonomialNorm monomial_norm(const WeightedSpace& s, const MultiIndex& m);

// Vector in the monomial basis.
using HolVector = std::map<MultiIndex, AlphaRational>;

// P(f z^m) for a polynomial symbol f in z, zb.
HolVector toeplitz_apply(const WeightedSpace& s, const Poly& f, const HolVector& v);

struct ToeplitzMatrix {
  Poly symbol;
  std::vector<MultiIndex> basis;  // all |m| <= cutoff, graded lex
  // entries[(row, col)]: coefficient of basis[row] in T basis[col]; zero entries omitted.
  std::map<std::pair<int, int>, AlphaRational> entries;

  // Throws "cutoff_overflow" when either index lies outside the basis.
  AlphaRational entry(const MultiIndex& row, const MultiIndex& col) const;
};

// Throws "cutoff_overflow" if some T z^m leaves the truncated basis with
// nonzero coefficient and `strict` is set.
ToeplitzMatrix toeplitz_matrix(const WeightedSpace& s, const Poly& symbol, bool strict = false);

// Adjoint of a truncated matrix under the exact weighted inner product,
// restricted to columns whose image stays inside the basis.
bool hermitian_pair(const WeightedSpace& s, const Poly& f, int max_degree);

struct ExpansionReport {
  int order = 0;
  int cutoff = 0;
  // T_f T_g ~ sum_k alpha^{-k} T_{c[k]}.
  std::vector<Poly> c;
  // Higher solved coefficients vanished and spare test vectors agreed.
  bool consistent = true;
  std::vector<std::string> issues;
};

// Disc only. Test vectors z^m with m + deg f + deg g <= cutoff.
ExpansionReport bt_expansion(const WeightedSpace& s, const Poly& f, const Poly& g, int order);

struct CrossCheck {
  int k = 0;
  std::string label;
  bool pass = false;
  std::string detail;
};

struct OracleVerdict {
  Scalar kappa;  // c_1 antisymmetrized = kappa * (B_1 antisymmetrized)
  bool opposite = false;
  std::vector<CrossCheck> checks;
  bool all_pass() const;
  // All checks of order <= k passed.
  bool pass_through(int k) const;
};

// Compares oracle coefficients with the Fedosov star product of a disc frame.
// k = 1 is compared after antisymmetrization, fitting kappa at the first point;
// for k >= 2 full coefficients are compared against kappa^k B_k.
OracleVerdict cross_validate(const WeightedSpace& s, fq::FedosovSystem& sys, const fq::StarProduct& star,
                             const std::vector<std::pair<Poly, Poly>>& pairs,
                             const std::vector<Scalar>& points, bool opposite);

}  // namespace bdq::bt
