#pragma once

#include <string>
#include <vector>

#include "bdq/algebroid.hpp"

namespace bdq::pk {

using Tensor3 = std::vector<std::vector<std::vector<RatFunc>>>;
using Tensor4 = std::vector<Tensor3>;

Tensor3 zero_tensor3(std::size_t dim);
Tensor4 zero_tensor4(std::size_t dim);
bool is_zero(const Tensor3& t);
bool is_zero(const Tensor4& t);

// Frame e_0..e_n = xi_0..xi_n (E^{1,0}) and e_{n+1}.. = xi'_0..xi'_n (E^{0,1}) with
// a symplectic form omega for which both summands are lagrangian.
struct ParaKahlerData {
  cr::Algebroid e;
  Matrix<RatFunc> omega;    // omega(e_a, e_b)
  Matrix<RatFunc> pairing;  // omega_{ij} = omega(xi_i, xi'_j)
  Matrix<RatFunc> pi;       // inverse of pairing

  int n() const { return e.n(); }
  int rank() const { return e.rank(); }
  std::size_t hol(int i) const { return std::size_t(i); }
  std::size_t anti(int i) const { return std::size_t(n() + 1 + i); }
  // [xi_i, xi'_j] component along xi'_k.
  const RatFunc& m_prime(int i, int j, int k) const { return e.structure[hol(i)][anti(j)][anti(k)]; }
  // [xi_i, xi'_j] component along xi_k.
  const RatFunc& m(int i, int j, int k) const { return e.structure[hol(i)][anti(j)][hol(k)]; }
};

// Throws "not_lagrangian", "not_closed" or "degenerate".
ParaKahlerData para_kahler_data(const cr::Algebroid& e, const Alternating& omega);
// omega = i sigma of the algebroid.
ParaKahlerData para_kahler_data(const cr::Algebroid& e);

// Gamma[a][b][c]: nabla_{e_a} e_b = sum_c Gamma[a][b][c] e_c.
struct ConnectionCoefficients {
  Tensor3 gamma;
};

// E^{1,0}-connection on E^{0,1}: bott[i][j][k] is the xi'_k component of p^{0,1}[xi_i, xi'_j].
Tensor3 quotient_bott(const ParaKahlerData& d);
// R(xi_i, xi_l) xi'_j along xi'_k, indexed [i][l][j][k].
Tensor4 bott_curvature(const ParaKahlerData& d, const Tensor3& bott);

ConnectionCoefficients build_connection(const ParaKahlerData& d);

// T[a][b][c]: components of nabla_a e_b - nabla_b e_a - [e_a, e_b].
Tensor3 torsion(const ConnectionCoefficients& c, const ParaKahlerData& d);
// rho(e_a) g_{bc} - g(nabla_a e_b, e_c) - g(e_b, nabla_a e_c) for a bilinear form g.
Tensor3 compatibility_residual(const ConnectionCoefficients& c, const ParaKahlerData& d,
                               const Matrix<RatFunc>& g);
Tensor3 compatibility_residual(const ConnectionCoefficients& c, const ParaKahlerData& d);
// Symmetric pairing g(xi_i, xi'_j) = g(xi'_j, xi_i) = omega_{ij}, zero on each summand.
Matrix<RatFunc> symmetric_pairing(const ParaKahlerData& d);

struct CurvatureReport {
  Tensor4 r;  // R(e_a, e_b) e_c = sum_f r[a][b][c][f] e_f
  bool bidegree_11 = true;
  std::vector<std::string> violations;
};
CurvatureReport curvature(const ConnectionCoefficients& c, const ParaKahlerData& d);

// Cyclic sum over (a, b, c) of (nabla_a R)(e_b, e_c) e_d, indexed [a][b][c][d][f].
std::vector<Tensor4> bianchi_residual(const ConnectionCoefficients& c, const ParaKahlerData& d,
                                      const Tensor4& r);

}  // namespace bdq::pk
