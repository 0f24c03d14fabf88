#pragma once

#include <string>
#include <vector>

#include "bdq/alternating.hpp"

namespace bdq::cr {

// Domain {psi > 0} in C^{n+1} with a real polynomial defining function over the
// alphabet z_0..z_n, zb_0..zb_n.
struct Domain {
  int n = 0;
  AlphabetPtr alpha;
  Poly psi;
  std::string name;

  std::size_t z(int j) const { return std::size_t(j); }
  std::size_t zb(int j) const { return std::size_t(n + 1 + j); }
  int dim() const { return 2 * n + 2; }
};

Domain ball(int n);
// Parses psi; throws "invalid_psi" when it is not fixed by conjugation.
Domain custom_domain(int n, const std::string& psi_text);
// Point of the alphabet from holomorphic coordinates (zb_j = conj(z_j)).
std::vector<Scalar> point_from(const std::vector<Scalar>& z);
// Rational points of the unit sphere in C^2 by inverse stereographic projection.
std::vector<Scalar> sphere_point(const mpq_class& t1, const mpq_class& t2, const mpq_class& t3);

enum class ChartKind { boundary, interior };

// Frame e_0..e_n = u_0..u_n spanning E^{1,0} and e_{n+1}..e_{2n+1} = u'_0..u'_n
// spanning E^{0,1}; the anchor row of e_a holds its components on
// d/dz_0..d/dz_n, d/dzb_0..d/dzb_n. For interior charts the frame is the
// coordinate frame.
struct Algebroid {
  Domain domain;
  ChartKind kind = ChartKind::boundary;
  std::string locus;
  Matrix<RatFunc> v;        // rows v_0..v_n, vb_0..vb_n (unscaled fields)
  Matrix<RatFunc> anchor;   // rows e_a
  Matrix<RatFunc> coframe;  // inverse of anchor: coordinate field d_c = sum_a coframe[c][a] e_a
  // c[a][b][k]: [e_a, e_b] = sum_k c[a][b][k] e_k
  std::vector<std::vector<std::vector<RatFunc>>> structure;

  int n() const { return domain.n; }
  int rank() const { return domain.dim(); }
  bool holomorphic(int a) const { return a <= domain.n; }
  const Poly& psi() const { return domain.psi; }
  // rho(e_a) f
  RatFunc act(int a, const RatFunc& f) const;
  // Components of a coordinate vector field in the frame.
  std::vector<RatFunc> expand(const std::vector<RatFunc>& field) const;
};

Algebroid build_frame(const Domain& d, ChartKind kind = ChartKind::boundary);
// Frame e'_a = sum_b p[a][b] e_b; p should preserve the two summands.
Algebroid change_frame(const Algebroid& e, const Matrix<RatFunc>& p);

struct RegularityReport {
  bool regular = true;
  std::vector<std::string> failures;
};

RegularityReport check_regularity(const Algebroid& e);

// Cartan differential on E-forms: d = sum_a theta^a ^ rho(e_a) + sum_k d(theta^k) ^ i_{e_k}.
Alternating e_differential(const Algebroid& e, const Alternating& form);

// ddbar psi = a g0^gb0 + b_k g0^gb_k + bb_k g_k^gb0 + c_jk g_j^gb_k (j, k >= 1).
struct HessianDecomposition {
  RatFunc a;
  std::vector<RatFunc> b;
  std::vector<RatFunc> bbar;
  Matrix<RatFunc> c;
};
HessianDecomposition hessian_decomposition(const Algebroid& e);

// Coordinate (1,1)-form sum h_{pq} dz^p ^ dzb^q from a hermitian coefficient matrix.
Alternating coordinate_11_form(const Domain& d, const Matrix<RatFunc>& h);
// Matrix of ddbar log f: (f f_{pq} - f_p f_q) / f^2.
Matrix<RatFunc> ddbar_log(const Domain& d, const RatFunc& f);
Matrix<RatFunc> ddbar(const Domain& d, const RatFunc& f);
// Pullback of a coordinate 2-form along the anchor.
Alternating pullback(const Algebroid& e, const Alternating& coordinate_form);
// Pushforward of an E-bivector along the anchor.
Alternating pushforward(const Algebroid& e, const Alternating& bivector);

// (1/i) sigma = ddbar(-log psi) as a coordinate form and pulled back to E.
Alternating sigma_coordinate(const Domain& d);
Alternating pullback_sigma(const Algebroid& e);
// The same form assembled from the hessian decomposition.
Alternating sigma_from_decomposition(const Algebroid& e, const HessianDecomposition& h);
// omega = i (1/i) sigma, the E-symplectic form.
Alternating symplectic_form(const Algebroid& e);
// E-bivector inverse to omega; throws "degenerate" on Levi-degenerate charts.
Alternating invert_to_poisson(const Algebroid& e);

// (1/2) J^* d psi = (i/2)(d psi - dbar psi) on coordinates.
Alternating half_j_dpsi(const Domain& d);

struct LeviReport {
  std::vector<Scalar> minors;
  bool negative_definite = false;
  bool degenerate = false;
};
Matrix<RatFunc> levi_matrix(const Algebroid& e);
LeviReport levi_at(const Algebroid& e, const std::vector<Scalar>& point);

// Checks ((1/i) sigma)^{n+1} psi^{n+2} = psi (-ddbar psi)^{n+1} + (n+1) (-ddbar psi)^n ^ dpsi ^ dbar psi.
// The variant without the binomial factor (n+1) is reported separately.
struct VolumeReport {
  bool holds = false;
  Alternating residual;
  Alternating boundary_term;  // (-ddbar psi)^n ^ dpsi ^ dbar psi
  bool holds_without_binomial = false;
};
VolumeReport volume_identity_check(const Domain& d);

// Hermitian hessian of -log psi in the basis (v, vb) for boundary charts and in
// the coordinate basis for interior charts.
Matrix<RatFunc> oka_matrix(const Algebroid& e);
struct OkaReport {
  Scalar psi_value;
  std::vector<Scalar> minors;
  bool positive_definite = false;
};
OkaReport oka_psh_check(const Algebroid& e, const std::vector<Scalar>& point);

struct CanonicalForm {
  RatFunc nu0;
  Alternating coordinate;  // (1/i) omega_can on coordinates
  Alternating pulled_back; // (1/i) omega_can on E
};
CanonicalForm canonical_form(const Algebroid& e);

// beta[j][k] = omega(u_j, u'_k) / i.
Matrix<RatFunc> pairing_beta(const Algebroid& e);
Matrix<RatFunc> pairing_beta_from_decomposition(const Algebroid& e, const HessianDecomposition& h);

// theta ^ (d theta)^n on a coordinate chart.
Alternating contact_volume(const Alternating& theta, const Chart& chart, int n);

}  // namespace bdq::cr
