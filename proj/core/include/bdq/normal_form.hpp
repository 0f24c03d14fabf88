#pragma once

#include <functional>
#include <vector>

#include "bdq/alternating.hpp"

namespace bdq::nf {

// Coordinates u, q^1..q^n, p_1..p_n, r on M x R+ (generator order of the chart),
// plus a time parameter t that is not a chart coordinate.
struct ContactChart {
  int n = 0;
  AlphabetPtr alpha;
  Chart chart;

  int u() const { return 0; }
  int q(int j) const { return 1 + j; }
  int p(int j) const { return 1 + n + j; }
  int r() const { return 2 * n + 1; }
  int dim() const { return 2 * n + 2; }
  RatFunc coord(int i) const { return chart.coordinate(i); }
  RatFunc time() const { return RatFunc(Poly::var(alpha, "t")); }
  std::size_t time_index() const { return alpha->index("t"); }
  Alternating d(int i) const { return Alternating::basis(dim(), i); }
  // Same generator as d(i); named for use with multivector fields.
  Alternating partial(int i) const { return Alternating::basis(dim(), i); }
};

ContactChart contact_chart(int n);

// du + sum p_j dq^j
Alternating standard_contact_form(const ContactChart& c);
// r[(r d_r + sum p_j d_pj) ^ d_u + sum d_qj ^ d_pj]
Alternating lebrun_bivector(const ContactChart& c);
// d(theta / r) for a 1-form theta on the chart (default: the standard form).
Alternating blown_up_form(const ContactChart& c, const Alternating& theta);
Alternating colebrun_form(const ContactChart& c);

// f_t d_u with f_t = -r a / (1 + r t da/du); throws when the denominator is
// identically zero.
Alternating moser_local_field(const ContactChart& c, const RatFunc& a);

struct Decomposition {
  RatFunc a;
  RatFunc b;
};
// Solves theta1 = theta0 + a dr + b r theta0; throws "decomposition_failed".
Decomposition decompose(const ContactChart& c, const Alternating& theta0, const Alternating& theta1);
// Vector field X_t with X_t -| d(theta_t / r) = -(a/r) dr + b theta0, theta_t the
// linear interpolation.
Alternating global_moser_field(const ContactChart& c, const Alternating& theta0, const Alternating& theta1);

// [xi, pi] - pi; zero exactly when xi witnesses exactness of pi.
Alternating exactness_test(const ContactChart& c, const Alternating& pi, const Alternating& xi);

struct SampleRow {
  std::vector<double> point;
  std::vector<double> image;
  double residual = 0;
};

struct SampledDiffeo {
  std::vector<SampleRow> rows;
  double step = 0;
  int order = 4;
  int refinements = 0;
  double max_residual = 0;
  double fd_step = 1e-5;
};

// 10 x 10 grid with u in [-1, 1], r in (0, 1/4]; remaining coordinates 1/2.
std::vector<std::vector<double>> default_grid(const ContactChart& c, int nu = 10, int nr = 10);

// Time-one map of the local Moser field (classical RK4, fixed step).
std::vector<double> moser_flow(const ContactChart& c, const RatFunc& a, const std::vector<double>& x, double h);

// Integrates the normalization for theta1 = theta0 + a dr over the grid and
// reports max |r^2 (phi^* d(theta1/r) - d(theta0/r))| per point. The step is
// halved up to `max_refinements` times until the residual is below tol; throws
// "tolerance_not_met" otherwise.
SampledDiffeo integrate_normalization(const ContactChart& c, const RatFunc& a,
                                      const std::vector<std::vector<double>>& grid, double h,
                                      double tol, int max_refinements = 3);

// Richardson ratios |phi_h - phi_{h/2}| / |phi_{h/2} - phi_{h/4}| for successive
// halvings starting at h0; values near 16 indicate fourth order.
std::vector<double> richardson_ratios(const ContactChart& c, const RatFunc& a, const std::vector<double>& x,
                                      double h0, int levels);

}  // namespace bdq::nf
