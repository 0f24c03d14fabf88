#include "bdq/normal_form.hpp"

#include <cmath>
#include <sstream>

namespace bdq::nf {

ContactChart contact_chart(int n) {
  if (n < 0) throw Error("invalid_argument", "n must be nonnegative");
  std::vector<std::string> names{"u"};
  for (int j = 1; j <= n; ++j) names.push_back("q" + std::to_string(j));
  for (int j = 1; j <= n; ++j) names.push_back("p" + std::to_string(j));
  names.push_back("r");
  std::vector<std::string> coords = names;
  names.push_back("t");
  ContactChart c;
  c.n = n;
  c.alpha = make_alphabet(names);
  c.chart = Chart::named(c.alpha, coords);
  return c;
}

Alternating standard_contact_form(const ContactChart& c) {
  Alternating theta = c.d(c.u());
  for (int j = 0; j < c.n; ++j) theta += c.d(c.q(j)) * c.coord(c.p(j));
  return theta;
}

Alternating lebrun_bivector(const ContactChart& c) {
  RatFunc r = c.coord(c.r());
  Alternating radial = c.partial(c.r()) * r;
  for (int j = 0; j < c.n; ++j) radial += c.partial(c.p(j)) * c.coord(c.p(j));
  Alternating pi = wedge(radial, c.partial(c.u()));
  for (int j = 0; j < c.n; ++j) pi += wedge(c.partial(c.q(j)), c.partial(c.p(j)));
  return pi * r;
}

Alternating blown_up_form(const ContactChart& c, const Alternating& theta) {
  RatFunc inv_r = RatFunc(1) / c.coord(c.r());
  return exterior_derivative(theta * inv_r, c.chart);
}

Alternating colebrun_form(const ContactChart& c) { return blown_up_form(c, standard_contact_form(c)); }

Alternating moser_local_field(const ContactChart& c, const RatFunc& a) {
  RatFunc r = c.coord(c.r());
  RatFunc den = RatFunc(1) + r * c.time() * a.derivative(c.chart.vars[std::size_t(c.u())]);
  if (den.is_zero()) throw Error("singular_field", "1 + r t da/du vanishes identically");
  return c.partial(c.u()) * (-(r * a) / den);
}

Decomposition decompose(const ContactChart& c, const Alternating& theta0, const Alternating& theta1) {
  Alternating diff = theta1 - theta0;
  Mask dr = Mask(1) << c.r(), du = Mask(1) << c.u();
  RatFunc r = c.coord(c.r());
  RatFunc t0u = theta0.component(du);
  if (t0u.is_zero()) throw Error("decomposition_failed", "theta0 has no du component");
  Decomposition out{diff.component(dr), diff.component(du) / (r * t0u)};
  const Poly& rp = r.numerator();
  if (!out.a.is_psi_regular(rp) || !out.b.is_psi_regular(rp))
    throw Error("decomposition_failed", "a or b is singular along r = 0");
  Alternating rest = diff - c.d(c.r()) * out.a - theta0 * (out.b * r);
  if (!rest.is_zero())
    throw Error("decomposition_failed", "theta1 - theta0 - a dr - b r theta0 = " + rest.to_string());
  return out;
}

Alternating global_moser_field(const ContactChart& c, const Alternating& theta0, const Alternating& theta1) {
  Decomposition dec = decompose(c, theta0, theta1);
  RatFunc r = c.coord(c.r());
  RatFunc t = c.time();
  Alternating theta_t = theta0 + (c.d(c.r()) * dec.a + theta0 * (dec.b * r)) * t;
  Alternating rhs = c.d(c.r()) * (-(dec.a / r)) + theta0 * dec.b;
  Matrix<RatFunc> inv = inverse_or_throw(blown_up_form(c, theta_t).to_matrix(), "d(theta_t/r)");
  Alternating x(c.dim());
  for (int j = 0; j < c.dim(); ++j) {
    RatFunc comp;
    for (const auto& [m, coeff] : rhs.terms()) {
      int i = mask_indices(m).front();
      comp += coeff * inv[std::size_t(i)][std::size_t(j)];
    }
    x.add_term(Mask(1) << j, comp);
  }
  return x;
}

Alternating exactness_test(const ContactChart& c, const Alternating& pi, const Alternating& xi) {
  return schouten(xi, pi, c.chart) - pi;
}

std::vector<std::vector<double>> default_grid(const ContactChart& c, int nu, int nr) {
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < nu; ++i)
    for (int k = 1; k <= nr; ++k) {
      std::vector<double> x(std::size_t(c.dim()), 0.5);
      x[std::size_t(c.u())] = nu > 1 ? -1.0 + 2.0 * i / (nu - 1) : 0.0;
      x[std::size_t(c.r())] = 0.25 * k / nr;
      grid.push_back(std::move(x));
    }
  return grid;
}

namespace {

struct FlowData {
  RatFunc a;
  RatFunc a_u;
};

std::vector<double> with_time(const ContactChart& c, const std::vector<double>& x, double t) {
  std::vector<double> v = x;
  v.resize(c.alpha->size(), 0.0);
  v[c.time_index()] = t;
  return v;
}

double field(const ContactChart& c, const FlowData& fd, std::vector<double>& x, double u, double t) {
  x[std::size_t(c.u())] = u;
  auto v = with_time(c, x, t);
  double r = x[std::size_t(c.r())];
  double den = 1.0 + r * t * fd.a_u.evaluate_double(v);
  if (std::abs(den) < 1e-12) throw Error("singular_field", "1 + r t da/du vanishes along the flow");
  return -r * fd.a.evaluate_double(v) / den;
}

std::vector<double> flow(const ContactChart& c, const FlowData& fd, const std::vector<double>& x0, double h) {
  int steps = int(std::lround(1.0 / h));
  double dt = 1.0 / steps;
  std::vector<double> x = x0;
  double u = x0[std::size_t(c.u())];
  for (int s = 0; s < steps; ++s) {
    double t = s * dt;
    double k1 = field(c, fd, x, u, t);
    double k2 = field(c, fd, x, u + 0.5 * dt * k1, t + 0.5 * dt);
    double k3 = field(c, fd, x, u + 0.5 * dt * k2, t + 0.5 * dt);
    double k4 = field(c, fd, x, u + dt * k3, t + dt);
    u += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  x[std::size_t(c.u())] = u;
  return x;
}

FlowData flow_data(const ContactChart& c, const RatFunc& a) {
  return {a, a.derivative(c.chart.vars[std::size_t(c.u())])};
}

std::vector<std::vector<double>> eval_matrix(const ContactChart& c, const Matrix<RatFunc>& m,
                                             const std::vector<double>& x) {
  auto v = with_time(c, x, 0.0);
  std::vector<std::vector<double>> out(m.size(), std::vector<double>(m.size(), 0.0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m[i][j].is_zero()) out[i][j] = m[i][j].evaluate_double(v);
  return out;
}

}  // namespace

std::vector<double> moser_flow(const ContactChart& c, const RatFunc& a, const std::vector<double>& x, double h) {
  return flow(c, flow_data(c, a), x, h);
}

SampledDiffeo integrate_normalization(const ContactChart& c, const RatFunc& a,
                                      const std::vector<std::vector<double>>& grid, double h,
                                      double tol, int max_refinements) {
  Alternating theta0 = standard_contact_form(c);
  Alternating theta1 = theta0 + c.d(c.r()) * a;
  Matrix<RatFunc> omega0 = blown_up_form(c, theta0).to_matrix();
  Matrix<RatFunc> omega1 = blown_up_form(c, theta1).to_matrix();
  FlowData fd = flow_data(c, a);
  const std::size_t dim = std::size_t(c.dim());

  SampledDiffeo out;
  for (int attempt = 0; attempt <= max_refinements; ++attempt) {
    out.rows.clear();
    out.step = h;
    out.refinements = attempt;
    out.max_residual = 0;
    for (const auto& x : grid) {
      SampleRow row{x, flow(c, fd, x, h), 0.0};
      std::vector<std::vector<double>> jac(dim, std::vector<double>(dim));
      for (std::size_t j = 0; j < dim; ++j) {
        auto xp = x, xm = x;
        xp[j] += out.fd_step;
        xm[j] -= out.fd_step;
        auto fp = flow(c, fd, xp, h), fm = flow(c, fd, xm, h);
        for (std::size_t i = 0; i < dim; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * out.fd_step);
      }
      auto w1 = eval_matrix(c, omega1, row.image);
      auto w0 = eval_matrix(c, omega0, x);
      double r2 = x[std::size_t(c.r())] * x[std::size_t(c.r())];
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
          double pull = 0;
          for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t l = 0; l < dim; ++l) pull += jac[i][j] * w1[i][l] * jac[l][k];
          row.residual = std::max(row.residual, std::abs(r2 * (pull - w0[j][k])));
        }
      out.max_residual = std::max(out.max_residual, row.residual);
      out.rows.push_back(std::move(row));
    }
    if (out.max_residual < tol) return out;
    h /= 2;
  }
  std::ostringstream msg;
  msg << "pullback residual " << std::scientific << out.max_residual << " exceeds " << tol
      << " after " << max_refinements << " refinements";
  throw Error("tolerance_not_met", msg.str());
}

std::vector<double> richardson_ratios(const ContactChart& c, const RatFunc& a, const std::vector<double>& x,
                                      double h0, int levels) {
  FlowData fd = flow_data(c, a);
  std::vector<double> u;
  double h = h0;
  for (int k = 0; k < levels + 2; ++k, h /= 2) u.push_back(flow(c, fd, x, h)[std::size_t(c.u())]);
  std::vector<double> ratios;
  for (int k = 0; k < levels; ++k)
    ratios.push_back(std::abs(u[std::size_t(k)] - u[std::size_t(k) + 1]) /
                     std::abs(u[std::size_t(k) + 1] - u[std::size_t(k) + 2]));
  return ratios;
}

}  // namespace bdq::nf
