#include "bdq/algebroid.hpp"

namespace bdq::cr {

namespace {

RatFunc conj_coeff(const RatFunc& f) { return f.conjugate(); }

bool is_positive(const Scalar& s) { return s.is_real() && sgn(s.re()) > 0; }

Matrix<RatFunc> apply_rows(const Matrix<RatFunc>& rows, const Matrix<RatFunc>& m) {
  return rows * m * transpose(rows);
}

}  // namespace

Domain ball(int n) {
  if (n < 0) throw Error("invalid_argument", "n must be nonnegative");
  Domain d{n, complex_alphabet(n), Poly(), "ball"};
  Poly psi(d.alpha, Scalar(1));
  for (int j = 0; j <= n; ++j) psi -= Poly::var(d.alpha, d.z(j)) * Poly::var(d.alpha, d.zb(j));
  d.psi = psi;
  return d;
}

Domain custom_domain(int n, const std::string& psi_text) {
  if (n < 0) throw Error("invalid_argument", "n must be nonnegative");
  Domain d{n, complex_alphabet(n), Poly(), "custom"};
  d.psi = parse_poly(psi_text, d.alpha);
  if (d.psi.conjugate() != d.psi) throw Error("invalid_psi", "psi is not real under conjugation");
  if (d.psi.is_constant()) throw Error("invalid_psi", "psi is constant");
  return d;
}

std::vector<Scalar> point_from(const std::vector<Scalar>& z) {
  std::vector<Scalar> p = z;
  for (const auto& s : z) p.push_back(s.conj());
  return p;
}

std::vector<Scalar> sphere_point(const mpq_class& t1, const mpq_class& t2, const mpq_class& t3) {
  mpq_class s = t1 * t1 + t2 * t2 + t3 * t3;
  mpq_class den = s + 1;
  return {Scalar(mpq_class(2 * t1 / den), mpq_class(2 * t2 / den)),
          Scalar(mpq_class(2 * t3 / den), mpq_class((s - 1) / den))};
}

RatFunc Algebroid::act(int a, const RatFunc& f) const {
  RatFunc out;
  const auto& row = anchor[std::size_t(a)];
  for (std::size_t c = 0; c < row.size(); ++c)
    if (!row[c].is_zero()) out += row[c] * f.derivative(c);
  return out;
}

std::vector<RatFunc> Algebroid::expand(const std::vector<RatFunc>& field) const {
  std::vector<RatFunc> out(static_cast<std::size_t>(rank()));
  for (std::size_t c = 0; c < field.size(); ++c) {
    if (field[c].is_zero()) continue;
    for (std::size_t a = 0; a < out.size(); ++a)
      if (!coframe[c][a].is_zero()) out[a] += field[c] * coframe[c][a];
  }
  return out;
}

static void complete_frame(Algebroid& e) {
  const std::size_t dim = e.anchor.size();
  e.coframe = inverse_or_throw(e.anchor, "anchor");
  e.structure.assign(dim, std::vector<std::vector<RatFunc>>(dim, std::vector<RatFunc>(dim)));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      std::vector<RatFunc> br(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        br[c] = e.act(int(a), e.anchor[b][c]) - e.act(int(b), e.anchor[a][c]);
      }
      auto coeffs = e.expand(br);
      for (std::size_t k = 0; k < dim; ++k) {
        e.structure[a][b][k] = coeffs[k];
        e.structure[b][a][k] = -coeffs[k];
      }
    }
}

Algebroid change_frame(const Algebroid& e, const Matrix<RatFunc>& p) {
  Algebroid f;
  f.domain = e.domain;
  f.kind = e.kind;
  f.locus = e.locus;
  f.v = e.v;
  f.anchor = p * e.anchor;
  complete_frame(f);
  return f;
}

Algebroid build_frame(const Domain& d, ChartKind kind) {
  const std::size_t dim = std::size_t(d.dim());
  const int n = d.n;
  Algebroid e;
  e.domain = d;
  e.kind = kind;
  if (kind == ChartKind::interior) {
    e.locus = "interior: psi != 0";
    e.v = identity_matrix<RatFunc>(dim);
    e.anchor = e.v;
  } else {
    Poly p0 = d.psi.derivative(d.zb(0));
    if (p0.is_zero()) throw Error("critical_chart", "d psi / d zb_0 vanishes identically");
    e.locus = "boundary chart: " + p0.to_string() + " != 0";
    RatFunc psi(d.psi);
    RatFunc inv0 = RatFunc(1) / RatFunc(p0);
    e.v = zero_matrix<RatFunc>(dim, dim);
    auto& vb0 = e.v[std::size_t(n + 1)];
    vb0[d.zb(0)] = inv0;
    for (int j = 1; j <= n; ++j) {
      auto& row = e.v[std::size_t(n + 1 + j)];
      row[d.zb(j)] = RatFunc(1);
      row[d.zb(0)] = -RatFunc(d.psi.derivative(d.zb(j))) * inv0;
    }
    for (int j = 0; j <= n; ++j)
      for (int c = 0; c <= n; ++c)
        e.v[std::size_t(j)][d.z(c)] = conj_coeff(e.v[std::size_t(n + 1 + j)][d.zb(c)]);
    e.anchor = e.v;
    for (int j = 0; j <= n; ++j)
      for (auto& x : e.anchor[std::size_t(j)]) x *= psi;
    for (auto& x : e.anchor[std::size_t(n + 1)]) x *= psi;
  }
  complete_frame(e);
  return e;
}

RegularityReport check_regularity(const Algebroid& e) {
  RegularityReport rep;
  const int r = e.rank();
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int k = 0; k < r; ++k)
        if (!e.structure[std::size_t(a)][std::size_t(b)][std::size_t(k)].is_psi_regular(e.psi())) {
          rep.regular = false;
          rep.failures.push_back("c^" + std::to_string(k) + "_" + std::to_string(a) + std::to_string(b));
        }
  return rep;
}

Alternating e_differential(const Algebroid& e, const Alternating& form) {
  const int r = e.rank();
  Alternating out(r);
  for (int a = 0; a < r; ++a) {
    Alternating da = form.map([&e, a](const RatFunc& f) { return e.act(a, f); });
    out += wedge(Alternating::basis(r, a), da);
  }
  for (int k = 0; k < r; ++k) {
    Alternating contracted = interior(k, form);
    if (contracted.is_zero()) continue;
    Alternating dtheta(r);
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        dtheta.add_term(mask_of({a, b}), -e.structure[std::size_t(a)][std::size_t(b)][std::size_t(k)]);
    out += wedge(dtheta, contracted);
  }
  return out;
}

Matrix<RatFunc> ddbar(const Domain& d, const RatFunc& f) {
  auto h = zero_matrix<RatFunc>(std::size_t(d.n + 1), std::size_t(d.n + 1));
  for (int p = 0; p <= d.n; ++p) {
    RatFunc fp = f.derivative(d.z(p));
    for (int q = 0; q <= d.n; ++q) h[std::size_t(p)][std::size_t(q)] = fp.derivative(d.zb(q));
  }
  return h;
}

Matrix<RatFunc> ddbar_log(const Domain& d, const RatFunc& f) {
  auto h = ddbar(d, f);
  RatFunc inv2 = RatFunc(1) / (f * f);
  for (int p = 0; p <= d.n; ++p)
    for (int q = 0; q <= d.n; ++q) {
      auto& x = h[std::size_t(p)][std::size_t(q)];
      x = (f * x - f.derivative(d.z(p)) * f.derivative(d.zb(q))) * inv2;
    }
  return h;
}

HessianDecomposition hessian_decomposition(const Algebroid& e) {
  if (e.kind != ChartKind::boundary) throw Error("invalid_chart", "hessian decomposition needs a boundary chart");
  const Domain& d = e.domain;
  auto h = ddbar(d, RatFunc(d.psi));
  auto pair = [&](int j, int k) {
    RatFunc s;
    const auto& x = e.v[std::size_t(j)];
    const auto& y = e.v[std::size_t(d.n + 1 + k)];
    for (int p = 0; p <= d.n; ++p) {
      if (x[d.z(p)].is_zero()) continue;
      for (int q = 0; q <= d.n; ++q)
        if (!y[d.zb(q)].is_zero()) s += h[std::size_t(p)][std::size_t(q)] * x[d.z(p)] * y[d.zb(q)];
    }
    return s;
  };
  HessianDecomposition out;
  out.a = pair(0, 0);
  out.c = zero_matrix<RatFunc>(std::size_t(d.n), std::size_t(d.n));
  for (int k = 1; k <= d.n; ++k) {
    out.b.push_back(pair(0, k));
    out.bbar.push_back(pair(k, 0));
    for (int j = 1; j <= d.n; ++j) out.c[std::size_t(j - 1)][std::size_t(k - 1)] = pair(j, k);
  }
  return out;
}

Alternating coordinate_11_form(const Domain& d, const Matrix<RatFunc>& h) {
  Alternating w(d.dim());
  for (int p = 0; p <= d.n; ++p)
    for (int q = 0; q <= d.n; ++q)
      w.add_term(mask_of({int(d.z(p)), int(d.zb(q))}), h[std::size_t(p)][std::size_t(q)]);
  return w;
}

Alternating pullback(const Algebroid& e, const Alternating& coordinate_form) {
  return Alternating::from_matrix(apply_rows(e.anchor, coordinate_form.to_matrix()));
}

Alternating pushforward(const Algebroid& e, const Alternating& bivector) {
  return Alternating::from_matrix(apply_rows(transpose(e.anchor), bivector.to_matrix()));
}

Alternating sigma_coordinate(const Domain& d) {
  auto g = ddbar_log(d, RatFunc(d.psi));
  for (auto& row : g)
    for (auto& x : row) x = -x;
  return coordinate_11_form(d, g);
}

Alternating pullback_sigma(const Algebroid& e) { return pullback(e, sigma_coordinate(e.domain)); }

Alternating sigma_from_decomposition(const Algebroid& e, const HessianDecomposition& h) {
  const int n = e.n(), r = e.rank();
  RatFunc psi(e.psi());
  Alternating s(r);
  auto th = [](int j) { return j; };
  auto thp = [n](int k) { return n + 1 + k; };
  s.add_term(mask_of({th(0), thp(0)}), RatFunc(1) - psi * h.a);
  for (int k = 1; k <= n; ++k) {
    s.add_term(mask_of({th(0), thp(k)}), -h.b[std::size_t(k - 1)]);
    s.add_term(mask_of({th(k), thp(0)}), -(h.bbar[std::size_t(k - 1)] * psi));
    for (int j = 1; j <= n; ++j) s.add_term(mask_of({th(j), thp(k)}), -h.c[std::size_t(j - 1)][std::size_t(k - 1)]);
  }
  return s;
}

Alternating symplectic_form(const Algebroid& e) { return pullback_sigma(e) * RatFunc(Scalar::i()); }

Alternating invert_to_poisson(const Algebroid& e) { return invert_two_tensor(symplectic_form(e)); }

Alternating half_j_dpsi(const Domain& d) {
  Alternating w(d.dim());
  RatFunc psi(d.psi);
  Scalar half_i = Scalar::i() * Scalar::rational(1, 2);
  for (int p = 0; p <= d.n; ++p) {
    w.add_term(Mask(1) << d.z(p), psi.derivative(d.z(p)) * RatFunc(half_i));
    w.add_term(Mask(1) << d.zb(p), -(psi.derivative(d.zb(p)) * RatFunc(half_i)));
  }
  return w;
}

Matrix<RatFunc> levi_matrix(const Algebroid& e) { return hessian_decomposition(e).c; }

LeviReport levi_at(const Algebroid& e, const std::vector<Scalar>& point) {
  Matrix<RatFunc> c = levi_matrix(e);
  Matrix<Scalar> m(c.size());
  for (std::size_t j = 0; j < c.size(); ++j)
    for (const auto& x : c[j]) m[j].push_back(x.isolate(e.psi()).evaluate(point));
  LeviReport rep;
  rep.minors = leading_minors(m);
  rep.negative_definite = true;
  for (std::size_t k = 0; k < rep.minors.size(); ++k) {
    Scalar signed_minor = (k % 2 == 0) ? -rep.minors[k] : rep.minors[k];
    rep.negative_definite = rep.negative_definite && is_positive(signed_minor);
  }
  rep.degenerate = !rep.minors.empty() && rep.minors.back().is_zero();
  return rep;
}

VolumeReport volume_identity_check(const Domain& d) {
  RatFunc psi(d.psi);
  Alternating sigma = sigma_coordinate(d);
  auto h = ddbar(d, psi);
  for (auto& row : h)
    for (auto& x : row) x = -x;
  Alternating minus_ddbar = coordinate_11_form(d, h);
  Alternating dpsi(d.dim()), dbpsi(d.dim());
  for (int p = 0; p <= d.n; ++p) {
    dpsi.add_term(Mask(1) << d.z(p), psi.derivative(d.z(p)));
    dbpsi.add_term(Mask(1) << d.zb(p), psi.derivative(d.zb(p)));
  }
  VolumeReport rep;
  Alternating lhs = wedge_power(sigma, d.n + 1) * psi.pow(d.n + 2);
  rep.boundary_term = wedge(wedge_power(minus_ddbar, d.n), wedge(dpsi, dbpsi));
  Alternating first = wedge_power(minus_ddbar, d.n + 1) * psi;
  rep.residual = lhs - first - rep.boundary_term * RatFunc(long(d.n + 1));
  rep.holds = rep.residual.is_zero();
  rep.holds_without_binomial = (lhs - first - rep.boundary_term).is_zero();
  return rep;
}

Matrix<RatFunc> oka_matrix(const Algebroid& e) {
  const Domain& d = e.domain;
  auto g = ddbar_log(d, RatFunc(d.psi));
  for (auto& row : g)
    for (auto& x : row) x = -x;
  if (e.kind == ChartKind::interior) return g;
  const std::size_t m = std::size_t(d.n + 1);
  auto out = zero_matrix<RatFunc>(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      for (int p = 0; p <= d.n; ++p)
        for (int q = 0; q <= d.n; ++q) {
          const RatFunc& x = e.v[j][d.z(p)];
          const RatFunc& y = e.v[std::size_t(d.n + 1) + k][d.zb(q)];
          if (!x.is_zero() && !y.is_zero()) out[j][k] += g[std::size_t(p)][std::size_t(q)] * x * y;
        }
  return out;
}

OkaReport oka_psh_check(const Algebroid& e, const std::vector<Scalar>& point) {
  OkaReport rep;
  rep.psi_value = e.psi().evaluate(point);
  if (rep.psi_value.is_zero()) throw Error("on_boundary", "the hessian of -log psi blows up where psi = 0");
  Matrix<RatFunc> g = oka_matrix(e);
  Matrix<Scalar> m(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    for (const auto& x : g[j]) m[j].push_back(x.evaluate(point));
  rep.minors = leading_minors(m);
  rep.positive_definite = true;
  for (const auto& s : rep.minors) rep.positive_definite = rep.positive_definite && is_positive(s);
  return rep;
}

CanonicalForm canonical_form(const Algebroid& e) {
  const Domain& d = e.domain;
  RatFunc psi(d.psi);
  const std::size_t m = std::size_t(d.n + 1);
  auto h = ddbar(d, psi);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      h[p][q] = psi * h[p][q] - psi.derivative(d.z(int(p))) * psi.derivative(d.zb(int(q)));
  CanonicalForm out;
  out.nu0 = determinant(h) / psi.pow(d.n);
  if (out.nu0.is_zero()) throw Error("degenerate", "nu0 vanishes identically");
  auto lp = ddbar_log(d, psi);
  auto ln = ddbar_log(d, out.nu0);
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q) lp[p][q] = RatFunc(long(d.n + 2)) * lp[p][q] - ln[p][q];
  out.coordinate = coordinate_11_form(d, lp);
  out.pulled_back = pullback(e, out.coordinate);
  return out;
}

Matrix<RatFunc> pairing_beta(const Algebroid& e) {
  Alternating s = pullback_sigma(e);
  const int n = e.n();
  auto beta = zero_matrix<RatFunc>(std::size_t(n + 1), std::size_t(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) beta[std::size_t(j)][std::size_t(k)] = s.component(mask_of({j, n + 1 + k}));
  return beta;
}

Matrix<RatFunc> pairing_beta_from_decomposition(const Algebroid& e, const HessianDecomposition& h) {
  Alternating s = sigma_from_decomposition(e, h);
  const int n = e.n();
  auto beta = zero_matrix<RatFunc>(std::size_t(n + 1), std::size_t(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= n; ++k) beta[std::size_t(j)][std::size_t(k)] = s.component(mask_of({j, n + 1 + k}));
  return beta;
}

Alternating contact_volume(const Alternating& theta, const Chart& chart, int n) {
  return wedge(theta, wedge_power(exterior_derivative(theta, chart), n));
}

}  // namespace bdq::cr
