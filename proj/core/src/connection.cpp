#include "bdq/connection.hpp"

namespace bdq::pk {

Tensor3 zero_tensor3(std::size_t dim) {
  return Tensor3(dim, std::vector<std::vector<RatFunc>>(dim, std::vector<RatFunc>(dim)));
}

Tensor4 zero_tensor4(std::size_t dim) { return Tensor4(dim, zero_tensor3(dim)); }

bool is_zero(const Tensor3& t) {
  for (const auto& m : t)
    for (const auto& row : m)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
  return true;
}

bool is_zero(const Tensor4& t) {
  for (const auto& x : t)
    if (!is_zero(x)) return false;
  return true;
}

ParaKahlerData para_kahler_data(const cr::Algebroid& e, const Alternating& omega) {
  ParaKahlerData d;
  d.e = e;
  d.omega = omega.to_matrix();
  const int n = e.n();
  for (int a = 0; a < e.rank(); ++a)
    for (int b = 0; b < e.rank(); ++b)
      if (e.holomorphic(a) == e.holomorphic(b) && !d.omega[std::size_t(a)][std::size_t(b)].is_zero())
        throw Error("not_lagrangian", "omega(e_" + std::to_string(a) + ", e_" + std::to_string(b) + ") != 0");
  if (!cr::e_differential(e, omega).is_zero()) throw Error("not_closed", "E-differential of omega");
  d.pairing = zero_matrix<RatFunc>(std::size_t(n + 1), std::size_t(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) d.pairing[std::size_t(i)][std::size_t(j)] = d.omega[d.hol(i)][d.anti(j)];
  d.pi = inverse_or_throw(d.pairing, "pairing");
  return d;
}

ParaKahlerData para_kahler_data(const cr::Algebroid& e) {
  return para_kahler_data(e, cr::symplectic_form(e));
}

Tensor3 quotient_bott(const ParaKahlerData& d) {
  const int n = d.n();
  Tensor3 b = zero_tensor3(std::size_t(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) b[std::size_t(i)][std::size_t(j)][std::size_t(k)] = d.m_prime(i, j, k);
  return b;
}

Tensor4 bott_curvature(const ParaKahlerData& d, const Tensor3& bott) {
  const int n = d.n();
  const std::size_t m = std::size_t(n + 1);
  Tensor4 r = zero_tensor4(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
          RatFunc x = d.e.act(int(i), bott[l][j][k]) - d.e.act(int(l), bott[i][j][k]);
          for (std::size_t p = 0; p < m; ++p) {
            x += bott[l][j][p] * bott[i][p][k] - bott[i][j][p] * bott[l][p][k];
            // [xi_i, xi_l] stays in E^{1,0}.
            const RatFunc& c = d.e.structure[i][l][p];
            if (!c.is_zero()) x -= c * bott[p][j][k];
          }
          r[i][l][j][k] = x;
        }
  return r;
}

ConnectionCoefficients build_connection(const ParaKahlerData& d) {
  const int n = d.n();
  const auto& s = d.e.structure;
  ConnectionCoefficients c;
  c.gamma = zero_tensor3(std::size_t(d.rank()));
  auto& g = c.gamma;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      // nabla_{xi_i} xi_j: omega(nabla xi_j, xi'_l) = rho(xi_i) omega_jl - omega(xi_j, [xi_i, xi'_l]).
      std::vector<RatFunc> x(std::size_t(n + 1));
      for (int l = 0; l <= n; ++l) {
        RatFunc v = d.e.act(i, d.pairing[std::size_t(j)][std::size_t(l)]);
        for (int p = 0; p <= n; ++p) v -= d.pairing[std::size_t(j)][std::size_t(p)] * d.m_prime(i, l, p);
        x[std::size_t(l)] = v;
      }
      for (int k = 0; k <= n; ++k) {
        RatFunc v;
        for (int l = 0; l <= n; ++l) v += x[std::size_t(l)] * d.pi[std::size_t(l)][std::size_t(k)];
        g[d.hol(i)][d.hol(j)][d.hol(k)] = v;
      }
      // nabla_{xi_i} xi'_j = p^{0,1}[xi_i, xi'_j].
      for (int k = 0; k <= n; ++k) g[d.hol(i)][d.anti(j)][d.anti(k)] = d.m_prime(i, j, k);
      // nabla_{xi'_i} xi_j = p^{1,0}[xi'_i, xi_j].
      for (int k = 0; k <= n; ++k) g[d.anti(i)][d.hol(j)][d.hol(k)] = s[d.anti(i)][d.hol(j)][d.hol(k)];
    }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      // nabla_{xi'_i} xi'_j: omega(xi_l, nabla xi'_j) = rho(xi'_i) omega_lj - omega([xi'_i, xi_l], xi'_j).
      std::vector<RatFunc> y(std::size_t(n + 1));
      for (int l = 0; l <= n; ++l) {
        RatFunc v = d.e.act(int(d.anti(i)), d.pairing[std::size_t(l)][std::size_t(j)]);
        for (int p = 0; p <= n; ++p)
          v -= s[d.anti(i)][d.hol(l)][d.hol(p)] * d.pairing[std::size_t(p)][std::size_t(j)];
        y[std::size_t(l)] = v;
      }
      for (int k = 0; k <= n; ++k) {
        RatFunc v;
        for (int l = 0; l <= n; ++l) v += d.pi[std::size_t(k)][std::size_t(l)] * y[std::size_t(l)];
        g[d.anti(i)][d.anti(j)][d.anti(k)] = v;
      }
    }
  return c;
}

Tensor3 torsion(const ConnectionCoefficients& c, const ParaKahlerData& d) {
  const std::size_t dim = std::size_t(d.rank());
  Tensor3 t = zero_tensor3(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t k = 0; k < dim; ++k)
        t[a][b][k] = c.gamma[a][b][k] - c.gamma[b][a][k] - d.e.structure[a][b][k];
  return t;
}

Tensor3 compatibility_residual(const ConnectionCoefficients& c, const ParaKahlerData& d,
                               const Matrix<RatFunc>& g) {
  const std::size_t dim = std::size_t(d.rank());
  Tensor3 out = zero_tensor3(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t k = 0; k < dim; ++k) {
        RatFunc x = d.e.act(int(a), g[b][k]);
        for (std::size_t p = 0; p < dim; ++p) {
          if (!c.gamma[a][b][p].is_zero()) x -= c.gamma[a][b][p] * g[p][k];
          if (!c.gamma[a][k][p].is_zero()) x -= c.gamma[a][k][p] * g[b][p];
        }
        out[a][b][k] = x;
      }
  return out;
}

Tensor3 compatibility_residual(const ConnectionCoefficients& c, const ParaKahlerData& d) {
  return compatibility_residual(c, d, d.omega);
}

Matrix<RatFunc> symmetric_pairing(const ParaKahlerData& d) {
  auto g = zero_matrix<RatFunc>(std::size_t(d.rank()), std::size_t(d.rank()));
  for (int i = 0; i <= d.n(); ++i)
    for (int j = 0; j <= d.n(); ++j) {
      g[d.hol(i)][d.anti(j)] = d.pairing[std::size_t(i)][std::size_t(j)];
      g[d.anti(j)][d.hol(i)] = d.pairing[std::size_t(i)][std::size_t(j)];
    }
  return g;
}

CurvatureReport curvature(const ConnectionCoefficients& c, const ParaKahlerData& d) {
  const std::size_t dim = std::size_t(d.rank());
  const auto& g = c.gamma;
  CurvatureReport rep;
  rep.r = zero_tensor4(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t f = 0; f < dim; ++f) {
          RatFunc x = d.e.act(int(a), g[b][k][f]) - d.e.act(int(b), g[a][k][f]);
          for (std::size_t p = 0; p < dim; ++p) {
            x += g[b][k][p] * g[a][p][f] - g[a][k][p] * g[b][p][f];
            const RatFunc& s = d.e.structure[a][b][p];
            if (!s.is_zero()) x -= s * g[p][k][f];
          }
          rep.r[a][b][k][f] = x;
          if (!x.is_zero() && d.e.holomorphic(int(a)) == d.e.holomorphic(int(b))) {
            rep.bidegree_11 = false;
            rep.violations.push_back("R(e_" + std::to_string(a) + ", e_" + std::to_string(b) + ") e_" +
                                     std::to_string(k) + " along e_" + std::to_string(f));
          }
        }
  return rep;
}

std::vector<Tensor4> bianchi_residual(const ConnectionCoefficients& c, const ParaKahlerData& d,
                                      const Tensor4& r) {
  const std::size_t dim = std::size_t(d.rank());
  const auto& g = c.gamma;
  // cov[a][b][k][e][f] = (nabla_a R)(e_b, e_k) e_e along e_f
  std::vector<Tensor4> cov(dim, zero_tensor4(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t e = 0; e < dim; ++e)
          for (std::size_t f = 0; f < dim; ++f) {
            RatFunc x = d.e.act(int(a), r[b][k][e][f]);
            for (std::size_t p = 0; p < dim; ++p) {
              x += r[b][k][e][p] * g[a][p][f];
              x -= g[a][e][p] * r[b][k][p][f];
              x -= g[a][b][p] * r[p][k][e][f];
              x -= g[a][k][p] * r[b][p][e][f];
            }
            cov[a][b][k][e][f] = x;
          }
  std::vector<Tensor4> out(dim, zero_tensor4(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t e = 0; e < dim; ++e)
          for (std::size_t f = 0; f < dim; ++f)
            out[a][b][k][e][f] = cov[a][b][k][e][f] + cov[b][k][a][e][f] + cov[k][a][b][e][f];
  return out;
}

}  // namespace bdq::pk
