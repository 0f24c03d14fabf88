#include "bdq/fedosov.hpp"

#include <random>

namespace bdq::fq {

namespace {

const JetPoly& i_unit() {
  static const JetPoly u(RatFunc(Scalar::i()));
  return u;
}

std::vector<int> indices_of(Mask m) { return mask_indices(m); }

}  // namespace

FedosovSystem::FedosovSystem(const pk::ParaKahlerData& d)
    : data_(d),
      conn_(pk::build_connection(d)),
      prod_(FiberProduct::from_symplectic(d.omega)),
      jets_(data_.e),
      curvature_(d.rank()) {
  const std::size_t dim = std::size_t(rank());
  auto rep = pk::curvature(conn_, data_);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b)
      for (std::size_t p = 0; p < dim; ++p)
        for (std::size_t q = p; q < dim; ++q) {
          RatFunc x;
          for (std::size_t f = 0; f < dim; ++f) x -= rep.r[a][b][p][f] * data_.omega[f][q];
          if (x.is_zero()) continue;
          // (1/2) Q_pq y^p y^q summed over p <= q.
          if (p == q) x *= RatFunc(Scalar::rational(1, 2));
          WeylKey k;
          k.form = (Mask(1) << a) | (Mask(1) << b);
          ++k.fiber[p];
          ++k.fiber[q];
          curvature_.add(k, x);
        }
}

WeylElement FedosovSystem::omega() const { return WeylElement::form(Alternating::from_matrix(data_.omega)); }

const Alternating& FedosovSystem::d_theta(Mask m) {
  if (auto it = d_theta_.find(m); it != d_theta_.end()) return it->second;
  Alternating w(rank());
  w.add_term(m, RatFunc(1));
  return d_theta_.emplace(m, cr::e_differential(data_.e, w)).first->second;
}

WeylElement FedosovSystem::nabla(const WeylElement& a) {
  const int dim = rank();
  const auto& g = conn_.gamma;
  WeylElement out(dim);
  for (const auto& [k, c] : a.terms()) {
    for (const auto& [m, dc] : d_theta(k.form).terms()) out.add(WeylKey{m, k.hbar, k.fiber}, c * dc);
    for (int e = 0; e < dim; ++e) {
      if ((k.form >> e) & 1) continue;
      Mask nm = k.form | (Mask(1) << e);
      RatFunc sign(long(wedge_sign(Mask(1) << e, k.form)));
      out.add(WeylKey{nm, k.hbar, k.fiber}, sign * jets_.act(e, c));
      for (int s = 0; s < dim; ++s) {
        if (!k.fiber[std::size_t(s)]) continue;
        for (int b = 0; b < dim; ++b) {
          const RatFunc& gm = g[std::size_t(e)][std::size_t(b)][std::size_t(s)];
          if (gm.is_zero()) continue;
          WeylKey nk{nm, k.hbar, k.fiber};
          --nk.fiber[std::size_t(s)];
          ++nk.fiber[std::size_t(b)];
          out.add(nk, c * (-sign * gm * RatFunc(long(k.fiber[std::size_t(s)]))));
        }
      }
    }
  }
  return out;
}

WeylElement FedosovSystem::bracket(const WeylElement& a, const WeylElement& b, int max_degree) {
  return i_unit() * divide_hbar(prod_.commutator(a, b, max_degree < 0 ? -1 : max_degree + 2));
}

WeylElement mu_symplectic(const FedosovSystem& s) { return WeylElement(s.rank()) - s.omega(); }

WeylElement mu_canonical(const FedosovSystem& s) {
  auto can = cr::canonical_form(s.data().e);
  // omega_can = i * (pulled back (1/i) omega_can); i h omega_can = -h * pulled_back.
  return mu_symplectic(s) - WeylElement::form(can.pulled_back, 1);
}

void check_mu(FedosovSystem& s, const WeylElement& mu) {
  WeylElement rest = mu + s.omega();
  for (const auto& [k, c] : rest.terms()) {
    if (fiber_degree(k) != 0 || !c.is_constant()) throw Error("invalid_mu", "mu must be a scalar E-form");
    if (k.hbar == 0) throw Error("invalid_mu", "h^0 part of mu must be -omega");
    if (mask_degree(k.form) != 2 || !(k.form & s.holomorphic()) || !(k.form & s.antiholomorphic()))
      throw Error("invalid_mu", "h^" + std::to_string(k.hbar) + " part of mu is not of type (1,1)");
  }
  for (int h = 0;; ++h) {
    auto part = mu.filter([h](const WeylKey& k) { return k.hbar == h; });
    if (part.is_zero() && h > 0 && mu.filter([h](const WeylKey& k) { return k.hbar > h; }).is_zero()) break;
    Alternating w(s.rank());
    for (const auto& [k, c] : part.terms()) w.add_term(k.form, c.constant_part());
    if (!cr::e_differential(s.data().e, w).is_zero())
      throw Error("invalid_mu", "h^" + std::to_string(h) + " part of mu is not closed");
  }
}

FedosovData solve_r(FedosovSystem& s, const WeylElement& mu, int max_degree) {
  check_mu(s, mu);
  WeylElement r0 = s.curvature() - s.omega() - mu;
  WeylElement base = delta_inverse(r0).truncate(max_degree);
  FedosovData out;
  out.mu = mu;
  out.max_degree = max_degree;
  WeylElement r(s.rank());
  for (int it = 1; it <= max_degree + 2; ++it) {
    WeylElement rhs = s.nabla(r) + s.bracket(r, r, max_degree - 1) * RatFunc(Scalar::rational(1, 2));
    WeylElement next = (base + delta_inverse(rhs.truncate(max_degree - 1))).truncate(max_degree);
    out.iterations = it;
    if (next == r) {
      out.r = r;
      return out;
    }
    r = std::move(next);
  }
  throw Error("internal", "r iteration did not stabilize by degree " + std::to_string(max_degree));
}

WeylElement fedosov_d(FedosovSystem& s, const FedosovData& f, const WeylElement& a, int max_degree) {
  if (max_degree < 0) return s.nabla(a) - delta(a) + s.bracket(f.r, a, -1);
  WeylElement x = a.truncate(max_degree + 1);
  return (s.nabla(x.truncate(max_degree)) - delta(x) + s.bracket(f.r, x, max_degree)).truncate(max_degree);
}

FedosovReport verify(FedosovSystem& s, const FedosovData& f, std::uint64_t seed) {
  FedosovReport rep;
  const int n_max = f.max_degree;
  rep.delta_inverse_vanishes = delta_inverse(f.r).is_zero();
  rep.min_degree = f.r.min_degree();
  WeylElement rr = s.bracket(f.r, f.r, n_max) * RatFunc(Scalar::rational(1, 2));
  WeylElement eq = delta(f.r) - (s.nabla(f.r) + rr + s.curvature() - s.omega() - f.mu);
  rep.equation_checked_to = n_max - 1;
  rep.equation_holds = eq.truncate(n_max - 1).is_zero();
  std::mt19937_64 rng(seed);
  std::vector<WeylElement> probes;
  for (int v = 0; v < s.rank(); ++v) probes.push_back(WeylElement::fiber_var(s.rank(), v));
  for (int t = 0; t < 2; ++t) {
    WeylElement a(s.rank());
    for (int p = 0; p < s.rank(); ++p)
      for (int q = p; q < s.rank(); ++q) {
        WeylKey k;
        ++k.fiber[std::size_t(p)];
        ++k.fiber[std::size_t(q)];
        a.add(k, RatFunc(long(rng() % 7) - 3));
      }
    probes.push_back(a);
  }
  rep.d_squared_vanishes = true;
  rep.d_squared_checked_to = n_max;
  for (const auto& a : probes) {
    // D^2 a is determined by the truncated r in degrees <= max_degree + deg(a) - 3.
    int valid = n_max + a.min_degree() - 3;
    rep.d_squared_checked_to = std::min(rep.d_squared_checked_to, valid);
    WeylElement dd = fedosov_d(s, f, fedosov_d(s, f, a, valid + 1), valid);
    if (!dd.truncate(valid).is_zero()) rep.d_squared_vanishes = false;
  }
  return rep;
}

WeylElement flat_lift(FedosovSystem& s, const FedosovData& f, const JetPoly& jet, int max_degree) {
  WeylElement base = WeylElement::constant(s.rank(), jet);
  WeylElement x = base;
  for (int it = 0; it <= max_degree + 1; ++it) {
    WeylElement rhs = s.nabla(x) + s.bracket(f.r, x, max_degree - 1);
    WeylElement next = (base + delta_inverse(rhs.truncate(max_degree - 1))).truncate(max_degree);
    if (next == x) return x;
    x = std::move(next);
  }
  throw Error("internal", "lift iteration did not stabilize");
}

std::vector<JetPoly> star(FedosovSystem& s, const FedosovData& f, const JetPoly& a, const JetPoly& b, int order) {
  WeylElement la = flat_lift(s, f, a, 2 * order);
  WeylElement lb = flat_lift(s, f, b, 2 * order);
  WeylElement p = sigma(s.product()(la, lb, 2 * order));
  std::vector<JetPoly> out(std::size_t(order + 1));
  for (const auto& [k, c] : p.terms())
    if (k.form == 0 && k.hbar <= order) out[std::size_t(k.hbar)] += c;
  return out;
}

StarProduct extract_bidiff(FedosovSystem& s, const FedosovData& f, int order) {
  StarProduct out;
  out.order = order;
  auto c = star(s, f, JetPoly::symbol(0, {}), JetPoly::symbol(1, {}), order);
  Scalar inv_i_k(1);
  const int n = s.data().n();
  for (int k = 0; k <= order; ++k) {
    Bidifferential b;
    for (const auto& [m, x] : c[std::size_t(k)].terms()) {
      if (m.size() != 2 || m[0].func != 0 || m[1].func != 1)
        throw Error("internal", "star product term is not bilinear in f and g");
      b[{m[0].word, m[1].word}] = x * RatFunc(inv_i_k);
      if (k == 0) continue;
      bool ok = true;
      for (int l : m[0].word) ok = ok && l <= n;
      for (int l : m[1].word) ok = ok && l > n;
      if (!ok) {
        out.bipolarized = false;
        out.violations.push_back("B_" + std::to_string(k) + ": " + symbol_name(m[0], {"f", "g"}) + " " +
                                 symbol_name(m[1], {"f", "g"}));
      }
    }
    out.b.push_back(std::move(b));
    inv_i_k = inv_i_k / Scalar::i();
  }
  return out;
}

JetPoly apply_bidiff(JetCalculus& jc, const Bidifferential& b, const JetPoly& f, const JetPoly& g) {
  JetPoly out;
  std::map<cr::Word, JetPoly> fc, gc;
  auto get = [&jc](std::map<cr::Word, JetPoly>& cache, const cr::Word& w, const JetPoly& p) -> const JetPoly& {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, jc.apply(w, p)).first;
    return it->second;
  };
  for (const auto& [vw, c] : b) out += c * (get(fc, vw.first, f) * get(gc, vw.second, g));
  return out;
}

std::vector<JetPoly> associator(JetCalculus& jc, const StarProduct& p, const JetPoly& f, const JetPoly& g,
                                const JetPoly& h) {
  std::vector<JetPoly> out(std::size_t(p.order + 1));
  std::vector<JetPoly> fg, gh;
  for (int k = 0; k <= p.order; ++k) {
    fg.push_back(apply_bidiff(jc, p.b[std::size_t(k)], f, g));
    gh.push_back(apply_bidiff(jc, p.b[std::size_t(k)], g, h));
  }
  for (int m = 0; m <= p.order; ++m)
    for (int j = 0; j <= m; ++j) {
      const auto& bj = p.b[std::size_t(j)];
      out[std::size_t(m)] += apply_bidiff(jc, bj, fg[std::size_t(m - j)], h);
      out[std::size_t(m)] -= apply_bidiff(jc, bj, f, gh[std::size_t(m - j)]);
    }
  return out;
}

Bidifferential antisymmetrize(const Bidifferential& b) {
  Bidifferential out;
  auto add = [&out](const std::pair<cr::Word, cr::Word>& k, const RatFunc& c) {
    RatFunc x = out.count(k) ? out[k] + c : c;
    if (x.is_zero())
      out.erase(k);
    else
      out[k] = x;
  };
  for (const auto& [vw, c] : b) {
    add(vw, c);
    add({vw.second, vw.first}, -c);
  }
  return out;
}

Bidifferential poisson_bidiff(const pk::ParaKahlerData& d) {
  auto inv = inverse_or_throw(d.omega, "symplectic form");
  Bidifferential out;
  for (int a = 0; a < d.rank(); ++a)
    for (int b = 0; b < d.rank(); ++b) {
      const RatFunc& x = inv[std::size_t(a)][std::size_t(b)];
      if (!x.is_zero()) out[{{a}, {b}}] = -x;
    }
  return out;
}

WeylElement polarized_lift(FedosovSystem& s, const FedosovData& f, const JetPoly& jet, Side side, int max_degree) {
  const bool hol = side == Side::holomorphic;
  const Mask m = hol ? s.holomorphic() : s.antiholomorphic();
  const auto idx = indices_of(m);
  WeylElement rs = restrict_forms(f.r, m);
  WeylElement base = WeylElement::constant(s.rank(), jet);
  WeylElement x = base;
  for (int it = 0; it <= max_degree + 1; ++it) {
    // Holomorphic side: -(i/h) tau(F * r); antiholomorphic side: (i/h) tau(r * G).
    WeylElement p = hol ? s.product()(x, rs, max_degree + 1) : s.product()(rs, x, max_degree + 1);
    WeylElement q = i_unit() * divide_hbar(tau(p, m).filter([](const WeylKey& k) { return k.hbar > 0; }));
    WeylElement rhs = restrict_forms(s.nabla(x), m) + (hol ? WeylElement(s.rank()) - q : q);
    WeylElement next = (base + delta_inverse(rhs.truncate(max_degree - 1), idx)).truncate(max_degree);
    if (next == x) return x;
    x = std::move(next);
  }
  throw Error("internal", "polarized lift iteration did not stabilize");
}

}  // namespace bdq::fq
