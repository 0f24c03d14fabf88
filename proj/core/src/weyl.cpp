#include "bdq/weyl.hpp"

#include <numeric>

namespace bdq::fq {

int fiber_degree(const WeylKey& k) { return std::accumulate(k.fiber.begin(), k.fiber.end(), 0); }

int total_degree(const WeylKey& k) { return fiber_degree(k) + 2 * k.hbar; }

WeylElement WeylElement::constant(int rank, const JetPoly& c) {
  WeylElement w(rank);
  w.add(WeylKey{}, c);
  return w;
}

WeylElement WeylElement::fiber_var(int rank, int s) {
  WeylElement w(rank);
  WeylKey k;
  k.fiber[std::size_t(s)] = 1;
  w.add(k, RatFunc(1));
  return w;
}

WeylElement WeylElement::form(const Alternating& a, int hbar) {
  WeylElement w(a.dim());
  for (const auto& [m, c] : a.terms()) w.add(WeylKey{m, hbar, {}}, c);
  return w;
}

void WeylElement::add(const WeylKey& k, const JetPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int WeylElement::min_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = d < 0 ? total_degree(k) : std::min(d, total_degree(k));
  return d;
}

int WeylElement::max_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, total_degree(k));
  return d;
}

WeylElement WeylElement::degree_part(int d) const {
  return filter([d](const WeylKey& k) { return total_degree(k) == d; });
}

WeylElement WeylElement::truncate(int max_degree) const {
  return filter([max_degree](const WeylKey& k) { return total_degree(k) <= max_degree; });
}

WeylElement WeylElement::form_degree_part(int q) const {
  return filter([q](const WeylKey& k) { return mask_degree(k.form) == q; });
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  if (rank_ == 0) rank_ = o.rank_;
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  if (rank_ == 0) rank_ = o.rank_;
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

WeylElement& WeylElement::operator*=(const JetPoly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, x] : terms_) x = x * c;
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
  return *this;
}

bool operator==(const WeylElement& a, const WeylElement& b) { return (a - b).is_zero(); }

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += "\n";
    out += "[" + c.to_string() + "]";
    if (k.hbar) out += " h^" + std::to_string(k.hbar);
    for (int s = 0; s < rank_; ++s)
      if (k.fiber[std::size_t(s)]) out += " y" + std::to_string(s) + "^" + std::to_string(k.fiber[std::size_t(s)]);
    for (int s : mask_indices(k.form)) out += " th" + std::to_string(s);
  }
  return out;
}

FiberProduct::FiberProduct(Matrix<RatFunc> lambda) : lambda_(std::move(lambda)) {
  for (std::size_t s = 0; s < lambda_.size(); ++s)
    for (std::size_t t = 0; t < lambda_.size(); ++t)
      if (!lambda_[s][t].is_zero()) pairs_.emplace_back(int(s), int(t));
}

FiberProduct FiberProduct::anti_wick(const Matrix<RatFunc>& pi) {
  const std::size_t m = pi.size();
  auto l = zero_matrix<RatFunc>(2 * m, 2 * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) l[a][m + b] = pi[a][b] * RatFunc(Scalar::rational(-1, 2));
  return FiberProduct(std::move(l));
}

FiberProduct FiberProduct::from_symplectic(const Matrix<RatFunc>& omega) {
  const std::size_t dim = omega.size();
  const std::size_t m = dim / 2;
  auto inv = inverse_or_throw(omega, "symplectic form");
  auto l = zero_matrix<RatFunc>(dim, dim);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = m; t < dim; ++t) l[s][t] = -inv[s][t];
  return FiberProduct(std::move(l));
}

const std::vector<FiberProduct::Expansion>& FiberProduct::expand(const Exponent& a, const Exponent& b) const {
  auto key = std::make_pair(a, b);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  struct State {
    Exponent a, b;
    int k;
    RatFunc c;
  };
  std::vector<State> states{{a, b, 0, RatFunc(1)}};
  for (auto [s, t] : pairs_) {
    std::vector<State> next;
    for (const auto& st : states) {
      int top = std::min<int>(st.a[std::size_t(s)], st.b[std::size_t(t)]);
      RatFunc c = st.c;
      State cur = st;
      next.push_back(cur);
      for (int j = 1; j <= top; ++j) {
        // d^j/dy_s^j (x) d^j/dy_t^j with 1/j! from the exponential.
        c = c * lambda_[std::size_t(s)][std::size_t(t)] *
            RatFunc(long(cur.a[std::size_t(s)]) * long(cur.b[std::size_t(t)])) / RatFunc(long(j));
        --cur.a[std::size_t(s)];
        --cur.b[std::size_t(t)];
        next.push_back(State{cur.a, cur.b, st.k + j, c});
      }
    }
    states = std::move(next);
  }
  std::vector<Expansion> out;
  for (auto& st : states) {
    Exponent f{};
    for (std::size_t v = 0; v < f.size(); ++v) f[v] = std::uint8_t(st.a[v] + st.b[v]);
    Scalar phase(1);
    for (int j = 0; j < st.k; ++j) phase *= Scalar::i();
    out.push_back(Expansion{f, st.k, st.c * RatFunc(phase)});
  }
  return cache_.emplace(key, std::move(out)).first->second;
}

WeylElement FiberProduct::operator()(const WeylElement& a, const WeylElement& b, int max_degree) const {
  WeylElement out(std::max(a.rank(), b.rank()));
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (max_degree >= 0 && total_degree(ka) + total_degree(kb) > max_degree) continue;
      int sign = wedge_sign(ka.form, kb.form);
      if (sign == 0) continue;
      JetPoly c = ca * cb;
      if (sign < 0) c = -c;
      for (const auto& x : expand(ka.fiber, kb.fiber)) out.add(WeylKey{ka.form | kb.form, ka.hbar + kb.hbar + x.k, x.fiber}, c * x.coeff);
    }
  return out;
}

WeylElement FiberProduct::commutator(const WeylElement& a, const WeylElement& b, int max_degree) const {
  WeylElement out(std::max(a.rank(), b.rank()));
  const int dim = std::max(a.rank(), b.rank());
  for (int p = 0; p <= dim; ++p) {
    WeylElement ap = a.form_degree_part(p);
    if (ap.is_zero()) continue;
    for (int q = 0; q <= dim; ++q) {
      WeylElement bq = b.form_degree_part(q);
      if (bq.is_zero()) continue;
      out += (*this)(ap, bq, max_degree);
      WeylElement ba = (*this)(bq, ap, max_degree);
      if ((p * q) % 2)
        out += ba;
      else
        out -= ba;
    }
  }
  return out;
}

WeylElement delta(const WeylElement& a) {
  WeylElement out(a.rank());
  for (const auto& [k, c] : a.terms())
    for (int s = 0; s < a.rank(); ++s) {
      if (!k.fiber[std::size_t(s)] || (k.form >> s) & 1) continue;
      WeylKey nk = k;
      --nk.fiber[std::size_t(s)];
      nk.form = k.form | (Mask(1) << s);
      int sign = wedge_sign(Mask(1) << s, k.form);
      out.add(nk, c * RatFunc(long(sign * k.fiber[std::size_t(s)])));
    }
  return out;
}

WeylElement delta_inverse(const WeylElement& a, const std::vector<int>& indices) {
  WeylElement out(a.rank());
  for (const auto& [k, c] : a.terms()) {
    int pq = fiber_degree(k) + mask_degree(k.form);
    if (pq == 0) continue;
    for (int s : indices) {
      if (!((k.form >> s) & 1)) continue;
      WeylKey nk = k;
      ++nk.fiber[std::size_t(s)];
      nk.form = k.form & ~(Mask(1) << s);
      int sign = wedge_sign(Mask(1) << s, nk.form);
      out.add(nk, c * RatFunc(Scalar::rational(sign, pq)));
    }
  }
  return out;
}

WeylElement delta_inverse(const WeylElement& a) {
  std::vector<int> all(std::size_t(a.rank()));
  std::iota(all.begin(), all.end(), 0);
  return delta_inverse(a, all);
}

WeylElement sigma(const WeylElement& a) {
  return a.filter([](const WeylKey& k) { return fiber_degree(k) == 0; });
}

WeylElement tau(const WeylElement& a, Mask allowed) {
  return a.filter([allowed](const WeylKey& k) {
    for (std::size_t s = 0; s < k.fiber.size(); ++s)
      if (k.fiber[s] && !((allowed >> s) & 1)) return false;
    return true;
  });
}

WeylElement restrict_forms(const WeylElement& a, Mask allowed) {
  return a.filter([allowed](const WeylKey& k) { return (k.form & ~allowed) == 0; });
}

WeylElement divide_hbar(const WeylElement& a) {
  WeylElement out(a.rank());
  for (const auto& [k, c] : a.terms()) {
    if (k.hbar == 0) throw Error("internal", "term without hbar in a commutator");
    WeylKey nk = k;
    --nk.hbar;
    out.add(nk, c);
  }
  return out;
}

WeylElement multiply_hbar(const WeylElement& a, int m) {
  WeylElement out(a.rank());
  for (const auto& [k, c] : a.terms()) {
    WeylKey nk = k;
    nk.hbar += m;
    out.add(nk, c);
  }
  return out;
}

WeylElement projection_00(const WeylElement& a) {
  return a.filter([](const WeylKey& k) { return k.form == 0 && fiber_degree(k) == 0; });
}

}  // namespace bdq::fq
