#include "bdq/bergman.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "bdq/errors.hpp"
#include "bdq/matrix.hpp"

namespace bdq::bt {

namespace {

using Coeffs = std::vector<Scalar>;

void trim(Coeffs& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// p * (alpha + c)^k.
Coeffs times_linear(Coeffs p, long c, int k) {
  for (int i = 0; i < k; ++i) p = mul(p, Coeffs{Scalar(c), Scalar(1)});
  return p;
}

Scalar horner(const Coeffs& p, const Scalar& x) {
  Scalar r;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// p / (alpha + c), assuming p(-c) = 0.
Coeffs divide_linear(const Coeffs& p, long c) {
  std::size_t n = p.size() - 1;
  Coeffs q(n);
  q[n - 1] = p[n];
  for (std::size_t i = n - 1; i >= 1; --i) q[i - 1] = p[i] - Scalar(c) * q[i];
  return q;
}

}  // namespace

AlphaRational::AlphaRational(Scalar c) {
  if (!c.is_zero()) num_.push_back(std::move(c));
}

AlphaRational::AlphaRational(std::vector<Scalar> num, std::map<long, int> den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

AlphaRational AlphaRational::linear(long c) { return AlphaRational({Scalar(c), Scalar(1)}, {}); }

void AlphaRational::normalize() {
  trim(num_);
  if (num_.empty()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0 && num_.size() > 1 && horner(num_, Scalar(-it->first)).is_zero()) {
      num_ = divide_linear(num_, it->first);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

bool AlphaRational::poles_negative() const {
  return std::all_of(den_.begin(), den_.end(), [](const auto& f) { return f.first > 0; });
}

AlphaRational& AlphaRational::operator+=(const AlphaRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::map<long, int> l = den_;
  for (const auto& [c, k] : o.den_) l[c] = std::max(l[c], k);
  auto lift = [&](const AlphaRational& x) {
    Coeffs p = x.num_;
    for (const auto& [c, k] : l) {
      auto it = x.den_.find(c);
      p = times_linear(std::move(p), c, k - (it == x.den_.end() ? 0 : it->second));
    }
    return p;
  };
  Coeffs a = lift(*this), b = lift(o);
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  num_ = std::move(a);
  den_ = std::move(l);
  normalize();
  return *this;
}

AlphaRational AlphaRational::operator-() const {
  AlphaRational r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

AlphaRational AlphaRational::conj() const {
  AlphaRational r = *this;
  for (auto& c : r.num_) c = c.conj();
  return r;
}

AlphaRational& AlphaRational::operator-=(const AlphaRational& o) { return *this += -o; }

AlphaRational& AlphaRational::operator*=(const AlphaRational& o) {
  num_ = mul(num_, o.num_);
  for (const auto& [c, k] : o.den_) den_[c] += k;
  normalize();
  return *this;
}

Scalar AlphaRational::evaluate(const Scalar& alpha) const {
  Scalar d(1);
  for (const auto& [c, k] : den_)
    for (int i = 0; i < k; ++i) d *= alpha + Scalar(c);
  if (d.is_zero()) throw Error("pole", "alpha = " + alpha.to_string() + " is a pole");
  return horner(num_, alpha) / d;
}

std::vector<Scalar> AlphaRational::series(int order) const {
  std::vector<Scalar> out(std::size_t(order + 1));
  if (is_zero()) return out;
  int deg = int(num_.size()) - 1;
  int poles = 0;
  for (const auto& [c, k] : den_) poles += k;
  int shift = poles - deg;
  if (shift < 0) throw Error("not_bounded", "rational function grows at alpha = infinity");
  // num(1/t) t^deg = sum num_i t^(deg - i); each 1/(1 + c t) = sum (-c t)^j.
  int keep = order - shift;
  if (keep < 0) return out;
  Coeffs s(std::size_t(keep + 1));
  for (int i = 0; i <= deg; ++i)
    if (deg - i <= keep) s[std::size_t(deg - i)] = num_[std::size_t(i)];
  for (const auto& [c, k] : den_) {
    Coeffs geo(std::size_t(keep + 1));
    Scalar p(1);
    for (int j = 0; j <= keep; ++j, p *= Scalar(-c)) geo[std::size_t(j)] = p;
    for (int i = 0; i < k; ++i) {
      s = mul(s, geo);
      s.resize(std::size_t(keep + 1));
    }
  }
  for (int j = 0; j <= keep; ++j) out[std::size_t(j + shift)] = s[std::size_t(j)];
  return out;
}

std::string AlphaRational::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (std::size_t i = num_.size(); i-- > 0;) {
    if (num_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << num_[i].to_string() << ")";
    if (i > 0) os << "*a" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  os << ")";
  for (const auto& [c, k] : den_) {
    os << "/(a" << (c < 0 ? " - " : " + ") << std::labs(c) << ")";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

WeightedSpace disc(int cutoff) { return ball_space(1, cutoff); }

WeightedSpace ball_space(int d, int cutoff) {
  if (d < 1 || 2 * d > int(kMaxVars)) throw Error("invalid_argument", "unsupported dimension");
  if (cutoff < 0) throw Error("invalid_argument", "cutoff must be nonnegative");
  return {d, cutoff, complex_alphabet(d - 1)};
}

namespace {

int weight(const MultiIndex& m) { return std::accumulate(m.begin(), m.end(), 0); }

void check_index(const WeightedSpace& s, const MultiIndex& m) {
  if (int(m.size()) != s.d || std::any_of(m.begin(), m.end(), [](int x) { return x < 0; }))
    throw Error("invalid_argument", "bad multi-index");
}

// ||z^(m+p)||^2 / ||z^m||^2 = prod (m_i+1)..(m_i+p_i) / ((alpha+|m|+d+1)..(alpha+|m+p|+d)).
AlphaRational norm_ratio(const WeightedSpace& s, const MultiIndex& m, const MultiIndex& p) {
  Scalar num(1);
  std::map<long, int> den;
  int base = weight(m) + s.d;
  for (int i = 0; i < s.d; ++i)
    for (int j = 1; j <= p[std::size_t(i)]; ++j) num *= Scalar(m[std::size_t(i)] + j);
  for (int j = 1; j <= weight(p); ++j) ++den[base + j];
  return AlphaRational({num}, den);
}

void check_symbol(const WeightedSpace& s, const Poly& f) {
  if (f.alphabet() && !(*f.alphabet() == *s.alpha))
    throw Error("invalid_symbol", "symbol must be a polynomial in z_j, zb_j of the weighted space");
}

}  // namespace

MonomialNorm monomial_norm(const WeightedSpace& s, const MultiIndex& m) {
  check_index(s, m);
  if (weight(m) > s.cutoff) throw Error("cutoff_overflow", "monomial degree exceeds the cutoff");
  AlphaRational r = norm_ratio(s, MultiIndex(std::size_t(s.d), 0), m);
  // ||1||^2 = pi^d / ((alpha+1)...(alpha+d)).
  std::map<long, int> den;
  for (int j = 1; j <= s.d; ++j) ++den[j];
  return {r * AlphaRational({Scalar(1)}, den), s.d};
}

HolVector toeplitz_apply(const WeightedSpace& s, const Poly& f, const HolVector& v) {
  check_symbol(s, f);
  HolVector out;
  for (const auto& [m, x] : v) {
    check_index(s, m);
    for (const auto& [e, c] : f.terms()) {
      MultiIndex top(std::size_t(s.d)), low(std::size_t(s.d)), q(std::size_t(s.d));
      bool killed = false;
      for (int i = 0; i < s.d; ++i) {
        std::size_t u = std::size_t(i);
        top[u] = m[u] + e[u];
        q[u] = e[std::size_t(s.d + i)];
        low[u] = top[u] - q[u];
        killed = killed || low[u] < 0;
      }
      if (killed) continue;
      // P(z^top zb^q) = (||z^top||^2 / ||z^low||^2) z^low.
      AlphaRational t = x * norm_ratio(s, low, q) * AlphaRational(c);
      auto& slot = out[low];
      slot += t;
      if (slot.is_zero()) out.erase(low);
    }
  }
  return out;
}

namespace {

std::vector<MultiIndex> graded_basis(int d, int cutoff) {
  std::vector<MultiIndex> out;
  for (int w = 0; w <= cutoff; ++w) {
    MultiIndex m(std::size_t(d), 0);
    std::vector<MultiIndex> level;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == d - 1) {
        m[std::size_t(i)] = left;
        level.push_back(m);
        return;
      }
      for (int a = left; a >= 0; --a) {
        m[std::size_t(i)] = a;
        rec(i + 1, left - a);
      }
    };
    rec(0, w);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace

AlphaRational ToeplitzMatrix::entry(const MultiIndex& row, const MultiIndex& col) const {
  auto pos = [&](const MultiIndex& m) {
    auto it = std::find(basis.begin(), basis.end(), m);
    if (it == basis.end()) throw Error("cutoff_overflow", "index outside the truncated basis");
    return int(it - basis.begin());
  };
  auto it = entries.find({pos(row), pos(col)});
  return it == entries.end() ? AlphaRational() : it->second;
}

ToeplitzMatrix toeplitz_matrix(const WeightedSpace& s, const Poly& symbol, bool strict) {
  ToeplitzMatrix t{symbol, graded_basis(s.d, s.cutoff), {}};
  std::map<MultiIndex, int> pos;
  for (std::size_t i = 0; i < t.basis.size(); ++i) pos[t.basis[i]] = int(i);
  for (std::size_t j = 0; j < t.basis.size(); ++j)
    for (auto& [m, x] : toeplitz_apply(s, symbol, {{t.basis[j], AlphaRational(1)}})) {
      auto it = pos.find(m);
      if (it == pos.end()) {
        if (strict) throw Error("cutoff_overflow", "image leaves the truncated basis");
        continue;
      }
      t.entries[{it->second, int(j)}] = x;
    }
  return t;
}

bool hermitian_pair(const WeightedSpace& s, const Poly& f, int max_degree) {
  Poly fb = f.conjugate();
  auto basis = graded_basis(s.d, max_degree);
  for (const auto& a : basis) {
    HolVector ta = toeplitz_apply(s, f, {{a, AlphaRational(1)}});
    for (const auto& b : basis) {
      HolVector tb = toeplitz_apply(s, fb, {{b, AlphaRational(1)}});
      auto get = [](const HolVector& v, const MultiIndex& m) {
        auto it = v.find(m);
        return it == v.end() ? AlphaRational() : it->second;
      };
      // <T_f z^a, z^b> = <z^a, T_fb z^b>.
      AlphaRational lhs = get(ta, b) * norm_ratio(s, MultiIndex(std::size_t(s.d), 0), b);
      AlphaRational rhs = get(tb, a).conj() * norm_ratio(s, MultiIndex(std::size_t(s.d), 0), a);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

namespace {

// Solves sum_q x_q rows[i][q] = rhs[i] on the first rows.size() equations; the
// caller passes a square system.
std::vector<Scalar> solve_square(const std::vector<std::vector<Scalar>>& rows, const std::vector<Scalar>& rhs) {
  Matrix<Scalar> inv = inverse_or_throw(rows, "test-vector system");
  std::vector<Scalar> x(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i)
    for (std::size_t j = 0; j < rhs.size(); ++j) x[i] += inv[i][j] * rhs[j];
  return x;
}

int degree_in(const Poly& f, std::size_t var) { return f.is_zero() ? 0 : f.degree_in(var); }

}  // namespace

ExpansionReport bt_expansion(const WeightedSpace& s, const Poly& f, const Poly& g, int order) {
  if (s.d != 1) throw Error("unsupported_domain", "expansion is implemented on the disc");
  if (order < 0) throw Error("invalid_argument", "order must be nonnegative");
  check_symbol(s, f);
  check_symbol(s, g);
  ExpansionReport rep;
  rep.order = order;
  rep.cutoff = s.cutoff;
  rep.c.assign(std::size_t(order + 1), Poly(s.alpha, Scalar(0)));
  if (f.is_zero() || g.is_zero()) return rep;

  int zbar = degree_in(f, 1) + degree_in(g, 1);
  int reach = f.total_degree() + g.total_degree();
  int top = 3 * order + zbar + 2;  // highest power of 1/alpha solved
  std::set<int> shifts;
  for (const auto& [a, x] : f.terms())
    for (const auto& [b, y] : g.terms()) shifts.insert(int(a[0]) - int(a[1]) + int(b[0]) - int(b[1]));

  for (int sh : shifts) {
    int qmin = std::max(0, -sh);
    int mmin = std::max(0, -sh);
    int tests = s.cutoff - reach - mmin + 1;
    if (tests < top - qmin + 2)
      throw Error("cutoff_too_small", "cutoff " + std::to_string(s.cutoff) + " leaves " +
                                          std::to_string(std::max(tests, 0)) + " test vectors");
    // Series of the matrix element <z^(m+sh)> of T_f T_g z^m and of
    // T_{z^(q+sh) zb^q} z^m, for each test vector m.
    std::vector<std::vector<Scalar>> a(static_cast<std::size_t>(tests));
    std::vector<std::vector<std::vector<Scalar>>> rho(static_cast<std::size_t>(tests));
    for (int t = 0; t < tests; ++t) {
      int m = mmin + t;
      HolVector v = toeplitz_apply(s, f, toeplitz_apply(s, g, {{{m}, AlphaRational(1)}}));
      auto it = v.find({m + sh});
      a[std::size_t(t)] = (it == v.end() ? AlphaRational() : it->second).series(top);
      for (int q = 0; q <= top; ++q) {
        if (q < qmin) {
          rho[std::size_t(t)].emplace_back(std::size_t(top + 1));
          continue;
        }
        Exponent e{};
        e[0] = std::uint8_t(q + sh);
        e[1] = std::uint8_t(q);
        HolVector w = toeplitz_apply(s, Poly::monomial(s.alpha, e, Scalar(1)), {{{m}, AlphaRational(1)}});
        auto jt = w.find({m + sh});
        rho[std::size_t(t)].push_back((jt == w.end() ? AlphaRational() : jt->second).series(top));
      }
    }
    // known[(k, q)]: coefficient of alpha^-k zb^q z^(q+sh).
    std::map<std::pair<int, int>, Scalar> known;
    for (int j = 0; j <= top; ++j) {
      std::vector<Scalar> resid(static_cast<std::size_t>(tests));
      for (int t = 0; t < tests; ++t) {
        Scalar r = a[std::size_t(t)][std::size_t(j)];
        for (const auto& [kq, c] : known)
          r -= c * rho[std::size_t(t)][std::size_t(kq.second)][std::size_t(j - kq.first)];
        resid[std::size_t(t)] = r;
      }
      int n = j - qmin + 1;
      if (n <= 0) {
        for (int t = 0; t < tests; ++t)
          if (!resid[std::size_t(t)].is_zero()) {
            rep.consistent = false;
            rep.issues.push_back("nonzero residual at order " + std::to_string(j) + " below the first unknown");
            break;
          }
        continue;
      }
      std::vector<std::vector<Scalar>> rows(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
      std::vector<Scalar> rhs(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) {
        for (int u = 0; u < n; ++u)
          rows[std::size_t(t)][std::size_t(u)] = rho[std::size_t(t)][std::size_t(qmin + u)][std::size_t(qmin + u)];
        rhs[std::size_t(t)] = resid[std::size_t(t)];
      }
      std::vector<Scalar> x = solve_square(rows, rhs);
      for (int u = 0; u < n; ++u)
        if (!x[std::size_t(u)].is_zero()) known[{j - qmin - u, qmin + u}] = x[std::size_t(u)];
      // Spare test vectors must agree.
      for (int t = n; t < tests; ++t) {
        Scalar r = resid[std::size_t(t)];
        for (int u = 0; u < n; ++u) r -= x[std::size_t(u)] * rho[std::size_t(t)][std::size_t(qmin + u)][std::size_t(qmin + u)];
        if (!r.is_zero()) {
          rep.consistent = false;
          rep.issues.push_back("test vector z^" + std::to_string(mmin + t) + " disagrees at order " + std::to_string(j));
          break;
        }
      }
    }
    for (const auto& [kq, c] : known) {
      auto [k, q] = kq;
      if (k > order) continue;
      if (q == top - k) {
        rep.consistent = false;
        rep.issues.push_back("coefficient " + std::to_string(k) + " reaches the solved degree");
      }
      Exponent e{};
      e[0] = std::uint8_t(q + sh);
      e[1] = std::uint8_t(q);
      rep.c[std::size_t(k)] += Poly::monomial(s.alpha, e, c);
    }
  }
  return rep;
}

bool OracleVerdict::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CrossCheck& c) { return c.pass; });
}

bool OracleVerdict::pass_through(int k) const {
  return std::all_of(checks.begin(), checks.end(), [k](const CrossCheck& c) { return c.k > k || c.pass; });
}

OracleVerdict cross_validate(const WeightedSpace& s, fq::FedosovSystem& sys, const fq::StarProduct& star,
                             const std::vector<std::pair<Poly, Poly>>& pairs, const std::vector<Scalar>& points,
                             bool opposite) {
  if (s.d != 1 || sys.data().e.domain.n != 0) throw Error("unsupported_domain", "comparison runs on the disc");
  if (pairs.empty() || points.empty()) throw Error("invalid_argument", "need test pairs and points");
  int order = star.order;
  auto& u = sys.jets().enveloping();
  fq::JetPoly f0 = fq::JetPoly::symbol(0, {}), g0 = fq::JetPoly::symbol(1, {});
  std::vector<fq::JetPoly> bk;
  for (int k = 0; k <= order; ++k) bk.push_back(fq::apply_bidiff(sys.jets(), star.b[std::size_t(k)], f0, g0));

  auto at = [](const Poly& p, const Scalar& z) { return p.evaluate({z, z.conj()}); };
  auto b_value = [&](int k, const Poly& f, const Poly& g, const Scalar& z) {
    return realize(u, bk[std::size_t(k)], {RatFunc(f), RatFunc(g)}).evaluate({z, z.conj()});
  };
  // Oracle coefficient, with the factors swapped for the opposite product.
  std::map<std::pair<std::string, std::string>, ExpansionReport> cache;
  auto c_poly = [&](int k, const Poly& f, const Poly& g) -> const Poly& {
    const Poly& l = opposite ? g : f;
    const Poly& r = opposite ? f : g;
    auto key = std::make_pair(l.to_string(), r.to_string());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, bt_expansion(s, l, r, order)).first;
    return it->second.c[std::size_t(k)];
  };

  OracleVerdict v;
  v.opposite = opposite;

  bool fitted = false;
  for (const auto& [f, g] : pairs)
    for (const auto& z : points) {
      Scalar ab = b_value(1, f, g, z) - b_value(1, g, f, z);
      if (fitted || ab.is_zero()) continue;
      v.kappa = (at(c_poly(1, f, g), z) - at(c_poly(1, g, f), z)) / ab;
      fitted = true;
    }
  if (!fitted) throw Error("fit_failed", "antisymmetrized first coefficient vanishes at every test point");

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [f, g] = pairs[i];
    for (std::size_t j = 0; j < points.size(); ++j) {
      const Scalar& z = points[j];
      std::string where = "pair " + std::to_string(i) + " point " + std::to_string(j);
      Scalar c0 = at(c_poly(0, f, g), z), fg = at(f * g, z);
      v.checks.push_back({0, "product " + where, c0 == fg, c0.to_string() + " vs " + fg.to_string()});
      Scalar ac = at(c_poly(1, f, g), z) - at(c_poly(1, g, f), z);
      Scalar ab = v.kappa * (b_value(1, f, g, z) - b_value(1, g, f, z));
      v.checks.push_back({1, "antisymmetric " + where, ac == ab, ac.to_string() + " vs " + ab.to_string()});
      Scalar kp = v.kappa;
      for (int k = 2; k <= order; ++k) {
        kp *= v.kappa;
        Scalar ck = at(c_poly(k, f, g), z), b = kp * b_value(k, f, g, z);
        v.checks.push_back({k, "order " + std::to_string(k) + " " + where, ck == b, ck.to_string() + " vs " + b.to_string()});
      }
    }
  }
  // Separation of variables: zb * z is undeformed on both sides.
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  for (int k = 1; k <= order; ++k) {
    Poly ck = c_poly(k, zb, z);
    RatFunc b = realize(u, bk[std::size_t(k)], {RatFunc(zb), RatFunc(z)});
    v.checks.push_back({k, "separation oracle " + std::to_string(k), ck.is_zero(), ck.to_string()});
    v.checks.push_back({k, "separation star " + std::to_string(k), b.is_zero(), b.to_string()});
  }
  for (const auto& [key, rep] : cache)
    if (!rep.consistent) v.checks.push_back({0, "expansion " + key.first + ", " + key.second, false, rep.issues.front()});
  return v;
}

}  // namespace bdq::bt
