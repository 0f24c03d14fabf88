#include "bdq/alternating.hpp"

#include <bit>
#include <sstream>

namespace bdq {

int mask_degree(Mask m) { return std::popcount(m); }

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1u)
    if (m & 1u) out.push_back(i);
  return out;
}

Mask mask_of(std::initializer_list<int> indices) {
  Mask m = 0;
  for (int i : indices) m |= Mask(1) << i;
  return m;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (int j : mask_indices(b)) swaps += std::popcount(a >> (j + 1));
  return swaps % 2 ? -1 : 1;
}

Alternating Alternating::scalar(int dim, RatFunc f) { return monomial(dim, 0, std::move(f)); }

Alternating Alternating::basis(int dim, int i, RatFunc coeff) {
  return monomial(dim, Mask(1) << i, std::move(coeff));
}

Alternating Alternating::monomial(int dim, Mask m, RatFunc coeff) {
  Alternating a(dim);
  a.add_term(m, coeff);
  return a;
}

Alternating Alternating::from_matrix(const Matrix<RatFunc>& m) {
  Alternating a(int(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) a.add_term(mask_of({int(i), int(j)}), m[i][j]);
  return a;
}

RatFunc Alternating::component(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? RatFunc() : it->second;
}

void Alternating::add_term(Mask m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int Alternating::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, mask_degree(m));
  return d;
}

Alternating Alternating::part(int degree) const {
  Alternating r(dim_);
  for (const auto& [m, c] : terms_)
    if (mask_degree(m) == degree) r.terms_.emplace(m, c);
  return r;
}

Matrix<RatFunc> Alternating::to_matrix() const {
  auto m = zero_matrix<RatFunc>(std::size_t(dim_), std::size_t(dim_));
  for (const auto& [mask, c] : terms_) {
    if (mask_degree(mask) != 2) continue;
    auto idx = mask_indices(mask);
    m[std::size_t(idx[0])][std::size_t(idx[1])] = c;
    m[std::size_t(idx[1])][std::size_t(idx[0])] = -c;
  }
  return m;
}

Alternating Alternating::operator-() const {
  Alternating r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Alternating& Alternating::operator+=(const Alternating& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Alternating& Alternating::operator-=(const Alternating& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Alternating& Alternating::operator*=(const RatFunc& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= f;
  return *this;
}

bool operator==(const Alternating& a, const Alternating& b) { return (a - b).is_zero(); }

std::string Alternating::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int i : mask_indices(m)) {
      os << (i == mask_indices(m).front() ? " " : "^");
      if (std::size_t(i) < names.size()) {
        os << names[std::size_t(i)];
      } else {
        os << "e" << i;
      }
    }
  }
  return os.str();
}

Alternating wedge(const Alternating& a, const Alternating& b) {
  Alternating r(std::max(a.dim(), b.dim()));
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      r.add_term(ma | mb, s > 0 ? ca * cb : -(ca * cb));
    }
  return r;
}

Alternating wedge_power(const Alternating& a, int k) {
  Alternating r = Alternating::scalar(a.dim(), RatFunc(1));
  for (int i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

Alternating interior(int i, const Alternating& w) {
  Alternating r(w.dim());
  const Mask bit = Mask(1) << i;
  for (const auto& [m, c] : w.terms()) {
    if (!(m & bit)) continue;
    int pos = std::popcount(m & (bit - 1));
    r.add_term(m ^ bit, pos % 2 ? -c : c);
  }
  return r;
}

Alternating interior(const Alternating& v, const Alternating& w) {
  if (v.degree() > std::max(w.degree(), 0) && !w.is_zero())
    throw Error("degree_mismatch", "contracting a multivector of higher degree");
  Alternating r(w.dim());
  for (const auto& [mv, cv] : v.terms()) {
    Alternating t = w;
    for (int i : mask_indices(mv)) t = interior(i, t);
    r += t * cv;
  }
  return r;
}

Chart Chart::named(const AlphabetPtr& alpha, const std::vector<std::string>& names) {
  Chart c{alpha, {}};
  for (const auto& n : names) c.vars.push_back(alpha->index(n));
  return c;
}

Alternating exterior_derivative(const Alternating& w, const Chart& chart) {
  Alternating r(w.dim());
  for (const auto& [m, c] : w.terms())
    for (int j = 0; j < chart.dim(); ++j) {
      int s = wedge_sign(Mask(1) << j, m);
      if (s == 0) continue;
      RatFunc dc = c.derivative(chart.vars[std::size_t(j)]);
      r.add_term(m | (Mask(1) << j), s > 0 ? dc : -dc);
    }
  return r;
}

namespace {

// Odd derivatives of a wedge monomial with respect to generator i.
Alternating odd_derivative(const Alternating& a, int i, bool from_right) {
  Alternating r(a.dim());
  const Mask bit = Mask(1) << i;
  for (const auto& [m, c] : a.terms()) {
    if (!(m & bit)) continue;
    int pos = std::popcount(m & (bit - 1));
    int k = mask_degree(m);
    int swaps = from_right ? k - 1 - pos : pos;
    r.add_term(m ^ bit, swaps % 2 ? -c : c);
  }
  return r;
}

Alternating coordinate_derivative(const Alternating& a, std::size_t var) {
  return a.map([var](const RatFunc& c) { return c.derivative(var); });
}

}  // namespace

Alternating schouten(const Alternating& p, const Alternating& q, const Chart& chart) {
  Alternating r(std::max(p.dim(), q.dim()));
  for (int i = 0; i < chart.dim(); ++i) {
    std::size_t var = chart.vars[std::size_t(i)];
    r += wedge(odd_derivative(p, i, true), coordinate_derivative(q, var));
    r -= wedge(coordinate_derivative(p, var), odd_derivative(q, i, false));
  }
  return r;
}

Alternating invert_two_tensor(const Alternating& sigma) {
  Matrix<RatFunc> m = sigma.to_matrix();
  auto inv = inverse(m);
  if (!inv) {
    auto minors = leading_minors(m);
    std::size_t k = 0;
    while (k < minors.size() && !minors[k].is_zero()) ++k;
    throw Error("degenerate", "two-tensor is singular; leading minor of order " +
                                  std::to_string(k + 1) + " vanishes");
  }
  for (auto& row : *inv)
    for (auto& x : row) x = -x;
  return Alternating::from_matrix(*inv);
}

}  // namespace bdq
