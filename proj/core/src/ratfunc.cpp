#include "bdq/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace bdq {

namespace {

constexpr int kZeroOrder = 1 << 20;

Scalar scalar_pow(const Scalar& s, int e) {
  Scalar r(1);
  for (int i = 0; i < e; ++i) r *= s;
  return r;
}

void sort_and_merge(std::vector<RatFunc::Factor>& den) {
  std::sort(den.begin(), den.end(),
            [](const RatFunc::Factor& a, const RatFunc::Factor& b) { return a.first < b.first; });
  std::vector<RatFunc::Factor> out;
  for (auto& f : den) {
    if (f.second == 0) continue;
    if (!out.empty() && out.back().first == f.first) {
      out.back().second += f.second;
    } else {
      out.push_back(std::move(f));
    }
  }
  den = std::move(out);
}

// Splits the monomial content off p, returning the per-variable exponents.
Exponent monomial_content(Poly& p) {
  Exponent lo;
  lo.fill(255);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i) lo[i] = std::min(lo[i], e[i]);
  bool any = false;
  for (auto x : lo) any = any || x > 0;
  if (any) p = p.divide_or_throw(Poly::monomial(p.alphabet(), lo, Scalar(1)));
  return lo;
}

}  // namespace

RatFunc RatFunc::quotient(const Poly& n, const Poly& d) {
  RatFunc r(n);
  r.divide_by_poly(d, {});
  return r;
}

Poly RatFunc::denominator() const {
  Poly d(alphabet(), Scalar(1));
  for (const auto& [a, e] : den_) d *= a.pow(static_cast<unsigned>(e));
  return d;
}

AlphabetPtr RatFunc::alphabet() const {
  if (num_.alphabet()) return num_.alphabet();
  return den_.empty() ? nullptr : den_.front().first.alphabet();
}

void RatFunc::divide_by_poly(Poly p, const std::vector<Factor>& hints) {
  if (p.is_zero()) throw Error("division_by_zero", "rational function divided by zero");
  if (p.is_constant()) {
    num_ *= Scalar(1) / p.constant_term();
    return;
  }
  Exponent lo = monomial_content(p);
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (lo[i] > 0) den_.emplace_back(Poly::var(p.alphabet(), i), lo[i]);
  auto peel = [&p, this](const Poly& atom) {
    if (p.is_constant()) return;
    while (auto q = p.exact_divide(atom)) {
      p = std::move(*q);
      den_.emplace_back(atom, 1);
      if (p.is_constant()) return;
    }
  };
  std::vector<Factor> known = den_;
  for (const auto& h : hints) peel(h.first);
  for (const auto& k : known) peel(k.first);
  if (!p.is_constant()) {
    Scalar lc = p.make_monic();
    num_ *= Scalar(1) / lc;
    den_.emplace_back(std::move(p), 1);
  } else {
    num_ *= Scalar(1) / p.constant_term();
  }
  normalize();
}

void RatFunc::normalize() {
  sort_and_merge(den_);
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [a, e] : den_) {
    while (e > 0) {
      auto q = num_.exact_divide(a);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](const Factor& f) { return f.second == 0; }),
             den_.end());
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  std::vector<Factor> common = den_;
  common.insert(common.end(), o.den_.begin(), o.den_.end());
  std::sort(common.begin(), common.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto& f : common) {
    if (!merged.empty() && merged.back().first == f.first) {
      merged.back().second = std::max(merged.back().second, f.second);
    } else {
      merged.push_back(f);
    }
  }
  auto scale = [&merged](const Poly& n, const std::vector<Factor>& den) {
    Poly r = n;
    for (const auto& [a, e] : merged) {
      int have = 0;
      for (const auto& [b, f] : den)
        if (b == a) have = f;
      if (e > have) r *= a.pow(static_cast<unsigned>(e - have));
    }
    return r;
  };
  num_ = scale(num_, den_) + scale(o.num_, o.den_);
  den_ = std::move(merged);
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = RatFunc(Poly(alphabet(), Scalar(0)) * o.num_);
  if (o.den_.empty() && o.num_.is_constant()) {
    num_ *= o.num_.constant_term();
    return *this;
  }
  // Cancel cross pairs before forming the product so the trial divisions act on
  // the smaller operands.
  Poly on = o.num_;
  std::vector<Factor> oden = o.den_;
  for (auto& [a, e] : den_)
    while (e > 0 && !on.is_constant()) {
      auto q = on.exact_divide(a);
      if (!q) break;
      on = std::move(*q);
      --e;
    }
  for (auto& [a, e] : oden)
    while (e > 0 && !num_.is_constant()) {
      auto q = num_.exact_divide(a);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  num_ *= on;
  den_.insert(den_.end(), oden.begin(), oden.end());
  sort_and_merge(den_);
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw Error("division_by_zero", "rational function divided by zero");
  RatFunc inv(o.denominator());
  inv.divide_by_poly(o.num_, den_);
  return *this *= inv;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return (a - b).is_zero();
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return RatFunc(Poly(alphabet(), Scalar(1))) / pow(-k);
  RatFunc r(Poly(alphabet(), Scalar(1)));
  r.num_ = num_.pow(static_cast<unsigned>(k));
  for (const auto& [a, e] : den_) r.den_.emplace_back(a, e * k);
  if (k == 0) r.den_.clear();
  return r;
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (den_.empty()) return RatFunc(num_.derivative(var));
  std::vector<Poly> da;
  bool all_const = true;
  for (const auto& [a, e] : den_) {
    da.push_back(a.derivative(var));
    all_const = all_const && da.back().is_zero();
  }
  if (all_const) {
    RatFunc r = *this;
    r.num_ = num_.derivative(var);
    r.normalize();
    return r;
  }
  // d(N/prod A^e) = (N' prod A - N sum e A' prod_{j!=i} A) / (prod A^{e+1}) restricted
  // to the atoms whose derivative is nonzero.
  Poly lead = num_.derivative(var);
  Poly tail(alphabet(), Scalar(0));
  Poly all(alphabet(), Scalar(1));
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (!da[i].is_zero()) all *= den_[i].first;
  lead *= all;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (da[i].is_zero()) continue;
    Poly others = da[i] * Scalar(long(den_[i].second));
    for (std::size_t j = 0; j < den_.size(); ++j)
      if (j != i && !da[j].is_zero()) others *= den_[j].first;
    tail += others;
  }
  RatFunc r;
  r.num_ = lead - num_ * tail;
  r.den_ = den_;
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (!da[i].is_zero()) r.den_[i].second += 1;
  r.normalize();
  return r;
}

RatFunc RatFunc::derivative(const std::string& name) const {
  AlphabetPtr a = alphabet();
  if (!a) return RatFunc();
  return derivative(a->index(name));
}

RatFunc RatFunc::conjugate() const {
  RatFunc r(num_.conjugate());
  for (const auto& [a, e] : den_) {
    Poly c = a.conjugate();
    Scalar lc = c.make_monic();
    r.num_ *= Scalar(1) / scalar_pow(lc, e);
    r.den_.emplace_back(std::move(c), e);
  }
  r.normalize();
  return r;
}

RatFunc RatFunc::substitute(std::size_t var, const Poly& value) const {
  RatFunc r(num_.substitute(var, value));
  for (const auto& [a, e] : den_) {
    Poly s = a.substitute(var, value);
    for (int k = 0; k < e; ++k) r.divide_by_poly(s, r.den_);
  }
  return r;
}

Scalar RatFunc::evaluate(const std::vector<Scalar>& point) const {
  Scalar d(1);
  for (const auto& [a, e] : den_) d *= scalar_pow(a.evaluate(point), e);
  if (d.is_zero()) throw Error("pole", "denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

std::complex<double> RatFunc::evaluate_complex(const std::vector<std::complex<double>>& point) const {
  auto eval = [&point](const Poly& p) {
    std::complex<double> total = 0;
    for (const auto& [e, c] : p.terms()) {
      std::complex<double> t(c.real_double(), c.imag_double());
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (e[i]) t *= std::pow(point.at(i), int(e[i]));
      total += t;
    }
    return total;
  };
  std::complex<double> d = 1;
  for (const auto& [a, e] : den_) d *= std::pow(eval(a), e);
  return eval(num_) / d;
}

double RatFunc::evaluate_double(const std::vector<double>& point) const {
  double d = 1;
  for (const auto& [a, e] : den_) d *= std::pow(a.evaluate_double(point), e);
  return num_.evaluate_double(point) / d;
}

RatFunc RatFunc::isolate(const Poly& p) const {
  if (p.is_constant() || den_.empty()) return *this;
  Poly atom = p;
  atom.make_monic();
  RatFunc r;
  r.num_ = num_;
  int count = 0;
  for (const auto& [a, e] : den_) {
    Poly m = a;
    int k = 0;
    while (!m.is_constant()) {
      auto q = m.exact_divide(atom);
      if (!q) break;
      m = std::move(*q);
      ++k;
    }
    count += k * e;
    if (m.is_constant()) {
      r.num_ *= Scalar(1) / scalar_pow(m.constant_term(), e);
    } else {
      Scalar c = m.make_monic();
      r.num_ *= Scalar(1) / scalar_pow(c, e);
      r.den_.emplace_back(std::move(m), e);
    }
  }
  if (count) r.den_.emplace_back(atom, count);
  r.normalize();
  return r;
}

int RatFunc::psi_order(const Poly& psi) const {
  if (num_.is_zero()) return kZeroOrder;
  if (psi.is_constant()) return 0;
  int order = 0;
  Poly n = num_;
  while (auto q = n.exact_divide(psi)) {
    n = std::move(*q);
    ++order;
  }
  for (const auto& [a, e] : den_) {
    Poly m = a;
    while (!m.is_constant()) {
      auto q = m.exact_divide(psi);
      if (!q) break;
      m = std::move(*q);
      order -= e;
    }
  }
  return order;
}

std::string RatFunc::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ")/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) os << "*";
    os << "(" << den_[i].first.to_string() << ")";
    if (den_[i].second > 1) os << "^" << den_[i].second;
  }
  os << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

}  // namespace bdq
