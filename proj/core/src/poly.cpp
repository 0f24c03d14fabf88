#include "bdq/poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bdq {

namespace {

bool divides(const Exponent& small, const Exponent& big) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (small[i] > big[i]) return false;
  return true;
}

Exponent add_exp(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    if (s > 255) throw Error("degree_overflow", "exponent exceeds 255");
    r[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Exponent sub_exp(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint8_t>(a[i] - b[i]);
  return r;
}

void accumulate(Poly::Terms& terms, const Exponent& e, const Scalar& c) {
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

AlphabetPtr Poly::merge_alphabets(const AlphabetPtr& a, const AlphabetPtr& b, const char* where) {
  if (!a) return b;
  if (!b || a == b) return a;
  if (*a == *b) return a;
  throw alphabet_mismatch(where);
}

Poly Poly::var(const AlphabetPtr& alpha, std::size_t i) {
  if (i >= alpha->size() || i >= kMaxVars) throw Error("unknown_symbol", "variable index out of range");
  Exponent e{};
  e[i] = 1;
  return monomial(alpha, e, Scalar(1));
}

Poly Poly::var(const AlphabetPtr& alpha, const std::string& name) {
  return var(alpha, alpha->index(name));
}

Poly Poly::monomial(const AlphabetPtr& alpha, const Exponent& e, Scalar c) {
  Poly p;
  p.alpha_ = alpha;
  if (!c.is_zero()) p.terms_.emplace(e, std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
}

Scalar Poly::constant_term() const {
  auto it = terms_.find(Exponent{});
  return it == terms_.end() ? Scalar() : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, int(e[var]));
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  alpha_ = merge_alphabets(alpha_, o.alpha_, "polynomial addition");
  for (const auto& [e, c] : o.terms_) accumulate(terms_, e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  alpha_ = merge_alphabets(alpha_, o.alpha_, "polynomial subtraction");
  for (const auto& [e, c] : o.terms_) accumulate(terms_, e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.alpha_ = Poly::merge_alphabets(a.alpha_, b.alpha_, "polynomial product");
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) accumulate(r.terms_, add_exp(ea, eb), ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly Poly::pow(unsigned k) const {
  Poly r(alpha_, Scalar(1));
  Poly base = *this;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r;
  r.alpha_ = alpha_;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.terms_.emplace(f, c * Scalar(long(e[var])));
  }
  return r;
}

Poly Poly::derivative(const std::string& name) const {
  if (!alpha_) {
    Poly r;
    return r;
  }
  return derivative(alpha_->index(name));
}

std::optional<Poly> Poly::exact_divide(const Poly& d) const {
  if (d.is_zero()) throw Error("division_by_zero", "exact_divide by the zero polynomial");
  Poly q;
  q.alpha_ = merge_alphabets(alpha_, d.alpha_, "exact_divide");
  if (is_zero()) return q;
  // Cheap rejection on per-variable degrees.
  Exponent maxp{}, maxd{};
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < kMaxVars; ++i) maxp[i] = std::max(maxp[i], e[i]);
  for (const auto& [e, c] : d.terms_)
    for (std::size_t i = 0; i < kMaxVars; ++i) maxd[i] = std::max(maxd[i], e[i]);
  if (!divides(maxd, maxp)) return std::nullopt;
  if (d.terms_.size() == 1) {
    const auto& [ed, cd] = *d.terms_.begin();
    for (const auto& [e, c] : terms_) {
      if (!divides(ed, e)) return std::nullopt;
      q.terms_.emplace_hint(q.terms_.end(), sub_exp(e, ed), c / cd);
    }
    return q;
  }
  Poly r = *this;
  r.alpha_ = q.alpha_;
  const auto& [ld, lc] = d.leading();
  Scalar inv = Scalar(1) / lc;
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    if (!divides(ld, lr)) return std::nullopt;
    Exponent shift = sub_exp(lr, ld);
    Scalar factor = cr * inv;
    for (const auto& [e, c] : d.terms_) accumulate(r.terms_, add_exp(e, shift), -(c * factor));
    q.terms_.emplace(shift, std::move(factor));
  }
  return q;
}

Poly Poly::divide_or_throw(const Poly& d) const {
  auto q = exact_divide(d);
  if (!q) throw Error("not_divisible", to_string() + " is not divisible by " + d.to_string());
  return *q;
}

Poly Poly::conjugate() const {
  Poly r;
  r.alpha_ = alpha_;
  for (const auto& [e, c] : terms_) {
    Exponent f{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (e[i] == 0) continue;
      f[alpha_->conjugate(i)] = e[i];
    }
    r.terms_.emplace(f, c.conj());
  }
  return r;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  Scalar total;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point.at(i);
    total += t;
  }
  return total;
}

double Poly::evaluate_double(const std::vector<double>& point) const {
  double total = 0;
  for (const auto& [e, c] : terms_) {
    if (!c.is_real()) throw Error("complex_value", "evaluate_double on a complex coefficient");
    double t = c.real_double();
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i]) t *= std::pow(point.at(i), int(e[i]));
    total += t;
  }
  return total;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  Poly r(alpha_, Scalar(0));
  r.alpha_ = merge_alphabets(alpha_, value.alpha_, "substitute");
  std::map<unsigned, Poly> powers;
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    unsigned k = f[var];
    f[var] = 0;
    Poly term = Poly::monomial(r.alpha_, f, c);
    if (k) {
      auto it = powers.find(k);
      if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
      term *= it->second;
    }
    r += term;
  }
  return r;
}

Scalar Poly::make_monic() {
  if (is_zero()) return Scalar(1);
  Scalar lc = leading().second;
  Scalar inv = Scalar(1) / lc;
  *this *= inv;
  return lc;
}

Poly Poly::with_alphabet(const AlphabetPtr& alpha) const {
  Poly r = *this;
  r.alpha_ = merge_alphabets(alpha, alpha_, "with_alphabet");
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coef = c.to_string();
    bool complex = !c.is_real() && sgn(c.re()) != 0;
    bool unit = e == Exponent{};
    if (!first) os << " + ";
    first = false;
    if (complex) {
      os << "(" << coef << ")";
    } else if (unit || !(c.is_one())) {
      os << coef;
    }
    if (!unit) {
      bool need_star = !c.is_one() || complex;
      for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (!e[i]) continue;
        if (need_star) os << "*";
        need_star = true;
        os << alpha_->name(i);
        if (e[i] > 1) os << "^" << int(e[i]);
      }
    }
  }
  return os.str();
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
  for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second.re() != ib->second.re()) return ia->second.re() < ib->second.re();
    if (ia->second.im() != ib->second.im()) return ia->second.im() < ib->second.im();
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

namespace {

class Parser {
 public:
  Parser(const std::string& text, const AlphabetPtr& alpha) : s_(text), alpha_(alpha) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p.with_alphabet(alpha_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error("parse_error", what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+')) {
        p += term();
      } else if (eat('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }
  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
        p *= Scalar(1) / d.constant_term();
      } else {
        return p;
      }
    }
  }
  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  Poly atom() {
    skip();
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(alpha_, Scalar(mpq_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "I") return Poly(alpha_, Scalar::i());
      return Poly::var(alpha_, name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string s_;
  AlphabetPtr alpha_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const AlphabetPtr& alpha) { return Parser(text, alpha).parse(); }

}  // namespace bdq
