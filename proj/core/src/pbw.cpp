#include "bdq/pbw.hpp"

#include <algorithm>

namespace bdq::cr {

bool is_normal(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

EOperator EOperator::function(const RatFunc& f) { return word({}, f); }

EOperator EOperator::word(const Word& w, const RatFunc& c) {
  EOperator op;
  op.add(w, c);
  return op;
}

void EOperator::add(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int EOperator::order() const {
  int k = -1;
  for (const auto& [w, c] : terms_) k = std::max(k, int(w.size()));
  return k;
}

EOperator EOperator::top() const {
  EOperator t;
  int k = order();
  for (const auto& [w, c] : terms_)
    if (int(w.size()) == k) t.add(w, c);
  return t;
}

EOperator& EOperator::operator+=(const EOperator& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

EOperator& EOperator::operator*=(const RatFunc& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= f;
  return *this;
}

bool operator==(const EOperator& a, const EOperator& b) {
  EOperator d = a;
  for (const auto& [w, c] : b.terms_) d.add(w, -c);
  return d.is_zero();
}

const EOperator& Enveloping::letter_times_word(int a, const Word& w) {
  auto key = std::make_pair(a, w);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  EOperator out;
  if (w.empty() || a <= w.front()) {
    Word aw{a};
    aw.insert(aw.end(), w.begin(), w.end());
    out = EOperator::word(aw);
  } else {
    // e_a e_b e_rest = e_b (e_a e_rest) + [e_a, e_b] e_rest with b = w.front() < a.
    int b = w.front();
    Word rest(w.begin() + 1, w.end());
    EOperator inner = letter_times_word(a, rest);
    out = left_multiply(b, inner);
    const auto& c = e_->structure[std::size_t(a)][std::size_t(b)];
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k].is_zero()) continue;
      EOperator t = letter_times_word(int(k), rest);
      out += c[k] * t;
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

EOperator Enveloping::left_multiply(int a, const EOperator& x) {
  EOperator out;
  for (const auto& [w, c] : x.terms()) {
    EOperator t = letter_times_word(a, w);
    out += c * t;
    out.add(w, e_->act(a, c));
  }
  return out;
}

EOperator Enveloping::multiply(const EOperator& x, const EOperator& y) {
  EOperator out;
  for (const auto& [w, c] : x.terms()) {
    EOperator t = y;
    for (auto it = w.rbegin(); it != w.rend(); ++it) t = left_multiply(*it, t);
    out += c * t;
  }
  return out;
}

EOperator Enveloping::normal_order(const Word& w, const RatFunc& f) {
  EOperator t = EOperator::function(RatFunc(1));
  for (auto it = w.rbegin(); it != w.rend(); ++it) t = left_multiply(*it, t);
  return f * t;
}

RatFunc Enveloping::apply(const EOperator& d, const RatFunc& f) const {
  RatFunc out;
  for (const auto& [w, c] : d.terms()) {
    RatFunc g = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it) g = e_->act(*it, g);
    out += c * g;
  }
  return out;
}

}  // namespace bdq::cr
