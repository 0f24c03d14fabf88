#include "bdq/jets.hpp"

#include <algorithm>

namespace bdq::fq {

JetPoly::JetPoly(const RatFunc& c) {
  if (!c.is_zero()) terms_.emplace(JetMonomial{}, c);
}

JetPoly JetPoly::symbol(int func, const cr::Word& w) {
  JetPoly p;
  p.terms_.emplace(JetMonomial{JetSymbol{func, w}}, RatFunc(1));
  return p;
}

void JetPoly::add(const JetMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool JetPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

RatFunc JetPoly::constant_part() const {
  auto it = terms_.find(JetMonomial{});
  return it == terms_.end() ? RatFunc() : it->second;
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

JetPoly& JetPoly::operator*=(const RatFunc& f) {
  if (f.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= f;
  return *this;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  JetPoly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      JetMonomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      out.add(m, ca * cb);
    }
  return out;
}

bool operator==(const JetPoly& a, const JetPoly& b) { return (a - b).is_zero(); }

std::string symbol_name(const JetSymbol& s, const std::vector<std::string>& func_names) {
  std::string out = s.func < int(func_names.size()) ? func_names[std::size_t(s.func)] : "f" + std::to_string(s.func);
  if (s.word.empty()) return out;
  out += "[";
  for (std::size_t i = 0; i < s.word.size(); ++i) out += (i ? "," : "") + std::to_string(s.word[i]);
  return out + "]";
}

std::string JetPoly::to_string(const std::vector<std::string>& func_names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (const auto& s : m) out += "*" + symbol_name(s, func_names);
  }
  return out;
}

const JetPoly& JetCalculus::act_symbol(int a, const JetSymbol& s) {
  auto key = std::make_pair(a, s);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  JetPoly out;
  for (const auto& [w, c] : u_.letter_times_word(a, s.word).terms()) out.add({JetSymbol{s.func, w}}, c);
  return memo_.emplace(key, std::move(out)).first->second;
}

JetPoly JetCalculus::act(int a, const JetPoly& p) {
  const auto& e = algebroid();
  JetPoly out;
  for (const auto& [m, c] : p.terms()) {
    out.add(m, e.act(a, c));
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      // Leibniz rule: multiplicity times the monomial with one copy of m[i] removed.
      long mult = long(std::count(m.begin(), m.end(), m[i]));
      JetMonomial rest = m;
      rest.erase(rest.begin() + long(i));
      JetPoly t;
      t.add(rest, c * RatFunc(mult));
      out += t * act_symbol(a, m[i]);
    }
  }
  return out;
}

JetPoly JetCalculus::apply(const cr::Word& w, const JetPoly& p) {
  JetPoly out = p;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = act(*it, out);
  return out;
}

RatFunc realize(cr::Enveloping& u, const JetPoly& p, const std::vector<RatFunc>& funcs) {
  std::map<JetSymbol, RatFunc> cache;
  RatFunc out;
  for (const auto& [m, c] : p.terms()) {
    RatFunc t = c;
    for (const auto& s : m) {
      auto it = cache.find(s);
      if (it == cache.end())
        it = cache.emplace(s, u.apply(cr::EOperator::word(s.word), funcs[std::size_t(s.func)])).first;
      t *= it->second;
    }
    out += t;
  }
  return out;
}

int jet_order(const Jet& l) {
  int k = -1;
  for (const auto& [w, c] : l) k = std::max(k, int(w.size()));
  return k;
}

static RatFunc value(const Jet& l, const cr::Word& w) {
  auto it = l.find(w);
  return it == l.end() ? RatFunc() : it->second;
}

Jet grothendieck_connection(cr::Enveloping& u, int a, const Jet& l) {
  const int order = jet_order(l);
  const int rank = u.algebroid().rank();
  Jet out;
  for (const auto& w : normal_words(rank, order - 1)) {
    RatFunc x = u.algebroid().act(a, value(l, w));
    for (const auto& [v, c] : u.letter_times_word(a, w).terms()) x -= c * value(l, v);
    if (!x.is_zero()) out[w] = x;
  }
  return out;
}

Jet grothendieck_connection(cr::Enveloping& u, const std::vector<RatFunc>& section, const Jet& l) {
  Jet out;
  for (std::size_t k = 0; k < section.size(); ++k) {
    if (section[k].is_zero()) continue;
    for (const auto& [w, c] : grothendieck_connection(u, int(k), l)) {
      RatFunc x = value(out, w) + section[k] * c;
      if (x.is_zero())
        out.erase(w);
      else
        out[w] = x;
    }
  }
  return out;
}

Jet holonomic_jet(cr::Enveloping& u, const RatFunc& f, int order) {
  Jet out;
  for (const auto& w : normal_words(u.algebroid().rank(), order)) {
    RatFunc x = u.apply(cr::EOperator::word(w), f);
    if (!x.is_zero()) out[w] = x;
  }
  return out;
}

Jet grothendieck_flatness_residual(cr::Enveloping& u, int a, int b, const Jet& l) {
  Jet ab = grothendieck_connection(u, a, grothendieck_connection(u, b, l));
  Jet ba = grothendieck_connection(u, b, grothendieck_connection(u, a, l));
  const auto& c = u.algebroid().structure[std::size_t(a)][std::size_t(b)];
  Jet br = grothendieck_connection(u, c, l);
  Jet out;
  for (const auto& w : normal_words(u.algebroid().rank(), jet_order(l) - 2)) {
    RatFunc x = value(ab, w) - value(ba, w) - value(br, w);
    if (!x.is_zero()) out[w] = x;
  }
  return out;
}

std::vector<cr::Word> normal_words(int letters, int max_len) {
  std::vector<cr::Word> out;
  if (max_len < 0) return out;
  out.push_back({});
  std::vector<cr::Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<cr::Word> next;
    for (const auto& w : layer)
      for (int a = w.empty() ? 0 : w.back(); a < letters; ++a) {
        cr::Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace bdq::fq
