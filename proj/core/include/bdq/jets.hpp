#pragma once

#include <map>
#include <string>
#include <vector>

#include "bdq/pbw.hpp"

namespace bdq::fq {

// f_W: the value of the frame operator e_W on the function with id `func`.
struct JetSymbol {
  int func = 0;
  cr::Word word;
  auto operator<=>(const JetSymbol&) const = default;
};

using JetMonomial = std::vector<JetSymbol>;  // sorted, repeats allowed

// Polynomial in jet symbols with rational-function coefficients.
class JetPoly {
 public:
  using Terms = std::map<JetMonomial, RatFunc>;

  JetPoly() = default;
  JetPoly(const RatFunc& c);  // NOLINT(google-explicit-constructor)
  static JetPoly symbol(int func, const cr::Word& w);

  const Terms& terms() const { return terms_; }
  void add(const JetMonomial& m, const RatFunc& c);
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  RatFunc constant_part() const;
  // Keeps the terms whose symbols all satisfy keep.
  template <class Pred>
  JetPoly restrict(Pred keep) const {
    JetPoly out;
    for (const auto& [m, c] : terms_) {
      bool ok = true;
      for (const auto& s : m) ok = ok && keep(s);
      if (ok) out.terms_.emplace(m, c);
    }
    return out;
  }

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const RatFunc& f);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator-(JetPoly a) { return a *= RatFunc(-1); }
  friend JetPoly operator*(JetPoly a, const RatFunc& f) { return a *= f; }
  friend JetPoly operator*(const RatFunc& f, JetPoly a) { return a *= f; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  friend bool operator==(const JetPoly& a, const JetPoly& b);

  std::string to_string(const std::vector<std::string>& func_names = {"f", "g", "h"}) const;

 private:
  Terms terms_;
};

std::string symbol_name(const JetSymbol& s, const std::vector<std::string>& func_names);

// Derivations of jet polynomials along the frame, using e_a f_W = (e_a e_W) f
// rewritten in the PBW basis.
class JetCalculus {
 public:
  explicit JetCalculus(const cr::Algebroid& e) : u_(e) {}

  const cr::Algebroid& algebroid() const { return u_.algebroid(); }
  cr::Enveloping& enveloping() { return u_; }
  JetPoly act(int a, const JetPoly& p);
  // e_{w_1} ... e_{w_k} applied to p.
  JetPoly apply(const cr::Word& w, const JetPoly& p);

 private:
  const JetPoly& act_symbol(int a, const JetSymbol& s);
  cr::Enveloping u_;
  std::map<std::pair<int, JetSymbol>, JetPoly> memo_;
};

// Substitutes f_W = e_W funcs[f] for every symbol.
RatFunc realize(cr::Enveloping& u, const JetPoly& p, const std::vector<RatFunc>& funcs);

// A jet l as its values l(e_W) on normal words up to some length.
using Jet = std::map<cr::Word, RatFunc>;

int jet_order(const Jet& l);
// (nabla_G(e_a) l)(e_W) = rho(e_a) l(e_W) - l(e_a e_W) for |W| < order(l).
Jet grothendieck_connection(cr::Enveloping& u, int a, const Jet& l);
// C-infinity-linear extension to a section sum_k coeffs[k] e_k.
Jet grothendieck_connection(cr::Enveloping& u, const std::vector<RatFunc>& section, const Jet& l);
// Holonomic jet of f: l(e_W) = e_W f.
Jet holonomic_jet(cr::Enveloping& u, const RatFunc& f, int order);
// nabla_G(a) nabla_G(b) l - nabla_G(b) nabla_G(a) l - nabla_G([a, b]) l.
Jet grothendieck_flatness_residual(cr::Enveloping& u, int a, int b, const Jet& l);

std::vector<cr::Word> normal_words(int letters, int max_len);

}  // namespace bdq::fq
