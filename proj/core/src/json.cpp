#include "bdq/json.hpp"

#include "bdq/errors.hpp"

namespace bdq::io {

namespace {

std::string rational(const mpq_class& q) { return q.get_str(); }

Error malformed(const std::string& what) { return Error("invalid_json", "malformed " + what); }

}  // namespace

json to_json(const Scalar& s) { return {{"re", rational(s.re())}, {"im", rational(s.im())}}; }

Scalar scalar_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw malformed("scalar");
  return {Scalar::parse_rational(j.at("re").get<std::string>()), Scalar::parse_rational(j.at("im").get<std::string>())};
}

json to_json(const Poly& p) {
  json vars = json::array(), conj = json::array(), terms = json::array();
  std::size_t n = p.alphabet() ? p.alphabet()->size() : 0;
  for (std::size_t i = 0; i < n; ++i) {
    vars.push_back(p.alphabet()->name(i));
    conj.push_back(p.alphabet()->conjugate(i));
  }
  for (const auto& [e, c] : p.terms()) {
    json t = to_json(c);
    t["exp"] = std::vector<int>(e.begin(), e.begin() + long(n));
    terms.push_back(std::move(t));
  }
  return {{"vars", vars}, {"conj", conj}, {"terms", terms}};
}

Poly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) throw malformed("polynomial");
  auto names = j.at("vars").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> pairs;
  if (j.contains("conj")) {
    auto conj = j.at("conj").get<std::vector<std::size_t>>();
    if (conj.size() != names.size()) throw malformed("conjugation table");
    for (std::size_t i = 0; i < conj.size(); ++i) {
      if (conj[i] >= names.size()) throw malformed("conjugation table");
      if (conj[i] > i) pairs.emplace_back(names[i], names[conj[i]]);
    }
  }
  AlphabetPtr alpha = names.empty() ? nullptr : make_alphabet(names, pairs);
  Poly p = alpha ? Poly(alpha, Scalar(0)) : Poly();
  for (const auto& t : j.at("terms")) {
    auto exp = t.at("exp").get<std::vector<int>>();
    if (exp.size() != names.size()) throw malformed("exponent");
    Exponent e{};
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (exp[i] < 0 || exp[i] > 255) throw malformed("exponent");
      e[i] = std::uint8_t(exp[i]);
    }
    p += alpha ? Poly::monomial(alpha, e, scalar_from_json(t)) : Poly(scalar_from_json(t));
  }
  return p;
}

json to_json(const RatFunc& f) {
  json den = json::array();
  for (const auto& [atom, k] : f.factors()) den.push_back({{"factor", to_json(atom)}, {"power", k}});
  return {{"num", to_json(f.numerator())}, {"den", den}};
}

RatFunc ratfunc_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num")) throw malformed("rational function");
  RatFunc f(poly_from_json(j.at("num")));
  if (j.contains("den"))
    for (const auto& d : j.at("den")) f /= RatFunc(poly_from_json(d.at("factor"))).pow(d.at("power").get<int>());
  return f;
}

json to_json(const Alternating& a) {
  json terms = json::array();
  for (const auto& [m, c] : a.terms()) terms.push_back({{"indices", mask_indices(m)}, {"coeff", to_json(c)}});
  return {{"dim", a.dim()}, {"terms", terms}};
}

json to_json(const bt::AlphaRational& a) {
  json num = json::array(), den = json::array();
  for (const auto& c : a.numerator()) num.push_back(to_json(c));
  for (const auto& [c, k] : a.denominator()) den.push_back({{"shift", c}, {"power", k}});
  return {{"num", num}, {"den", den}};
}

json to_json(const fq::Bidifferential& b, int k) {
  json terms = json::array();
  for (const auto& [vw, c] : b)
    terms.push_back({{"left_word", vw.first}, {"right_word", vw.second}, {"coeff", to_json(c)}});
  return {{"k", k}, {"terms", terms}};
}

}  // namespace bdq::io
