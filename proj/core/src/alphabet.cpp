#include "bdq/alphabet.hpp"

#include <set>

#include "bdq/errors.hpp"

namespace bdq {

Alphabet::Alphabet(std::vector<std::string> names,
                   std::vector<std::pair<std::string, std::string>> conj_pairs)
    : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error("bad_alphabet", "empty symbol name");
    if (!seen.insert(n).second) throw Error("bad_alphabet", "duplicate symbol '" + n + "'");
  }
  conj_.resize(names_.size());
  for (std::size_t i = 0; i < conj_.size(); ++i) conj_[i] = i;
  for (const auto& [a, b] : conj_pairs) {
    auto ia = index(a);
    auto ib = index(b);
    conj_[ia] = ib;
    conj_[ib] = ia;
  }
}

std::optional<std::size_t> Alphabet::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Alphabet::index(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw unknown_symbol(name);
}

AlphabetPtr complex_alphabet(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int j = 0; j <= n; ++j) names.push_back("z_" + std::to_string(j));
  for (int j = 0; j <= n; ++j) {
    names.push_back("zb_" + std::to_string(j));
    pairs.emplace_back("z_" + std::to_string(j), "zb_" + std::to_string(j));
  }
  return make_alphabet(std::move(names), std::move(pairs));
}

}  // namespace bdq
