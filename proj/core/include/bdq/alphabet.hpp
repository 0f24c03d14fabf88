#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bdq {

/// Ordered, duplicate-free list of commuting symbols that polynomials are
/// written over. A symbol may have a partner under the conjugation involution
/// (z_j <-> zb_j); symbols without a partner are real.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names,
                    std::vector<std::pair<std::string, std::string>> conj_pairs = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Index of a symbol, throwing unknown_symbol when absent.
  std::size_t index(const std::string& name) const;
  std::size_t conjugate(std::size_t i) const { return conj_.at(i); }

  bool operator==(const Alphabet& o) const { return names_ == o.names_ && conj_ == o.conj_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> conj_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> names,
                                 std::vector<std::pair<std::string, std::string>> pairs = {}) {
  return std::make_shared<const Alphabet>(std::move(names), std::move(pairs));
}

/// z_0..z_n followed by zb_0..zb_n, paired under conjugation.
AlphabetPtr complex_alphabet(int n);

}  // namespace bdq
