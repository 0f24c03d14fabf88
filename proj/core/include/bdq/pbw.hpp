#pragma once

#include <map>
#include <vector>

#include "bdq/algebroid.hpp"

namespace bdq::cr {

// Frame word e_{w_1} ... e_{w_k}; PBW normal form uses nondecreasing words.
using Word = std::vector<int>;

bool is_normal(const Word& w);

// E-differential operator sum_W c_W e_W with functions on the left.
class EOperator {
 public:
  using Terms = std::map<Word, RatFunc>;

  EOperator() = default;
  static EOperator function(const RatFunc& f);
  static EOperator word(const Word& w, const RatFunc& c = RatFunc(1));

  const Terms& terms() const { return terms_; }
  void add(const Word& w, const RatFunc& c);
  bool is_zero() const { return terms_.empty(); }
  // Longest word length; -1 for zero.
  int order() const;
  // Terms of maximal length.
  EOperator top() const;

  EOperator& operator+=(const EOperator& o);
  EOperator& operator*=(const RatFunc& f);
  friend EOperator operator+(EOperator a, const EOperator& b) { return a += b; }
  friend EOperator operator*(const RatFunc& f, EOperator a) { return a *= f; }
  friend bool operator==(const EOperator& a, const EOperator& b);

 private:
  Terms terms_;
};

// Universal enveloping algebra of an algebroid in the PBW basis. Products of a
// letter with a normal word are memoized.
class Enveloping {
 public:
  explicit Enveloping(const Algebroid& e) : e_(&e) {}

  const Algebroid& algebroid() const { return *e_; }
  // e_a * e_W for a nondecreasing W, normal ordered.
  const EOperator& letter_times_word(int a, const Word& w);
  // e_a * X using e_a f = f e_a + rho(e_a) f.
  EOperator left_multiply(int a, const EOperator& x);
  EOperator multiply(const EOperator& x, const EOperator& y);
  // f e_{w_1} ... e_{w_k} for an arbitrary word.
  EOperator normal_order(const Word& w, const RatFunc& f = RatFunc(1));
  // Action on functions through the anchor.
  RatFunc apply(const EOperator& d, const RatFunc& f) const;

 private:
  const Algebroid* e_;
  std::map<std::pair<int, Word>, EOperator> memo_;
};

}  // namespace bdq::cr
