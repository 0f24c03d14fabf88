#include <gtest/gtest.h>

#include <random>
#include <variant>

#include "bdq/pbw.hpp"

using namespace bdq;
using namespace bdq::cr;

namespace {

// Raw rewriting oracle: a term is a coefficient times a mixed sequence of
// letters and functions; redexes are reduced in a strategy-dependent order.
using Item = std::variant<int, RatFunc>;
struct RawTerm {
  RatFunc coeff;
  std::vector<Item> items;
};

enum class Strategy { leftmost, rightmost, random };

EOperator rewrite(const Algebroid& e, const Word& w, Strategy s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RawTerm> work;
  RawTerm start{RatFunc(1), {}};
  for (int a : w) start.items.emplace_back(a);
  work.push_back(start);
  EOperator out;
  while (!work.empty()) {
    RawTerm t = std::move(work.back());
    work.pop_back();
    if (!t.items.empty() && std::holds_alternative<RatFunc>(t.items.front())) {
      t.coeff *= std::get<RatFunc>(t.items.front());
      t.items.erase(t.items.begin());
      work.push_back(std::move(t));
      continue;
    }
    std::vector<std::size_t> redexes;
    for (std::size_t i = 0; i + 1 < t.items.size(); ++i) {
      const Item& x = t.items[i];
      const Item& y = t.items[i + 1];
      if (!std::holds_alternative<int>(x)) continue;
      if (std::holds_alternative<RatFunc>(y) || std::get<int>(x) > std::get<int>(y))
        redexes.push_back(i);
    }
    if (redexes.empty()) {
      Word nw;
      for (const auto& it : t.items) nw.push_back(std::get<int>(it));
      out.add(nw, t.coeff);
      continue;
    }
    std::size_t i = s == Strategy::leftmost    ? redexes.front()
                    : s == Strategy::rightmost ? redexes.back()
                                               : redexes[rng() % redexes.size()];
    int a = std::get<int>(t.items[i]);
    RawTerm swapped = t;
    std::swap(swapped.items[i], swapped.items[i + 1]);
    if (std::holds_alternative<RatFunc>(t.items[i + 1])) {
      RatFunc f = e.act(a, std::get<RatFunc>(t.items[i + 1]));
      work.push_back(std::move(swapped));
      if (!f.is_zero()) {
        RawTerm d = t;
        d.items.erase(d.items.begin() + long(i));
        d.items[i] = f;
        work.push_back(std::move(d));
      }
    } else {
      int b = std::get<int>(t.items[i + 1]);
      work.push_back(std::move(swapped));
      const auto& c = e.structure[std::size_t(a)][std::size_t(b)];
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        RawTerm d = t;
        d.items[i] = c[k];
        d.items[i + 1] = int(k);
        work.push_back(std::move(d));
      }
    }
  }
  return out;
}

std::vector<Word> all_words(int letters, int max_len) {
  std::vector<Word> out{{}};
  std::vector<Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int a = 0; a < letters; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST(PBW, NormalWordsAreFixed) {
  auto e = build_frame(ball(1), ChartKind::boundary);
  Enveloping u(e);
  Word w{0, 1, 1, 3};
  EXPECT_EQ(u.normal_order(w), EOperator::word(w));
}

TEST(PBW, CommutatorRelation) {
  auto e = build_frame(ball(1), ChartKind::boundary);
  Enveloping u(e);
  for (int a = 0; a < e.rank(); ++a)
    for (int b = 0; b < e.rank(); ++b) {
      EOperator lhs = u.normal_order({a, b}) + RatFunc(-1) * u.normal_order({b, a});
      EOperator rhs;
      const auto& c = e.structure[std::size_t(a)][std::size_t(b)];
      for (std::size_t k = 0; k < c.size(); ++k) rhs.add({int(k)}, c[k]);
      EXPECT_EQ(lhs, rhs) << a << "," << b;
    }
}

TEST(PBW, ConfluentOnShortWords) {
  auto e = build_frame(ball(1), ChartKind::boundary);
  Enveloping u(e);
  int checked = 0;
  for (const auto& w : all_words(e.rank(), 3)) {
    EOperator ours = u.normal_order(w);
    EXPECT_EQ(ours, rewrite(e, w, Strategy::leftmost, 0));
    EXPECT_EQ(ours, rewrite(e, w, Strategy::rightmost, 0));
    EXPECT_EQ(ours, rewrite(e, w, Strategy::random, std::uint64_t(checked)));
    ++checked;
  }
  EXPECT_EQ(checked, 1 + 4 + 16 + 64);
}

TEST(PBW, SymbolIsSortedWord) {
  auto e = build_frame(ball(1), ChartKind::boundary);
  Enveloping u(e);
  for (const auto& w : all_words(e.rank(), 3)) {
    if (w.empty()) continue;
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(u.normal_order(w).top(), EOperator::word(sorted));
  }
}

TEST(PBW, ActionMatchesComposition) {
  auto d = ball(1);
  auto e = build_frame(d, ChartKind::boundary);
  Enveloping u(e);
  RatFunc f(parse_poly("z_0^2*zb_1 + 3*z_1*zb_0*zb_1 - I*zb_0^3", d.alpha));
  for (const auto& w : all_words(e.rank(), 3)) {
    RatFunc direct = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it) direct = e.act(*it, direct);
    EXPECT_EQ(u.apply(u.normal_order(w), f), direct);
  }
}

TEST(PBW, Associative) {
  auto e = build_frame(ball(1), ChartKind::boundary);
  Enveloping u(e);
  RatFunc g(parse_poly("z_1*zb_0", e.domain.alpha));
  EOperator x = u.normal_order({3, 1}, g);
  EOperator y = u.normal_order({2, 0});
  EOperator z = u.normal_order({1}, g);
  EXPECT_EQ(u.multiply(u.multiply(x, y), z), u.multiply(x, u.multiply(y, z)));
}
