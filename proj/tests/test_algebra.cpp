#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qmhs/algebra.hpp"

using namespace qmhs;

namespace {

const LaurentCoeff h = LaurentCoeff::h();

EPoly random_epoly(std::mt19937& rng, int max_weight) {
  std::uniform_int_distribution<int> wt(0, max_weight), num(-3, 3), hexp(-1, 2), count(1, 4);
  EPoly out;
  for (int i = count(rng); i > 0; --i) {
    const auto pool = enumerate_indices(wt(rng), Family::IHat);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    out.add(pool[pick(rng)], LaurentCoeff::monomial(num(rng), hexp(rng)));
  }
  return out;
}

// Brute-force enumeration oracle: every sequence over {1bar, 1, ..., w} of
// total weight w, filtered by the membership predicate.
void brute_indices(int remaining, std::vector<Entry>& cur, std::set<std::vector<int>>& out) {
  if (remaining == 0) {
    std::vector<int> codes;
    for (Entry x : cur) codes.push_back(x.code());
    out.insert(codes);
    return;
  }
  for (int code = 0; code <= remaining; ++code) {
    const Entry x = code == 0 ? kBar : Entry(code);
    if (x.weight() > remaining) continue;
    cur.push_back(x);
    brute_indices(remaining - x.weight(), cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Index, ParseAndPrint) {
  const Index k = Index::parse("2,1bar,3");
  EXPECT_EQ(k, (Index{2, kBar, 3}));
  EXPECT_EQ(k.to_string(), "2,1bar,3");
  EXPECT_EQ(k.weight(), 6);
  EXPECT_EQ(k.depth(), 3u);
  EXPECT_TRUE(Index::parse("").empty());
  EXPECT_THROW(Index::parse("2,0"), Error);
  EXPECT_THROW(Index::parse("2,,3"), Error);
  EXPECT_THROW(Index::parse("1barr"), Error);
}

TEST(Index, Families) {
  EXPECT_TRUE((Index{2, 1}).in_I0());
  EXPECT_FALSE((Index{1, 2}).in_I0hat());
  EXPECT_TRUE((Index{kBar, 1}).in_I0hat());
  EXPECT_FALSE((Index{kBar, 1}).in_I());
  EXPECT_TRUE(Index{}.in_I0());
}

TEST(NcPoly, Concatenation) {
  EXPECT_EQ(word("ab") * word("b"), word("abb"));
  EXPECT_EQ((word("a") + h * word("b")) * word("b"), word("ab") + h * word("bb"));
  const NcPoly d = word("ab") - word("ba");
  NcPoly expect = word("abab");
  expect.add("abba", LaurentCoeff(-1));
  expect.add("baab", LaurentCoeff(-1));
  expect.add("baba", LaurentCoeff(1));
  EXPECT_EQ(d * d, expect);
  EXPECT_THROW(word("abc"), Error);
}

TEST(NcPoly, CanonicalText) {
  NcPoly p = LaurentCoeff(2) * word("abab");
  p.add("abb", h);
  EXPECT_EQ(to_string(p), "2*abab + h*abb");
  EXPECT_EQ(to_string(NcPoly()), "0");
  EXPECT_EQ(to_string(NcPoly::scalar(LaurentCoeff(1) - h)), "(1 - h)");
  EXPECT_EQ(to_string(word("b") - word("a")), "-a + b");
}

TEST(EToWord, Generators) {
  EXPECT_EQ(e_to_word(e(Index{2})), word("aab") + h * word("ab"));
  EXPECT_EQ(e_to_word(e(Index{kBar})), word("ab"));
  EXPECT_EQ(e_to_word(e(Index{kBar, 2})), word("abaab") + h * word("abab"));
}

TEST(WordToE, Blocks) {
  EXPECT_EQ(word_to_e(word("aab")), e(Index{2}) - h * e(Index{kBar}));
  EXPECT_EQ(word_to_e(word("b")), LaurentCoeff::h(-1) * (e(Index{1}) - e(Index{kBar})));
  try {
    word_to_e(word("ba"));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::NotInH1);
  }
}

TEST(WordToE, RoundTripExhaustiveWeight8) {
  for (int w = 0; w <= 8; ++w)
    for (const Index& k : enumerate_indices(w, Family::IHat)) {
      const EPoly x = e(k);
      ASSERT_EQ(word_to_e(e_to_word(x)), x) << k.to_string();
    }
  for (int len = 0; len <= 8; ++len)
    for (unsigned mask = 0; mask < (1U << len); ++mask) {
      Word w;
      for (int i = 0; i < len; ++i) w += (mask >> i) & 1U ? 'b' : 'a';
      if (!w.empty() && w.back() != 'b') continue;
      ASSERT_EQ(e_to_word(word_to_e(NcPoly(w))), NcPoly(w)) << w;
    }
}

TEST(WordToE, RoundTripRandomized) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const EPoly x = random_epoly(rng, 6);
    EXPECT_EQ(word_to_e(e_to_word(x)), x);
  }
}

TEST(LeftMulA, Examples) {
  EXPECT_EQ(left_mul_a(e(Index{3})), e(Index{4}));
  EXPECT_EQ(left_mul_a(e(Index{kBar})), e(Index{2}) - h * e(Index{kBar}));
  EXPECT_EQ(left_mul_a(e(Index{2, 1})), e(Index{3, 1}));
  try {
    left_mul_a(EPoly::scalar(LaurentCoeff(1)));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::EmptyIndex);
  }
}

TEST(LeftMulA, AgreesWithWords) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    EPoly x = random_epoly(rng, 5);
    EPoly nonempty;
    for (const auto& [k, c] : x)
      if (!k.empty()) nonempty.add(k, c);
    EXPECT_EQ(e_to_word(left_mul_a(nonempty)), word("a") * e_to_word(nonempty));
  }
}

TEST(HoffmanDual, Examples) {
  EXPECT_EQ(hoffman_dual(Index{2, 3, 1}), (Index{1, 2, 1, 2}));
  EXPECT_EQ(hoffman_dual(Index{1}), (Index{1}));
  EXPECT_EQ(hoffman_dual(Index{3}), (Index{1, 1, 1}));
  try {
    hoffman_dual(Index{kBar});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::HasBarEntry);
  }
  try {
    hoffman_dual(Index{});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::EmptyIndex);
  }
}

TEST(HoffmanDual, InvolutionWeight8) {
  for (int w = 1; w <= 8; ++w)
    for (const Index& k : enumerate_indices(w, Family::I)) {
      const Index d = hoffman_dual(k);
      ASSERT_EQ(hoffman_dual(d), k);
      ASSERT_EQ(d.weight(), k.weight());
      ASSERT_EQ(static_cast<int>(d.depth()), k.weight() - static_cast<int>(k.depth()) + 1);
    }
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate_indices(2, Family::I0Hat), (std::vector<Index>{Index{2}, Index{kBar, 1}, Index{kBar, kBar}}));
  for (Family f : {Family::IHat, Family::I, Family::I0Hat, Family::I0})
    EXPECT_EQ(enumerate_indices(0, f), std::vector<Index>{Index{}});
  EXPECT_EQ(enumerate_indices(2, Family::I0), std::vector<Index>{Index{2}});
}

TEST(Enumerate, MatchesBruteForce) {
  for (int w = 0; w <= 7; ++w) {
    std::set<std::vector<int>> all;
    std::vector<Entry> cur;
    brute_indices(w, cur, all);
    for (Family f : {Family::IHat, Family::I, Family::I0Hat, Family::I0}) {
      std::set<std::vector<int>> expect;
      for (const auto& codes : all) {
        std::vector<Entry> v;
        for (int c : codes) v.push_back(c == 0 ? kBar : Entry(c));
        if (in_family(Index(v), f)) expect.insert(codes);
      }
      std::set<std::vector<int>> got;
      const auto list = enumerate_indices(w, f);
      for (const Index& k : list) {
        std::vector<int> codes;
        for (Entry x : k) codes.push_back(x.code());
        got.insert(codes);
      }
      EXPECT_EQ(got, expect);
      EXPECT_EQ(list.size(), got.size());
    }
  }
}

TEST(EPoly, CanonicalText) {
  EPoly x = e(Index{2, 3}) + e(Index{3, 2}) + e(Index{5}) + h * e(Index{4});
  EXPECT_EQ(to_string(x), "e[2,3] + e[3,2] + e[5] + h*e[4]");
  EXPECT_EQ(to_string(e(Index{2}) - h * e(Index{kBar})), "e[2] - h*e[1bar]");
  EXPECT_EQ(to_string(EPoly::scalar(LaurentCoeff(3))), "3*e[]");
}
