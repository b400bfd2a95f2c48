#include <gtest/gtest.h>

#include <random>

#include "qmhs/products.hpp"

using namespace qmhs;

namespace {

const LaurentCoeff h = LaurentCoeff::h();

EPoly random_epoly(std::mt19937& rng, int max_weight, Family family) {
  std::uniform_int_distribution<int> wt(0, max_weight), num(-3, 3), hexp(-1, 1), count(1, 3);
  EPoly out;
  for (int i = count(rng); i > 0; --i) {
    const auto pool = enumerate_indices(wt(rng), family);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    out.add(pool[pick(rng)], LaurentCoeff::monomial(num(rng), hexp(rng)));
  }
  return out;
}

NcPoly random_words(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), num(-2, 2), bit(0, 1), count(1, 3);
  NcPoly out;
  for (int i = count(rng); i > 0; --i) {
    Word w;
    for (int j = len(rng); j > 0; --j) w += bit(rng) ? 'b' : 'a';
    out.add(w, LaurentCoeff(num(rng)));
  }
  return out;
}

// Shuffle with the opposite strategy: a leading b is pulled from the right
// argument first. Unmemoized.
NcPoly shuffle_right_first(const Word& u, const Word& w) {
  if (u.empty()) return NcPoly(w);
  if (w.empty()) return NcPoly(u);
  NcPoly out;
  auto prepend = [&](char letter, const NcPoly& p) {
    for (const auto& [x, c] : p) out.add(letter + x, c);
  };
  if (w[0] == 'b') {
    prepend('b', shuffle_right_first(u, w.substr(1)));
  } else if (u[0] == 'b') {
    prepend('b', shuffle_right_first(u.substr(1), w));
  } else {
    NcPoly inner = shuffle_right_first(u, w.substr(1)) + shuffle_right_first(u.substr(1), w) +
                   h * shuffle_right_first(u.substr(1), w.substr(1));
    prepend('a', inner);
  }
  return out;
}

bool supported_on(const EPoly& x, Family f) {
  for (const auto& [k, c] : x)
    if (!in_family(k, f)) return false;
  return true;
}

}  // namespace

TEST(Circ, Examples) {
  EXPECT_EQ(circ(kBar, kBar), e(Index{2}) - h * e(Index{kBar}));
  EXPECT_EQ(circ(2, 3), e(Index{5}) + h * e(Index{4}));
  EXPECT_EQ(circ(kBar, 5), e(Index{6}));
  EXPECT_EQ(circ(5, kBar), e(Index{6}));
}

TEST(Circ, AssociativeOnGenerators) {
  // (x o y) o z with o extended linearly on depth-one elements.
  auto circ_poly = [](const EPoly& p, Entry z) {
    EPoly out;
    for (const auto& [k, c] : p) out += c * circ(k.front(), z);
    return out;
  };
  auto circ_poly_left = [](Entry x, const EPoly& p) {
    EPoly out;
    for (const auto& [k, c] : p) out += c * circ(x, k.front());
    return out;
  };
  std::vector<Entry> gens{kBar, 1, 2, 3, 4, 5};
  for (Entry x : gens)
    for (Entry y : gens)
      for (Entry z : gens) EXPECT_EQ(circ_poly(circ(x, y), z), circ_poly_left(x, circ(y, z)));
}

TEST(StuffleQ, Examples) {
  const EPoly one = EPoly::scalar(LaurentCoeff(1));
  EXPECT_EQ(stuffle_q(one, e(Index{2})), e(Index{2}));
  EXPECT_EQ(stuffle_q(e(Index{2}), e(Index{3})), e(Index{2, 3}) + e(Index{3, 2}) + e(Index{5}) + h * e(Index{4}));
  EXPECT_EQ(stuffle_q(e(Index{kBar}), e(Index{kBar})),
            LaurentCoeff(2) * e(Index{kBar, kBar}) + e(Index{2}) - h * e(Index{kBar}));
}

TEST(StuffleQ, CommutativeAssociativeRandomized) {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    const EPoly x = random_epoly(rng, 4, Family::IHat), y = random_epoly(rng, 4, Family::IHat),
                z = random_epoly(rng, 3, Family::IHat);
    EXPECT_EQ(stuffle_q(x, y), stuffle_q(y, x));
    EXPECT_EQ(stuffle_q(stuffle_q(x, y), z), stuffle_q(x, stuffle_q(y, z)));
  }
}

TEST(StuffleQ, PreservesH0) {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    const EPoly x = random_epoly(rng, 4, Family::I0Hat), y = random_epoly(rng, 4, Family::I0Hat);
    EXPECT_TRUE(supported_on(stuffle_q(x, y), Family::I0Hat));
  }
}

TEST(ShuffleQ, Examples) {
  EXPECT_EQ(shuffle_q(word("ab"), word("ab")), LaurentCoeff(2) * word("abab") + h * word("abb"));
  EXPECT_EQ(shuffle_q(NcPoly::scalar(LaurentCoeff(1)), word("aab")), word("aab"));
  EXPECT_EQ(shuffle_q(word("b"), word("b")), word("bb"));
}

TEST(ShuffleQ, StrategyIndependent) {
  for (int len = 0; len <= 4; ++len)
    for (unsigned m1 = 0; m1 < (1U << len); ++m1)
      for (int len2 = 0; len2 <= 3; ++len2)
        for (unsigned m2 = 0; m2 < (1U << len2); ++m2) {
          Word u, w;
          for (int i = 0; i < len; ++i) u += (m1 >> i) & 1U ? 'b' : 'a';
          for (int i = 0; i < len2; ++i) w += (m2 >> i) & 1U ? 'b' : 'a';
          ASSERT_EQ(shuffle_q(NcPoly(u), NcPoly(w)), shuffle_right_first(u, w)) << u << " " << w;
        }
}

TEST(ShuffleQ, CommutativeAssociativeRandomized) {
  std::mt19937 rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const NcPoly x = random_words(rng, 4), y = random_words(rng, 4), z = random_words(rng, 3);
    EXPECT_EQ(shuffle_q(x, y), shuffle_q(y, x));
    EXPECT_EQ(shuffle_q(shuffle_q(x, y), z), shuffle_q(x, shuffle_q(y, z)));
  }
}

TEST(ShuffleQ, ClosedOnH1AndH0) {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    const EPoly x = random_epoly(rng, 3, Family::IHat), y = random_epoly(rng, 3, Family::IHat);
    EXPECT_NO_THROW(word_to_e(shuffle_q(e_to_word(x), e_to_word(y))));
    const EPoly u = random_epoly(rng, 3, Family::I0Hat), v = random_epoly(rng, 3, Family::I0Hat);
    EXPECT_TRUE(supported_on(word_to_e(shuffle_q(e_to_word(u), e_to_word(v))), Family::I0Hat));
  }
}

TEST(Psi, Examples) {
  EXPECT_EQ(psi_involution(e(Index{kBar})), -e(Index{1}));
  EXPECT_EQ(psi_involution(e(Index{1})), -e(Index{kBar}));
  EXPECT_EQ(psi_involution(e(Index{2})), e(Index{2}));
  EXPECT_EQ(psi_involution(e(Index{3})), -(e(Index{3}) + h * e(Index{2})));
}

TEST(Psi, InvolutiveAntiHomomorphism) {
  std::mt19937 rng(505);
  for (int trial = 0; trial < 60; ++trial) {
    const EPoly x = random_epoly(rng, 5, Family::IHat), y = random_epoly(rng, 4, Family::IHat);
    EXPECT_EQ(psi_involution(psi_involution(x)), x);
    EXPECT_EQ(psi_involution(x * y), psi_involution(y) * psi_involution(x));
  }
}

TEST(StuffleClassical, Examples) {
  EXPECT_EQ(stuffle_classical(e(Index{1}), e(Index{2})), e(Index{1, 2}) + e(Index{2, 1}) + e(Index{3}));
  EXPECT_EQ(stuffle_classical(EPoly::scalar(LaurentCoeff(1)), e(Index{2, 1})), e(Index{2, 1}));
  EXPECT_EQ(stuffle_classical(e(Index{1}), e(Index{1})), LaurentCoeff(2) * e(Index{1, 1}) + e(Index{2}));
  try {
    stuffle_classical(e(Index{kBar}), e(Index{1}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::HasBarEntry);
  }
}

TEST(StuffleClassical, CommutativeAssociative) {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    const EPoly x = random_epoly(rng, 4, Family::I), y = random_epoly(rng, 3, Family::I), z = random_epoly(rng, 3, Family::I);
    EXPECT_EQ(stuffle_classical(x, y), stuffle_classical(y, x));
    EXPECT_EQ(stuffle_classical(stuffle_classical(x, y), z), stuffle_classical(x, stuffle_classical(y, z)));
  }
}

TEST(LMap, Examples) {
  const LaurentCoeff third(make_rational(-1, 3));
  EXPECT_EQ(l_map(Index{2}), third * (e(Index{1, 2}) + e(Index{2, 1}) + e(Index{3})));
  EXPECT_EQ(l_map(Index{}), -e(Index{1}));
  EXPECT_EQ(l_map(Index{1}), third * (LaurentCoeff(2) * e(Index{1, 1}) + e(Index{2})));
  EXPECT_THROW(l_map(Index{kBar}), Error);
}

TEST(Multiply, CrossBasisDispatch) {
  const EPoly x = e(Index{2}), y = e(Index{kBar, 3});
  EXPECT_EQ(multiply(ProductTag::StuffleQ, e_to_word(x), e_to_word(y)), e_to_word(stuffle_q(x, y)));
  EXPECT_EQ(multiply(ProductTag::ShuffleQ, x, y), word_to_e(shuffle_q(e_to_word(x), e_to_word(y))));
  EXPECT_EQ(multiply(ProductTag::Concat, x, y), e(Index{2, kBar, 3}));
}
