#pragma once

// Bilinear products: the circle product on generators, the q-stuffle on the
// e-basis, the q-shuffle on words, the classical stuffle, the anti-involution
// psi and the map L.

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"

namespace qmhs {

enum class ProductTag { Concat, StuffleQ, ShuffleQ, StuffleClassical };

inline const char* product_name(ProductTag t) {
  switch (t) {
    case ProductTag::Concat: return "concat";
    case ProductTag::StuffleQ: return "stuffle_q";
    case ProductTag::ShuffleQ: return "shuffle_q";
    case ProductTag::StuffleClassical: return "stuffle";
  }
  return "?";
}

namespace detail {

template <class K>
struct PairHash {
  std::size_t operator()(const std::pair<K, K>& p) const noexcept {
    if constexpr (std::is_same_v<K, Index>) {
      return IndexHash{}(p.first) * 0x9e3779b97f4a7c15ULL ^ IndexHash{}(p.second);
    } else {
      return std::hash<K>{}(p.first) * 0x9e3779b97f4a7c15ULL ^ std::hash<K>{}(p.second);
    }
  }
};

template <class K, class V>
using PairCache = std::unordered_map<std::pair<K, K>, V, PairHash<K>>;

inline EPoly prepend_all(Entry x, const EPoly& p) {
  EPoly out;
  for (const auto& [k, c] : p) out.add(k.prepend(x), c);
  return out;
}

inline NcPoly prepend_all(char letter, const NcPoly& p) {
  NcPoly out;
  for (const auto& [w, c] : p) out.add(letter + w, c);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Circle product on generators.

/// e_1bar o e_1bar = e_2 - h e_1bar, e_1bar o e_k = e_{k+1},
/// e_k o e_l = e_{k+l} + h e_{k+l-1}.
inline EPoly circ(Entry k, Entry l) {
  EPoly out;
  if (k.is_bar() && l.is_bar()) {
    out.add(Index{2}, LaurentCoeff(1));
    out.add(Index{kBar}, -LaurentCoeff::h());
  } else if (k.is_bar() || l.is_bar()) {
    const int other = k.is_bar() ? l.value() : k.value();
    out.add(Index{other + 1}, LaurentCoeff(1));
  } else {
    out.add(Index{k.value() + l.value()}, LaurentCoeff(1));
    out.add(Index{k.value() + l.value() - 1}, LaurentCoeff::h());
  }
  return out;
}

// ---------------------------------------------------------------------------
// q-stuffle.

namespace detail {

template <class Circ>
const EPoly& stuffle_indices(const Index& u, const Index& v, PairCache<Index, EPoly>& cache, Circ&& circ_fn) {
  auto key = std::make_pair(u, v);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  EPoly out;
  if (u.empty()) {
    out = EPoly(v);
  } else if (v.empty()) {
    out = EPoly(u);
  } else {
    const Index ut = u.tail(), vt = v.tail();
    out += prepend_all(u.front(), stuffle_indices(ut, v, cache, circ_fn));
    out += prepend_all(v.front(), stuffle_indices(u, vt, cache, circ_fn));
    const EPoly& rest = stuffle_indices(ut, vt, cache, circ_fn);
    out += circ_fn(u.front(), v.front()) * rest;
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

inline PairCache<Index, EPoly>& stuffle_q_cache() {
  thread_local PairCache<Index, EPoly> cache;
  return cache;
}

inline PairCache<Index, EPoly>& stuffle_classical_cache() {
  thread_local PairCache<Index, EPoly> cache;
  return cache;
}

inline EPoly circ_classical(Entry k, Entry l) { return EPoly(Index{k.value() + l.value()}); }

}  // namespace detail

/// q-stuffle product on the e-basis. Memoized per thread on index pairs.
inline EPoly stuffle_q(const EPoly& u, const EPoly& v) {
  EPoly out;
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) {
      const EPoly& prod = detail::stuffle_indices(ku, kv, detail::stuffle_q_cache(), circ);
      out += (cu * cv) * prod;
    }
  return out;
}

/// Classical stuffle on H^1_Q: the merged term is e_{k+l} alone.
inline EPoly stuffle_classical(const EPoly& u, const EPoly& v) {
  for (const auto* p : {&u, &v})
    for (const auto& [k, c] : *p)
      if (k.has_bar()) throw Error(Errc::HasBarEntry, "classical stuffle of index with 1bar: " + k.to_string());
  EPoly out;
  for (const auto& [ku, cu] : u)
    for (const auto& [kv, cv] : v) {
      const EPoly& prod = detail::stuffle_indices(ku, kv, detail::stuffle_classical_cache(), detail::circ_classical);
      out += (cu * cv) * prod;
    }
  return out;
}

// ---------------------------------------------------------------------------
// q-shuffle.

namespace detail {

inline PairCache<Word, NcPoly>& shuffle_cache() {
  thread_local PairCache<Word, NcPoly> cache;
  return cache;
}

/// Fixed strategy: a leading b is pulled from the left argument first.
inline const NcPoly& shuffle_words(const Word& u, const Word& w) {
  auto& cache = shuffle_cache();
  auto key = std::make_pair(u, w);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  NcPoly out;
  if (u.empty()) {
    out = NcPoly(w);
  } else if (w.empty()) {
    out = NcPoly(u);
  } else if (u[0] == 'b') {
    out = prepend_all('b', shuffle_words(u.substr(1), w));
  } else if (w[0] == 'b') {
    out = prepend_all('b', shuffle_words(u, w.substr(1)));
  } else {
    const Word ut = u.substr(1), wt = w.substr(1);
    NcPoly inner = shuffle_words(u, wt);
    inner += shuffle_words(ut, w);
    inner += LaurentCoeff::h() * shuffle_words(ut, wt);
    out = prepend_all('a', inner);
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace detail

/// q-shuffle product on the word algebra.
inline NcPoly shuffle_q(const NcPoly& u, const NcPoly& v) {
  NcPoly out;
  for (const auto& [wu, cu] : u)
    for (const auto& [wv, cv] : v) out += (cu * cv) * detail::shuffle_words(wu, wv);
  return out;
}

// ---------------------------------------------------------------------------
// Anti-involution psi.

/// psi(e_1bar) = -e_1, psi(e_1) = -e_1bar,
/// psi(e_k) = (-1)^k sum_{j=2}^{k} C(k-2, j-2) h^{k-j} e_j for k >= 2.
inline EPoly psi_generator(Entry k) {
  EPoly out;
  if (k.is_bar()) {
    out.add(Index{1}, LaurentCoeff(-1));
  } else if (k.value() == 1) {
    out.add(Index{kBar}, LaurentCoeff(-1));
  } else {
    const int kv = k.value();
    const Rational sign(kv % 2 ? -1 : 1);
    for (int j = 2; j <= kv; ++j) out.add(Index{j}, LaurentCoeff::monomial(sign * binomial(kv - 2, j - 2), kv - j));
  }
  return out;
}

/// C-linear anti-homomorphism: psi(e_{k1}...e_{kr}) = psi(e_{kr})...psi(e_{k1}).
inline EPoly psi_involution(const EPoly& x) {
  std::unordered_map<int, EPoly> gens;
  EPoly out;
  for (const auto& [k, c] : x) {
    EPoly acc = EPoly::scalar(c);
    for (auto it = k.entries().rbegin(); it != k.entries().rend(); ++it) {
      auto g = gens.find(it->code());
      if (g == gens.end()) g = gens.emplace(it->code(), psi_generator(*it)).first;
      acc = acc * g->second;
    }
    out += acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The map L(e_k) = -1/(2 dep(k) + 1) e_1 * e_k on H^1_Q.

inline EPoly l_map(const Index& k) {
  if (k.has_bar()) throw Error(Errc::HasBarEntry, "L is defined on indices without 1bar: " + k.to_string());
  EPoly out = stuffle_classical(EPoly(Index{1}), EPoly(k));
  out *= LaurentCoeff(make_rational(-1, static_cast<long>(2 * k.depth() + 1)));
  return out;
}

/// Linear extension of L.
inline EPoly l_map(const EPoly& x) {
  EPoly out;
  for (const auto& [k, c] : x) out += c * l_map(k);
  return out;
}

// ---------------------------------------------------------------------------
// Product dispatch, used by the truncated series code.

inline NcPoly multiply(ProductTag tag, const NcPoly& a, const NcPoly& b) {
  switch (tag) {
    case ProductTag::Concat: return a * b;
    case ProductTag::ShuffleQ: return shuffle_q(a, b);
    case ProductTag::StuffleQ: return e_to_word(stuffle_q(word_to_e(a), word_to_e(b)));
    case ProductTag::StuffleClassical: return e_to_word(stuffle_classical(word_to_e(a), word_to_e(b)));
  }
  return {};
}

inline EPoly multiply(ProductTag tag, const EPoly& a, const EPoly& b) {
  switch (tag) {
    case ProductTag::Concat: return a * b;
    case ProductTag::StuffleQ: return stuffle_q(a, b);
    case ProductTag::StuffleClassical: return stuffle_classical(a, b);
    case ProductTag::ShuffleQ: return word_to_e(shuffle_q(e_to_word(a), e_to_word(b)));
  }
  return {};
}

/// Drop all memo tables held by the calling thread.
inline void clear_product_caches() {
  detail::stuffle_q_cache().clear();
  detail::stuffle_classical_cache().clear();
  detail::shuffle_cache().clear();
}

}  // namespace qmhs
