#pragma once

// The derivations delta_n, d_n, partial_n on the word algebra, the
// homomorphisms Phi_X, Psi_X, Delta_X they exponentiate to, the Ohno
// combinatorics a_s(k), A_{k,s,p}, and the comparison with the classical
// derivations on Q<x, y>.

#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"
#include "qmhs/products.hpp"
#include "qmhs/series.hpp"

namespace qmhs {

enum class DerivationFamily : char { Delta = 'D', Shuffle = 'S', Partial = 'P' };

namespace detail {

inline std::unordered_map<std::string, NcPoly>& derivation_cache() {
  thread_local std::unordered_map<std::string, NcPoly> cache;
  return cache;
}

/// Leibniz extension of a derivation given by its values on a and b.
inline NcPoly leibniz_word(const Word& w, const NcPoly& image_a, const NcPoly& image_b) {
  NcPoly out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const NcPoly& img = (w[i] == 'a') ? image_a : image_b;
    const Word left = w.substr(0, i), right = w.substr(i + 1);
    for (const auto& [u, c] : img) out.add(left + u + right, c);
  }
  return out;
}

inline LaurentCoeff signed_inverse(int n, int sign_exponent) {
  return LaurentCoeff(make_rational(sign_exponent % 2 ? -1 : 1, n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generator values.

/// delta_n(a) = 0, delta_n(b) = (-1)^{n-1}/n (b + 1) a^n b.
inline NcPoly delta_generator(int n, char letter) {
  if (letter == 'a') return {};
  const Word anb = repeat('a', n) + "b";
  NcPoly out;
  out.add("b" + anb, LaurentCoeff(1));
  out.add(anb, LaurentCoeff(1));
  return detail::signed_inverse(n, n - 1) * out;
}

/// partial_n(a) = (-1)^n/n a {a(b+1) + h b}^{n-1} (a + h) b,
/// partial_n(b) = (-1)^{n-1}/n a {(b+1)a + h b}^{n-1} (b + 1) b.
inline NcPoly partial_generator(int n, char letter) {
  const NcPoly a("a"), b("b"), one = NcPoly::scalar(LaurentCoeff(1));
  const NcPoly h_b = LaurentCoeff::h() * b;
  NcPoly out;
  if (letter == 'a') {
    const NcPoly z = a * (b + one) + h_b;
    NcPoly acc = a;
    for (int i = 1; i < n; ++i) acc = acc * z;
    out = acc * (a + NcPoly::scalar(LaurentCoeff::h())) * b;
    return detail::signed_inverse(n, n) * out;
  }
  const NcPoly z = (b + one) * a + h_b;
  NcPoly acc = a;
  for (int i = 1; i < n; ++i) acc = acc * z;
  out = acc * (b + one) * b;
  return detail::signed_inverse(n, n - 1) * out;
}

/// The alternative forms obtained by commuting the middle factor:
/// partial_n(a) = (-1)^n/n a (a + h) {(b+1)a + h b}^{n-1} b,
/// partial_n(b) = (-1)^{n-1}/n a (b + 1) {a(b+1) + h b}^{n-1} b.
inline NcPoly partial_generator_alt(int n, char letter) {
  const NcPoly a("a"), b("b"), one = NcPoly::scalar(LaurentCoeff(1));
  const NcPoly h_b = LaurentCoeff::h() * b;
  if (letter == 'a') {
    const NcPoly z = (b + one) * a + h_b;
    NcPoly acc = a * (a + NcPoly::scalar(LaurentCoeff::h()));
    for (int i = 1; i < n; ++i) acc = acc * z;
    return detail::signed_inverse(n, n) * (acc * b);
  }
  const NcPoly z = a * (b + one) + h_b;
  NcPoly acc = a * (b + one);
  for (int i = 1; i < n; ++i) acc = acc * z;
  return detail::signed_inverse(n, n - 1) * (acc * b);
}

// ---------------------------------------------------------------------------
// Applying the derivations.

namespace detail {

inline const NcPoly& derivation_on_word(DerivationFamily fam, int n, const Word& w);

inline NcPoly shuffle_derivation_word(int n, const Word& w) {
  // d_n(w) = (-h)^{n-1}/n {(a b^n) sh w - a b^n w}
  const Word abn = "a" + repeat('b', n);
  NcPoly out = detail::shuffle_words(abn, w);
  out.add(abn + w, LaurentCoeff(-1));
  const LaurentCoeff scale = LaurentCoeff::monomial(make_rational((n - 1) % 2 ? -1 : 1, n), n - 1);
  return scale * out;
}

inline const NcPoly& derivation_on_word(DerivationFamily fam, int n, const Word& w) {
  auto& cache = derivation_cache();
  std::string key;
  key.reserve(w.size() + 8);
  key += static_cast<char>(fam);
  key += std::to_string(n);
  key += ':';
  key += w;
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  NcPoly out;
  switch (fam) {
    case DerivationFamily::Delta:
    case DerivationFamily::Partial: {
      if (w == "a" || w == "b") {
        out = fam == DerivationFamily::Delta ? delta_generator(n, w[0]) : partial_generator(n, w[0]);
      } else {
        const NcPoly& ia = derivation_on_word(fam, n, "a");
        const NcPoly& ib = derivation_on_word(fam, n, "b");
        out = leibniz_word(w, ia, ib);
      }
      break;
    }
    case DerivationFamily::Shuffle:
      out = shuffle_derivation_word(n, w);
      break;
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace detail

inline NcPoly apply_derivation(DerivationFamily fam, int n, const NcPoly& w) {
  if (n < 1) throw Error(Errc::PreconditionViolated, "derivation index must be >= 1");
  NcPoly out;
  for (const auto& [word, c] : w) {
    if (word.empty()) continue;
    out += c * detail::derivation_on_word(fam, n, word);
  }
  return out;
}

inline NcPoly delta_n(int n, const NcPoly& w) { return apply_derivation(DerivationFamily::Delta, n, w); }
inline NcPoly d_n(int n, const NcPoly& w) { return apply_derivation(DerivationFamily::Shuffle, n, w); }
inline NcPoly partial_n(int n, const NcPoly& w) { return apply_derivation(DerivationFamily::Partial, n, w); }

/// exp(sum_{n>=1} X^n D_n)(w) truncated at X^N, where D_n is the family's
/// n-th derivation extended C[[X]]-linearly. The r-th power of the graded
/// operator has no terms below X^r, so r <= N suffices.
inline NcSeries exp_derivation(DerivationFamily fam, const NcSeries& w) {
  const int order = w.order();
  NcSeries result = w;
  NcSeries power = w;
  for (int r = 1; r <= order; ++r) {
    NcSeries next(order);
    for (int m = r; m <= order; ++m)
      for (int j = 1; j <= m; ++j)
        if (!power[m - j].is_zero()) next[m] += apply_derivation(fam, j, power[m - j]);
    power = std::move(next);
    result += LaurentCoeff(Rational(1) / factorial(r)) * power;
  }
  return result;
}

inline NcSeries exp_derivation(DerivationFamily fam, const NcPoly& w, int order) {
  return exp_derivation(fam, NcSeries::constant(w, order));
}

inline NcSeries Phi_X(const NcPoly& w, int order) { return exp_derivation(DerivationFamily::Delta, w, order); }
inline NcSeries Psi_X(const NcPoly& w, int order) { return exp_derivation(DerivationFamily::Shuffle, w, order); }
inline NcSeries Delta_X(const NcPoly& w, int order) { return exp_derivation(DerivationFamily::Partial, w, order); }

/// Psi_X applied C[[X]]-linearly to a series.
inline NcSeries Psi_X(const NcSeries& s) { return exp_derivation(DerivationFamily::Shuffle, s); }

/// The algebra homomorphism determined by series images of a and b,
/// applied C[[X]]-linearly to a series of words.
class SeriesHomomorphism {
 public:
  SeriesHomomorphism(NcSeries image_a, NcSeries image_b)
      : order_(image_a.order()), a_(std::move(image_a)), b_(std::move(image_b)) {}

  /// Images of a and b computed from the exp-of-derivations definition.
  static SeriesHomomorphism from_family(DerivationFamily fam, int order) {
    return SeriesHomomorphism(exp_derivation(fam, NcPoly("a"), order), exp_derivation(fam, NcPoly("b"), order));
  }

  const NcSeries& on_word(const Word& w) {
    if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    NcSeries out = NcSeries::one(order_);
    if (!w.empty()) {
      const NcSeries& prefix = on_word(w.substr(0, w.size() - 1));
      out = ts_mul(ProductTag::Concat, prefix, w.back() == 'a' ? a_ : b_);
    }
    return cache_.emplace(w, std::move(out)).first->second;
  }

  NcSeries apply(const NcPoly& p) {
    NcSeries out(order_);
    for (const auto& [w, c] : p) out += c * on_word(w);
    return out;
  }

  NcSeries apply(const NcSeries& s) {
    NcSeries out(order_);
    for (int m = 0; m <= s.order() && m <= order_; ++m) {
      if (s[m].is_zero()) continue;
      NcSeries img = apply(s[m]);
      for (int k = 0; m + k <= order_; ++k) out[m + k] += img[k];
    }
    return out;
  }

 private:
  int order_;
  NcSeries a_, b_;
  std::unordered_map<Word, NcSeries> cache_;
};

// ---------------------------------------------------------------------------
// rho_s and the generating series used with d_n.

/// rho_1 = 1, rho_{s+1} = (psi(X) + log(1 + h b X)) rho_s + psi(X) sh rho_s.
inline NcSeries rho_s(int s, int order) {
  if (s < 1) throw Error(Errc::PreconditionViolated, "rho_s needs s >= 1");
  const NcSeries psi = series_psi(order);
  const NcSeries left = psi + series_log_one_plus_hb(order);
  NcSeries rho = NcSeries::one(order);
  for (int i = 1; i < s; ++i) rho = ts_mul(ProductTag::Concat, left, rho) + ts_mul(ProductTag::ShuffleQ, psi, rho);
  return rho;
}

// ---------------------------------------------------------------------------
// partial_n directly in the e-basis.

namespace detail {

inline EPoly e1() { return EPoly(Index{1}); }
inline EPoly e1bar() { return EPoly(Index{kBar}); }

/// (a + e_1)^{times} applied on the left of y.
inline EPoly a_plus_e1_pow(int times, EPoly y) {
  for (int i = 0; i < times; ++i) y = left_mul_a(y) + e1() * y;
  return y;
}

inline std::unordered_map<std::string, EPoly>& partial_e_cache() {
  thread_local std::unordered_map<std::string, EPoly> cache;
  return cache;
}

}  // namespace detail

/// partial_n(a) = (-1)^n/n a (a + e_1)^{n-1} e_1, an element of H^0.
inline EPoly partial_a_e(int n) {
  EPoly y = detail::a_plus_e1_pow(n - 1, detail::e1());
  return detail::signed_inverse(n, n) * left_mul_a(y);
}

/// partial_n(e_k) in the e-basis, for any generator (no H^0 requirement).
inline EPoly partial_generator_e(int n, Entry k) {
  if (n < 1) throw Error(Errc::PreconditionViolated, "derivation index must be >= 1");
  auto& cache = detail::partial_e_cache();
  const std::string key = std::to_string(n) + ":" + k.to_string();
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  EPoly out;
  if (k.is_bar()) {
    // partial_n(e_1 - e_1bar) = (-1)^{n-1}/n (a + e_1bar)(a + e_1)^{n-1}(e_1 - e_1bar)
    EPoly y = detail::a_plus_e1_pow(n - 1, detail::e1() - detail::e1bar());
    y = left_mul_a(y) + detail::e1bar() * y;
    out = partial_generator_e(n, Entry(1)) - detail::signed_inverse(n, n - 1) * y;
  } else if (k.value() == 1) {
    out = -partial_a_e(n);
  } else {
    // partial_n(e_k) = partial_n(a) e_{k-1} + a partial_n(e_{k-1})
    out = partial_a_e(n) * EPoly(Index{k.value() - 1}) + left_mul_a(partial_generator_e(n, Entry(k.value() - 1)));
  }
  cache.emplace(key, out);
  return out;
}

/// Leibniz extension of partial_n over the e-generators, valid on all of H^1.
inline EPoly partial_n_e_any(int n, const EPoly& x) {
  EPoly out;
  for (const auto& [k, c] : x) {
    for (std::size_t i = 0; i < k.depth(); ++i) {
      std::vector<Entry> left(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<Entry> right(k.begin() + static_cast<std::ptrdiff_t>(i) + 1, k.end());
      out += c * (EPoly(Index(left)) * partial_generator_e(n, k[i]) * EPoly(Index(right)));
    }
  }
  return out;
}

/// partial_n on H^0 computed in the e-basis; the image stays in H^0.
inline EPoly partial_n_e(int n, const EPoly& x) {
  for (const auto& [k, c] : x)
    if (!k.in_I0hat()) throw Error(Errc::NotInH0, "index " + k.to_string() + " starts with 1");
  return partial_n_e_any(n, x);
}

// ---------------------------------------------------------------------------
// Ohno combinatorics.

/// a_s(k) for a tuple of nonnegative integers: the sum over all ways of
/// distributing s extra e_1 letters after the wt(k) letters e_0, each block
/// i closed by one e_1.
inline EPoly a_s_index(const std::vector<int>& k, int s) {
  int total = 0;
  for (int x : k) {
    if (x < 0) throw Error(Errc::BadEntry, "a_s needs nonnegative entries");
    total += x;
  }
  if (s < 0) throw Error(Errc::BadEntry, "a_s needs s >= 0");
  EPoly out;
  for (const auto& js : compositions(total, s)) {
    std::string w;
    std::size_t pos = 0;
    for (int ki : k) {
      for (int l = 0; l < ki; ++l) {
        w += '0';
        w += std::string(static_cast<std::size_t>(js[pos++]), '1');
      }
      w += '1';
    }
    out.add(e01_to_index(w), LaurentCoeff(1));
  }
  return out;
}

/// A_{k,s,p} = sum over lambda in {0,1}^r with |lambda| = p of
/// a_s(k_1 + lambda_1 - 1, ..., k_r + lambda_r - 1).
inline EPoly A_ksp(const Index& k, int s, int p) {
  if (k.empty()) throw Error(Errc::EmptyIndex, "A_{k,s,p} needs a nonempty index");
  if (k.has_bar()) throw Error(Errc::BadEntry, "A_{k,s,p} needs an index in I");
  const int r = static_cast<int>(k.depth());
  if (p < 0 || p > r || s < 0) throw Error(Errc::BadEntry, "A_{k,s,p} needs 0 <= p <= dep(k), s >= 0");
  EPoly out;
  for (unsigned mask = 0; mask < (1U << r); ++mask) {
    if (__builtin_popcount(mask) != p) continue;
    std::vector<int> shifted;
    for (int i = 0; i < r; ++i) shifted.push_back(k[i].value() + static_cast<int>((mask >> i) & 1U) - 1);
    out += a_s_index(shifted, s);
  }
  return out;
}

/// sum_{p,s} (-1)^s X^{p+s} A_{k,s,p}, truncated at X^N.
inline ESeries delta_expansion(const Index& k, int order) {
  ESeries out(order);
  for (int total = 0; total <= order; ++total)
    for (int p = 0; p <= std::min<int>(total, static_cast<int>(k.depth())); ++p) {
      const int s = total - p;
      out[total] += LaurentCoeff(s % 2 ? -1 : 1) * A_ksp(k, s, p);
    }
  return out;
}

/// sum_{l+s=m-p} e_1^l A_{k,s,p}.
inline EPoly oyama_lhs(const Index& k, int m, int p) {
  EPoly out;
  for (int l = 0; l <= m - p; ++l) {
    std::vector<Entry> ones(static_cast<std::size_t>(l), Entry(1));
    out += EPoly(Index(ones)) * A_ksp(k, m - p - l, p);
  }
  return out;
}

/// sum over lambda in {0,1}^r, |lambda| = p, and e of weight m - p of
/// e_{((k + lambda)^v + e)^v}.
inline EPoly oyama_rhs(const Index& k, int m, int p) {
  const int r = static_cast<int>(k.depth());
  EPoly out;
  for (unsigned mask = 0; mask < (1U << r); ++mask) {
    if (__builtin_popcount(mask) != p) continue;
    std::vector<int> lambda;
    for (int i = 0; i < r; ++i) lambda.push_back(static_cast<int>((mask >> i) & 1U));
    const Index dual = hoffman_dual(add_tuple(k, lambda));
    for (const auto& shift : compositions(static_cast<int>(dual.depth()), m - p))
      out.add(hoffman_dual(add_tuple(dual, shift)), LaurentCoeff(1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classical derivations on Q<x, y> and the embedding iota.

/// Display order for words over {x, y}: length descending, then x < y.
struct MzvDisplayLess {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

using MzvPoly = SparsePoly<std::string, std::hash<std::string>, MzvDisplayLess>;

inline std::string to_string(const MzvPoly& p) {
  std::vector<std::pair<std::string, LaurentCoeff>> v;
  for (auto& [w, c] : p.sorted()) v.emplace_back(w, c);
  return detail::format_terms(v);
}

/// z_{k_1} ... z_{k_r} as a word in x, y.
inline MzvPoly z_word(const std::vector<int>& ks) {
  std::string w;
  for (int k : ks) {
    if (k < 1) throw Error(Errc::BadEntry, "z_k needs k >= 1");
    w += std::string(static_cast<std::size_t>(k - 1), 'x') + "y";
  }
  return MzvPoly(w);
}

/// Algebra embedding z_k -> e_k of h^1 = Q + h y into H^0.
inline EPoly iota(const MzvPoly& p) {
  EPoly out;
  for (const auto& [w, c] : p) {
    if (!w.empty() && w.back() != 'y') throw Error(Errc::NotInMzvH1, "word '" + w + "' does not end in y");
    std::vector<Entry> v;
    int run = 0;
    for (char ch : w) {
      if (ch == 'x') {
        ++run;
      } else if (ch == 'y') {
        v.emplace_back(run + 1);
        run = 0;
      } else {
        throw Error(Errc::ParseError, "letters of h are x and y");
      }
    }
    out.add(Index(std::move(v)), c);
  }
  return out;
}

/// Derivation on Q<x, y> with x -> x(x+y)^{n-1}y and y -> -x(x+y)^{n-1}y.
inline MzvPoly mzv_partial(int n, const MzvPoly& p) {
  if (n < 1) throw Error(Errc::PreconditionViolated, "derivation index must be >= 1");
  MzvPoly x("x"), y("y");
  MzvPoly img = x;
  for (int i = 1; i < n; ++i) img = img * (x + y);
  img = img * y;
  const MzvPoly neg = -img;
  MzvPoly out;
  for (const auto& [w, c] : p) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const MzvPoly& gi = (w[i] == 'x') ? img : neg;
      const std::string left = w.substr(0, i), right = w.substr(i + 1);
      for (const auto& [u, cu] : gi) out.add(left + u + right, c * cu);
    }
  }
  return out;
}

inline void clear_derivation_caches() {
  detail::derivation_cache().clear();
  detail::partial_e_cache().clear();
}

}  // namespace qmhs
