#pragma once

// Certified evaluation of multiple harmonic q-series at rational q in (0, 1).
//
// A partial sum over m_1 <= M is computed exactly. The tail bound rests on
// two facts valid for 0 < q < 1 and m >= 1:
//   [m] = 1 + q + ... + q^{m-1} >= 1, so every factor F_k(m) lies in (0, 1];
//   F_k(m) <= q^m whenever k != 1 (for 1bar: q^m/[m]; for k >= 2: q^{(k-1)m}/[m]^k).
// Cut k into segments, each a leading entry followed by a run of b_i entries
// equal to 1. A segment whose leading value is m admits at most C(m - 1, b_i)
// placements of its run, each factor bounded by 1. Dropping the ordering
// between segments gives
//   tail <= sum_{m > M} C(m - 1, b_1) rho^m * prod_{i >= 2} (q/(1 - q))^{b_i + 1},
// where rho bounds the leading factor (q for zeta_q). The first sum is
// (rho/(1 - rho))^{b_1 + 1} minus its first M terms. With every inner entry
// equal to 1 this is the plain count C(m_1 - 1, r - 1).

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"

namespace qmhs {

class QValue {
 public:
  explicit QValue(Rational q) : q_(std::move(q)) {
    if (!(q_ > 0 && q_ < 1)) throw Error(Errc::OutOfRange, "q must lie strictly between 0 and 1");
  }
  const Rational& value() const { return q_; }
  /// The value h takes: 1 - q.
  Rational hbar() const { return Rational(1) - q_; }

 private:
  Rational q_;
};

struct CertifiedValue {
  Rational value;
  Rational tail_bound;
  int truncation = 0;

  bool contains(const Rational& x) const { return abs(x - value) <= tail_bound; }
};

/// [m] = (1 - q^m)/(1 - q).
inline Rational q_int(int m, const QValue& q) {
  if (m < 1) throw Error(Errc::OutOfRange, "q-integer needs m >= 1");
  return (Rational(1) - rational_pow(q.value(), static_cast<unsigned>(m))) / q.hbar();
}

/// F_1bar(m) = q^m/[m], F_k(m) = q^{(k-1)m}/[m]^k.
inline Rational f_value(Entry k, int m, const QValue& q) {
  const Rational qm = q_int(m, q);
  if (k.is_bar()) return rational_pow(q.value(), static_cast<unsigned>(m)) / qm;
  return rational_pow(q.value(), static_cast<unsigned>((k.value() - 1) * m)) /
         rational_pow(qm, static_cast<unsigned>(k.value()));
}

/// sum_{m > M} C(m-1, r-1) rho^m for 0 < rho < 1.
inline Rational chain_tail(int r, const Rational& rho, int M) {
  if (r == 0) return Rational(0);
  Rational total = rational_pow(rho / (Rational(1) - rho), static_cast<unsigned>(r));
  Rational head(0);
  Rational power = rational_pow(rho, static_cast<unsigned>(r));
  for (int m = r; m <= M; ++m) {
    head += binomial(m - 1, r - 1) * power;
    power *= rho;
  }
  return total - head;
}

/// The segment bound above for a nonempty index with leading factor <= rho^m.
inline Rational segment_tail(const Index& k, const Rational& rho, const Rational& q, int M) {
  std::vector<int> runs{0};
  for (std::size_t i = 1; i < k.depth(); ++i) {
    if (k[i] == Entry(1)) {
      ++runs.back();
    } else {
      runs.push_back(0);
    }
  }
  Rational out = chain_tail(runs.front() + 1, rho, M);
  const Rational inner = q / (Rational(1) - q);
  for (std::size_t i = 1; i < runs.size(); ++i) out *= rational_pow(inner, static_cast<unsigned>(runs[i] + 1));
  return out;
}

/// Partial sums of nested q-series, sharing work across indices with a
/// common suffix. One instance per (q, M).
class QSeriesEvaluator {
 public:
  QSeriesEvaluator(QValue q, int truncation) : q_(std::move(q)), m_(truncation) {
    if (m_ < 1) throw Error(Errc::OutOfRange, "truncation M must be >= 1");
  }

  const QValue& q() const { return q_; }
  int truncation() const { return m_; }

  /// zeta_q(k) for k in I0hat.
  CertifiedValue zeta(const Index& k) {
    if (!k.in_I0hat()) throw Error(Errc::NotInI0hat, "index " + k.to_string() + " starts with 1");
    if (auto it = zeta_cache_.find(k); it != zeta_cache_.end()) return it->second;
    CertifiedValue out;
    out.truncation = m_;
    if (k.empty()) {
      out.value = 1;
      out.tail_bound = 0;
    } else {
      out.value = cumulative(k)[static_cast<std::size_t>(m_)];
      out.tail_bound = segment_tail(k, q_.value(), q_.value(), m_);
    }
    zeta_cache_.emplace(k, out);
    return out;
  }

  /// Z_q of an element supported on I0hat, with h -> 1 - q.
  CertifiedValue zq(const EPoly& x) {
    CertifiedValue out;
    out.truncation = m_;
    for (const auto& [k, c] : x) {
      const Rational cv = laurent_substitute(c, q_.hbar());
      const CertifiedValue z = zeta(k);
      out.value += cv * z.value;
      out.tail_bound += abs(cv) * z.tail_bound;
    }
    return out;
  }

  /// Truncated multiple polylogarithm L_k(t) for 0 < t <= 1.
  CertifiedValue polylog(const Index& k, const Rational& t) {
    if (!(t > 0 && t <= 1)) throw Error(Errc::OutOfRange, "polylog argument must lie in (0, 1]");
    CertifiedValue out;
    out.truncation = m_;
    if (k.empty()) {
      out.value = 1;
      return out;
    }
    const bool leading_one = k.front() == Entry(1);
    if (t == 1 && leading_one) throw Error(Errc::Divergent, "L_k(1) diverges when k_1 = 1");
    const std::vector<Rational>& inner = cumulative(k.tail());
    Rational tm(1);
    for (int m = 1; m <= m_; ++m) {
      tm *= t;
      const Rational inner_sum = k.depth() == 1 ? Rational(1) : inner[static_cast<std::size_t>(m - 1)];
      out.value += tm * f(k.front(), m) * inner_sum;
    }
    const Rational rho = leading_one ? t : t * q_.value();
    out.tail_bound = segment_tail(k, rho, q_.value(), m_);
    return out;
  }

  /// F_k(m), cached.
  const Rational& f(Entry k, int m) {
    auto key = std::make_pair(k.code(), m);
    if (auto it = f_cache_.find(key); it != f_cache_.end()) return it->second;
    return f_cache_.emplace(key, f_value(k, m, q_)).first->second;
  }

 private:
  /// S[m] = sum over m >= m_1 > ... > m_r >= 1 of prod F_{k_j}(m_j).
  const std::vector<Rational>& cumulative(const Index& k) {
    if (auto it = suffix_cache_.find(k); it != suffix_cache_.end()) return it->second;
    std::vector<Rational> s(static_cast<std::size_t>(m_) + 1);
    if (k.empty()) {
      for (auto& x : s) x = 1;
    } else {
      const std::vector<Rational> inner = cumulative(k.tail());
      for (int m = 1; m <= m_; ++m) {
        Rational term = f(k.front(), m) * inner[static_cast<std::size_t>(m - 1)];
        s[static_cast<std::size_t>(m)] = s[static_cast<std::size_t>(m - 1)] + term;
      }
    }
    return suffix_cache_.emplace(k, std::move(s)).first->second;
  }

  QValue q_;
  int m_;
  std::map<std::pair<int, int>, Rational> f_cache_;
  std::unordered_map<Index, std::vector<Rational>, IndexHash> suffix_cache_;
  std::unordered_map<Index, CertifiedValue, IndexHash> zeta_cache_;
};

inline CertifiedValue zeta_q_partial(const Index& k, const QValue& q, int truncation) {
  QSeriesEvaluator ev(q, truncation);
  return ev.zeta(k);
}

inline CertifiedValue polylog_partial(const Index& k, const Rational& t, const QValue& q, int truncation) {
  QSeriesEvaluator ev(q, truncation);
  return ev.polylog(k, t);
}

inline CertifiedValue Zq_eval(const EPoly& x, const QValue& q, int truncation) {
  QSeriesEvaluator ev(q, truncation);
  return ev.zq(x);
}

/// Certified enclosure of a product from enclosures of the factors.
inline CertifiedValue certified_product(const CertifiedValue& a, const CertifiedValue& b) {
  CertifiedValue out;
  out.truncation = std::min(a.truncation, b.truncation);
  out.value = a.value * b.value;
  out.tail_bound = abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound;
  return out;
}

/// True when two enclosures are consistent with the same true value.
inline bool certified_equal(const CertifiedValue& a, const CertifiedValue& b) {
  return abs(a.value - b.value) <= a.tail_bound + b.tail_bound;
}

/// Rewrites q^{lm}/[m]^k as a combination of F_j(m), returned as a depth-one
/// element of H^1 (e_j standing for F_j, h for 1 - q):
///   k > l >= 0: sum_{j=1}^{k-l} C(k-l-1, j-1) h^{k-l-j} e_{l+j},
///   l = k >= 1: sum_{j=2}^{k} (-h)^{k-j} e_j + (-h)^{k-1} e_1bar.
inline EPoly qpower_over_qint(int k, int l) {
  if (k < 1 || l < 0 || l > k) throw Error(Errc::OutOfRange, "need k >= 1 and 0 <= l <= k");
  EPoly out;
  if (l < k) {
    for (int j = 1; j <= k - l; ++j) out.add(Index{l + j}, LaurentCoeff::monomial(binomial(k - l - 1, j - 1), k - l - j));
    return out;
  }
  auto minus_h_pow = [](int e) { return LaurentCoeff::monomial(Rational(e % 2 ? -1 : 1), e); };
  for (int j = 2; j <= k; ++j) out.add(Index{j}, minus_h_pow(k - j));
  out.add(Index{kBar}, minus_h_pow(k - 1));
  return out;
}

}  // namespace qmhs
