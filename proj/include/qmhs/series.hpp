#pragma once

// Truncated power series in X with polynomial coefficients, and exp/log
// taken with respect to any of the bilinear products.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"
#include "qmhs/products.hpp"

namespace qmhs {

/// sum_{m=0}^{N} c_m X^m, all arithmetic truncated above X^N.
template <class C>
class TruncSeries {
 public:
  explicit TruncSeries(int order = 0) : c_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw Error(Errc::OrderMismatch, "negative truncation order");
  }
  TruncSeries(int order, std::vector<C> coeffs) : TruncSeries(order) {
    for (std::size_t m = 0; m < coeffs.size() && m < c_.size(); ++m) c_[m] = std::move(coeffs[m]);
  }

  /// The constant series c.
  static TruncSeries constant(const C& c, int order) {
    TruncSeries s(order);
    s.c_[0] = c;
    return s;
  }
  static TruncSeries one(int order) { return constant(C::scalar(LaurentCoeff(1)), order); }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const C& operator[](int m) const { return c_[static_cast<std::size_t>(m)]; }
  C& operator[](int m) { return c_[static_cast<std::size_t>(m)]; }
  const std::vector<C>& coeffs() const { return c_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    check_order(o);
    for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    check_order(o);
    for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  TruncSeries& operator*=(const LaurentCoeff& s) {
    for (auto& c : c_) c *= s;
    return *this;
  }
  friend TruncSeries operator*(const LaurentCoeff& s, TruncSeries a) { return a *= s; }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  /// Same coefficients viewed at a different order (truncating or zero-padding).
  TruncSeries with_order(int order) const {
    TruncSeries out(order);
    for (int m = 0; m <= std::min(order, this->order()); ++m) out.c_[m] = c_[m];
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t m = 0; m < c_.size(); ++m) {
      if (c_[m].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + qmhs::to_string(c_[m]) + ")";
      if (m > 0) out += "*X" + (m > 1 ? "^" + std::to_string(m) : std::string());
    }
    return (out.empty() ? "0" : out) + " + O(X^" + std::to_string(c_.size()) + ")";
  }

 private:
  void check_order(const TruncSeries& o) const {
    if (o.c_.size() != c_.size())
      throw Error(Errc::OrderMismatch, "series orders " + std::to_string(order()) + " and " + std::to_string(o.order()));
  }
  std::vector<C> c_;
};

using NcSeries = TruncSeries<NcPoly>;
using ESeries = TruncSeries<EPoly>;

/// Cauchy product with the coefficientwise product selected by `tag`.
template <class C>
TruncSeries<C> ts_mul(ProductTag tag, const TruncSeries<C>& s, const TruncSeries<C>& t) {
  if (s.order() != t.order())
    throw Error(Errc::OrderMismatch,
                "series orders " + std::to_string(s.order()) + " and " + std::to_string(t.order()));
  const int n = s.order();
  TruncSeries<C> out(n);
  for (int i = 0; i <= n; ++i) {
    if (s[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (t[j].is_zero()) continue;
      out[i + j] += multiply(tag, s[i], t[j]);
    }
  }
  return out;
}

/// Concatenation product of a series by a constant polynomial on the left
/// or right.
template <class C>
TruncSeries<C> left_mul(const C& p, const TruncSeries<C>& s) {
  TruncSeries<C> out(s.order());
  for (int m = 0; m <= s.order(); ++m) out[m] = p * s[m];
  return out;
}
template <class C>
TruncSeries<C> right_mul(const TruncSeries<C>& s, const C& p) {
  TruncSeries<C> out(s.order());
  for (int m = 0; m <= s.order(); ++m) out[m] = s[m] * p;
  return out;
}

/// exp_p(f) = sum_{n>=0} f^{p n} / n!, with f(0) = 0.
template <class C>
TruncSeries<C> ts_exp(ProductTag tag, const TruncSeries<C>& f) {
  if (!f[0].is_zero()) throw Error(Errc::BadConstantTerm, "exp needs a series without constant term");
  const int n = f.order();
  TruncSeries<C> out = TruncSeries<C>::one(n);
  TruncSeries<C> power = f;
  for (int k = 1; k <= n; ++k) {
    out += LaurentCoeff(Rational(1) / factorial(k)) * power;
    if (k < n) power = ts_mul(tag, f, power);
  }
  return out;
}

/// log_p(g) = sum_{n>=1} (-1)^{n-1}/n (g - 1)^{p n}, with g(0) = 1.
template <class C>
TruncSeries<C> ts_log(ProductTag tag, const TruncSeries<C>& g) {
  if (g[0] != C::scalar(LaurentCoeff(1))) throw Error(Errc::BadConstantTerm, "log needs constant term 1");
  const int n = g.order();
  TruncSeries<C> f = g;
  f[0] = C();
  TruncSeries<C> out(n);
  TruncSeries<C> power = f;
  for (int k = 1; k <= n; ++k) {
    out += LaurentCoeff(make_rational(k % 2 ? 1 : -1, k)) * power;
    if (k < n) power = ts_mul(tag, f, power);
  }
  return out;
}

/// sum_{n=0}^{N} g^n X^n (concatenation powers).
template <class C>
TruncSeries<C> geometric(const C& g, int order) {
  TruncSeries<C> out = TruncSeries<C>::one(order);
  for (int m = 1; m <= order; ++m) out[m] = g * out[m - 1];
  return out;
}

/// psi(X) = sum_{n>=1} (-1)^{n-1}/n h^{n-1} a b^n X^n.
inline NcSeries series_psi(int order) {
  NcSeries out(order);
  for (int n = 1; n <= order; ++n)
    out[n] = NcPoly("a" + repeat('b', n), LaurentCoeff::monomial(make_rational(n % 2 ? 1 : -1, n), n - 1));
  return out;
}

/// phi(X) = sum_{n>=1} (-1)^{n-1}/n a^n b X^n.
inline NcSeries series_phi(int order) {
  NcSeries out(order);
  for (int n = 1; n <= order; ++n)
    out[n] = NcPoly(repeat('a', n) + "b", LaurentCoeff(make_rational(n % 2 ? 1 : -1, n)));
  return out;
}

/// log(1 + h b X) = sum_{n>=1} (-1)^{n-1}/n h^n b^n X^n.
inline NcSeries series_log_one_plus_hb(int order) {
  NcSeries out(order);
  for (int n = 1; n <= order; ++n)
    out[n] = NcPoly(repeat('b', n), LaurentCoeff::monomial(make_rational(n % 2 ? 1 : -1, n), n));
  return out;
}

inline ESeries to_e_series(const NcSeries& s) {
  ESeries out(s.order());
  for (int m = 0; m <= s.order(); ++m) out[m] = word_to_e(s[m]);
  return out;
}

inline NcSeries to_word_series(const ESeries& s) {
  NcSeries out(s.order());
  for (int m = 0; m <= s.order(); ++m) out[m] = e_to_word(s[m]);
  return out;
}

}  // namespace qmhs
