#pragma once

// Exact scalars: GMP rationals, Laurent polynomials in h over Q, and dense
// univariate polynomials over Q and over a prime field.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qmhs/error.hpp"

namespace qmhs {

/// mpq_class keeps values canonical (reduced, positive denominator) as long
/// as every constructor from a numerator/denominator pair is canonicalized.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error(Errc::ZeroDivision, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw Error(Errc::ParseError, "bad rational '" + s + "'");
  if (r.get_den() == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational out(1);
  Rational b = base;
  while (e) {
    if (e & 1U) out *= b;
    e >>= 1U;
    if (e) b *= b;
  }
  return out;
}

inline Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

inline Rational factorial(long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

// ---------------------------------------------------------------------------
// LaurentCoeff: element of Q[h, 1/h], stored as a sorted flat map.

class LaurentCoeff {
 public:
  using Term = std::pair<int, Rational>;

  LaurentCoeff() = default;
  LaurentCoeff(const Rational& c) {  // NOLINT: implicit scalar embedding
    if (c != 0) terms_.emplace_back(0, c);
  }
  LaurentCoeff(long c) : LaurentCoeff(Rational(c)) {}  // NOLINT

  static LaurentCoeff monomial(const Rational& c, int exponent) {
    LaurentCoeff out;
    if (c != 0) out.terms_.emplace_back(exponent, c);
    return out;
  }
  /// h^e
  static LaurentCoeff h(int exponent = 1) { return monomial(Rational(1), exponent); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.back().first; }

  Rational coeff(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int e) { return t.first < e; });
    return (it != terms_.end() && it->first == exponent) ? it->second : Rational(0);
  }

  /// True when the value is a rational constant (no h).
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

  LaurentCoeff operator-() const {
    LaurentCoeff out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
  }

  LaurentCoeff& operator+=(const LaurentCoeff& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        merged.push_back(std::move(*i++));
      } else if (i == terms_.end() || j->first < i->first) {
        merged.push_back(*j++);
      } else {
        Rational s = i->second + j->second;
        if (s != 0) merged.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  LaurentCoeff& operator-=(const LaurentCoeff& o) { return *this += -o; }

  LaurentCoeff& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= c;
    }
    return *this;
  }

  friend LaurentCoeff operator+(LaurentCoeff a, const LaurentCoeff& b) { return a += b; }
  friend LaurentCoeff operator-(LaurentCoeff a, const LaurentCoeff& b) { return a -= b; }
  friend LaurentCoeff operator*(LaurentCoeff a, const Rational& c) { return a *= c; }
  friend LaurentCoeff operator*(const Rational& c, LaurentCoeff a) { return a *= c; }

  friend LaurentCoeff operator*(const LaurentCoeff& a, const LaurentCoeff& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      return monomial(a.terms_[0].second * b.terms_[0].second, a.terms_[0].first + b.terms_[0].first);
    }
    const int lo = a.min_exponent() + b.min_exponent();
    const int hi = a.max_exponent() + b.max_exponent();
    std::vector<Rational> dense(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    LaurentCoeff out;
    for (std::size_t k = 0; k < dense.size(); ++k)
      if (dense[k] != 0) out.terms_.emplace_back(static_cast<int>(k) + lo, std::move(dense[k]));
    return out;
  }
  LaurentCoeff& operator*=(const LaurentCoeff& o) { return *this = *this * o; }

  /// Multiplication by h^shift.
  LaurentCoeff shifted(int shift) const {
    LaurentCoeff out = *this;
    for (auto& t : out.terms_) t.first += shift;
    return out;
  }

  friend bool operator==(const LaurentCoeff& a, const LaurentCoeff& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentCoeff& a, const LaurentCoeff& b) { return !(a == b); }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& [e, c] : terms_) {
      h = h * 1000003U ^ std::hash<int>{}(e);
      h = h * 1000003U ^ std::hash<std::string>{}(c.get_str());
    }
    return h;
  }

  /// Canonical text: ascending exponents, e.g. "-2*h^-1 + 1 + 3/2*h^2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += (c < 0) ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "h";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  static LaurentCoeff parse(std::string_view text);

 private:
  std::vector<Term> terms_;
};

inline LaurentCoeff LaurentCoeff::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(Errc::ParseError, "empty coefficient");
  LaurentCoeff out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (pos != 0) {
      throw Error(Errc::ParseError, "expected sign in '" + s + "'");
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && !(s[end] == '-' && s[end - 1] != '^')) ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw Error(Errc::ParseError, "empty term in '" + s + "'");
    Rational c(1);
    int exponent = 0;
    auto hpos = term.find('h');
    if (hpos == std::string::npos) {
      c = parse_rational(term);
    } else {
      std::string head = term.substr(0, hpos);
      if (!head.empty()) {
        if (head.back() != '*') throw Error(Errc::ParseError, "bad term '" + term + "'");
        c = parse_rational(head.substr(0, head.size() - 1));
      }
      std::string tail = term.substr(hpos + 1);
      exponent = 1;
      if (!tail.empty()) {
        if (tail[0] != '^') throw Error(Errc::ParseError, "bad exponent in '" + term + "'");
        try {
          exponent = std::stoi(tail.substr(1));
        } catch (const std::exception&) {
          throw Error(Errc::ParseError, "bad exponent in '" + term + "'");
        }
      }
    }
    out += monomial(sign * c, exponent);
  }
  return out;
}

/// Evaluate a Laurent polynomial at h = v inside any commutative ring with
/// exact arithmetic. `embed` maps a rational into the ring and `invert`
/// returns the inverse of v (only called when negative exponents occur).
template <class R, class Embed, class Invert>
R laurent_substitute(const LaurentCoeff& a, const R& v, Embed&& embed, Invert&& invert) {
  R out = embed(Rational(0));
  if (a.is_zero()) return out;
  R pos_base = v;
  R neg_base = embed(Rational(1));
  if (a.min_exponent() < 0) neg_base = invert(v);
  auto power = [&](const R& b, int e) {
    R acc = embed(Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * b;
    return acc;
  };
  for (const auto& [e, c] : a.terms()) {
    R p = e >= 0 ? power(pos_base, e) : power(neg_base, -e);
    out = out + embed(c) * p;
  }
  return out;
}

inline Rational laurent_substitute(const LaurentCoeff& a, const Rational& v) {
  return laurent_substitute(
      a, v, [](const Rational& r) { return r; },
      [](const Rational& x) -> Rational {
        if (x == 0) throw Error(Errc::NonInvertible, "h evaluated at 0 with negative exponent");
        return Rational(1) / x;
      });
}

// ---------------------------------------------------------------------------
// UniPoly: dense polynomial over Q, ascending degree.

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(const Rational& constant) {  // NOLINT
    if (constant != 0) c_.push_back(constant);
  }

  static UniPoly x_pow(int n, const Rational& c = Rational(1)) {
    std::vector<Rational> v(static_cast<std::size_t>(n) + 1);
    v.back() = c;
    return UniPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UniPoly(std::move(v));
  }
  UniPoly operator-() const {
    UniPoly out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(v));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& a) { return UniPoly(s) * a; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Quotient and remainder; divisor must be nonzero.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::ZeroDivision, "polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {UniPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    const Rational lead_inv = Rational(1) / b.c_.back();
    for (int i = a.degree(); i >= db; --i) {
      if (rem[i] == 0) continue;
      Rational f = rem[i] * lead_inv;
      quo[i - db] = f;
      for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

  UniPoly monic() const {
    if (c_.empty()) return *this;
    return (Rational(1) / c_.back()) * *this;
  }

  /// Canonical text in the given variable, ascending degree: "1 - 2*z + z^2".
  std::string to_string(std::string_view var = "x") const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const Rational& c = c_[i];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += (c < 0) ? " - " : " + ";
      }
      first = false;
      if (i == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += var;
      if (i != 1) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct ExtGcd {
  UniPoly g;
  UniPoly s;
  UniPoly t;
};

/// Extended Euclid over Q[x]: s*a + t*b = g with g monic.
inline ExtGcd poly_ext_gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::BothZero, "gcd of two zero polynomials");
  UniPoly r0 = a, r1 = b;
  UniPoly s0(Rational(1)), s1;
  UniPoly t0, t1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational scale = Rational(1) / r0.leading();
  return {scale * r0, scale * s0, scale * t0};
}

// ---------------------------------------------------------------------------
// Prime-field helpers and ModPoly: dense polynomial over F_p.

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 result = 1, b = base % p;
  while (e) {
    if (e & 1U) result = result * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(Errc::ZeroDivision, "no inverse of 0 mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Image of a p-integral rational in F_p.
inline std::uint64_t reduce_mod_p(const Rational& r, std::uint64_t p) {
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class den = r.get_den();
  if (mpz_divisible_p(den.get_mpz_t(), pz.get_mpz_t()))
    throw Error(Errc::BadDenominator, "denominator of " + r.get_str() + " divisible by " + std::to_string(p));
  mpz_class num = r.get_num();
  mpz_class n_mod, d_mod;
  mpz_mod(n_mod.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t());
  mpz_mod(d_mod.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  const std::uint64_t n64 = n_mod.get_ui();
  const std::uint64_t d64 = d_mod.get_ui();
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(n64) * mod_inverse(d64, p) % p);
}

class ModPoly {
 public:
  ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= p_;
    trim();
  }
  explicit ModPoly(std::uint64_t p) : p_(p) {}

  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(int(i)) + b.coeff(int(i))) % a.p_;
    return ModPoly(a.p_, std::move(v));
  }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::vector<std::uint64_t> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(int(i)) + a.p_ - b.coeff(int(i))) % a.p_;
    return ModPoly(a.p_, std::move(v));
  }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p_);
    std::vector<std::uint64_t> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        v[i + j] = static_cast<std::uint64_t>((v[i + j] + static_cast<unsigned __int128>(a.c_[i]) * b.c_[j]) % a.p_);
    return ModPoly(a.p_, std::move(v));
  }
  /// Remainder modulo a monic divisor.
  friend ModPoly operator%(const ModPoly& a, const ModPoly& m) {
    if (m.is_zero()) throw Error(Errc::ZeroDivision, "ModPoly division by zero");
    std::vector<std::uint64_t> rem = a.c_;
    const int dm = m.degree();
    const std::uint64_t lead_inv = mod_inverse(m.c_.back(), a.p_);
    for (int i = a.degree(); i >= dm; --i) {
      if (rem[i] == 0) continue;
      const auto f = static_cast<std::uint64_t>(static_cast<unsigned __int128>(rem[i]) * lead_inv % a.p_);
      for (int j = 0; j <= dm; ++j) {
        const auto sub = static_cast<std::uint64_t>(static_cast<unsigned __int128>(f) * m.c_[j] % a.p_);
        rem[i - dm + j] = (rem[i - dm + j] + a.p_ - sub) % a.p_;
      }
    }
    return ModPoly(a.p_, std::move(rem));
  }
  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }

  std::string to_string(std::string_view var = "z") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      if (i == 0 || c_[i] != 1) out += std::to_string(c_[i]);
      if (i > 0) {
        if (c_[i] != 1) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out + " (mod " + std::to_string(p_) + ")";
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

}  // namespace qmhs
