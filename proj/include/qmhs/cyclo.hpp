#pragma once

// Exact arithmetic in Q(zeta_n) and Z[zeta_p]/(p), finite multiple harmonic
// q-series at a root of unity, and the congruences they satisfy.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"
#include "qmhs/products.hpp"

namespace qmhs {

/// Phi_n, by dividing x^n - 1 by Phi_d for every proper divisor d of n.
inline UniPoly cyclotomic_poly(int n) {
  if (n < 1) throw Error(Errc::OutOfRange, "cyclotomic polynomial needs n >= 1");
  thread_local std::map<int, UniPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  UniPoly out = UniPoly::x_pow(n) - UniPoly(Rational(1));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) out = divmod(out, cyclotomic_poly(d)).first;
  cache.emplace(n, out);
  return out;
}

struct CycField {
  int n;
  UniPoly modulus;

  int degree() const { return modulus.degree(); }
};

using CycFieldPtr = std::shared_ptr<const CycField>;

/// Shared field descriptor for Q(zeta_n), n >= 2.
inline CycFieldPtr cyc_field(int n) {
  if (n < 2) throw Error(Errc::OutOfRange, "cyclotomic field needs n >= 2");
  thread_local std::map<int, CycFieldPtr> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  auto f = std::make_shared<const CycField>(CycField{n, cyclotomic_poly(n)});
  cache.emplace(n, f);
  return f;
}

/// An element of Q(zeta_n) as a polynomial of degree < phi(n) in zeta_n.
class CycNum {
 public:
  CycNum(CycFieldPtr field, UniPoly poly) : f_(std::move(field)), p_(std::move(poly)) { reduce(); }
  CycNum(CycFieldPtr field, const Rational& c) : f_(std::move(field)), p_(c) {}

  static CycNum zero(int n) { return CycNum(cyc_field(n), Rational(0)); }
  static CycNum one(int n) { return CycNum(cyc_field(n), Rational(1)); }
  static CycNum zeta(int n) { return CycNum(cyc_field(n), UniPoly::x_pow(1)); }
  /// zeta_n^e for any integer e.
  static CycNum zeta_pow(int n, long e) {
    long r = e % n;
    if (r < 0) r += n;
    return CycNum(cyc_field(n), UniPoly::x_pow(static_cast<int>(r)));
  }

  const CycFieldPtr& field() const { return f_; }
  int n() const { return f_->n; }
  const UniPoly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }

  CycNum& operator+=(const CycNum& o) {
    check(o);
    p_ = p_ + o.p_;
    return *this;
  }
  CycNum& operator-=(const CycNum& o) {
    check(o);
    p_ = p_ - o.p_;
    return *this;
  }
  CycNum& operator*=(const CycNum& o) {
    check(o);
    p_ = p_ * o.p_;
    reduce();
    return *this;
  }
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator*(const Rational& s, const CycNum& a) { return CycNum(a.f_, s * a.p_); }
  CycNum operator-() const { return CycNum(f_, -p_); }

  CycNum pow(unsigned e) const {
    CycNum out(f_, Rational(1)), base = *this;
    while (e) {
      if (e & 1U) out *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return out;
  }

  /// Inverse via extended gcd with the modulus.
  CycNum inverse() const {
    if (is_zero()) throw Error(Errc::ZeroDivision, "inverse of zero in Q(zeta_" + std::to_string(n()) + ")");
    const ExtGcd g = poly_ext_gcd(p_, f_->modulus);
    return CycNum(f_, g.s);
  }

  friend bool operator==(const CycNum& a, const CycNum& b) { return a.n() == b.n() && a.p_ == b.p_; }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  std::string to_string() const { return p_.to_string("z"); }

 private:
  void check(const CycNum& o) const {
    if (o.n() != n())
      throw Error(Errc::PreconditionViolated,
                  "mixing Q(zeta_" + std::to_string(n()) + ") and Q(zeta_" + std::to_string(o.n()) + ")");
  }
  void reduce() {
    if (p_.degree() >= f_->degree()) p_ = p_ % f_->modulus;
  }

  CycFieldPtr f_;
  UniPoly p_;
};

/// 1 - zeta_n, the value h takes at a root of unity.
inline CycNum cyc_hbar(int n) { return CycNum::one(n) - CycNum::zeta(n); }

inline CycNum cyc_substitute(const LaurentCoeff& c, int n) {
  return laurent_substitute(
      c, cyc_hbar(n), [n](const Rational& r) { return CycNum(cyc_field(n), r); },
      [](const CycNum& v) { return v.inverse(); });
}

/// Finite sums over n > m_1 > ... > m_r >= 1 at q = zeta_n, sharing work
/// across indices with a common suffix. One instance per n.
class CycEvaluator {
 public:
  explicit CycEvaluator(int n) : n_(n), field_(cyc_field(n)) {}

  int n() const { return n_; }

  /// [m] at q = zeta_n, for 1 <= m < n.
  const CycNum& q_int(int m) {
    check_m(m);
    if (auto it = qint_cache_.find(m); it != qint_cache_.end()) return it->second;
    std::vector<Rational> v(static_cast<std::size_t>(m), Rational(1));
    return qint_cache_.emplace(m, CycNum(field_, UniPoly(std::move(v)))).first->second;
  }

  /// F_k(m) at q = zeta_n, for 1 <= m < n.
  const CycNum& f(Entry k, int m) {
    check_m(m);
    auto key = std::make_pair(k.code(), m);
    if (auto it = f_cache_.find(key); it != f_cache_.end()) return it->second;
    const CycNum inv = q_int(m).inverse();
    CycNum v = k.is_bar() ? CycNum::zeta_pow(n_, m) * inv
                          : CycNum::zeta_pow(n_, static_cast<long>(k.value() - 1) * m) * inv.pow(static_cast<unsigned>(k.value()));
    return f_cache_.emplace(key, std::move(v)).first->second;
  }

  /// z_n(k; zeta_n); zero when dep(k) >= n, one for the empty index.
  CycNum z(const Index& k) {
    if (k.empty()) return CycNum(field_, Rational(1));
    if (static_cast<int>(k.depth()) >= n_) return CycNum(field_, Rational(0));
    return cumulative(k)[static_cast<std::size_t>(n_ - 1)];
  }

  /// C-linear extension with h -> 1 - zeta_n.
  CycNum z(const EPoly& x) {
    CycNum out(field_, Rational(0));
    for (const auto& [k, c] : x) out += coeff(c) * z(k);
    return out;
  }

  /// A_m(e_k): the sum with m_1 pinned to m. A_m(1) = 1 for m >= 1;
  /// m = 0 is allowed and gives A_0(1) = 1, A_0(e_k) = 0 otherwise.
  CycNum a_m(int m, const Index& k) {
    if (m < 0 || m >= n_) throw Error(Errc::OutOfRange, "A_m needs 0 <= m < n");
    if (k.empty()) return CycNum(field_, Rational(1));
    if (m == 0) return CycNum(field_, Rational(0));
    const CycNum& lead = f(k.front(), m);
    if (k.depth() == 1) return lead;
    return lead * cumulative(k.tail())[static_cast<std::size_t>(m - 1)];
  }

  CycNum a_m(int m, const EPoly& x) {
    CycNum out(field_, Rational(0));
    for (const auto& [k, c] : x) out += coeff(c) * a_m(m, k);
    return out;
  }

  CycNum coeff(const LaurentCoeff& c) {
    if (c.is_constant()) return CycNum(field_, c.coeff(0));
    return cyc_substitute(c, n_);
  }

 private:
  void check_m(int m) const {
    if (m < 1 || m >= n_) throw Error(Errc::OutOfRange, "need 1 <= m < n");
  }

  /// S[m] = sum over m >= m_1 > ... > m_r >= 1, for 0 <= m < n.
  const std::vector<CycNum>& cumulative(const Index& k) {
    if (auto it = suffix_cache_.find(k); it != suffix_cache_.end()) return it->second;
    std::vector<CycNum> s(static_cast<std::size_t>(n_), CycNum(field_, Rational(k.empty() ? 1 : 0)));
    if (!k.empty()) {
      const std::vector<CycNum> inner = cumulative(k.tail());
      for (int m = 1; m < n_; ++m) {
        s[static_cast<std::size_t>(m)] = s[static_cast<std::size_t>(m - 1)];
        if (!inner[static_cast<std::size_t>(m - 1)].is_zero())
          s[static_cast<std::size_t>(m)] += f(k.front(), m) * inner[static_cast<std::size_t>(m - 1)];
      }
    }
    return suffix_cache_.emplace(k, std::move(s)).first->second;
  }

  int n_;
  CycFieldPtr field_;
  std::map<int, CycNum> qint_cache_;
  std::map<std::pair<int, int>, CycNum> f_cache_;
  std::unordered_map<Index, std::vector<CycNum>, IndexHash> suffix_cache_;
};

inline CycNum zn_eval(const Index& k, int n) {
  CycEvaluator ev(n);
  return ev.z(k);
}

inline CycNum zn_map(const EPoly& x, int n) {
  CycEvaluator ev(n);
  return ev.z(x);
}

/// A_m(x) at q = zeta_n for 1 <= m < n.
inline CycNum A_m_helper(int m, const EPoly& x, int n) {
  if (m < 1 || m >= n) throw Error(Errc::OutOfRange, "A_m needs 1 <= m < n");
  CycEvaluator ev(n);
  return ev.a_m(m, x);
}

/// ((-1)^r / n) C(n, r+1) (1 - zeta_n)^r.
inline CycNum ones_bar_closed_form(int n, int r) {
  if (r < 0 || r >= n) throw Error(Errc::OutOfRange, "closed form needs 0 <= r < n");
  const Rational c = Rational(r % 2 ? -1 : 1) * binomial(n, r + 1) / Rational(n);
  return c * cyc_hbar(n).pow(static_cast<unsigned>(r));
}

// ---------------------------------------------------------------------------
// Reductions at a prime p.

inline void require_prime(int p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(Errc::PreconditionViolated, std::to_string(p) + " is not prime");
}

/// Image of v in Z[zeta_p]/(1 - zeta_p) = F_p under zeta_p -> 1.
inline std::uint64_t fmzv_reduce(const CycNum& v, int p) {
  require_prime(p);
  if (v.n() != p)
    throw Error(Errc::PreconditionViolated, "value lies in Q(zeta_" + std::to_string(v.n()) + "), not Q(zeta_" + std::to_string(p) + ")");
  std::uint64_t out = 0;
  for (const auto& c : v.poly().coeffs()) out = (out + reduce_mod_p(c, static_cast<std::uint64_t>(p))) % static_cast<std::uint64_t>(p);
  return out;
}

/// Phi_p reduced mod p, i.e. (x - 1)^{p-1}.
inline ModPoly cyclotomic_mod_p(int p) {
  return ModPoly(static_cast<std::uint64_t>(p), std::vector<std::uint64_t>(static_cast<std::size_t>(p), 1));
}

/// Image of v in Z[zeta_p]/(p) = F_p[x]/(Phi_p).
inline ModPoly reduce_cyc_mod_p(const CycNum& v, int p) {
  require_prime(p);
  if (v.n() != p) throw Error(Errc::PreconditionViolated, "value does not lie in Q(zeta_" + std::to_string(p) + ")");
  std::vector<std::uint64_t> c;
  for (const auto& x : v.poly().coeffs()) c.push_back(reduce_mod_p(x, static_cast<std::uint64_t>(p)));
  return ModPoly(static_cast<std::uint64_t>(p), std::move(c));
}

inline void require_p_integral(const EPoly& x, int p) {
  const mpz_class pz(p);
  for (const auto& [k, c] : x)
    for (const auto& [e, r] : c.terms())
      if (mpz_divisible_p(r.get_den().get_mpz_t(), pz.get_mpz_t()))
        throw Error(Errc::BadDenominator, "coefficient " + to_string(r) + " of e[" + k.to_string() + "] has denominator divisible by " + std::to_string(p));
}

/// Single-prime component of Z^cyc: z_p(x; zeta_p) mod (p).
inline ModPoly zcyc_mod_p(const EPoly& x, int p, CycEvaluator* ev = nullptr) {
  require_prime(p);
  require_p_integral(x, p);
  if (ev) return reduce_cyc_mod_p(ev->z(x), p);
  CycEvaluator local(p);
  return reduce_cyc_mod_p(local.z(x), p);
}

/// sum_{p > m_1 > ... > m_r >= 1} prod m_j^{-k_j} mod p, computed in F_p.
inline std::uint64_t harmonic_sum_mod_p(const Index& k, int p) {
  require_prime(p);
  if (k.has_bar()) throw Error(Errc::HasBarEntry, "harmonic sums need an index without 1bar");
  const auto P = static_cast<std::uint64_t>(p);
  std::vector<std::uint64_t> s(P, 1);
  for (auto it = k.entries().rbegin(); it != k.entries().rend(); ++it) {
    std::vector<std::uint64_t> next(P, 0);
    for (std::uint64_t m = 1; m < P; ++m) {
      const std::uint64_t term = mod_pow(mod_inverse(m, P), static_cast<std::uint64_t>(it->value()), P) * s[m - 1] % P;
      next[m] = (next[m - 1] + term) % P;
    }
    s = std::move(next);
  }
  return s[P - 1];
}

// ---------------------------------------------------------------------------
// Ohno-type relations.

/// sum over e in Z_{>=0}^s with wt(e) = m of e_{(k^vee + e)^vee}, s = dep(k^vee).
inline EPoly ohno_lhs_terms(const Index& k, int m) {
  const Index dual = hoffman_dual(k);
  EPoly out;
  for (const auto& e : compositions(static_cast<int>(dual.depth()), m))
    out.add(hoffman_dual(add_tuple(dual, e)), LaurentCoeff(1));
  return out;
}

/// sum over e' in Z_{>=0}^r with wt(e') = l of e_{k + e'}.
inline EPoly ohno_shift_terms(const Index& k, int l) {
  EPoly out;
  for (const auto& e : compositions(static_cast<int>(k.depth()), l)) out.add(add_tuple(k, e), LaurentCoeff(1));
  return out;
}

/// (1/n) C(n, j + 1), the rational weight of (1 - zeta_n)^j in the relation.
inline Rational ohno_weight(int n, int j) { return binomial(n, j + 1) / Rational(n); }

/// "c*(1-z)^j" rendering of one right-hand weight.
inline std::string ohno_weight_string(int n, int j) {
  const Rational c = ohno_weight(n, j);
  std::string power = j == 0 ? "" : (j == 1 ? "(1-z)" : "(1-z)^" + std::to_string(j));
  if (power.empty()) return to_string(c);
  return c == 1 ? power : to_string(c) + "*" + power;
}

struct OhnoResult {
  bool holds = false;
  CycNum lhs;
  CycNum rhs;
};

inline void check_ohno_args(const Index& k, int m, int n) {
  if (k.empty()) throw Error(Errc::PreconditionViolated, "Ohno relation needs a nonempty index");
  if (!k.in_I()) throw Error(Errc::PreconditionViolated, "Ohno relation needs an index without 1bar");
  if (m < 0) throw Error(Errc::PreconditionViolated, "m must be >= 0");
  if (n < static_cast<int>(k.depth()) + m + 1)
    throw Error(Errc::PreconditionViolated, "need n >= dep(k) + m + 1, got n = " + std::to_string(n));
}

inline OhnoResult ohno_check(const Index& k, int m, int n, CycEvaluator* ev = nullptr) {
  check_ohno_args(k, m, n);
  CycEvaluator local(n);
  CycEvaluator& e = ev ? *ev : local;
  OhnoResult out{false, e.z(ohno_lhs_terms(k, m)), CycNum::zero(n)};
  const CycNum hb = cyc_hbar(n);
  for (int l = 0; l <= m; ++l)
    out.rhs += (ohno_weight(n, m - l) * hb.pow(static_cast<unsigned>(m - l))) * e.z(ohno_shift_terms(k, l));
  out.holds = out.lhs == out.rhs;
  return out;
}

/// Scale c in (1 - zeta_p) Z^cyc(k) = c Z^cyc(L(k)). The congruence holds
/// with c = 2 for every index and prime checked; with c = 1 it already
/// fails at k = () since z_p(1) = (p - 1)/2 (1 - zeta_p).
inline constexpr long kVarpiLScale = 2;

struct VarpiLResult {
  bool holds = false;
  bool holds_unscaled = false;
  ModPoly lhs;
  ModPoly l_image;
};

/// Compares (1 - zeta_p) Z^cyc(k) with Z^cyc(L(k)) at a single prime.
inline VarpiLResult varpi_l_check(const Index& k, int p, CycEvaluator* ev = nullptr) {
  require_prime(p);
  const EPoly lk = l_map(k);
  require_p_integral(lk, p);
  CycEvaluator local(p);
  CycEvaluator& e = ev ? *ev : local;
  VarpiLResult out{false, false, reduce_cyc_mod_p(cyc_hbar(p) * e.z(k), p), zcyc_mod_p(lk, p, &e)};
  const ModPoly scaled = ModPoly(static_cast<std::uint64_t>(p), {static_cast<std::uint64_t>(kVarpiLScale)}) * out.l_image;
  out.holds = out.lhs == scaled;
  out.holds_unscaled = out.lhs == out.l_image;
  return out;
}

/// L applied j times, extended linearly.
inline EPoly l_power(const EPoly& x, int j) {
  EPoly out = x;
  for (int i = 0; i < j; ++i) out = l_map(out);
  return out;
}

struct CongruenceResult {
  bool holds = false;
  ModPoly lhs;
  ModPoly rhs;
};

/// The Ohno relation for Z^cyc at a single prime p >= dep(k) + m + 1:
/// sum Z^cyc((k^vee + e)^vee) = sum_l c^{m-l} (-1)^{m-l}/(m-l+1) sum Z^cyc(L^{m-l}(k + e')),
/// with c = kVarpiLScale by default.
inline CongruenceResult cyc_ohno_check(const Index& k, int m, int p, CycEvaluator* ev = nullptr,
                                       long scale = kVarpiLScale) {
  require_prime(p);
  check_ohno_args(k, m, p);
  CycEvaluator local(p);
  CycEvaluator& e = ev ? *ev : local;
  EPoly rhs;
  for (int l = 0; l <= m; ++l)
    rhs += LaurentCoeff(Rational((m - l) % 2 ? -1 : 1) * rational_pow(Rational(scale), static_cast<unsigned>(m - l)) /
                        Rational(m - l + 1)) *
           l_power(ohno_shift_terms(k, l), m - l);
  CongruenceResult out{false, zcyc_mod_p(ohno_lhs_terms(k, m), p, &e), zcyc_mod_p(rhs, p, &e)};
  out.holds = out.lhs == out.rhs;
  return out;
}

struct FmzvOhnoResult {
  bool holds = false;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
};

/// The Ohno relation for finite multiple zeta values at a single prime,
/// evaluated through harmonic sums mod p.
inline FmzvOhnoResult fmzv_ohno_check(const Index& k, int m, int p) {
  require_prime(p);
  check_ohno_args(k, m, p);
  const auto P = static_cast<std::uint64_t>(p);
  FmzvOhnoResult out;
  for (const auto& [idx, c] : ohno_lhs_terms(k, m))
    out.lhs = (out.lhs + reduce_mod_p(c.coeff(0), P) * harmonic_sum_mod_p(idx, p)) % P;
  for (const auto& [idx, c] : ohno_shift_terms(k, m))
    out.rhs = (out.rhs + reduce_mod_p(c.coeff(0), P) * harmonic_sum_mod_p(idx, p)) % P;
  out.holds = out.lhs == out.rhs;
  return out;
}

}  // namespace qmhs
