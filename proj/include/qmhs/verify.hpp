#pragma once

// Verification suites: each enumerates the cases of one theorem over a
// parameter range and checks them exactly (or within certified bounds).

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmhs/algebra.hpp"
#include "qmhs/cyclo.hpp"
#include "qmhs/derivations.hpp"
#include "qmhs/error.hpp"
#include "qmhs/evalq.hpp"
#include "qmhs/products.hpp"
#include "qmhs/series.hpp"

namespace qmhs {

struct VerifyCase {
  std::string descriptor;
  bool pass = false;
  std::string witness;
  double ms = 0;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const VerifyCase& c) { return !c.pass; }));
  }
  bool passed() const { return failures() == 0 && !cases.empty(); }
  double total_ms() const {
    double t = 0;
    for (const auto& c : cases) t += c.ms;
    return t;
  }
};

struct IntRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return hi < lo; }
};

/// Parameters shared by the suites; a field left at its sentinel takes the
/// suite default.
struct VerifyOptions {
  int max_weight = -1;
  int order = -1;
  IntRange n;
  std::vector<int> primes;
  std::vector<Index> indices;
  int m = -1;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"double-shuffle", "log-formulas", "delta-factorization", "cor-delta",
                                              "derivation", "zn-stuffle", "zn-duality", "ohno",
                                              "ones-bar", "fmzv", "varpi-l", "cyc-ohno", "mzv-compare"};
  return names;
}

namespace detail {

inline int pick(int value, int fallback) { return value >= 0 ? value : fallback; }
inline IntRange pick(IntRange r, int lo, int hi) { return r.empty() ? IntRange{lo, hi} : r; }
inline std::vector<int> pick(const std::vector<int>& v, std::vector<int> fallback) { return v.empty() ? fallback : v; }

inline std::vector<Index> indices_up_to(int max_weight, Family f) {
  std::vector<Index> out;
  for (int w = 1; w <= max_weight; ++w)
    for (auto& k : enumerate_indices(w, f)) out.push_back(std::move(k));
  return out;
}

inline std::vector<Index> pick(const std::vector<Index>& given, int max_weight, Family f) {
  return given.empty() ? indices_up_to(max_weight, f) : given;
}

inline std::string idx(const Index& k) { return "(" + k.to_string() + ")"; }

class Runner {
 public:
  explicit Runner(std::string suite) { report_.suite = std::move(suite); }

  /// Runs one case; check returns an empty string on success and a witness
  /// otherwise. Errors thrown by the check count as failures.
  void run(std::string descriptor, const std::function<std::string()>& check) {
    const auto start = std::chrono::steady_clock::now();
    VerifyCase c;
    c.descriptor = std::move(descriptor);
    try {
      c.witness = check();
      c.pass = c.witness.empty();
    } catch (const Error& err) {
      c.witness = std::string("error: ") + err.what();
    }
    c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.cases.push_back(std::move(c));
  }

  VerifyReport finish() {
    std::stable_sort(report_.cases.begin(), report_.cases.end(),
                     [](const VerifyCase& a, const VerifyCase& b) { return a.descriptor < b.descriptor; });
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

template <class C>
std::string diff_witness(const TruncSeries<C>& lhs, const TruncSeries<C>& rhs) {
  if (lhs == rhs) return "";
  return "lhs - rhs = " + (lhs - rhs).to_string();
}

inline std::string diff_witness(const EPoly& lhs, const EPoly& rhs) {
  if (lhs == rhs) return "";
  return "lhs - rhs = " + to_string(lhs - rhs);
}

inline std::string diff_witness(const CycNum& lhs, const CycNum& rhs) {
  if (lhs == rhs) return "";
  return "lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string();
}

inline std::string diff_witness(const ModPoly& lhs, const ModPoly& rhs) {
  if (lhs == rhs) return "";
  return "lhs = " + lhs.to_string() + ", rhs = " + rhs.to_string();
}

inline std::string bound_witness(const CertifiedValue& v) {
  if (v.contains(0)) return "";
  return "value " + to_string(v.value) + " exceeds bound " + to_string(v.tail_bound);
}

inline NcSeries one_minus_e1bar(int order) {
  NcSeries s = NcSeries::one(order);
  if (order >= 1) s[1] = -NcPoly("ab");
  return s;
}

}  // namespace detail

/// Z_q(w *_q w' - w sh_q w') = 0 at q = 1/2, M = 120, words of I0hat.
inline VerifyReport verify_double_shuffle(const VerifyOptions& opt = {}) {
  detail::Runner run("double-shuffle");
  const auto words = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::I0Hat);
  QSeriesEvaluator ev(QValue(make_rational(1, 2)), 120);
  for (const Index& a : words)
    for (const Index& b : words)
      run.run("double-shuffle " + detail::idx(a) + " " + detail::idx(b), [&] {
        const EPoly x = e(a), y = e(b);
        return detail::bound_witness(ev.zq(stuffle_q(x, y) - word_to_e(shuffle_q(e_to_word(x), e_to_word(y)))));
      });
  return run.finish();
}

/// log_sh(1/(1 - e_1bar X)) = psi(X) and log_*(1/(1 - e_1bar X)) = phi(X).
inline VerifyReport verify_log_formulas(const VerifyOptions& opt = {}) {
  detail::Runner run("log-formulas");
  const int order = detail::pick(opt.order, 6);
  const NcSeries geo = geometric(NcPoly("ab"), order);
  run.run("log-shuffle order=" + std::to_string(order),
          [&] { return detail::diff_witness(ts_log(ProductTag::ShuffleQ, geo), series_psi(order)); });
  run.run("log-stuffle order=" + std::to_string(order),
          [&] { return detail::diff_witness(ts_log(ProductTag::StuffleQ, geo), series_phi(order)); });
  return run.finish();
}

/// Phi_X(u) = Psi_X(Delta_X(u)) for u in {a, b}.
inline VerifyReport verify_delta_factorization(const VerifyOptions& opt = {}) {
  detail::Runner run("delta-factorization");
  const int order = detail::pick(opt.order, 6);
  SeriesHomomorphism psi = SeriesHomomorphism::from_family(DerivationFamily::Shuffle, order);
  for (const char* u : {"a", "b"})
    run.run(std::string("delta-factorization u=") + u + " order=" + std::to_string(order),
            [&] { return detail::diff_witness(Phi_X(NcPoly(u), order), psi.apply(Delta_X(NcPoly(u), order))); });
  return run.finish();
}

/// The two rewrites of Phi_X and Psi_X and the corollary
/// 1/(1 - e_1bar X) *_q w = 1/(1 - e_1bar X) sh_q Delta_X(w), on H^1 basis words.
inline VerifyReport verify_cor_delta(const VerifyOptions& opt = {}) {
  detail::Runner run("cor-delta");
  const int order = detail::pick(opt.order, 4);
  const auto words = detail::pick(opt.indices, detail::pick(opt.max_weight, 4), Family::IHat);
  const NcSeries geo = geometric(NcPoly("ab"), order);
  const NcSeries left = detail::one_minus_e1bar(order);
  for (const Index& k : words) {
    const NcPoly w = e_to_word(e(k));
    const NcSeries cw = NcSeries::constant(w, order);
    const NcSeries st = ts_mul(ProductTag::StuffleQ, geo, cw);
    run.run("phi-stuffle-rewrite " + detail::idx(k),
            [&] { return detail::diff_witness(Phi_X(w, order), ts_mul(ProductTag::Concat, left, st)); });
    run.run("psi-shuffle-rewrite " + detail::idx(k), [&] {
      return detail::diff_witness(Psi_X(w, order), ts_mul(ProductTag::Concat, left, ts_mul(ProductTag::ShuffleQ, geo, cw)));
    });
    run.run("cor-delta " + detail::idx(k),
            [&] { return detail::diff_witness(st, ts_mul(ProductTag::ShuffleQ, geo, Delta_X(w, order))); });
  }
  return run.finish();
}

/// Z_q(partial_n(w)) = 0 at q = 1/2, M = 120 for w in the H^0 basis.
inline VerifyReport verify_derivation(const VerifyOptions& opt = {}) {
  detail::Runner run("derivation");
  const IntRange ns = detail::pick(opt.n, 1, 3);
  const auto words = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::I0Hat);
  QSeriesEvaluator ev(QValue(make_rational(1, 2)), 120);
  for (int n = ns.lo; n <= ns.hi; ++n)
    for (const Index& k : words)
      run.run("derivation n=" + std::to_string(n) + " " + detail::idx(k),
              [&] { return detail::bound_witness(ev.zq(partial_n_e(n, e(k)))); });
  return run.finish();
}

/// z_n(w *_q w') = z_n(w) z_n(w').
inline VerifyReport verify_zn_stuffle(const VerifyOptions& opt = {}) {
  detail::Runner run("zn-stuffle");
  const IntRange ns = detail::pick(opt.n, 3, 10);
  const auto words = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::IHat);
  for (int n = ns.lo; n <= ns.hi; ++n) {
    CycEvaluator ev(n);
    for (const Index& a : words)
      for (const Index& b : words)
        run.run("zn-stuffle n=" + std::to_string(n) + " " + detail::idx(a) + " " + detail::idx(b),
                [&] { return detail::diff_witness(ev.z(stuffle_q(e(a), e(b))), ev.z(a) * ev.z(b)); });
  }
  return run.finish();
}

/// z_n(w sh_q w') = z_n(psi(w) w').
inline VerifyReport verify_zn_duality(const VerifyOptions& opt = {}) {
  detail::Runner run("zn-duality");
  const IntRange ns = detail::pick(opt.n, 3, 10);
  const auto words = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::IHat);
  for (int n = ns.lo; n <= ns.hi; ++n) {
    CycEvaluator ev(n);
    for (const Index& a : words)
      for (const Index& b : words)
        run.run("zn-duality n=" + std::to_string(n) + " " + detail::idx(a) + " " + detail::idx(b), [&] {
          const EPoly sh = word_to_e(shuffle_q(e_to_word(e(a)), e_to_word(e(b))));
          return detail::diff_witness(ev.z(sh), ev.z(psi_involution(e(a)) * e(b)));
        });
  }
  return run.finish();
}

/// The Ohno relation for z_n, together with the algebraic identities behind
/// it: the expansion of Delta_X(e_k) through A_{k,s,p} and the combination
/// formula for sum_l e_1^l A_{k,m-p-l,p}.
inline VerifyReport verify_ohno(const VerifyOptions& opt = {}) {
  detail::Runner run("ohno");
  const IntRange ns = detail::pick(opt.n, 4, 12);
  const auto ks = detail::pick(opt.indices, detail::pick(opt.max_weight, 4), Family::I);
  const int max_m = detail::pick(opt.m, 3);
  const int min_m = opt.m >= 0 ? opt.m : 0;
  for (int n = ns.lo; n <= ns.hi; ++n) {
    CycEvaluator ev(n);
    for (const Index& k : ks)
      for (int m = min_m; m <= max_m; ++m) {
        if (n < static_cast<int>(k.depth()) + m + 1) continue;
        run.run("ohno n=" + std::to_string(n) + " " + detail::idx(k) + " m=" + std::to_string(m), [&] {
          const OhnoResult r = ohno_check(k, m, n, &ev);
          return r.holds ? std::string() : detail::diff_witness(r.lhs, r.rhs);
        });
      }
  }
  if (opt.n.empty() && opt.m < 0) {
    const int order = detail::pick(opt.order, 3);
    for (const Index& k : ks) {
      run.run("delta-expansion " + detail::idx(k) + " order=" + std::to_string(order), [&] {
        const ESeries direct = to_e_series(Delta_X(e_to_word(e(k)), order));
        return detail::diff_witness(direct, delta_expansion(k, order));
      });
      for (int p = 0; p <= static_cast<int>(k.depth()); ++p)
        for (int m = p; m <= p + 2; ++m)
          run.run("oyama " + detail::idx(k) + " m=" + std::to_string(m) + " p=" + std::to_string(p),
                  [&] { return detail::diff_witness(oyama_lhs(k, m, p), oyama_rhs(k, m, p)); });
    }
  }
  return run.finish();
}

/// z_n({1bar}^r) = ((-1)^r/n) C(n, r+1) (1 - zeta_n)^r.
inline VerifyReport verify_ones_bar(const VerifyOptions& opt = {}) {
  detail::Runner run("ones-bar");
  const IntRange ns = detail::pick(opt.n, 2, 16);
  for (int n = ns.lo; n <= ns.hi; ++n) {
    CycEvaluator ev(n);
    for (int r = 0; r < std::min(n, 9); ++r)
      run.run("ones-bar n=" + std::to_string(n) + " r=" + std::to_string(r), [&] {
        const Index k(std::vector<Entry>(static_cast<std::size_t>(r), kBar));
        return detail::diff_witness(ev.z(k), ones_bar_closed_form(n, r));
      });
  }
  return run.finish();
}

/// z_p(k) mod (1 - zeta_p) equals the truncated harmonic sum mod p, and the
/// Ohno relation for these residues.
inline VerifyReport verify_fmzv(const VerifyOptions& opt = {}) {
  detail::Runner run("fmzv");
  const auto primes = detail::pick(opt.primes, {5, 7, 11, 13});
  const auto ks = detail::pick(opt.indices, detail::pick(opt.max_weight, 4), Family::I);
  for (int p : primes) {
    CycEvaluator ev(p);
    for (const Index& k : ks) {
      run.run("fmzv p=" + std::to_string(p) + " " + detail::idx(k), [&] {
        const std::uint64_t a = fmzv_reduce(ev.z(k), p), b = harmonic_sum_mod_p(k, p);
        return a == b ? std::string() : "reduction " + std::to_string(a) + " vs harmonic sum " + std::to_string(b);
      });
      for (int m = 0; m <= 2; ++m) {
        if (p < static_cast<int>(k.depth()) + m + 1) continue;
        run.run("fmzv-ohno p=" + std::to_string(p) + " " + detail::idx(k) + " m=" + std::to_string(m), [&] {
          const FmzvOhnoResult r = fmzv_ohno_check(k, m, p);
          return r.holds ? std::string() : "lhs " + std::to_string(r.lhs) + " vs rhs " + std::to_string(r.rhs);
        });
      }
    }
  }
  return run.finish();
}

/// (1 - zeta_p) Z^cyc(k) = 2 Z^cyc(L(k)) mod p, for indices whose L-image has
/// p-integral coefficients.
inline VerifyReport verify_varpi_l(const VerifyOptions& opt = {}) {
  detail::Runner run("varpi-l");
  const auto primes = detail::pick(opt.primes, {7, 11, 13});
  std::vector<Index> ks = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::I);
  if (opt.indices.empty()) ks.insert(ks.begin(), Index{});
  for (int p : primes) {
    CycEvaluator ev(p);
    for (const Index& k : ks) {
      try {
        require_p_integral(l_map(k), p);
      } catch (const Error&) {
        continue;
      }
      run.run("varpi-l p=" + std::to_string(p) + " " + detail::idx(k), [&] {
        const VarpiLResult r = varpi_l_check(k, p, &ev);
        return r.holds ? std::string() : "lhs = " + r.lhs.to_string() + ", L-image = " + r.l_image.to_string();
      });
    }
  }
  return run.finish();
}

/// The Ohno relation for Z^cyc at single primes, with L in place of the
/// (1 - zeta_p) powers.
inline VerifyReport verify_cyc_ohno(const VerifyOptions& opt = {}) {
  detail::Runner run("cyc-ohno");
  const auto primes = detail::pick(opt.primes, {7, 11, 13});
  const auto ks = detail::pick(opt.indices, detail::pick(opt.max_weight, 3), Family::I);
  const int max_m = detail::pick(opt.m, 2);
  for (int p : primes) {
    CycEvaluator ev(p);
    for (const Index& k : ks)
      for (int m = opt.m >= 0 ? opt.m : 0; m <= max_m; ++m) {
        if (p < static_cast<int>(k.depth()) + m + 1) continue;
        EPoly rhs_terms;
        for (int l = 0; l <= m; ++l) rhs_terms += l_power(ohno_shift_terms(k, l), m - l);
        try {
          require_p_integral(rhs_terms, p);
        } catch (const Error&) {
          continue;
        }
        run.run("cyc-ohno p=" + std::to_string(p) + " " + detail::idx(k) + " m=" + std::to_string(m), [&] {
          const CongruenceResult r = cyc_ohno_check(k, m, p, &ev);
          return detail::diff_witness(r.lhs, r.rhs);
        });
      }
  }
  return run.finish();
}

/// ((-1)^n/n) iota(d~_n(z)) = partial_n(iota(z)) on z-words.
inline VerifyReport verify_mzv_compare(const VerifyOptions& opt = {}) {
  detail::Runner run("mzv-compare");
  const IntRange ns = detail::pick(opt.n, 1, 3);
  const auto ks = detail::pick(opt.indices, detail::pick(opt.max_weight, 4), Family::I);
  for (int n = ns.lo; n <= ns.hi; ++n)
    for (const Index& k : ks)
      run.run("mzv-compare n=" + std::to_string(n) + " " + detail::idx(k), [&] {
        std::vector<int> zs;
        for (Entry x : k) zs.push_back(x.value());
        const MzvPoly z = z_word(zs);
        const EPoly lhs = LaurentCoeff(make_rational(n % 2 ? -1 : 1, n)) * iota(mzv_partial(n, z));
        return detail::diff_witness(lhs, partial_n_e_any(n, iota(z)));
      });
  return run.finish();
}

inline VerifyReport run_suite(const std::string& name, const VerifyOptions& opt = {}) {
  static const std::map<std::string, VerifyReport (*)(const VerifyOptions&)> table{
      {"double-shuffle", verify_double_shuffle}, {"log-formulas", verify_log_formulas},
      {"delta-factorization", verify_delta_factorization}, {"cor-delta", verify_cor_delta},
      {"derivation", verify_derivation}, {"zn-stuffle", verify_zn_stuffle},
      {"zn-duality", verify_zn_duality}, {"ohno", verify_ohno},
      {"ones-bar", verify_ones_bar}, {"fmzv", verify_fmzv},
      {"varpi-l", verify_varpi_l}, {"cyc-ohno", verify_cyc_ohno},
      {"mzv-compare", verify_mzv_compare}};
  auto it = table.find(name);
  if (it == table.end()) throw Error(Errc::ParseError, "unknown suite '" + name + "'");
  return it->second(opt);
}

}  // namespace qmhs
