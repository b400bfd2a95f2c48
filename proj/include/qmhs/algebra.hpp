#pragma once

// Words over {a, b}, sparse noncommutative polynomials, indices over
// {1bar, 1, 2, ...} and the e-generator basis of the subalgebra H^1.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmhs/coeff.hpp"
#include "qmhs/error.hpp"

namespace qmhs {

// ---------------------------------------------------------------------------
// Index entries and indices.

/// One letter of an index: either 1bar or a positive integer.
class Entry {
 public:
  constexpr Entry() = default;
  constexpr Entry(int k) : code_(k) {  // NOLINT: integers read as entries
    if (k < 1) throw Error(Errc::BadEntry, "index entries are 1bar or integers >= 1");
  }
  static constexpr Entry bar() {
    Entry e;
    e.code_ = 0;
    return e;
  }

  constexpr bool is_bar() const { return code_ == 0; }
  /// Integer value; meaningless for 1bar.
  constexpr int value() const { return code_; }
  /// wt(1bar) = 1.
  constexpr int weight() const { return code_ == 0 ? 1 : code_; }
  constexpr int code() const { return code_; }

  std::string to_string() const { return is_bar() ? "1bar" : std::to_string(code_); }

  /// 1bar < 1 < 2 < ...
  friend constexpr auto operator<=>(Entry, Entry) = default;

 private:
  int code_ = 1;
};

inline constexpr Entry kBar = Entry::bar();

class Index {
 public:
  Index() = default;
  Index(std::initializer_list<Entry> entries) : e_(entries) {}
  explicit Index(std::vector<Entry> entries) : e_(std::move(entries)) {}

  std::size_t depth() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  int weight() const {
    int w = 0;
    for (Entry x : e_) w += x.weight();
    return w;
  }
  Entry operator[](std::size_t i) const { return e_[i]; }
  Entry front() const { return e_.front(); }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const std::vector<Entry>& entries() const { return e_; }

  bool has_bar() const {
    return std::any_of(e_.begin(), e_.end(), [](Entry x) { return x.is_bar(); });
  }
  /// Family I: no 1bar entries.
  bool in_I() const { return !has_bar(); }
  /// Family I0hat: first entry is not 1.
  bool in_I0hat() const { return e_.empty() || e_.front() != Entry(1); }
  /// Family I0 (admissible): both of the above.
  bool in_I0() const { return in_I() && in_I0hat(); }

  Index tail() const { return Index(std::vector<Entry>(e_.begin() + 1, e_.end())); }
  Index prepend(Entry x) const {
    std::vector<Entry> v;
    v.reserve(e_.size() + 1);
    v.push_back(x);
    v.insert(v.end(), e_.begin(), e_.end());
    return Index(std::move(v));
  }
  friend Index concat(const Index& a, const Index& b) {
    std::vector<Entry> v = a.e_;
    v.insert(v.end(), b.e_.begin(), b.e_.end());
    return Index(std::move(v));
  }

  friend bool operator==(const Index&, const Index&) = default;
  friend auto operator<=>(const Index& a, const Index& b) { return a.e_ <=> b.e_; }

  /// "2,1bar,3"; the empty index prints as "".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) out += ",";
      out += e_[i].to_string();
    }
    return out;
  }

  static Index parse(std::string_view text) {
    std::vector<Entry> v;
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '(' && ch != ')') s += ch;
    if (s.empty()) return {};
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t comma = s.find(',', pos);
      if (comma == std::string::npos) comma = s.size();
      std::string tok = s.substr(pos, comma - pos);
      v.push_back(parse_entry(tok));
      pos = comma + 1;
    }
    return Index(std::move(v));
  }

  static Entry parse_entry(const std::string& tok) {
    if (tok == "1bar") return kBar;
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::ParseError, "bad index entry '" + tok + "'");
    int k = 0;
    try {
      k = std::stoi(tok);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad index entry '" + tok + "'");
    }
    if (k < 1) throw Error(Errc::ParseError, "index entries must be >= 1 or 1bar");
    return Entry(k);
  }

 private:
  std::vector<Entry> e_;
};

struct IndexHash {
  std::size_t operator()(const Index& k) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Entry x : k) h = (h ^ static_cast<std::size_t>(x.code() + 1)) * 1099511628211ULL;
    return h;
  }
};

/// Display order for indices: weight descending, then lexicographic with
/// 1bar < 1 < 2 < ...
struct IndexDisplayLess {
  bool operator()(const Index& a, const Index& b) const {
    const int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa > wb;
    return a < b;
  }
};

// ---------------------------------------------------------------------------
// Words over {a, b}.

using Word = std::string;

inline bool is_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == 'a' || c == 'b'; });
}

inline Word concat(const Word& a, const Word& b) { return a + b; }

/// Display order for words: length descending, then lexicographic with a < b.
struct WordDisplayLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  }
};

// ---------------------------------------------------------------------------
// SparsePoly: finite formal sums Key -> nonzero LaurentCoeff.

template <class Key, class Hash, class DisplayLess>
class SparsePoly {
 public:
  using key_type = Key;
  using map_type = std::unordered_map<Key, LaurentCoeff, Hash>;

  SparsePoly() = default;
  SparsePoly(const Key& k, const LaurentCoeff& c = LaurentCoeff(1)) { add(k, c); }  // NOLINT

  /// The scalar c times the unit key.
  static SparsePoly scalar(const LaurentCoeff& c) { return SparsePoly(Key{}, c); }

  void add(const Key& k, const LaurentCoeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void add(Key&& k, const LaurentCoeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(k), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const map_type& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  LaurentCoeff coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? LaurentCoeff() : it->second;
  }

  /// Terms sorted in display order.
  std::vector<std::pair<Key, LaurentCoeff>> sorted() const {
    std::vector<std::pair<Key, LaurentCoeff>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return DisplayLess{}(x.first, y.first); });
    return v;
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  SparsePoly operator-() const {
    SparsePoly out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

  SparsePoly& operator*=(const LaurentCoeff& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c = c * s;
    return *this;
  }
  friend SparsePoly operator*(const LaurentCoeff& s, SparsePoly a) { return a *= s; }
  friend SparsePoly operator*(SparsePoly a, const LaurentCoeff& s) { return a *= s; }

  /// Concatenation product, extended bilinearly.
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) out.add(concat(ka, kb), ca * cb);
    return out;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

 private:
  map_type terms_;
};

using NcPoly = SparsePoly<Word, std::hash<Word>, WordDisplayLess>;
using EPoly = SparsePoly<Index, IndexHash, IndexDisplayLess>;

namespace detail {

inline std::string format_terms(const std::vector<std::pair<std::string, LaurentCoeff>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms) {
    bool negative = false;
    std::string cstr;
    if (c.is_monomial()) {
      const auto& [e, r] = c.terms().front();
      negative = r < 0;
      LaurentCoeff mag = negative ? -c : c;
      if (!(e == 0 && abs(r) == 1)) cstr = mag.to_string();
    } else {
      cstr = "(" + c.to_string() + ")";
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (key.empty()) {
      out += cstr.empty() ? "1" : cstr;
    } else {
      out += cstr.empty() ? key : cstr + "*" + key;
    }
  }
  return out;
}

}  // namespace detail

/// "2*abab + h*abb"; the empty word prints as its bare coefficient.
inline std::string to_string(const NcPoly& p) {
  std::vector<std::pair<std::string, LaurentCoeff>> v;
  for (auto& [w, c] : p.sorted()) v.emplace_back(w, c);
  return detail::format_terms(v);
}

/// "e[2,3] + e[3,2] + e[5] + h*e[4]".
inline std::string to_string(const EPoly& p) {
  std::vector<std::pair<std::string, LaurentCoeff>> v;
  for (auto& [k, c] : p.sorted()) v.emplace_back("e[" + k.to_string() + "]", c);
  return detail::format_terms(v);
}

inline NcPoly word(std::string_view w) {
  if (!is_word(w)) throw Error(Errc::ParseError, "words use the letters a and b only");
  return NcPoly(Word(w));
}

inline EPoly e(const Index& k, const LaurentCoeff& c = LaurentCoeff(1)) { return EPoly(k, c); }

inline std::string repeat(char letter, int n) { return std::string(static_cast<std::size_t>(n), letter); }

// ---------------------------------------------------------------------------
// Conversions between the word presentation and the e-basis.

/// Image of a single generator e_k in the word algebra.
inline NcPoly generator_word(Entry k) {
  if (k.is_bar()) return NcPoly("ab");
  NcPoly out(repeat('a', k.value()) + "b");
  out.add(repeat('a', k.value() - 1) + "b", LaurentCoeff::h());
  return out;
}

/// Algebra homomorphism e_k -> a^{k-1}(a + h)b, e_1bar -> ab.
inline NcPoly e_to_word(const EPoly& x) {
  std::unordered_map<int, NcPoly> gens;
  NcPoly out;
  for (const auto& [k, c] : x) {
    NcPoly acc = NcPoly::scalar(c);
    for (Entry ent : k) {
      auto it = gens.find(ent.code());
      if (it == gens.end()) it = gens.emplace(ent.code(), generator_word(ent)).first;
      acc = acc * it->second;
    }
    out += acc;
  }
  return out;
}

/// e-basis expansion of the block a^n b.
inline EPoly block_to_e(int n) {
  EPoly out;
  if (n == 0) {
    // b = h^{-1}(e_1 - e_1bar)
    out.add(Index{1}, LaurentCoeff::h(-1));
    out.add(Index{kBar}, -LaurentCoeff::h(-1));
    return out;
  }
  // a^n b = sum_{j=2}^{n} (-h)^{n-j} e_j + (-h)^{n-1} e_1bar
  auto minus_h_pow = [](int e) { return LaurentCoeff::monomial(Rational(e % 2 ? -1 : 1), e); };
  for (int j = 2; j <= n; ++j) out.add(Index{j}, minus_h_pow(n - j));
  out.add(Index{kBar}, minus_h_pow(n - 1));
  return out;
}

/// Inverse of e_to_word on H^1: every word must end in b (or be empty).
inline EPoly word_to_e(const NcPoly& x) {
  std::unordered_map<int, EPoly> blocks;
  EPoly out;
  for (const auto& [w, c] : x) {
    if (!w.empty() && w.back() != 'b') throw Error(Errc::NotInH1, "word '" + w + "' ends in a");
    EPoly acc = EPoly::scalar(c);
    int run = 0;
    for (char ch : w) {
      if (ch == 'a') {
        ++run;
        continue;
      }
      auto it = blocks.find(run);
      if (it == blocks.end()) it = blocks.emplace(run, block_to_e(run)).first;
      acc = acc * it->second;
      run = 0;
    }
    out += acc;
  }
  return out;
}

/// Left multiplication by a, acting on the leading generator:
/// a e_k = e_{k+1}, a e_1bar = e_2 - h e_1bar.
inline EPoly left_mul_a(const EPoly& x) {
  EPoly out;
  for (const auto& [k, c] : x) {
    if (k.empty()) throw Error(Errc::EmptyIndex, "a * 1 = a is not in H^1");
    const Index rest = k.tail();
    if (k.front().is_bar()) {
      out.add(rest.prepend(Entry(2)), c);
      out.add(rest.prepend(kBar), -(c * LaurentCoeff::h()));
    } else {
      out.add(rest.prepend(Entry(k.front().value() + 1)), c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Index combinatorics.

/// The word in e_0 = '0', e_1 = '1' spelling e_k for k in I.
inline std::string index_to_e01(const Index& k) {
  std::string out;
  for (Entry x : k) {
    if (x.is_bar()) throw Error(Errc::HasBarEntry, "index " + k.to_string() + " contains 1bar");
    out += std::string(static_cast<std::size_t>(x.value() - 1), '0') + "1";
  }
  return out;
}

/// Parse a 0/1 word ending in '1' back into an index.
inline Index e01_to_index(std::string_view w) {
  std::vector<Entry> v;
  int run = 0;
  for (char ch : w) {
    if (ch == '0') {
      ++run;
    } else {
      v.emplace_back(run + 1);
      run = 0;
    }
  }
  if (run != 0) throw Error(Errc::NotInH1, "e0/e1 word does not end in e1");
  return Index(std::move(v));
}

/// Hoffman dual: write e_k = w e_1, swap e_0 <-> e_1 in w, append e_1.
inline Index hoffman_dual(const Index& k) {
  if (k.empty()) throw Error(Errc::EmptyIndex, "Hoffman dual of the empty index");
  std::string w = index_to_e01(k);
  w.pop_back();
  for (char& ch : w) ch = (ch == '0') ? '1' : '0';
  w.push_back('1');
  return e01_to_index(w);
}

enum class Family { IHat, I, I0Hat, I0 };

inline bool in_family(const Index& k, Family f) {
  switch (f) {
    case Family::IHat: return true;
    case Family::I: return k.in_I();
    case Family::I0Hat: return k.in_I0hat();
    case Family::I0: return k.in_I0();
  }
  return false;
}

namespace detail {
inline void enumerate_rec(int remaining, bool allow_bar, std::vector<Entry>& cur, std::vector<Index>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = 1; k <= remaining; ++k) {
    cur.emplace_back(k);
    enumerate_rec(remaining - k, allow_bar, cur, out);
    cur.pop_back();
  }
  if (allow_bar) {
    cur.push_back(kBar);
    enumerate_rec(remaining - 1, allow_bar, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All indices of the given weight in a family. Entries are tried in the
/// order 1, 2, ..., weight, 1bar at each position.
inline std::vector<Index> enumerate_indices(int weight, Family family) {
  std::vector<Index> all;
  std::vector<Entry> cur;
  const bool allow_bar = family == Family::IHat || family == Family::I0Hat;
  detail::enumerate_rec(weight, allow_bar, cur, all);
  std::vector<Index> out;
  for (auto& k : all)
    if (in_family(k, family)) out.push_back(std::move(k));
  return out;
}

/// Every tuple of nonnegative integers of the given length and sum.
inline std::vector<std::vector<int>> compositions(int length, int total) {
  std::vector<std::vector<int>> out;
  if (length == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(length), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == length - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

/// k + e entrywise for k in I.
inline Index add_tuple(const Index& k, const std::vector<int>& shift) {
  if (shift.size() != k.depth()) throw Error(Errc::PreconditionViolated, "shift length differs from depth");
  std::vector<Entry> v;
  for (std::size_t i = 0; i < k.depth(); ++i) {
    if (k[i].is_bar()) throw Error(Errc::HasBarEntry, "shift of an index with 1bar");
    v.emplace_back(k[i].value() + shift[i]);
  }
  return Index(std::move(v));
}

}  // namespace qmhs
