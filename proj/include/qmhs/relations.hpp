#pragma once

// Export of derivation and Ohno relations as JSON or CSV records.

#include <string>
#include <vector>

#include <json.hpp>

#include "qmhs/algebra.hpp"
#include "qmhs/cyclo.hpp"
#include "qmhs/derivations.hpp"
#include "qmhs/error.hpp"
#include "qmhs/evalq.hpp"

namespace qmhs {

struct RelationTerm {
  Index index;
  std::string coeff;

  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// kind "derivation": terms is the e-basis expansion of partial_n(e_word).
/// kind "ohno": terms is the left side sum e_{(k^v + e)^v}, rhs the right side
/// with coefficients rendered as "c*(1-z)^j".
struct RelationRecord {
  std::string kind;
  int n = 0;
  Index word;
  int m = -1;
  std::vector<RelationTerm> terms;
  std::vector<RelationTerm> rhs;
  bool verified = false;

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

inline constexpr int kDefaultWeightCeiling = 6;

struct ExportOptions {
  std::string kind = "derivation";
  int max_n = 3;
  int max_weight = 5;
  int ceiling = kDefaultWeightCeiling;
  int max_m = 2;
};

namespace detail {

inline std::vector<RelationTerm> to_terms(const EPoly& x) {
  std::vector<RelationTerm> out;
  for (const auto& [k, c] : x.sorted()) out.push_back({k, c.to_string()});
  return out;
}

inline nlohmann::ordered_json index_json(const Index& k) {
  auto arr = nlohmann::ordered_json::array();
  for (Entry x : k) arr.push_back(x.to_string());
  return arr;
}

inline Index index_from_json(const nlohmann::ordered_json& arr) {
  std::vector<Entry> v;
  for (const auto& s : arr) v.push_back(Index::parse_entry(s.get<std::string>()));
  return Index(std::move(v));
}

inline nlohmann::ordered_json terms_json(const std::vector<RelationTerm>& terms) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : terms) arr.push_back({{"index", index_json(t.index)}, {"coeff", t.coeff}});
  return arr;
}

inline std::vector<RelationTerm> terms_from_json(const nlohmann::ordered_json& arr) {
  std::vector<RelationTerm> out;
  for (const auto& t : arr) out.push_back({index_from_json(t.at("index")), t.at("coeff").get<std::string>()});
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Derivation relations partial_n(e_k), n <= max_n, k in I0hat of weight
/// <= max_weight, each re-checked at q = 1/2, M = 120.
inline std::vector<RelationRecord> derivation_relations(int max_n, int max_weight) {
  std::vector<RelationRecord> out;
  QSeriesEvaluator ev(QValue(make_rational(1, 2)), 120);
  for (int n = 1; n <= max_n; ++n)
    for (int w = 1; w <= max_weight; ++w)
      for (const Index& k : enumerate_indices(w, Family::I0Hat)) {
        const EPoly image = partial_n_e(n, e(k));
        if (image.is_zero()) continue;
        RelationRecord r;
        r.kind = "derivation";
        r.n = n;
        r.word = k;
        r.terms = detail::to_terms(image);
        r.verified = ev.zq(image).contains(0);
        out.push_back(std::move(r));
      }
  return out;
}

/// Ohno relations for z_n, n <= max_n, k in I of weight <= max_weight,
/// m <= max_m, each checked exactly.
inline std::vector<RelationRecord> ohno_relations(int max_n, int max_weight, int max_m) {
  std::vector<RelationRecord> out;
  for (int n = 2; n <= max_n; ++n) {
    CycEvaluator ev(n);
    for (int w = 1; w <= max_weight; ++w)
      for (const Index& k : enumerate_indices(w, Family::I))
        for (int m = 0; m <= max_m; ++m) {
          if (n < static_cast<int>(k.depth()) + m + 1) continue;
          RelationRecord r;
          r.kind = "ohno";
          r.n = n;
          r.word = k;
          r.m = m;
          r.terms = detail::to_terms(ohno_lhs_terms(k, m));
          for (int l = 0; l <= m; ++l)
            for (const auto& [idx, c] : ohno_shift_terms(k, l).sorted()) r.rhs.push_back({idx, ohno_weight_string(n, m - l)});
          r.verified = ohno_check(k, m, n, &ev).holds;
          out.push_back(std::move(r));
        }
  }
  return out;
}

inline std::vector<RelationRecord> export_relations(const ExportOptions& opt) {
  if (opt.max_weight > opt.ceiling)
    throw Error(Errc::CeilingExceeded, "max weight " + std::to_string(opt.max_weight) + " exceeds the ceiling " +
                                           std::to_string(opt.ceiling));
  if (opt.max_n < 1 || opt.max_weight < 1) throw Error(Errc::OutOfRange, "max-n and max-weight must be >= 1");
  if (opt.kind == "derivation") return derivation_relations(opt.max_n, opt.max_weight);
  if (opt.kind == "ohno") return ohno_relations(opt.max_n, opt.max_weight, opt.max_m);
  throw Error(Errc::ParseError, "unknown relation kind '" + opt.kind + "'");
}

inline std::string relations_to_json(const std::vector<RelationRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["n"] = r.n;
    j["word"] = detail::index_json(r.word);
    if (r.kind == "ohno") j["m"] = r.m;
    j["terms"] = detail::terms_json(r.terms);
    if (r.kind == "ohno") j["rhs"] = detail::terms_json(r.rhs);
    j["verified"] = r.verified;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

inline std::vector<RelationRecord> relations_from_json(const std::string& text) {
  nlohmann::ordered_json arr;
  try {
    arr = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw Error(Errc::ParseError, err.what());
  }
  if (!arr.is_array()) throw Error(Errc::ParseError, "relation file must hold a JSON array");
  std::vector<RelationRecord> out;
  try {
    for (const auto& j : arr) {
      RelationRecord r;
      r.kind = j.at("kind").get<std::string>();
      r.n = j.at("n").get<int>();
      r.word = detail::index_from_json(j.at("word"));
      if (j.contains("m")) r.m = j.at("m").get<int>();
      r.terms = detail::terms_from_json(j.at("terms"));
      if (j.contains("rhs")) r.rhs = detail::terms_from_json(j.at("rhs"));
      r.verified = j.at("verified").get<bool>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& err) {
    throw Error(Errc::ParseError, err.what());
  }
  return out;
}

/// One row per term: kind,n,word,m,side,index,coeff,verified.
inline std::string relations_to_csv(const std::vector<RelationRecord>& records) {
  std::string out = "kind,n,word,m,side,index,coeff,verified\n";
  for (const auto& r : records) {
    auto row = [&](const char* side, const RelationTerm& t) {
      out += r.kind + "," + std::to_string(r.n) + "," + detail::csv_field(r.word.to_string()) + "," +
             (r.m >= 0 ? std::to_string(r.m) : std::string()) + "," + side + "," + detail::csv_field(t.index.to_string()) +
             "," + detail::csv_field(t.coeff) + "," + (r.verified ? "true" : "false") + "\n";
    };
    for (const auto& t : r.terms) row(r.kind == "ohno" ? "lhs" : "terms", t);
    for (const auto& t : r.rhs) row("rhs", t);
  }
  return out;
}

/// Re-checks a derivation record: the combination, read back from its
/// coefficient strings, evaluates to 0 within the certified bound.
inline bool reverify_derivation(const RelationRecord& r, QSeriesEvaluator& ev) {
  if (r.kind != "derivation") throw Error(Errc::PreconditionViolated, "not a derivation record");
  EPoly x;
  for (const auto& t : r.terms) x.add(t.index, LaurentCoeff::parse(t.coeff));
  return !x.is_zero() && ev.zq(x).contains(0);
}

}  // namespace qmhs
