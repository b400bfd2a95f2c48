#pragma once

// The qsh command line: calculators, verification suites and relation export.
// Exit codes: 0 success, 1 a verification case failed, 2 usage or input error.

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/cyclo.hpp"
#include "qmhs/derivations.hpp"
#include "qmhs/error.hpp"
#include "qmhs/evalq.hpp"
#include "qmhs/products.hpp"
#include "qmhs/relations.hpp"
#include "qmhs/series.hpp"
#include "qmhs/verify.hpp"

namespace qmhs {

namespace cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;

/// Truncated decimal expansion with the given number of fractional digits.
inline std::string decimal(const Rational& r, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = abs(r.get_num()) * scale;
  mpz_class q = num / r.get_den();
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (r < 0 ? "-" : "") + s;
}

/// Three significant digits in scientific notation.
inline std::string scientific(const Rational& r) {
  if (r == 0) return "0";
  mpf_class f(r, 128);
  mp_exp_t exp = 0;
  std::string s = f.get_str(exp, 10, 3);
  std::string sign;
  if (s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  std::string mant = s.substr(0, 1);
  if (s.size() > 1) mant += "." + s.substr(1);
  return sign + mant + "e" + std::to_string(exp - 1);
}

inline bool is_ab_word(const std::string& s) {
  return !s.empty() && s.find_first_not_of("ab") == std::string::npos;
}

inline IntRange parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad range '" + s + "' (expected N or A..B)");
  }
}

inline std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/// The e-basis element named by an index, or the word converted to the e-basis.
inline NcPoly as_word(const std::string& s) { return is_ab_word(s) ? NcPoly(s) : e_to_word(e(Index::parse(s))); }

inline void print_report(const VerifyReport& rep, bool verbose, bool timing, std::ostream& out) {
  for (const auto& c : rep.cases) {
    if (!verbose && c.pass) continue;
    out << (c.pass ? "PASS " : "FAIL ") << c.descriptor;
    if (timing) out << " (" << decimal(Rational(static_cast<long>(c.ms * 1000)) / 1000, 3) << " ms)";
    if (!c.pass) out << ": " << c.witness;
    out << "\n";
  }
  out << rep.suite << ": " << rep.cases.size() << (rep.cases.size() == 1 ? " case, " : " cases, ");
  if (rep.failures() == 0) {
    out << "all passed";
  } else {
    out << rep.failures() << " failed";
  }
  if (timing) out << " in " << decimal(Rational(static_cast<long>(rep.total_ms())), 0) << " ms";
  out << "\n";
}

}  // namespace cli

inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact algebra of multiple harmonic q-series", "qsh"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  std::vector<std::string> pos;
  bool classical = false;
  auto* stuffle = app.add_subcommand("stuffle", "q-stuffle product of two indices");
  stuffle->add_option("operands", pos, "two indices, e.g. 2 1bar,3")->expected(2)->required();
  stuffle->add_flag("--classical", classical, "classical stuffle on indices without 1bar");

  auto* shuffle = app.add_subcommand("shuffle", "q-shuffle product of two indices or two words over {a,b}");
  shuffle->add_option("operands", pos, "two indices or two words")->expected(2)->required();

  std::string single;
  auto* dual = app.add_subcommand("dual", "Hoffman dual of an index in I");
  dual->add_option("index", single, "index, e.g. 2,3,1")->required();

  int n = 1;
  auto* partial = app.add_subcommand("partial", "derivation partial_n of an index or word");
  partial->add_option("n", n, "derivation index n >= 1")->required();
  partial->add_option("operand", single, "index or word")->required();

  auto* delta = app.add_subcommand("delta", "derivation delta_n of an index or word");
  delta->add_option("n", n, "derivation index n >= 1")->required();
  delta->add_option("operand", single, "index or word")->required();

  std::string map_name;
  int order = 3;
  auto* series = app.add_subcommand("series", "truncated homomorphism Phi_X, Psi_X or Delta_X");
  series->add_option("map", map_name, "Phi, Psi or Delta")->required();
  series->add_option("operand", single, "index or word")->required();
  series->add_option("--order", order, "truncation order N")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "certified evaluation at rational q");
  eval->require_subcommand(1);
  std::string q_text = "1/2", t_text = "1";
  int truncation = 120, digits = 30;
  bool exact = false;
  auto* zetaq = eval->add_subcommand("zetaq", "zeta_q(k) for k in I0hat");
  zetaq->add_option("index", single, "index")->required();
  auto* polylog = eval->add_subcommand("polylog", "multiple polylogarithm L_k(t)");
  polylog->add_option("index", single, "index")->required();
  polylog->add_option("--t", t_text, "argument t in (0, 1]")->capture_default_str();
  for (auto* sub : {zetaq, polylog}) {
    sub->add_option("--q", q_text, "q in (0, 1)")->capture_default_str();
    sub->add_option("--M", truncation, "truncation M")->capture_default_str();
    sub->add_option("--digits", digits, "fractional digits printed")->capture_default_str();
    sub->add_flag("--exact", exact, "also print the exact partial sum");
  }

  int cyc_n = 5;
  auto* zn = app.add_subcommand("zn", "z_n(k; zeta_n) in Q(zeta_n)");
  zn->add_option("index", single, "index")->required();
  zn->add_option("--n", cyc_n, "n >= 2")->capture_default_str();

  std::string suite, n_range;
  std::vector<int> primes;
  std::vector<std::string> index_texts;
  int max_weight = -1, verify_order = -1, m = -1;
  bool verbose = false, timing = false;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(choices));
  verify->add_option("--max-weight", max_weight, "maximum weight of the words checked");
  verify->add_option("--order", verify_order, "truncation order for series suites");
  verify->add_option("--n", n_range, "n or a range A..B");
  verify->add_option("--p", primes, "primes")->delimiter(',');
  verify->add_option("--index", index_texts, "restrict to these indices");
  verify->add_option("--m", m, "Ohno parameter m");
  verify->add_flag("--verbose", verbose, "list passing cases too");
  verify->add_flag("--timing", timing, "print timings");

  ExportOptions ex;
  std::string format = "json", out_path;
  auto* exp = app.add_subcommand("export", "export derivation or Ohno relations");
  exp->add_option("--kind", ex.kind, "derivation or ohno")->check(CLI::IsMember({"derivation", "ohno"}))->capture_default_str();
  exp->add_option("--max-n", ex.max_n, "largest n")->capture_default_str();
  exp->add_option("--max-weight", ex.max_weight, "largest weight")->capture_default_str();
  exp->add_option("--max-m", ex.max_m, "largest m (ohno)")->capture_default_str();
  exp->add_option("--ceiling", ex.ceiling, "weight ceiling")->capture_default_str();
  exp->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  exp->add_option("--out", out_path, "output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return cli::kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return cli::kOk;
  } catch (const CLI::ParseError& e) {
    err << "qsh: " << e.what() << "\n";
    return cli::kUsage;
  }

  try {
    if (*stuffle) {
      const EPoly x = e(Index::parse(pos[0])), y = e(Index::parse(pos[1]));
      out << to_string(classical ? stuffle_classical(x, y) : stuffle_q(x, y)) << "\n";
    } else if (*shuffle) {
      if (cli::is_ab_word(pos[0]) && cli::is_ab_word(pos[1])) {
        out << to_string(shuffle_q(NcPoly(pos[0]), NcPoly(pos[1]))) << "\n";
      } else {
        out << to_string(word_to_e(shuffle_q(cli::as_word(pos[0]), cli::as_word(pos[1])))) << "\n";
      }
    } else if (*dual) {
      out << hoffman_dual(Index::parse(single)).to_string() << "\n";
    } else if (*partial) {
      if (cli::is_ab_word(single)) {
        out << to_string(partial_n(n, NcPoly(single))) << "\n";
      } else {
        out << to_string(partial_n_e_any(n, e(Index::parse(single)))) << "\n";
      }
    } else if (*delta) {
      const NcPoly image = delta_n(n, cli::as_word(single));
      if (cli::is_ab_word(single)) {
        out << to_string(image) << "\n";
      } else {
        out << to_string(word_to_e(image)) << "\n";
      }
    } else if (*series) {
      const std::string name = cli::lowercase(map_name);
      const NcPoly w = cli::as_word(single);
      if (name == "phi") {
        out << Phi_X(w, order).to_string() << "\n";
      } else if (name == "psi") {
        out << Psi_X(w, order).to_string() << "\n";
      } else if (name == "delta") {
        out << Delta_X(w, order).to_string() << "\n";
      } else {
        err << "qsh: unknown map '" << map_name << "' (expected Phi, Psi or Delta)\n";
        return cli::kUsage;
      }
    } else if (*eval) {
      const QValue q(parse_rational(q_text));
      const Index k = Index::parse(single);
      CertifiedValue v;
      std::string label;
      if (*zetaq) {
        v = zeta_q_partial(k, q, truncation);
        label = "zeta_q(" + k.to_string() + ")";
      } else {
        v = polylog_partial(k, parse_rational(t_text), q, truncation);
        label = "L_(" + k.to_string() + ")(" + t_text + ")";
      }
      out << label << " = " << cli::decimal(v.value, digits) << " +/- " << cli::scientific(v.tail_bound) << " (q=" << q_text
          << ", M=" << truncation << ")\n";
      if (exact) out << "partial sum = " << to_string(v.value) << "\ntail bound = " << to_string(v.tail_bound) << "\n";
    } else if (*zn) {
      if (cyc_n < 2) throw Error(Errc::OutOfRange, "n must be >= 2");
      out << zn_eval(Index::parse(single), cyc_n).to_string() << " (n=" << cyc_n << ")\n";
    } else if (*verify) {
      VerifyOptions opt;
      opt.max_weight = max_weight;
      opt.order = verify_order;
      if (!n_range.empty()) opt.n = cli::parse_range(n_range);
      opt.primes = primes;
      for (const auto& s : index_texts) opt.indices.push_back(Index::parse(s));
      opt.m = m;
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& name : names) {
        const VerifyReport rep = run_suite(name, opt);
        cli::print_report(rep, verbose, timing, out);
        ok = ok && rep.passed();
      }
      return ok ? cli::kOk : cli::kFailed;
    } else if (*exp) {
      const auto records = export_relations(ex);
      const std::string text = format == "json" ? relations_to_json(records) : relations_to_csv(records);
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
          err << "qsh: cannot open '" << out_path << "' for writing\n";
          return cli::kUsage;
        }
        file << text;
        if (!file) {
          err << "qsh: write to '" << out_path << "' failed\n";
          return cli::kUsage;
        }
      }
    }
  } catch (const Error& e) {
    err << "qsh: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kOk;
}

}  // namespace qmhs
