#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "qmhs/cli.hpp"

using namespace qmhs;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun qsh(std::vector<std::string> args) {
  args.insert(args.begin(), "qsh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qsh_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, Dual) {
  const CliRun r = qsh({"dual", "2,3,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1,2,1,2\n");
}

TEST(Cli, Stuffle) {
  EXPECT_EQ(qsh({"stuffle", "2", "3"}).out, "e[2,3] + e[3,2] + e[5] + h*e[4]\n");
  EXPECT_EQ(qsh({"stuffle", "--classical", "1", "1"}).out, "2*e[1,1] + e[2]\n");
}

TEST(Cli, ShuffleWordsAndIndices) {
  EXPECT_EQ(qsh({"shuffle", "a", "b"}).out, to_string(shuffle_q(NcPoly("a"), NcPoly("b"))) + "\n");
  const EPoly expected = word_to_e(shuffle_q(e_to_word(e(Index::parse("2"))), e_to_word(e(Index::parse("1")))));
  EXPECT_EQ(qsh({"shuffle", "2", "1"}).out, to_string(expected) + "\n");
}

TEST(Cli, Derivations) {
  EXPECT_EQ(qsh({"delta", "1", "b"}).out, "bab + ab\n");
  EXPECT_EQ(qsh({"partial", "1", "2"}).out, to_string(partial_n_e_any(1, e(Index::parse("2")))) + "\n");
  EXPECT_EQ(qsh({"partial", "2", "ab"}).out, to_string(partial_n(2, NcPoly("ab"))) + "\n");
}

TEST(Cli, Series) {
  const CliRun r = qsh({"series", "Phi", "b", "--order", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, Phi_X(NcPoly("b"), 2).to_string() + "\n");
  EXPECT_EQ(qsh({"series", "psi", "2", "--order", "1"}).out, Psi_X(e_to_word(e(Index::parse("2"))), 1).to_string() + "\n");
  EXPECT_EQ(qsh({"series", "gamma", "b"}).code, 2);
}

TEST(Cli, EvalZetaq) {
  const CliRun r = qsh({"eval", "zetaq", "2", "--M", "20", "--digits", "6", "--exact"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("zeta_q(2) = 0.686008 +/- 9.54e-7 (q=1/2, M=20)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("tail bound = 1/1048576"), std::string::npos);
}

TEST(Cli, EvalPolylog) {
  const CliRun r = qsh({"eval", "polylog", "2", "--t", "2/3", "--M", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("L_(2)(2/3) = 0.333333333333333333333333333333 +/- 1.67e-1 (q=1/2, M=1)"), std::string::npos) << r.out;
}

TEST(Cli, Zn) {
  const CliRun r = qsh({"zn", "2", "--n", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, zn_eval(Index::parse("2"), 5).to_string() + " (n=5)\n");
  EXPECT_EQ(qsh({"zn", "2", "--n", "1"}).code, 2);
}

TEST(Cli, VerifyOhnoSingleCase) {
  const CliRun r = qsh({"verify", "ohno", "--n", "5", "--index", "2", "--m", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ohno: 1 case, all passed\n");
  EXPECT_EQ(qsh({"verify", "ohno", "--n", "5", "--index", "2", "--m", "1", "--verbose"}).out,
            "PASS ohno n=5 (2) m=1\nohno: 1 case, all passed\n");
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args{"verify", "fmzv", "--p", "5,7", "--max-weight", "2", "--verbose"};
  const CliRun a = qsh(args), b = qsh(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(qsh({}).code, 2);
  EXPECT_EQ(qsh({"stuffle", "2"}).code, 2);
  EXPECT_EQ(qsh({"verify", "no-such-suite"}).code, 2);
  EXPECT_EQ(qsh({"frobnicate"}).code, 2);
  EXPECT_EQ(qsh({"verify", "ohno", "--n", "x..y"}).code, 2);
  const CliRun bad = qsh({"dual", "2,x"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("qsh:"), std::string::npos);
  EXPECT_EQ(qsh({"eval", "zetaq", "1", "--M", "10"}).code, 2);
  EXPECT_EQ(qsh({"eval", "zetaq", "2", "--q", "3/2"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = qsh({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, ExportCeiling) {
  const CliRun r = qsh({"export", "--max-weight", "7"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("CeilingExceeded"), std::string::npos);
  EXPECT_EQ(qsh({"export", "--max-weight", "7", "--ceiling", "6"}).code, 2);
  EXPECT_THROW(export_relations({"derivation", 3, 7, 6, 2}), Error);
}

TEST(Cli, ExportJsonRoundTrip) {
  const auto path = temp_path("rel.json");
  const CliRun r = qsh({"export", "--max-n", "2", "--max-weight", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = read_file(path);
  std::filesystem::remove(path);
  const auto records = relations_from_json(text);
  EXPECT_EQ(records, derivation_relations(2, 3));
  EXPECT_EQ(relations_to_json(records), text);
}

TEST(Cli, ExportCsv) {
  const CliRun r = qsh({"export", "--kind", "ohno", "--max-n", "3", "--max-weight", "1", "--max-m", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "kind,n,word,m,side,index,coeff,verified\n"
            "ohno,2,1,0,lhs,1,1,true\n"
            "ohno,2,1,0,rhs,1,1,true\n"
            "ohno,3,1,0,lhs,1,1,true\n"
            "ohno,3,1,0,rhs,1,1,true\n"
            "ohno,3,1,1,lhs,\"1,1\",1,true\n"
            "ohno,3,1,1,rhs,1,(1-z),true\n"
            "ohno,3,1,1,rhs,2,1,true\n");
}

TEST(Cli, ExportUnwritablePath) {
  EXPECT_EQ(qsh({"export", "--max-n", "1", "--max-weight", "1", "--out", "/nonexistent-dir/x.json"}).code, 2);
}

TEST(CliFormat, Decimal) {
  EXPECT_EQ(cli::decimal(make_rational(1, 3), 5), "0.33333");
  EXPECT_EQ(cli::decimal(make_rational(-7, 2), 2), "-3.50");
  EXPECT_EQ(cli::decimal(make_rational(1, 200), 2), "0.00");
  EXPECT_EQ(cli::decimal(Rational(12), 0), "12");
}

TEST(CliFormat, Scientific) {
  EXPECT_EQ(cli::scientific(Rational(0)), "0");
  EXPECT_EQ(cli::scientific(make_rational(1, 1048576)), "9.54e-7");
  EXPECT_EQ(cli::scientific(Rational(1234)), "1.23e3");
}

TEST(CliFormat, Range) {
  EXPECT_EQ(cli::parse_range("5").lo, 5);
  EXPECT_EQ(cli::parse_range("5").hi, 5);
  EXPECT_EQ(cli::parse_range("4..12").hi, 12);
  EXPECT_THROW(cli::parse_range("a..b"), Error);
}

TEST(CliFormat, ReportShowsWitnesses) {
  VerifyReport rep;
  rep.suite = "demo";
  rep.cases = {{"case-a", true, "", 1.0}, {"case-b", false, "lhs - rhs = e[2]", 1.0}};
  std::ostringstream out;
  cli::print_report(rep, false, false, out);
  EXPECT_EQ(out.str(), "FAIL case-b: lhs - rhs = e[2]\ndemo: 2 cases, 1 failed\n");
}

TEST(Verify, UnknownSuiteThrows) { EXPECT_THROW(run_suite("nope"), Error); }

TEST(Verify, SmallRunsOfEverySuitePass) {
  VerifyOptions opt;
  opt.max_weight = 2;
  opt.order = 3;
  opt.n = {5, 5};
  opt.primes = {7};
  opt.m = 1;
  for (const auto& name : suite_names()) {
    const VerifyReport rep = run_suite(name, opt);
    EXPECT_TRUE(rep.passed()) << name;
    EXPECT_GT(rep.cases.size(), 0u) << name;
  }
}

TEST(Verify, CasesAreSortedAndUnique) {
  const VerifyReport rep = verify_ohno();
  for (std::size_t i = 1; i < rep.cases.size(); ++i) EXPECT_LT(rep.cases[i - 1].descriptor, rep.cases[i].descriptor);
  EXPECT_TRUE(rep.passed());
}

TEST(Verify, ErrorsBecomeFailures) {
  VerifyOptions opt;
  opt.indices = {Index::parse("1")};
  const VerifyReport rep = verify_double_shuffle(opt);
  ASSERT_EQ(rep.cases.size(), 1u);
  EXPECT_FALSE(rep.cases[0].pass);
  EXPECT_NE(rep.cases[0].witness.find("error:"), std::string::npos);
}

TEST(Relations, DerivationRecordsMatchPartial) {
  const auto records = derivation_relations(2, 3);
  ASSERT_FALSE(records.empty());
  QSeriesEvaluator ev(QValue(make_rational(1, 2)), 120);
  for (const auto& r : records) {
    EXPECT_EQ(r.kind, "derivation");
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(r.word.in_I0hat());
    EPoly x;
    for (const auto& t : r.terms) x.add(t.index, LaurentCoeff::parse(t.coeff));
    EXPECT_EQ(x, partial_n_e(r.n, e(r.word)));
    EXPECT_TRUE(reverify_derivation(r, ev));
  }
}

TEST(Relations, TamperedRecordFailsReverification) {
  auto r = derivation_relations(1, 2).front();
  r.terms.front().coeff = "2";
  QSeriesEvaluator ev(QValue(make_rational(1, 2)), 120);
  EXPECT_FALSE(reverify_derivation(r, ev));
}

TEST(Relations, OhnoRecordsVerified) {
  const auto records = ohno_relations(5, 3, 2);
  ASSERT_FALSE(records.empty());
  for (const auto& r : records) {
    EXPECT_TRUE(r.verified) << r.word.to_string() << " n=" << r.n << " m=" << r.m;
    EXPECT_GE(r.m, 0);
  }
  EXPECT_EQ(relations_from_json(relations_to_json(records)), records);
}

TEST(Relations, MalformedJsonThrows) {
  EXPECT_THROW(relations_from_json("{"), Error);
  EXPECT_THROW(relations_from_json("{}"), Error);
  EXPECT_THROW(relations_from_json(R"([{"kind": "derivation"}])"), Error);
  EXPECT_THROW(relations_from_json(R"([{"kind":"derivation","n":1,"word":["x"],"terms":[],"verified":true}])"), Error);
}

TEST(Binary, RunsAsSubprocess) {
  const std::string cmd = std::string(QSH_PATH) + " dual 2,3,1 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = ::pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(out, "1,2,1,2\n");

  FILE* bad = ::popen((std::string(QSH_PATH) + " stuffle 2 >/dev/null 2>&1").c_str(), "r");
  ASSERT_NE(bad, nullptr);
  EXPECT_EQ(WEXITSTATUS(::pclose(bad)), 2);
}
