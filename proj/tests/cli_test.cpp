#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amk/dimacs.hpp"
#include "amk/encoders.hpp"
#include "support/test_solver.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / ("amk_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

CliRun run_cli(const std::string& args) {
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(AMK_CLI) + " " + args + " 2>" + err.string();
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST(CliEncode, PairwiseThree) {
  CliRun r = run_cli("encode --encoding pw --n 3 --k 1");
  EXPECT_EQ(r.exit, 0);
  amk::CnfFormula f = amk::parse_dimacs(r.out);
  EXPECT_EQ(f.clauses.size(), 3u);
  EXPECT_TRUE(r.err.empty());
}

TEST(CliEncode, BisectRejectsLargerBound) {
  CliRun r = run_cli("encode --encoding bs --n 3 --k 2");
  EXPECT_EQ(r.exit, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("bs supports k=1 only"), std::string::npos) << r.err;
}

TEST(CliEncode, HeaderMatchesCountReport) {
  const fs::path out = scratch_dir() / "ba.cnf";
  CliRun r = run_cli("encode --encoding ba --n 8 --k 3 -o " + out.string());
  ASSERT_EQ(r.exit, 0);
  EXPECT_TRUE(r.out.empty());
  amk::CnfFormula f = amk::parse_dimacs(slurp(out));
  amk::CountReport c = amk::count_report(amk::Encoding::ba, 8, 3);
  EXPECT_EQ(static_cast<std::int64_t>(f.clauses.size()), c.clauses);
  EXPECT_EQ(f.num_vars, 8 + c.aux_vars);
}

TEST(CliEncode, UnknownEncodingIsUsageError) {
  EXPECT_EQ(run_cli("encode --encoding xyz --n 3 --k 1").exit, 2);
  EXPECT_EQ(run_cli("encode --encoding sc --n 0 --k 1").exit, 2);
  EXPECT_EQ(run_cli("frobnicate").exit, 2);
}

TEST(CliEncode, TrivialBoundWarnsOnStderr) {
  CliRun r = run_cli("encode --encoding sc --n 3 --k 5");
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(amk::parse_dimacs(r.out).clauses.size(), 0u);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(CliCount, PairwiseTable) {
  CliRun r = run_cli("count --encoding pw --n-range 2..10 --k 1");
  ASSERT_EQ(r.exit, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "n,aux_vars,clauses");
  for (int n = 2; n <= 10; ++n) {
    ASSERT_TRUE(std::getline(lines, line));
    EXPECT_EQ(line, std::to_string(n) + ",0," + std::to_string(n * (n - 1) / 2));
  }
  EXPECT_FALSE(std::getline(lines, line));
}

TEST(CliCount, ProductNine) {
  CliRun r = run_cli("count --encoding pd --n-range 9..9 --k 1");
  EXPECT_EQ(r.out, "n,aux_vars,clauses\n9,6,24\n");
}

TEST(CliCount, StepAndBadRange) {
  CliRun r = run_cli("count --encoding sc --n-range 10..100 --step 10 --k 5");
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
  EXPECT_EQ(run_cli("count --encoding sc --n-range 10-100 --k 5").exit, 2);
  EXPECT_EQ(run_cli("count --encoding sc --n-range 9..3 --k 5").exit, 2);
}

TEST(CliVerify, AllEncodingsUpToSeven) {
  CliRun r = run_cli("verify --max-n 7");
  EXPECT_EQ(r.exit, 0) << r.out;
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);
}

TEST(CliVerify, SingleVariableIsVacuous) {
  CliRun r = run_cli("verify --encoding sc --max-n 1");
  EXPECT_EQ(r.exit, 0);
  EXPECT_NE(r.out.find("checked 0 configurations, 0 failed"), std::string::npos) << r.out;
}

TEST(CliVerify, MutationIsCaught) {
  CliRun r = run_cli("verify --encoding sc --max-n 6 --mutate --seed 3");
  EXPECT_EQ(r.exit, 1);
  EXPECT_NE(r.out.find("FAIL sc"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x="), std::string::npos) << r.out;
}

TEST(CliVerify, LimitExceeded) {
  EXPECT_EQ(run_cli("verify --encoding pw --max-n 20").exit, 2);
}

TEST(CliPropcheck, SequentialCounter) {
  CliRun r = run_cli("propcheck --encoding sc --n 5 --k 2");
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.out.rfind("AC: yes\n", 0), 0u) << r.out;
}

TEST(CliPigeonhole, WritesInstance) {
  const fs::path out = scratch_dir() / "php.cnf";
  CliRun r = run_cli("pigeonhole --p 12 --h 11 --k 1 --amo pd --amk ba -o " + out.string());
  ASSERT_EQ(r.exit, 0) << r.err;
  amk::CnfFormula f = amk::parse_dimacs(slurp(out));
  EXPECT_GE(f.num_vars, 132);
  ASSERT_FALSE(f.comments.empty());
  EXPECT_EQ(f.comments[0].rfind("pigeonhole P=12 H=11 K=1", 0), 0u);
}

TEST(CliPigeonhole, Deterministic) {
  EXPECT_EQ(run_cli("pigeonhole --p 7 --h 3 --k 2 --amk pc").out,
            run_cli("pigeonhole --p 7 --h 3 --k 2 --amk pc").out);
  EXPECT_EQ(run_cli("pigeonhole --p 7 --h 3 --k 2 --amk pw").exit, 2);
}

TEST(CliBench, ConfigErrors) {
  const fs::path cfg = scratch_dir() / "bad.cfg";
  std::ofstream(cfg) << "solver=/bin/true\ntimeout=0\n";
  EXPECT_EQ(run_cli("bench --config " + cfg.string() + " --suite table2-small").exit, 2);
  EXPECT_EQ(run_cli("bench --solver /bin/true --suite nope").exit, 2);
}

TEST(CliBench, SmallSuiteEndToEnd) {
  auto solver = amk::testkit::strong_solver();
  if (!solver) GTEST_SKIP() << "no SAT solver available";
  const fs::path cfg = scratch_dir() / "solver.cfg";
  {
    std::ofstream out(cfg);
    out << "solver=" << solver->executable << "\n";
    if (!solver->args.empty()) {
      out << "args=";
      for (const auto& a : solver->args) out << a << ' ';
      out << "\n";
    }
    out << "timeout=60\n";
  }
  CliRun r = run_cli("bench --config " + cfg.string() + " --suite table2-small --rows 21-5-4");
  EXPECT_EQ(r.exit, 0) << r.err;
  EXPECT_EQ(r.out.rfind("instance,amo,amk,verdict,encode_s,solve_s,total_s,vars,clauses\n", 0),
            0u);
  EXPECT_NE(r.out.find("21-5-4,pd,ba,UNSAT,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("| P-H-K | BA | PC | SC |"), std::string::npos) << r.out;
}
