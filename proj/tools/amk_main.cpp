// amk: compile at-most-k constraints to CNF, check them, and benchmark them.
//
// Exit codes: 0 success, 1 property-check failure, 2 usage or config error,
// 3 solver or environment error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amk/bench.hpp"
#include "amk/dimacs.hpp"
#include "amk/encoders.hpp"
#include "amk/pigeonhole.hpp"
#include "amk/propagation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kEnvironment = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

amk::Encoding require_encoding(const std::string& name) {
  auto e = amk::parse_encoding(name);
  if (!e) throw UsageError("unknown encoding '" + name + "' (expected pw, bs, pd, sc, pc or ba)");
  return *e;
}

void require_bound(amk::Encoding e, std::int64_t n, std::int64_t k) {
  if (n < 1) throw UsageError("n must be at least 1");
  if (k < 0) throw UsageError("k must be non-negative");
  if (!amk::supports_bound(e, k))
    throw UsageError(std::string(amk::encoding_name(e)) + " supports k=1 only");
}

void write_formula(const amk::CnfFormula& f, const std::string& path) {
  if (path.empty() || path == "-") {
    amk::write_dimacs(f, std::cout);
    return;
  }
  amk::write_dimacs_file(f, path);
}

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------- encode

struct EncodeArgs {
  std::string encoding;
  std::int64_t n = 0;
  std::int64_t k = 1;
  std::string out;
};

int cmd_encode(const EncodeArgs& a) {
  const amk::Encoding e = require_encoding(a.encoding);
  require_bound(e, a.n, a.k);
  if (a.k >= a.n)
    std::cerr << "amk: warning: k=" << a.k << " >= n=" << a.n << ", constraint is trivially true\n";
  write_formula(amk::encode_formula(e, static_cast<std::int32_t>(a.n), a.k), a.out);
  return kOk;
}

// ----------------------------------------------------------------- count

struct CountArgs {
  std::string encoding;
  std::string range;
  std::int64_t step = 1;
  std::int64_t k = 1;
};

int cmd_count(const CountArgs& a) {
  const amk::Encoding e = require_encoding(a.encoding);
  const auto dots = a.range.find("..");
  std::int64_t lo = 0, hi = 0;
  try {
    if (dots == std::string::npos) throw std::invalid_argument("range");
    lo = std::stoll(a.range.substr(0, dots));
    hi = std::stoll(a.range.substr(dots + 2));
  } catch (const std::exception&) {
    throw UsageError("--n-range expects A..B");
  }
  if (lo < 1 || hi < lo) throw UsageError("--n-range needs 1 <= A <= B");
  if (a.step < 1) throw UsageError("--step must be positive");
  require_bound(e, lo, a.k);

  std::cout << "n,aux_vars,clauses\n";
  for (std::int64_t n = lo; n <= hi; n += a.step) {
    const amk::CountReport r = amk::count_report(e, static_cast<std::int32_t>(n), a.k);
    std::cout << n << ',' << r.aux_vars << ',' << r.clauses << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string encoding = "all";
  std::int64_t max_n = 9;
  std::uint64_t seed = 1;
  bool mutate = false;
  std::int64_t limit = amk::kDefaultOracleLimit;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<amk::Encoding> encodings;
  if (a.encoding == "all")
    encodings.assign(amk::kAllEncodings.begin(), amk::kAllEncodings.end());
  else
    encodings.push_back(require_encoding(a.encoding));
  if (a.max_n > a.limit)
    throw UsageError("--max-n " + std::to_string(a.max_n) + " exceeds the oracle limit " +
                     std::to_string(a.limit));

  std::mt19937_64 rng(a.seed);
  std::size_t checked = 0, failed = 0;
  for (amk::Encoding e : encodings) {
    for (std::int32_t n = 2; n <= a.max_n; ++n) {
      for (std::int64_t k = 1; k < n; ++k) {
        if (!amk::supports_bound(e, k)) continue;
        amk::CnfFormula f = amk::encode_formula(e, n, k);
        std::string note;
        if (a.mutate && !f.clauses.empty()) {
          std::uniform_int_distribution<std::size_t> pick(0, f.clauses.size() - 1);
          const std::size_t drop = pick(rng);
          f.clauses.erase(f.clauses.begin() + static_cast<std::ptrdiff_t>(drop));
          note = " (clause " + std::to_string(drop + 1) + " deleted)";
        }
        const amk::OracleResult r =
            amk::oracle_equivalent(f, n, k, static_cast<std::int32_t>(a.limit));
        ++checked;
        if (r.equivalent) continue;
        ++failed;
        std::cout << "FAIL " << amk::encoding_name(e) << " n=" << n << " k=" << k << note
                  << ": x=" << bits(*r.counterexample) << " is "
                  << (r.counterexample_extendable ? "extendable" : "not extendable") << '\n';
      }
    }
  }
  std::cout << "checked " << checked << " configurations, " << failed << " failed\n";
  return failed == 0 ? kOk : kCheckFailed;
}

// ------------------------------------------------------------- propcheck

struct PropcheckArgs {
  std::string encoding;
  std::int64_t n = 0;
  std::int64_t k = 1;
  std::uint64_t seed = amk::AcOptions{}.seed;
  std::size_t samples = amk::AcOptions{}.samples;
};

int cmd_propcheck(const PropcheckArgs& a) {
  const amk::Encoding e = require_encoding(a.encoding);
  require_bound(e, a.n, a.k);
  if (a.k < 1 || a.k >= a.n) throw UsageError("propcheck needs 1 <= k < n");
  amk::AcOptions opts;
  opts.seed = a.seed;
  opts.samples = a.samples;
  const amk::AcReport r = amk::check_ac_by_up(e, static_cast<std::int32_t>(a.n), a.k, opts);
  std::cout << "AC: " << (r.achieves_ac ? "yes" : "no") << '\n';
  std::cout << "seeds tested: " << r.seeds_tested << (r.exhaustive ? " (exhaustive)" : " (sampled)")
            << '\n';
  if (r.witness) {
    std::cout << "witness seed:";
    for (amk::Lit l : r.witness->seed) std::cout << " x" << l.var().id;
    std::cout << '\n';
    if (r.witness->unforced) std::cout << "unforced: x" << r.witness->unforced->var().id << '\n';
    if (r.witness->conflict) std::cout << "propagation conflict on a satisfiable seed\n";
  }
  return kOk;
}

// ------------------------------------------------------------ pigeonhole

struct PigeonholeArgs {
  std::int32_t p = 0, h = 0, k = 1;
  std::string amo = "pd";
  std::string amk = "sc";
  std::string out;
};

int cmd_pigeonhole(const PigeonholeArgs& a) {
  amk::PigeonholeInstance inst{a.p, a.h, a.k, require_encoding(a.amo), require_encoding(a.amk)};
  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_formula(amk::generate_pigeonhole(inst), a.out);
  return kOk;
}

// ----------------------------------------------------------------- bench

struct BenchArgs {
  std::string config;
  std::string suite;
  std::string rows;
  std::string solver;
  double timeout = 0;
  std::size_t parallelism = 0;
  std::string csv_path;
  std::string markdown_path;
};

int cmd_bench(const BenchArgs& a) {
  std::optional<amk::Suite> suite = amk::preset_suite(a.suite);
  if (!suite) {
    std::string names;
    for (const std::string& n : amk::preset_suite_names()) names += " " + n;
    throw UsageError("unknown suite '" + a.suite + "'; available:" + names);
  }
  if (!a.rows.empty()) {
    std::vector<std::string> labels;
    std::istringstream in(a.rows);
    for (std::string l; std::getline(in, l, ',');) labels.push_back(l);
    *suite = amk::filter_rows(*suite, labels);
    if (suite->rows.empty()) throw UsageError("--rows matched no rows of " + a.suite);
  }

  amk::SolverConfig cfg;
  try {
    std::string text;
    if (!a.config.empty()) {
      std::ifstream in(a.config);
      if (!in) throw amk::ConfigError("cannot read config file " + a.config);
      std::ostringstream s;
      s << in.rdbuf();
      text = s.str();
    }
    if (!a.solver.empty()) text += "\nsolver=" + a.solver + "\n";
    cfg = amk::parse_solver_config(text);
  } catch (const amk::ConfigError& e) {
    throw UsageError(e.what());
  }
  if (a.timeout > 0) cfg.timeout_s = a.timeout;
  if (a.parallelism > 0) cfg.parallelism = a.parallelism;

  std::ofstream csv_file;
  std::ostream* csv = &std::cout;
  if (!a.csv_path.empty()) {
    csv_file.open(a.csv_path);
    if (!csv_file) throw UsageError("cannot write " + a.csv_path);
    csv = &csv_file;
  }
  std::cerr << "bench: suite " << suite->name << ", solver " << cfg.executable << ", timeout "
            << cfg.timeout_s << " s\n";
  const std::vector<amk::BenchResult> results = amk::run_suite(*suite, cfg, *csv);
  const std::string table = amk::render_markdown(*suite, results, cfg.timeout_s);
  if (!a.markdown_path.empty()) {
    std::ofstream md(a.markdown_path);
    md << table;
  } else {
    if (csv == &std::cout) std::cout << '\n';
    std::cout << table;
  }

  bool wrong = false, broken = false;
  std::size_t idx = 0;
  for (const amk::SuiteRow& row : suite->rows) {
    for (const amk::SuiteColumn& col : suite->columns) {
      const amk::BenchResult& r = results[idx++];
      const amk::PigeonholeInstance inst{row.pigeons, row.holes, row.capacity, col.amo, col.amk};
      if (r.verdict == amk::Verdict::error) {
        std::cerr << "bench: " << r.instance << " " << col.label << ": " << r.message << '\n';
        broken = true;
        continue;
      }
      if (r.verdict == amk::Verdict::timeout) continue;
      const bool expect_sat = inst.satisfiable();
      if ((r.verdict == amk::Verdict::sat) != expect_sat) {
        std::cerr << "bench: wrong verdict for " << r.instance << " " << col.label << '\n';
        wrong = true;
      }
      if (r.model && !amk::verify_model(inst, *r.model)) {
        std::cerr << "bench: model for " << r.instance << " " << col.label
                  << " violates the constraints\n";
        wrong = true;
      }
    }
  }
  if (wrong) return kCheckFailed;
  if (broken) return kEnvironment;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile, check and benchmark at-most-k CNF encodings"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Write DIMACS for at-most-k over variables 1..n");
  encode->add_option("--encoding,-e", enc.encoding, "pw, bs, pd, sc, pc or ba")->required();
  encode->add_option("--n", enc.n, "Number of input variables")->required();
  encode->add_option("--k", enc.k, "Bound")->required();
  encode->add_option("--out,-o", enc.out, "Output path (default stdout)");

  CountArgs cnt;
  auto* count = app.add_subcommand("count", "Tabulate aux variables and clauses over a range of n");
  count->add_option("--encoding,-e", cnt.encoding)->required();
  count->add_option("--n-range", cnt.range, "A..B")->required();
  count->add_option("--step", cnt.step);
  count->add_option("--k", cnt.k)->required();

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check encodings against the exhaustive oracle");
  verify->add_option("--encoding,-e", ver.encoding, "Encoding name or 'all'");
  verify->add_option("--max-n", ver.max_n)->required();
  verify->add_option("--seed", ver.seed, "Seed for --mutate");
  verify->add_flag("--mutate", ver.mutate, "Delete one random clause from every formula");
  verify->add_option("--limit", ver.limit, "Largest n the exhaustive oracle accepts");

  PropcheckArgs pc;
  auto* propcheck =
      app.add_subcommand("propcheck", "Check arc consistency under unit propagation");
  propcheck->add_option("--encoding,-e", pc.encoding)->required();
  propcheck->add_option("--n", pc.n)->required();
  propcheck->add_option("--k", pc.k)->required();
  propcheck->add_option("--seed", pc.seed, "Sampling seed above the exhaustive limit");
  propcheck->add_option("--samples", pc.samples);

  PigeonholeArgs ph;
  auto* pigeonhole = app.add_subcommand("pigeonhole", "Write a pigeonhole instance");
  pigeonhole->set_help_flag("--help", "Print this help message and exit");  // --h is holes
  pigeonhole->add_option("--p", ph.p, "Pigeons")->required();
  pigeonhole->add_option("--h", ph.h, "Holes")->required();
  pigeonhole->add_option("--k", ph.k, "Hole capacity")->required();
  pigeonhole->add_option("--amo", ph.amo, "Encoding for each pigeon's at-most-one");
  pigeonhole->add_option("--amk", ph.amk, "Encoding for each hole's at-most-k");
  pigeonhole->add_option("--out,-o", ph.out, "Output path (default stdout)");

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Run a pigeonhole suite through a SAT solver");
  bench->add_option("--config,-c", bn.config, "key=value solver config file");
  std::string suite_help = "Preset:";
  for (const std::string& n : amk::preset_suite_names()) suite_help += " " + n;
  bench->add_option("--suite", bn.suite, suite_help)->required();
  bench->add_option("--rows", bn.rows, "Comma-separated P-H-K labels to keep");
  bench->add_option("--solver", bn.solver, "Solver executable (overrides config)");
  bench->add_option("--timeout", bn.timeout, "Seconds per cell (overrides config)");
  bench->add_option("--parallelism,-j", bn.parallelism, "Concurrent solver processes");
  bench->add_option("--csv", bn.csv_path, "Write CSV here instead of stdout");
  bench->add_option("--markdown", bn.markdown_path, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*encode) return cmd_encode(enc);
    if (*count) return cmd_count(cnt);
    if (*verify) return cmd_verify(ver);
    if (*propcheck) return cmd_propcheck(pc);
    if (*pigeonhole) return cmd_pigeonhole(ph);
    if (*bench) return cmd_bench(bn);
  } catch (const UsageError& e) {
    std::cerr << "amk: " << e.what() << '\n';
    return kUsage;
  } catch (const amk::UnsupportedBound& e) {
    std::cerr << "amk: " << e.what() << '\n';
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "amk: " << e.what() << '\n';
    return kEnvironment;
  } catch (const std::exception& e) {
    std::cerr << "amk: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
