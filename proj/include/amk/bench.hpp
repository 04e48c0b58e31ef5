#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amk/cnf.hpp"
#include "amk/encoders.hpp"
#include "amk/pigeonhole.hpp"

namespace amk {

enum class Verdict { sat, unsat, timeout, error };

// "SAT", "UNSAT", "TIMEOUT", "ERROR"
std::string_view verdict_name(Verdict v);

struct SolverConfig {
  std::string executable;
  std::vector<std::string> args;  // inserted before the CNF path
  double timeout_s = 60.0;
  int sat_exit = 10;
  int unsat_exit = 20;
  std::size_t parallelism = 1;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key=value lines; '#' starts a comment. Keys: solver, args, timeout,
// parallelism, sat_exit, unsat_exit. A missing solver falls back to
// discover_solver().
SolverConfig parse_solver_config(std::string_view text);
SolverConfig load_solver_config(const std::string& path);

// $AMK_SOLVER, else the first of a few well-known DIMACS solvers on PATH.
std::optional<std::string> discover_solver();

struct BenchResult {
  std::string instance;
  Encoding amo = Encoding::pd;
  Encoding amk = Encoding::sc;
  Verdict verdict = Verdict::error;
  double encode_s = 0.0;
  double solve_s = 0.0;
  std::int64_t vars = 0;
  std::int64_t clauses = 0;
  int exit_code = -1;
  std::string message;
  // Indexed by variable id, present when the solver printed "v" lines.
  std::optional<std::vector<bool>> model;

  double total_s() const { return encode_s + solve_s; }
};

// Writes f to a temporary file, runs [executable, args..., path], and
// classifies the result by exit code, falling back to the "s ..." line.
// The process group is killed at the timeout.
BenchResult run_solver(const CnfFormula& f, const SolverConfig& cfg);

// Generates the instance (timed as encode_s), then runs the solver.
BenchResult run_cell(const PigeonholeInstance& inst, const SolverConfig& cfg);

struct SuiteRow {
  std::int32_t pigeons;
  std::int32_t holes;
  std::int32_t capacity;

  std::string label() const;
};

struct SuiteColumn {
  std::string label;
  Encoding amo;
  Encoding amk;
};

struct Suite {
  std::string name;
  std::vector<SuiteRow> rows;
  std::vector<SuiteColumn> columns;
};

// table1-small, table1-large, table2-small, table2-large.
std::vector<std::string> preset_suite_names();
std::optional<Suite> preset_suite(std::string_view name);

// Keeps only rows whose "P-H-K" label is listed.
Suite filter_rows(const Suite& suite, const std::vector<std::string>& labels);

inline constexpr std::string_view kCsvHeader =
    "instance,amo,amk,verdict,encode_s,solve_s,total_s,vars,clauses";

std::string csv_row(const BenchResult& r);

// Runs every row x column cell, streaming one CSV row per cell (header first)
// in suite order. Cells run up to cfg.parallelism at a time.
std::vector<BenchResult> run_suite(const Suite& suite, const SolverConfig& cfg, std::ostream& csv);

// One row per instance, one column per encoding; cells hold total seconds,
// ">T" on timeout and "ERR" on error.
std::string render_markdown(const Suite& suite, const std::vector<BenchResult>& results,
                            double timeout_s);

}  // namespace amk
