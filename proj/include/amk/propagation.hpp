#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "amk/cnf.hpp"
#include "amk/encoders.hpp"

namespace amk {

enum class Value : std::int8_t { unassigned = 0, true_ = 1, false_ = -1 };

// Partial assignment over variables 1..num_vars.
class Assignment {
 public:
  explicit Assignment(std::int32_t num_vars = 0)
      : values_(static_cast<std::size_t>(num_vars) + 1, Value::unassigned) {}

  static Assignment from_literals(std::int32_t num_vars, std::span<const Lit> lits);

  std::int32_t num_vars() const { return static_cast<std::int32_t>(values_.size()) - 1; }

  Value value(Var v) const { return values_.at(static_cast<std::size_t>(v.id)); }
  Value value(Lit l) const;
  bool is_true(Lit l) const { return value(l) == Value::true_; }

  // Makes l true. Returns false, leaving the assignment unchanged, if l is already false.
  bool set(Lit l);
  void clear(Var v) { values_.at(static_cast<std::size_t>(v.id)) = Value::unassigned; }

  std::vector<Lit> literals() const;

 private:
  std::vector<Value> values_;
};

// Two-watched-literal unit propagation with a trail for backtracking.
class Propagator {
 public:
  explicit Propagator(const CnfFormula& f);

  // Unassigns everything and re-applies the formula's unit clauses.
  // Returns false if they already conflict.
  bool reset();

  // Assigns l and propagates to fixpoint. Returns false on conflict; the
  // trail then holds whatever was derived before the conflict.
  bool assume(Lit l);

  Value value(Lit l) const;
  Value value(Var v) const { return values_[static_cast<std::size_t>(v.id)]; }

  std::span<const Lit> trail() const { return trail_; }
  std::size_t trail_size() const { return trail_.size(); }
  void backtrack(std::size_t size);

  std::int32_t num_vars() const { return num_vars_; }

 private:
  bool enqueue(Lit l);
  bool propagate();

  std::int32_t num_vars_;
  std::vector<Lit> lits_;                             // flat clause storage, size >= 2
  std::vector<std::pair<std::uint32_t, std::uint32_t>> clauses_;  // (offset, size)
  std::vector<std::vector<std::uint32_t>> watches_;   // literal index -> clause ids
  std::vector<Lit> units_;
  std::vector<Value> values_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
};

struct UpOutcome {
  enum class Status { fixpoint, conflict };

  Status status = Status::fixpoint;
  // Literals derived beyond the seed, sorted by variable. Only order-independent
  // when status is fixpoint.
  std::vector<Lit> forced;

  bool conflict() const { return status == Status::conflict; }
  bool forces(Lit l) const;
};

UpOutcome unit_propagate(const CnfFormula& f, const Assignment& seed);

// Whether the current partial assignment extends to a model. Backtracking
// search with propagation over the unassigned variables. Restores the
// propagator's trail before returning; fills model when provided.
bool extendable(Propagator& p, std::vector<bool>* model = nullptr);

// Complete satisfiability check for small formulas. Model indexed by var id.
std::optional<std::vector<bool>> find_model(const CnfFormula& f);

inline constexpr std::int32_t kDefaultOracleLimit = 12;

class OracleLimitExceeded : public std::invalid_argument {
 public:
  OracleLimitExceeded(std::int32_t n, std::int32_t limit);
};

struct OracleResult {
  bool equivalent = true;
  std::uint64_t assignments_checked = 0;
  // First input assignment (x_1..x_n) where extendability and popcount <= k disagree.
  std::optional<std::vector<bool>> counterexample;
  bool counterexample_extendable = false;
};

// For every assignment to variables 1..n, checks extendability of f equals popcount <= k.
OracleResult oracle_equivalent(const CnfFormula& f, std::int32_t n, std::int64_t k,
                               std::int32_t limit = kDefaultOracleLimit);
OracleResult oracle_equivalent(Encoding e, std::int32_t n, std::int64_t k,
                               std::int32_t limit = kDefaultOracleLimit);

struct AcOptions {
  std::int32_t exhaustive_limit = 10;
  std::size_t samples = 1000;
  std::uint64_t seed = 20200229;
};

struct AcWitness {
  std::vector<Lit> seed;          // inputs set true
  std::optional<Lit> unforced;    // input left unassigned by propagation
  bool conflict = false;          // propagation refuted a satisfiable seed
};

struct AcReport {
  Encoding encoding;
  std::int32_t n = 0;
  std::int64_t k = 0;
  bool achieves_ac = true;
  bool exhaustive = true;
  std::size_t seeds_tested = 0;
  std::optional<AcWitness> witness;
};

// Seeds k inputs true and checks that propagation forces every other input false.
AcReport check_ac_by_up(const CnfFormula& f, Encoding e, std::int32_t n, std::int64_t k,
                        const AcOptions& opts = {});
AcReport check_ac_by_up(Encoding e, std::int32_t n, std::int64_t k, const AcOptions& opts = {});

}  // namespace amk
