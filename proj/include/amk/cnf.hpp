#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace amk {

// 1-based propositional variable id, matching DIMACS numbering.
struct Var {
  std::int32_t id = 0;

  constexpr auto operator<=>(const Var&) const = default;
};

// Signed literal. The stored code is the DIMACS integer: +id or -id.
class Lit {
 public:
  constexpr Lit() = default;

  static constexpr Lit pos(Var v) { return Lit(v.id); }
  static constexpr Lit neg(Var v) { return Lit(-v.id); }
  static Lit from_dimacs(std::int32_t code) {
    if (code == 0) throw std::invalid_argument("literal code 0 is reserved");
    return Lit(code);
  }

  constexpr Var var() const { return Var{code_ < 0 ? -code_ : code_}; }
  constexpr bool negative() const { return code_ < 0; }
  constexpr std::int32_t dimacs() const { return code_; }

  // Dense index for per-literal tables: 2*id for positive, 2*id+1 for negative.
  constexpr std::size_t index() const {
    return 2 * static_cast<std::size_t>(var().id) + (negative() ? 1 : 0);
  }

  constexpr Lit operator~() const { return Lit(-code_); }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  constexpr explicit Lit(std::int32_t code) : code_(code) {}
  std::int32_t code_ = 0;
};

// Raised when constant folding upstream produced an unsatisfiable empty clause.
class EmptyClauseError : public std::logic_error {
 public:
  EmptyClauseError() : std::logic_error("attempted to emit an empty clause") {}
};

// A disjunction of literals. Nonempty, duplicate-free and never tautological.
class Clause {
 public:
  explicit Clause(std::vector<Lit> lits);

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  const Lit& operator[](std::size_t i) const { return lits_[i]; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool operator==(const Clause&) const = default;

 private:
  std::vector<Lit> lits_;
};

struct CnfFormula {
  std::int32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::string> comments;

  // Largest variable id referenced by any clause, 0 if there are none.
  std::int32_t max_var() const;

  // Throws std::invalid_argument if some literal exceeds num_vars.
  void validate() const;

  bool operator==(const CnfFormula&) const = default;
};

// Result of normalizing a raw literal list before it becomes a Clause.
enum class Normalized { kept, tautology };

// Removes repeated literals in place (first occurrence wins) and reports
// whether the list contains a complementary pair.
Normalized normalize_literals(std::vector<Lit>& lits);

// Fresh-variable allocator plus clause sink. In counting mode clauses are
// normalized and counted but not stored, so size reports match emission exactly.
class EncoderContext {
 public:
  enum class Mode { store, count };

  explicit EncoderContext(std::int32_t reserved_vars = 0, Mode mode = Mode::store);

  // Positive literal of a previously unused variable.
  Lit fresh_var();

  // Fails with EmptyClauseError on an empty list. Tautologies are dropped.
  void emit_clause(std::span<const Lit> lits);
  void emit_clause(std::initializer_list<Lit> lits) {
    emit_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  void add_comment(std::string text) { comments_.push_back(std::move(text)); }
  void warn(std::string text) { warnings_.push_back(std::move(text)); }

  std::int32_t num_vars() const { return next_var_ - 1; }
  std::size_t num_clauses() const { return clause_count_; }
  Mode mode() const { return mode_; }
  std::span<const std::string> warnings() const { return warnings_; }
  std::span<const Clause> clauses() const { return clauses_; }

  // Moves the accumulated clauses out. Only valid in store mode.
  CnfFormula finalize() &&;

 private:
  Mode mode_;
  std::int32_t next_var_;
  std::size_t clause_count_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::string> comments_;
  std::vector<std::string> warnings_;
  std::vector<Lit> scratch_;
};

}  // namespace amk
