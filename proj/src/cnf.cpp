#include "amk/cnf.hpp"

#include <algorithm>
#include <limits>

namespace amk {

namespace {

bool has_repeat_or_clash(std::vector<Lit> sorted) {
  std::sort(sorted.begin(), sorted.end(), [](Lit a, Lit b) {
    return a.index() < b.index();
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].var() == sorted[i - 1].var()) return true;
  return false;
}

}  // namespace

Normalized normalize_literals(std::vector<Lit>& lits) {
  // Common case: all variables distinct, nothing to do.
  if (lits.size() <= 1) return Normalized::kept;
  if (lits.size() > 8 && !has_repeat_or_clash(lits)) return Normalized::kept;

  std::vector<Lit> out;
  out.reserve(lits.size());
  for (Lit l : lits) {
    bool seen = false;
    for (Lit o : out) {
      if (o == ~l) return Normalized::tautology;
      if (o == l) seen = true;
    }
    if (!seen) out.push_back(l);
  }
  lits = std::move(out);
  return Normalized::kept;
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  if (lits_.empty()) throw EmptyClauseError();
  for (Lit l : lits_)
    if (l.var().id <= 0) throw std::invalid_argument("clause literal has invalid variable");
  std::vector<Lit> copy = lits_;
  if (normalize_literals(copy) == Normalized::tautology)
    throw std::invalid_argument("clause is tautological");
  if (copy.size() != lits_.size())
    throw std::invalid_argument("clause contains a repeated literal");
}

std::int32_t CnfFormula::max_var() const {
  std::int32_t m = 0;
  for (const Clause& c : clauses)
    for (Lit l : c) m = std::max(m, l.var().id);
  return m;
}

void CnfFormula::validate() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  if (max_var() > num_vars)
    throw std::invalid_argument("literal references variable " + std::to_string(max_var()) +
                                " beyond num_vars " + std::to_string(num_vars));
}

EncoderContext::EncoderContext(std::int32_t reserved_vars, Mode mode)
    : mode_(mode), next_var_(reserved_vars + 1) {
  if (reserved_vars < 0) throw std::invalid_argument("negative reserved variable count");
}

Lit EncoderContext::fresh_var() {
  if (next_var_ == std::numeric_limits<std::int32_t>::max())
    throw std::overflow_error("variable ids exhausted");
  return Lit::pos(Var{next_var_++});
}

void EncoderContext::emit_clause(std::span<const Lit> lits) {
  if (lits.empty()) throw EmptyClauseError();
  scratch_.assign(lits.begin(), lits.end());
  for (Lit l : scratch_)
    if (l.var().id <= 0 || l.var().id >= next_var_)
      throw std::invalid_argument("clause references unallocated variable " +
                                  std::to_string(l.var().id));
  if (normalize_literals(scratch_) == Normalized::tautology) return;
  ++clause_count_;
  if (mode_ == Mode::store) clauses_.emplace_back(scratch_);
}

CnfFormula EncoderContext::finalize() && {
  if (mode_ != Mode::store) throw std::logic_error("counting context holds no clauses");
  CnfFormula f;
  f.num_vars = num_vars();
  f.clauses = std::move(clauses_);
  f.comments = std::move(comments_);
  return f;
}

}  // namespace amk
