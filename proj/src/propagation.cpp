#include "amk/propagation.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

namespace amk {

namespace {

Value literal_value(Value var_value, Lit l) {
  if (var_value == Value::unassigned) return Value::unassigned;
  const bool var_true = var_value == Value::true_;
  return var_true != l.negative() ? Value::true_ : Value::false_;
}

}  // namespace

Assignment Assignment::from_literals(std::int32_t num_vars, std::span<const Lit> lits) {
  Assignment a(num_vars);
  for (Lit l : lits)
    if (!a.set(l)) throw std::invalid_argument("inconsistent seed literals");
  return a;
}

Value Assignment::value(Lit l) const { return literal_value(value(l.var()), l); }

bool Assignment::set(Lit l) {
  Value& slot = values_.at(static_cast<std::size_t>(l.var().id));
  const Value want = l.negative() ? Value::false_ : Value::true_;
  if (slot != Value::unassigned && slot != want) return false;
  slot = want;
  return true;
}

std::vector<Lit> Assignment::literals() const {
  std::vector<Lit> out;
  for (std::size_t v = 1; v < values_.size(); ++v) {
    const Var var{static_cast<std::int32_t>(v)};
    if (values_[v] == Value::true_) out.push_back(Lit::pos(var));
    if (values_[v] == Value::false_) out.push_back(Lit::neg(var));
  }
  return out;
}

Propagator::Propagator(const CnfFormula& f)
    : num_vars_(f.num_vars),
      watches_(2 * (static_cast<std::size_t>(f.num_vars) + 1)),
      values_(static_cast<std::size_t>(f.num_vars) + 1, Value::unassigned) {
  f.validate();
  for (const Clause& c : f.clauses) {
    if (c.size() == 1) {
      units_.push_back(c[0]);
      continue;
    }
    const auto id = static_cast<std::uint32_t>(clauses_.size());
    clauses_.emplace_back(static_cast<std::uint32_t>(lits_.size()),
                          static_cast<std::uint32_t>(c.size()));
    lits_.insert(lits_.end(), c.begin(), c.end());
    watches_[c[0].index()].push_back(id);
    watches_[c[1].index()].push_back(id);
  }
  reset();
}

Value Propagator::value(Lit l) const {
  return literal_value(values_[static_cast<std::size_t>(l.var().id)], l);
}

bool Propagator::enqueue(Lit l) {
  const Value v = value(l);
  if (v == Value::true_) return true;
  if (v == Value::false_) return false;
  values_[static_cast<std::size_t>(l.var().id)] = l.negative() ? Value::false_ : Value::true_;
  trail_.push_back(l);
  return true;
}

bool Propagator::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit falsified = ~trail_[qhead_++];
    std::vector<std::uint32_t>& ws = watches_[falsified.index()];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::uint32_t id = ws[i];
      auto [offset, size] = clauses_[id];
      Lit* c = lits_.data() + offset;
      if (c[0] == falsified) std::swap(c[0], c[1]);

      if (value(c[0]) == Value::true_) {
        ws[keep++] = id;
        continue;
      }
      bool moved = false;
      for (std::uint32_t j = 2; j < size; ++j) {
        if (value(c[j]) != Value::false_) {
          std::swap(c[1], c[j]);
          watches_[c[1].index()].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;

      ws[keep++] = id;
      if (!enqueue(c[0])) {
        for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
        ws.resize(keep);
        qhead_ = trail_.size();
        return false;
      }
    }
    ws.resize(keep);
  }
  return true;
}

bool Propagator::reset() {
  backtrack(0);
  for (Lit u : units_)
    if (!enqueue(u)) return false;
  return propagate();
}

bool Propagator::assume(Lit l) {
  if (!enqueue(l)) return false;
  return propagate();
}

void Propagator::backtrack(std::size_t size) {
  while (trail_.size() > size) {
    values_[static_cast<std::size_t>(trail_.back().var().id)] = Value::unassigned;
    trail_.pop_back();
  }
  qhead_ = std::min(qhead_, trail_.size());
}

bool UpOutcome::forces(Lit l) const {
  return std::find(forced.begin(), forced.end(), l) != forced.end();
}

UpOutcome unit_propagate(const CnfFormula& f, const Assignment& seed) {
  if (seed.num_vars() > f.num_vars)
    throw std::invalid_argument("seed assigns variables beyond the formula");
  Propagator p(f);
  UpOutcome out;
  const std::vector<Lit> seed_lits = seed.literals();
  bool ok = p.reset();
  for (Lit l : seed_lits) {
    if (!ok) break;
    ok = p.assume(l);
  }
  out.status = ok ? UpOutcome::Status::fixpoint : UpOutcome::Status::conflict;
  for (Lit l : p.trail())
    if (seed.value(l.var()) == Value::unassigned) out.forced.push_back(l);
  std::sort(out.forced.begin(), out.forced.end(),
            [](Lit a, Lit b) { return a.index() < b.index(); });
  return out;
}

namespace {

bool search(Propagator& p, std::int32_t from, std::vector<bool>* model) {
  std::int32_t v = from;
  while (v <= p.num_vars() && p.value(Var{v}) != Value::unassigned) ++v;
  if (v > p.num_vars()) {
    if (model != nullptr) {
      model->assign(static_cast<std::size_t>(p.num_vars()) + 1, false);
      for (Lit l : p.trail()) (*model)[static_cast<std::size_t>(l.var().id)] = !l.negative();
    }
    return true;
  }
  const std::size_t mark = p.trail_size();
  for (Lit l : {Lit::pos(Var{v}), Lit::neg(Var{v})}) {
    const bool found = p.assume(l) && search(p, v + 1, model);
    p.backtrack(mark);
    if (found) return true;
  }
  return false;
}

}  // namespace

bool extendable(Propagator& p, std::vector<bool>* model) {
  return search(p, 1, model);
}

std::optional<std::vector<bool>> find_model(const CnfFormula& f) {
  Propagator p(f);
  if (!p.reset()) return std::nullopt;
  std::vector<bool> model;
  if (!extendable(p, &model)) return std::nullopt;
  return model;
}

OracleLimitExceeded::OracleLimitExceeded(std::int32_t n, std::int32_t limit)
    : std::invalid_argument("n=" + std::to_string(n) + " exceeds the exhaustive oracle limit " +
                            std::to_string(limit)) {}

OracleResult oracle_equivalent(const CnfFormula& f, std::int32_t n, std::int64_t k,
                               std::int32_t limit) {
  if (n > limit || n > 30) throw OracleLimitExceeded(n, limit);
  if (n > f.num_vars) throw std::invalid_argument("formula has fewer variables than inputs");

  Propagator p(f);
  const bool base_ok = p.reset();
  const std::size_t base = p.trail_size();
  OracleResult result;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const bool expected = std::popcount(mask) <= k;
    bool got = base_ok;
    for (std::int32_t i = 0; got && i < n; ++i) {
      const Var v{i + 1};
      got = p.assume((mask >> i) & 1U ? Lit::pos(v) : Lit::neg(v));
    }
    if (got) got = extendable(p);
    p.backtrack(base);
    ++result.assignments_checked;
    if (got != expected) {
      result.equivalent = false;
      std::vector<bool> cex(static_cast<std::size_t>(n));
      for (std::int32_t i = 0; i < n; ++i) cex[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
      result.counterexample = std::move(cex);
      result.counterexample_extendable = got;
      break;
    }
  }
  return result;
}

OracleResult oracle_equivalent(Encoding e, std::int32_t n, std::int64_t k, std::int32_t limit) {
  if (n > limit) throw OracleLimitExceeded(n, limit);
  return oracle_equivalent(encode_formula(e, n, k), n, k, limit);
}

namespace {

// Returns false and fills the witness if the seed set breaks arc consistency.
bool ac_holds_for(Propagator& p, std::size_t base, std::span<const std::int32_t> chosen,
                  std::int32_t n, AcWitness& witness) {
  p.backtrack(base);
  witness.seed.clear();
  for (std::int32_t i : chosen) witness.seed.push_back(Lit::pos(Var{i + 1}));
  for (Lit l : witness.seed) {
    if (!p.assume(l)) {
      witness.conflict = true;
      return false;
    }
  }
  for (std::int32_t i = 0; i < n; ++i) {
    const Lit x = Lit::pos(Var{i + 1});
    if (std::find(witness.seed.begin(), witness.seed.end(), x) != witness.seed.end()) continue;
    if (p.value(x) != Value::false_) {
      witness.unforced = x;
      return false;
    }
  }
  return true;
}

}  // namespace

AcReport check_ac_by_up(const CnfFormula& f, Encoding e, std::int32_t n, std::int64_t k,
                        const AcOptions& opts) {
  if (k < 1 || k >= n) throw std::invalid_argument("arc consistency check needs 1 <= k < n");
  AcReport report{e, n, k, true, true, 0, std::nullopt};
  Propagator p(f);
  if (!p.reset()) {
    report.achieves_ac = false;
    report.witness = AcWitness{{}, std::nullopt, true};
    return report;
  }
  const std::size_t base = p.trail_size();
  AcWitness witness;
  const auto kk = static_cast<std::size_t>(k);

  if (n <= opts.exhaustive_limit) {
    std::vector<std::int32_t> idx(kk);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ++report.seeds_tested;
      if (!ac_holds_for(p, base, idx, n, witness)) {
        report.achieves_ac = false;
        report.witness = witness;
        break;
      }
      // Next k-combination in lexicographic order.
      std::size_t i = kk;
      while (i > 0 && idx[i - 1] == n - static_cast<std::int32_t>(kk - i) - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < kk; ++j) idx[j] = idx[j - 1] + 1;
    }
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    std::vector<std::int32_t> pool(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < opts.samples; ++s) {
      std::iota(pool.begin(), pool.end(), 0);
      for (std::size_t i = 0; i < kk; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      std::vector<std::int32_t> chosen(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(kk));
      std::sort(chosen.begin(), chosen.end());
      ++report.seeds_tested;
      if (!ac_holds_for(p, base, chosen, n, witness)) {
        report.achieves_ac = false;
        report.witness = witness;
        break;
      }
    }
  }
  p.backtrack(base);
  return report;
}

AcReport check_ac_by_up(Encoding e, std::int32_t n, std::int64_t k, const AcOptions& opts) {
  return check_ac_by_up(encode_formula(e, n, k), e, n, k, opts);
}

}  // namespace amk
