#include "amk/encoders.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace amk {

std::string_view encoding_name(Encoding e) {
  switch (e) {
    case Encoding::pw: return "pw";
    case Encoding::bs: return "bs";
    case Encoding::pd: return "pd";
    case Encoding::sc: return "sc";
    case Encoding::pc: return "pc";
    case Encoding::ba: return "ba";
  }
  return "?";
}

std::optional<Encoding> parse_encoding(std::string_view name) {
  for (Encoding e : kAllEncodings)
    if (encoding_name(e) == name) return e;
  return std::nullopt;
}

bool supports_bound(Encoding e, std::int64_t k) {
  switch (e) {
    case Encoding::pw:
    case Encoding::bs:
    case Encoding::pd:
      return k == 1;
    default:
      return k >= 0;
  }
}

UnsupportedBound::UnsupportedBound(Encoding e, std::int64_t k)
    : std::invalid_argument(std::string(encoding_name(e)) + " supports k=1 only (got k=" +
                            std::to_string(k) + ")") {}

AtMostK::AtMostK(std::vector<Lit> lits_in, std::int64_t k_in)
    : lits(std::move(lits_in)), k(k_in) {
  if (lits.empty()) throw std::invalid_argument("at-most-k over no literals");
  if (k < 0) throw std::invalid_argument("negative bound");
  std::set<std::int32_t> seen;
  for (Lit l : lits)
    if (!seen.insert(l.var().id).second)
      throw std::invalid_argument("at-most-k literals must use distinct variables");
}

AtMostK AtMostK::first_vars(std::int32_t n, std::int64_t k) {
  std::vector<Lit> lits;
  lits.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (std::int32_t i = 1; i <= n; ++i) lits.push_back(Lit::pos(Var{i}));
  return AtMostK(std::move(lits), k);
}

namespace {

// Handles k = 0 and k >= n. Returns true when nothing is left to encode.
bool encode_degenerate(const AtMostK& c, Encoding e, EncoderContext& ctx) {
  if (c.k == 0) {
    for (Lit l : c.lits) ctx.emit_clause({~l});
    return true;
  }
  if (c.k >= static_cast<std::int64_t>(c.n())) {
    ctx.warn(std::string(encoding_name(e)) + ": bound k=" + std::to_string(c.k) +
             " >= n=" + std::to_string(c.n()) + ", constraint is trivially true");
    return true;
  }
  return false;
}

void require_amo(Encoding e, const AtMostK& c) {
  if (c.k != 1) throw UnsupportedBound(e, c.k);
}

void pairwise(std::span<const Lit> xs, EncoderContext& ctx) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) ctx.emit_clause({~xs[i], ~xs[j]});
}

void bisect(std::span<const Lit> xs, EncoderContext& ctx) {
  if (xs.size() <= 4) {
    pairwise(xs, ctx);
    return;
  }
  const std::size_t m = xs.size() / 2;
  const Lit b = ctx.fresh_var();
  for (std::size_t i = 0; i < m; ++i) ctx.emit_clause({~xs[i], b});
  for (std::size_t i = m; i < xs.size(); ++i) ctx.emit_clause({~xs[i], ~b});
  bisect(xs.first(m), ctx);
  bisect(xs.subspan(m), ctx);
}

std::size_t ceil_sqrt(std::size_t n) {
  std::size_t m = 0;
  while (m * m < n) ++m;
  return m;
}

void product(std::span<const Lit> xs, EncoderContext& ctx) {
  const std::size_t n = xs.size();
  if (n <= 4) {
    pairwise(xs, ctx);
    return;
  }
  const std::size_t m = ceil_sqrt(n);
  std::vector<Lit> rows(m), cols(m);
  for (Lit& u : rows) u = ctx.fresh_var();
  for (Lit& v : cols) v = ctx.fresh_var();
  // Cell i sits at row i / m, column i % m; cells past n are constant false.
  for (std::size_t i = 0; i < n; ++i) {
    ctx.emit_clause({~xs[i], rows[i / m]});
    ctx.emit_clause({~xs[i], cols[i % m]});
  }
  product(rows, ctx);
  product(cols, ctx);
}

}  // namespace

void encode_pairwise(const AtMostK& c, EncoderContext& ctx) {
  require_amo(Encoding::pw, c);
  pairwise(c.lits, ctx);
}

void encode_bisect(const AtMostK& c, EncoderContext& ctx) {
  require_amo(Encoding::bs, c);
  bisect(c.lits, ctx);
}

void encode_product(const AtMostK& c, EncoderContext& ctx) {
  require_amo(Encoding::pd, c);
  product(c.lits, ctx);
}

void encode_sequential_counter(const AtMostK& c, EncoderContext& ctx) {
  if (encode_degenerate(c, Encoding::sc, ctx)) return;
  const std::size_t n = c.n();
  const auto k = static_cast<std::size_t>(c.k);
  const auto& x = c.lits;

  // prev[j] is bit j+1 of the unary count over x_1..x_{i-1}: "at least j+1 true".
  std::vector<Lit> prev(k), cur(k);
  for (Lit& s : prev) s = ctx.fresh_var();
  ctx.emit_clause({~x[0], prev[0]});
  for (std::size_t j = 1; j < k; ++j) ctx.emit_clause({~prev[j]});

  for (std::size_t i = 1; i + 1 < n; ++i) {
    for (Lit& s : cur) s = ctx.fresh_var();
    ctx.emit_clause({~x[i], cur[0]});
    for (std::size_t j = 0; j < k; ++j) ctx.emit_clause({~prev[j], cur[j]});
    for (std::size_t j = 1; j < k; ++j) ctx.emit_clause({~x[i], ~prev[j - 1], cur[j]});
    if (i >= k) ctx.emit_clause({~x[i], ~prev[k - 1]});
    std::swap(prev, cur);
  }
  ctx.emit_clause({~x[n - 1], ~prev[k - 1]});
}

void encode_parallel_counter(const AtMostK& c, EncoderContext& ctx) {
  if (encode_degenerate(c, Encoding::pc, ctx)) return;
  const auto k = static_cast<std::uint64_t>(c.k);
  BinaryNumber total = build_incomplete_sum(c.lits, ctx, counter_width(k));
  encode_leq_const(total, k, ctx);
}

void encode_binary_adder(const AtMostK& c, EncoderContext& ctx, const BinaryAdderOptions& opts) {
  if (encode_degenerate(c, Encoding::ba, ctx)) return;
  const auto k = static_cast<std::uint64_t>(c.k);
  const std::size_t width = counter_width(k);

  struct Entry {
    BinaryNumber num;
    std::size_t order;
  };
  // Narrowest first, then oldest.
  auto later = [](const Entry& a, const Entry& b) {
    if (a.num.width() != b.num.width()) return a.num.width() > b.num.width();
    return a.order > b.order;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> queue(later);
  std::size_t next_order = 0;
  for (Lit l : c.lits) queue.push({BinaryNumber{{l}}, next_order++});

  for (std::size_t step = 0; queue.size() > 1; ++step) {
    Entry a = queue.top();
    queue.pop();
    Entry b = queue.top();
    queue.pop();
    BinaryNumber sum = add_binary(a.num, b.num, AdderKind::complete, width, ctx);
    const bool final_sum = queue.empty();
    if ((opts.bound_intermediate || final_sum) && opts.skip_bound_at != step)
      encode_leq_const(sum, k, ctx);
    queue.push({std::move(sum), next_order++});
  }
}

void encode(Encoding e, const AtMostK& c, EncoderContext& ctx) {
  switch (e) {
    case Encoding::pw: encode_pairwise(c, ctx); return;
    case Encoding::bs: encode_bisect(c, ctx); return;
    case Encoding::pd: encode_product(c, ctx); return;
    case Encoding::sc: encode_sequential_counter(c, ctx); return;
    case Encoding::pc: encode_parallel_counter(c, ctx); return;
    case Encoding::ba: encode_binary_adder(c, ctx); return;
  }
}

void encode_at_least_one(std::span<const Lit> lits, EncoderContext& ctx) {
  ctx.emit_clause(lits);
}

namespace {

CnfFormula encode_formula_impl(Encoding e, std::int32_t n, std::int64_t k,
                               const BinaryAdderOptions* ba_opts) {
  if (!supports_bound(e, k)) throw UnsupportedBound(e, k);
  AtMostK c = AtMostK::first_vars(n, k);
  EncoderContext ctx(n);
  ctx.add_comment("amk encoding=" + std::string(encoding_name(e)) + " n=" + std::to_string(n) +
                  " k=" + std::to_string(k) + " xvars=1.." + std::to_string(n));
  if (ba_opts != nullptr && e == Encoding::ba)
    encode_binary_adder(c, ctx, *ba_opts);
  else
    encode(e, c, ctx);
  return std::move(ctx).finalize();
}

}  // namespace

CnfFormula encode_formula(Encoding e, std::int32_t n, std::int64_t k) {
  return encode_formula_impl(e, n, k, nullptr);
}

CnfFormula encode_formula(Encoding e, std::int32_t n, std::int64_t k,
                          const BinaryAdderOptions& ba_opts) {
  return encode_formula_impl(e, n, k, &ba_opts);
}

CountReport count_report(Encoding e, std::int32_t n, std::int64_t k) {
  if (!supports_bound(e, k)) throw UnsupportedBound(e, k);
  AtMostK c = AtMostK::first_vars(n, k);
  EncoderContext ctx(n, EncoderContext::Mode::count);
  encode(e, c, ctx);
  return CountReport{e, n, k, ctx.num_vars() - n, static_cast<std::int64_t>(ctx.num_clauses())};
}

}  // namespace amk
