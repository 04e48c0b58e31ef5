#include "amk/adders.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <stdexcept>

namespace amk {

std::size_t half_adder_clause_count(AdderKind kind) {
  return kind == AdderKind::incomplete ? 3 : 7;
}

std::size_t full_adder_clause_count(AdderKind kind) {
  return kind == AdderKind::incomplete ? 7 : 10;
}

void emit_half_adder(Lit a, Lit b, Lit sum, Lit carry, AdderKind kind, EncoderContext& ctx) {
  // a & b -> carry, exactly one input -> sum
  ctx.emit_clause({~a, ~b, carry});
  ctx.emit_clause({~a, b, sum});
  ctx.emit_clause({a, ~b, sum});
  if (kind == AdderKind::incomplete) return;
  ctx.emit_clause({a, ~carry});
  ctx.emit_clause({b, ~carry});
  ctx.emit_clause({~a, ~b, ~sum});
  ctx.emit_clause({a, b, ~sum});
}

void emit_full_adder(Lit a, Lit b, Lit cin, Lit sum, Lit carry, AdderKind kind,
                     EncoderContext& ctx) {
  if (kind == AdderKind::incomplete) {
    ctx.emit_clause({~a, ~b, carry});
    ctx.emit_clause({~a, ~cin, carry});
    ctx.emit_clause({~b, ~cin, carry});
    ctx.emit_clause({~a, b, cin, sum});
    ctx.emit_clause({a, ~b, cin, sum});
    ctx.emit_clause({a, b, ~cin, sum});
    ctx.emit_clause({~a, ~b, ~cin, sum});
    return;
  }
  // Minimum CNF of the full-adder relation. The carry is used to pin the sum
  // for the cin-only and cin-plus-one cases, which saves four clauses over the
  // separate xor3/majority encodings.
  ctx.emit_clause({~a, ~b, carry});
  ctx.emit_clause({a, b, ~carry});
  ctx.emit_clause({~cin, sum, carry});
  ctx.emit_clause({cin, ~sum, ~carry});
  ctx.emit_clause({~a, ~b, ~cin, sum});
  ctx.emit_clause({a, b, cin, ~sum});
  ctx.emit_clause({~a, b, ~cin, ~sum});
  ctx.emit_clause({a, ~b, ~cin, ~sum});
  ctx.emit_clause({~a, b, cin, sum});
  ctx.emit_clause({a, ~b, cin, sum});
}

AdderOutputs half_adder(Lit a, Lit b, AdderKind kind, EncoderContext& ctx) {
  AdderOutputs out{ctx.fresh_var(), ctx.fresh_var()};
  emit_half_adder(a, b, out.sum, out.carry, kind, ctx);
  return out;
}

AdderOutputs full_adder(Lit a, Lit b, Lit cin, AdderKind kind, EncoderContext& ctx) {
  AdderOutputs out{ctx.fresh_var(), ctx.fresh_var()};
  emit_full_adder(a, b, cin, out.sum, out.carry, kind, ctx);
  return out;
}

BinaryNumber add_binary(const BinaryNumber& a, const BinaryNumber& b, AdderKind kind,
                        std::size_t max_width, EncoderContext& ctx) {
  if (a.width() == 0 || b.width() == 0) throw std::invalid_argument("empty binary number");
  if (max_width == 0 || a.width() > max_width || b.width() > max_width)
    throw std::invalid_argument("operand wider than the counter width");

  BinaryNumber out;
  std::optional<Lit> carry;
  const std::size_t width = std::max(a.width(), b.width());
  std::vector<Lit> in;
  for (std::size_t i = 0; i < width; ++i) {
    in.clear();
    if (i < a.width()) in.push_back(a.bits[i]);
    if (i < b.width()) in.push_back(b.bits[i]);
    if (carry) in.push_back(*carry);
    carry.reset();

    if (in.size() == 1) {
      out.bits.push_back(in[0]);
      continue;
    }
    AdderOutputs r = in.size() == 2 ? half_adder(in[0], in[1], kind, ctx)
                                    : full_adder(in[0], in[1], in[2], kind, ctx);
    out.bits.push_back(r.sum);
    if (i + 1 >= max_width)
      ctx.emit_clause({~r.carry});
    else
      carry = r.carry;
  }
  if (carry) out.bits.push_back(*carry);
  return out;
}

BinaryNumber build_incomplete_sum(std::span<const Lit> xs, EncoderContext& ctx,
                                  std::size_t max_width) {
  if (xs.empty()) throw std::invalid_argument("sum over no literals");
  if (max_width == 0) throw std::invalid_argument("zero counter width");
  if (xs.size() == 1) return BinaryNumber{{xs[0]}};
  if (xs.size() == 3) {
    AdderOutputs r = full_adder(xs[0], xs[1], xs[2], AdderKind::incomplete, ctx);
    if (max_width >= 2) return BinaryNumber{{r.sum, r.carry}};
    ctx.emit_clause({~r.carry});
    return BinaryNumber{{r.sum}};
  }
  const std::size_t mid = (xs.size() + 1) / 2;
  BinaryNumber lo = build_incomplete_sum(xs.first(mid), ctx, max_width);
  BinaryNumber hi = build_incomplete_sum(xs.subspan(mid), ctx, max_width);
  return add_binary(lo, hi, AdderKind::incomplete, max_width, ctx);
}

void encode_leq_const(const BinaryNumber& t, std::uint64_t k, EncoderContext& ctx) {
  const std::size_t kbits = static_cast<std::size_t>(std::bit_width(k));
  if (t.width() < kbits) return;  // t cannot reach k

  for (std::size_t i = t.width(); i-- > kbits;) ctx.emit_clause({~t.bits[i]});

  std::vector<Lit> clause;
  for (std::size_t j = kbits; j-- > 0;) {
    if ((k >> j) & 1U) continue;
    clause.clear();
    for (std::size_t i = kbits; i-- > j + 1;)
      if ((k >> i) & 1U) clause.push_back(~t.bits[i]);
    clause.push_back(~t.bits[j]);
    ctx.emit_clause(clause);
  }
}

std::size_t counter_width(std::uint64_t k) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(k)));
}

}  // namespace amk
