#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "amk/cnf.hpp"

namespace amk {

// Unsigned binary counter, least-significant bit first.
struct BinaryNumber {
  std::vector<Lit> bits;

  std::size_t width() const { return bits.size(); }
};

// Incomplete adders only propagate 1s (outputs are lower bounds on the
// arithmetic result). Complete adders define their outputs exactly.
enum class AdderKind { incomplete, complete };

struct AdderOutputs {
  Lit sum;
  Lit carry;
};

inline constexpr std::size_t kUnboundedWidth = std::numeric_limits<std::size_t>::max();

// Clause counts: incomplete half 3, incomplete full 7, complete half 7,
// complete full 10.
std::size_t half_adder_clause_count(AdderKind kind);
std::size_t full_adder_clause_count(AdderKind kind);

// Emit adder clauses over caller-supplied output literals.
void emit_half_adder(Lit a, Lit b, Lit sum, Lit carry, AdderKind kind, EncoderContext& ctx);
void emit_full_adder(Lit a, Lit b, Lit cin, Lit sum, Lit carry, AdderKind kind,
                     EncoderContext& ctx);

// Same, allocating fresh sum and carry variables.
AdderOutputs half_adder(Lit a, Lit b, AdderKind kind, EncoderContext& ctx);
AdderOutputs full_adder(Lit a, Lit b, Lit cin, AdderKind kind, EncoderContext& ctx);

// Ripple-carry addition. The result keeps at most max_width bits; a carry out
// of the top kept bit gets its own variable and is forced false by a unit clause.
BinaryNumber add_binary(const BinaryNumber& a, const BinaryNumber& b, AdderKind kind,
                        std::size_t max_width, EncoderContext& ctx);

// Recursive parallel counter over xs using incomplete adders: one literal is
// returned as-is, three literals go through a single full adder, anything else
// is split at ceil(len/2) and the halves are summed recursively.
BinaryNumber build_incomplete_sum(std::span<const Lit> xs, EncoderContext& ctx,
                                  std::size_t max_width = kUnboundedWidth);

// Forbids every assignment of t whose value exceeds k, comparing from the most
// significant bit down. Bits above the width of k are forced to 0.
void encode_leq_const(const BinaryNumber& t, std::uint64_t k, EncoderContext& ctx);

// Bits needed to represent k, i.e. ceil(log2(k + 1)). At least 1.
std::size_t counter_width(std::uint64_t k);

}  // namespace amk
