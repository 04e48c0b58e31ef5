#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amk/adders.hpp"
#include "amk/cnf.hpp"

namespace amk {

enum class Encoding { pw, bs, pd, sc, pc, ba };

inline constexpr std::array<Encoding, 6> kAllEncodings = {
    Encoding::pw, Encoding::bs, Encoding::pd, Encoding::sc, Encoding::pc, Encoding::ba};

// Lowercase abbreviation: pw, bs, pd, sc, pc, ba.
std::string_view encoding_name(Encoding e);
std::optional<Encoding> parse_encoding(std::string_view name);

// pw, bs and pd only encode at-most-one.
bool supports_bound(Encoding e, std::int64_t k);

class UnsupportedBound : public std::invalid_argument {
 public:
  UnsupportedBound(Encoding e, std::int64_t k);
};

// At most k of lits are true.
struct AtMostK {
  AtMostK(std::vector<Lit> lits, std::int64_t k);

  // Over problem variables 1..n.
  static AtMostK first_vars(std::int32_t n, std::int64_t k);

  std::size_t n() const { return lits.size(); }

  std::vector<Lit> lits;
  std::int64_t k;
};

void encode_pairwise(const AtMostK& c, EncoderContext& ctx);
void encode_bisect(const AtMostK& c, EncoderContext& ctx);
void encode_product(const AtMostK& c, EncoderContext& ctx);
void encode_sequential_counter(const AtMostK& c, EncoderContext& ctx);
void encode_parallel_counter(const AtMostK& c, EncoderContext& ctx);

struct BinaryAdderOptions {
  // Bound every intermediate sum, not just the final one.
  bool bound_intermediate = true;
  // Skip the comparator of the given addition step (0-based, in merge order).
  std::optional<std::size_t> skip_bound_at;
};

void encode_binary_adder(const AtMostK& c, EncoderContext& ctx,
                         const BinaryAdderOptions& opts = {});

// Dispatches on the encoding. Throws UnsupportedBound for pw/bs/pd with k != 1.
void encode(Encoding e, const AtMostK& c, EncoderContext& ctx);

// Single clause over lits.
void encode_at_least_one(std::span<const Lit> lits, EncoderContext& ctx);

// Standalone formula for at-most-k over variables 1..n, with a header comment
// "amk encoding=<name> n=<n> k=<k> xvars=1..<n>".
CnfFormula encode_formula(Encoding e, std::int32_t n, std::int64_t k);
CnfFormula encode_formula(Encoding e, std::int32_t n, std::int64_t k,
                          const BinaryAdderOptions& ba_opts);

struct CountReport {
  Encoding encoding;
  std::int32_t n = 0;
  std::int64_t k = 0;
  std::int64_t aux_vars = 0;
  std::int64_t clauses = 0;
};

// Runs the encoder against a counting context.
CountReport count_report(Encoding e, std::int32_t n, std::int64_t k);

}  // namespace amk
