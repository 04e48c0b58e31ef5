#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <functional>
#include <random>

#include "amk/dimacs.hpp"
#include "amk/encoders.hpp"
#include "support/brute_force.hpp"

using namespace amk;
using amk::testkit::brute_equivalent;
using amk::testkit::brute_extendable;
using amk::testkit::dimacs_clauses;

namespace {

using Clauses = std::vector<std::vector<int>>;

bool valid(Encoding e, std::int64_t k) { return supports_bound(e, k); }

std::string body(const CnfFormula& f) {
  CnfFormula g = f;
  g.comments.clear();
  return to_dimacs(g);
}

}  // namespace

TEST(EncodingNames, RoundTrip) {
  for (Encoding e : kAllEncodings) EXPECT_EQ(parse_encoding(encoding_name(e)), e);
  EXPECT_FALSE(parse_encoding("PW").has_value());
  EXPECT_FALSE(parse_encoding("totalizer").has_value());
}

TEST(AtMostK, RejectsBadInputs) {
  EXPECT_THROW(AtMostK({}, 1), std::invalid_argument);
  EXPECT_THROW(AtMostK::first_vars(3, -1), std::invalid_argument);
  const Lit a = Lit::pos(Var{1});
  EXPECT_THROW(AtMostK({a, ~a}, 1), std::invalid_argument);
}

TEST(Pairwise, ThreeVariables) {
  CnfFormula f = encode_formula(Encoding::pw, 3, 1);
  EXPECT_EQ(dimacs_clauses(f), (Clauses{{-1, -2}, {-1, -3}, {-2, -3}}));
  EXPECT_EQ(f.num_vars, 3);
}

TEST(Pairwise, SingleVariableHasNoClauses) {
  EXPECT_TRUE(encode_formula(Encoding::pw, 1, 1).clauses.empty());
}

TEST(Pairwise, ExactSizesUpTo50) {
  for (std::int32_t n = 1; n <= 50; ++n) {
    CountReport r = count_report(Encoding::pw, n, 1);
    EXPECT_EQ(r.clauses, std::int64_t{n} * (n - 1) / 2);
    EXPECT_EQ(r.aux_vars, 0);
  }
}

TEST(AmoOnly, OtherBoundsAreRejected) {
  for (Encoding e : {Encoding::pw, Encoding::bs, Encoding::pd}) {
    EXPECT_THROW(encode_formula(e, 5, 2), UnsupportedBound);
    EXPECT_THROW(count_report(e, 5, 0), UnsupportedBound);
    EncoderContext ctx(5);
    EXPECT_THROW(encode(e, AtMostK::first_vars(5, 3), ctx), UnsupportedBound);
  }
  try {
    encode_formula(Encoding::bs, 3, 2);
  } catch (const UnsupportedBound& err) {
    EXPECT_NE(std::string(err.what()).find("bs supports k=1 only"), std::string::npos);
  }
}

TEST(AmoOnly, SmallInputsMatchPairwiseExactly) {
  for (std::int32_t n = 1; n <= 4; ++n) {
    const std::string pw = body(encode_formula(Encoding::pw, n, 1));
    EXPECT_EQ(body(encode_formula(Encoding::bs, n, 1)), pw) << n;
    EXPECT_EQ(body(encode_formula(Encoding::pd, n, 1)), pw) << n;
  }
}

TEST(Bisect, FiveVariables) {
  CnfFormula f = encode_formula(Encoding::bs, 5, 1);
  EXPECT_EQ(f.num_vars, 6);
  EXPECT_EQ(dimacs_clauses(f), (Clauses{{-1, 6}, {-2, 6}, {-3, -6}, {-4, -6}, {-5, -6},
                                        {-1, -2}, {-3, -4}, {-3, -5}, {-4, -5}}));
  EXPECT_TRUE(brute_equivalent(f, 5, 1));
}

// Every weight-<=2 input fully decides at-most-one, so checking those on a large
// instance is a complete test of the projection.
TEST(Bisect, HundredVariablesOnLowWeightInputs) {
  const std::int32_t n = 100;
  CnfFormula f = encode_formula(Encoding::bs, n, 1);
  ASSERT_GT(f.num_vars, n);
  std::vector<bool> values(static_cast<std::size_t>(f.num_vars) + 1);
  auto extends = [&](std::int32_t i, std::int32_t j) {
    // Only x_i and x_j true (0 = absent). A commander is pinned by any true
    // member of its groups; the rest are set to `flip`.
    for (int flip = 0; flip < 2; ++flip) {
      std::fill(values.begin(), values.end(), false);
      if (i) values[static_cast<std::size_t>(i)] = true;
      if (j) values[static_cast<std::size_t>(j)] = true;
      for (std::int32_t b = n + 1; b <= f.num_vars; ++b) values[static_cast<std::size_t>(b)] = flip;
      for (const Clause& c : f.clauses)
        if (c.size() == 2 && c[0].var().id <= n && c[1].var().id > n &&
            values[static_cast<std::size_t>(c[0].var().id)])
          values[static_cast<std::size_t>(c[1].var().id)] = !c[1].negative();
      if (testkit::satisfies(f, values)) return true;
    }
    return false;
  };
  EXPECT_TRUE(extends(0, 0));
  for (std::int32_t i = 1; i <= n; ++i) EXPECT_TRUE(extends(i, 0)) << i;
  for (std::int32_t i = 1; i <= n; ++i)
    for (std::int32_t j = i + 1; j <= n; ++j) ASSERT_FALSE(extends(i, j)) << i << "," << j;
}

TEST(Product, NineVariables) {
  CnfFormula f = encode_formula(Encoding::pd, 9, 1);
  EXPECT_EQ(f.num_vars, 15);
  EXPECT_EQ(f.clauses.size(), 24u);
  // rows 10..12, columns 13..15; x_5 sits at row 2 column 2.
  Clauses c = dimacs_clauses(f);
  EXPECT_EQ(c[8], (std::vector<int>{-5, 11}));
  EXPECT_EQ(c[9], (std::vector<int>{-5, 14}));
  EXPECT_TRUE(brute_equivalent(f, 9, 1));
}

TEST(Product, TenVariablesLeaveEmptyCells) {
  CnfFormula f = encode_formula(Encoding::pd, 10, 1);
  // m = 4: 20 cell clauses, 4 rows -> PW(4)=6, 4 columns -> PW(4)=6.
  EXPECT_EQ(f.clauses.size(), 32u);
  EXPECT_EQ(f.num_vars - 10, 8);
  EXPECT_TRUE(brute_equivalent(f, 10, 1));
}

TEST(Product, FollowsRecurrence) {
  // clauses(n) = 2n + 2 clauses(ceil(sqrt n)), aux(n) = 2m + 2 aux(m) for n > 4.
  std::function<std::int64_t(std::int64_t)> clauses = [&](std::int64_t n) -> std::int64_t {
    if (n <= 4) return n * (n - 1) / 2;
    const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
    return 2 * n + 2 * clauses(m);
  };
  std::function<std::int64_t(std::int64_t)> aux = [&](std::int64_t n) -> std::int64_t {
    if (n <= 4) return 0;
    const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
    return 2 * m + 2 * aux(m);
  };
  for (std::int32_t n = 1; n <= 400; ++n) {
    CountReport r = count_report(Encoding::pd, n, 1);
    EXPECT_EQ(r.clauses, clauses(n)) << n;
    EXPECT_EQ(r.aux_vars, aux(n)) << n;
  }
}

TEST(SequentialCounter, FourChooseTwo) {
  CnfFormula f = encode_formula(Encoding::sc, 4, 2);
  EXPECT_EQ(f.num_vars, 10);
  EXPECT_EQ(dimacs_clauses(f),
            (Clauses{{-1, 5}, {-6}, {-2, 7}, {-5, 7}, {-6, 8}, {-2, -5, 8},
                     {-3, 9}, {-7, 9}, {-8, 10}, {-3, -7, 10}, {-3, -8}, {-4, -10}}));
  EXPECT_TRUE(brute_equivalent(f, 4, 2));
}

TEST(SequentialCounter, TwoVariablesAtMostOne) {
  CnfFormula f = encode_formula(Encoding::sc, 2, 1);
  EXPECT_TRUE(brute_equivalent(f, 2, 1));
}

TEST(SequentialCounter, SizeFormula) {
  for (std::int32_t n = 2; n <= 40; ++n)
    for (std::int64_t k = 1; k < n; ++k) {
      CountReport r = count_report(Encoding::sc, n, k);
      EXPECT_EQ(r.clauses, 2 * k * n - 4 * k + n) << n << "," << k;
      EXPECT_EQ(r.aux_vars, (n - 1) * k) << n << "," << k;
    }
}

TEST(ParallelCounter, ThreeChooseTwo) {
  CnfFormula f = encode_formula(Encoding::pc, 3, 2);
  EXPECT_EQ(f.num_vars - 3, 2);
  EXPECT_EQ(f.clauses.size(), 8u);
  EXPECT_EQ(dimacs_clauses(f).back(), (std::vector<int>{-5, -4}));
  EXPECT_TRUE(brute_equivalent(f, 3, 2));
}

TEST(ParallelCounter, AtMostOneUsesOneBit) {
  CnfFormula f = encode_formula(Encoding::pc, 5, 1);
  EXPECT_TRUE(brute_equivalent(f, 5, 1));
}

TEST(BinaryAdder, TwoChooseOne) {
  CnfFormula f = encode_formula(Encoding::ba, 2, 1);
  // complete half adder (7) + unit on the carry; sum <= 1 needs no comparator
  EXPECT_EQ(f.clauses.size(), 8u);
  EXPECT_EQ(f.num_vars - 2, 2);
  EXPECT_TRUE(brute_equivalent(f, 2, 1));
}

TEST(BinaryAdder, EightChooseThree) {
  EXPECT_TRUE(brute_equivalent(encode_formula(Encoding::ba, 8, 3), 8, 3));
}

// Each intermediate comparator is redundant on its own.
TEST(BinaryAdder, SingleComparatorAblation) {
  const std::int32_t n = 8;
  const std::int64_t k = 2;
  const std::size_t steps = n - 1;
  const std::size_t full = encode_formula(Encoding::ba, n, k).clauses.size();
  for (std::size_t s = 0; s + 1 < steps; ++s) {
    BinaryAdderOptions opts;
    opts.skip_bound_at = s;
    CnfFormula f = encode_formula(Encoding::ba, n, k, opts);
    EXPECT_LE(f.clauses.size(), full);
    EXPECT_TRUE(brute_equivalent(f, n, k)) << "step " << s;
  }
}

TEST(BinaryAdder, FinalComparatorOnlyIsEquivalent) {
  BinaryAdderOptions opts;
  opts.bound_intermediate = false;
  for (std::int32_t n = 2; n <= 8; ++n)
    for (std::int64_t k = 1; k < n; ++k)
      EXPECT_TRUE(brute_equivalent(encode_formula(Encoding::ba, n, k, opts), n, k))
          << n << "," << k;
}

TEST(Degenerate, ZeroBoundForcesAllFalse) {
  for (Encoding e : {Encoding::sc, Encoding::pc, Encoding::ba}) {
    CnfFormula f = encode_formula(e, 4, 0);
    EXPECT_EQ(dimacs_clauses(f), (Clauses{{-1}, {-2}, {-3}, {-4}}));
  }
}

TEST(Degenerate, BoundAtLeastNIsVacuousWithWarning) {
  for (Encoding e : {Encoding::sc, Encoding::pc, Encoding::ba}) {
    for (std::int64_t k : {4, 9}) {
      EncoderContext ctx(4);
      encode(e, AtMostK::first_vars(4, k), ctx);
      EXPECT_EQ(ctx.num_clauses(), 0u);
      EXPECT_EQ(ctx.num_vars(), 4);
      EXPECT_EQ(ctx.warnings().size(), 1u);
    }
    EncoderContext one(1);
    encode(e, AtMostK::first_vars(1, 1), one);
    EXPECT_EQ(one.num_clauses(), 0u);
  }
}

// The master property over every small valid configuration.
TEST(Encoders, BruteForceEquivalenceUpToSeven) {
  for (Encoding e : kAllEncodings)
    for (std::int32_t n = 1; n <= 7; ++n)
      for (std::int64_t k = 1; k < std::max<std::int64_t>(n, 2); ++k) {
        if (!valid(e, k)) continue;
        CnfFormula f = encode_formula(e, n, k);
        EXPECT_NO_THROW(f.validate());
        if (f.num_vars > n) EXPECT_EQ(f.max_var(), f.num_vars);
        EXPECT_TRUE(brute_equivalent(f, n, k)) << encoding_name(e) << " n=" << n << " k=" << k;
      }
}

TEST(Encoders, CountReportMatchesEmission) {
  for (Encoding e : kAllEncodings)
    for (std::int32_t n : {1, 2, 3, 5, 8, 13, 30, 64, 101})
      for (std::int64_t k : {0, 1, 2, 3, 5, 7, 40, 200}) {
        if (!valid(e, k)) continue;
        CnfFormula f = encode_formula(e, n, k);
        CountReport r = count_report(e, n, k);
        EXPECT_EQ(r.clauses, static_cast<std::int64_t>(f.clauses.size()));
        EXPECT_EQ(r.aux_vars, f.num_vars - n);
      }
}

TEST(Encoders, OutputIsDeterministic) {
  for (Encoding e : kAllEncodings) {
    const std::int64_t k = valid(e, 3) ? 3 : 1;
    EXPECT_EQ(to_dimacs(encode_formula(e, 23, k)), to_dimacs(encode_formula(e, 23, k)));
  }
}

TEST(Encoders, WorksOnArbitraryLiterals) {
  // Negated and shuffled inputs: at most 2 of (~x3, x7, ~x1, x5) true.
  std::vector<Lit> lits{Lit::neg(Var{3}), Lit::pos(Var{7}), Lit::neg(Var{1}), Lit::pos(Var{5})};
  for (Encoding e : {Encoding::sc, Encoding::pc, Encoding::ba}) {
    EncoderContext ctx(7);
    encode(e, AtMostK(lits, 2), ctx);
    CnfFormula f = std::move(ctx).finalize();
    for (std::uint64_t m = 0; m < 128; ++m) {
      int count = 0;
      for (Lit l : lits) count += (((m >> (l.var().id - 1)) & 1U) != 0) != l.negative();
      // inputs 1..7 form the mask; aux vars are enumerated by brute_extendable
      EXPECT_EQ(brute_extendable(f, 7, m), count <= 2) << encoding_name(e) << " " << m;
    }
  }
}

TEST(AtLeastOne, ExactlyOneWithEveryAmo) {
  for (Encoding e : kAllEncodings)
    for (std::int32_t n = 1; n <= 8; ++n) {
      EncoderContext ctx(n);
      AtMostK c = AtMostK::first_vars(n, 1);
      encode_at_least_one(c.lits, ctx);
      encode(e, c, ctx);
      CnfFormula f = std::move(ctx).finalize();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
        EXPECT_EQ(brute_extendable(f, n, m), std::popcount(m) == 1) << encoding_name(e);
    }
}

TEST(AtLeastOne, SingleClause) {
  EncoderContext ctx(3);
  std::vector<Lit> lits{Lit::pos(Var{1}), Lit::pos(Var{2}), Lit::pos(Var{3})};
  encode_at_least_one(lits, ctx);
  ASSERT_EQ(ctx.num_clauses(), 1u);
  EXPECT_EQ(ctx.clauses()[0].size(), 3u);
}
