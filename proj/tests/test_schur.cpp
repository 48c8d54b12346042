#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "sumfree/bits.hpp"
#include "sumfree/schur.hpp"

using namespace sumfree;

namespace {
brute::Set to_brute(const IntSet& s) {
  const auto e = s.elements();
  return brute::Set(e.begin(), e.end());
}
}  // namespace

TEST(SchurTriples, Examples) {
  const auto t = schur_triples(IntSet{1, 2, 3, 4});
  const std::vector<SchurTriple> want = {{1, 1, 2}, {1, 2, 3}, {1, 3, 4}, {2, 2, 4}};
  EXPECT_EQ(t, want);
  EXPECT_EQ(schur_triples(IntSet{1, 2}), (std::vector<SchurTriple>{{1, 1, 2}}));
  EXPECT_TRUE(schur_triples(IntSet::interval(11, 20)).empty());
}

TEST(SumFree, Examples) {
  EXPECT_TRUE(is_sum_free(odds(30)));
  EXPECT_TRUE(is_sum_free(IntSet()));
  EXPECT_FALSE(is_sum_free(IntSet{1, 2}));
  EXPECT_TRUE(is_sum_free_mod(IntSet{1}, 2));
  EXPECT_FALSE(is_sum_free_mod(IntSet{1, 2}, 3));
  EXPECT_TRUE(is_sum_free_mod(IntSet{1, 4}, 5));
  EXPECT_TRUE(is_sum_free_mod(IntSet{2, 3}, 5));
  EXPECT_THROW(is_sum_free_mod(IntSet{1}, 0), precondition_error);
}

TEST(SumFree, FormulationsAgreeExhaustively) {
  // triple-free <=> (A+A) n A empty <=> (A-A)+ n A empty, all A in [12]
  for (bits::Mask m = 0; m < (1u << 12); ++m) {
    const IntSet a = IntSet::from_mask(m << 1);
    const bool sf = is_sum_free(a);
    EXPECT_EQ(sf, schur_triples(a).empty());
    EXPECT_EQ(sf, !sumset(a, a).intersects(a));
    EXPECT_EQ(sf, !positive_part(difference_set(a, a)).intersects(a));
    EXPECT_EQ(sf, bits::is_sum_free(m << 1));
    EXPECT_EQ(sf, brute::sum_free(to_brute(a)));
  }
}

TEST(RWise, Examples) {
  const WitnessResult w = r_wise_witness(IntSet::interval(1, 4), 2);
  ASSERT_EQ(w.status, SearchStatus::found);
  EXPECT_TRUE(validate_witness(IntSet::interval(1, 4), *w.witness));
  EXPECT_EQ(r_wise_witness(IntSet::interval(1, 5), 2).status, SearchStatus::none);
  const WitnessResult e = r_wise_witness(IntSet(), 3);
  ASSERT_EQ(e.status, SearchStatus::found);
  EXPECT_EQ(e.witness->parts.size(), 3u);
  for (const IntSet& p : e.witness->parts) EXPECT_TRUE(p.empty());
  const WitnessResult mod = r_wise_witness(IntSet::interval(1, 4), 2, 5);
  ASSERT_EQ(mod.status, SearchStatus::found);
  EXPECT_TRUE(validate_witness(IntSet::interval(1, 4), *mod.witness));
}

TEST(RWise, AgreesWithBruteForceOnSmallSets) {
  for (bits::Mask m = 0; m < (1u << 9); ++m) {
    const IntSet a = IntSet::from_mask(m << 1);
    for (int r = 1; r <= 2; ++r) {
      const WitnessResult w = r_wise_witness(a, r);
      EXPECT_EQ(w.status == SearchStatus::found, brute::r_wise(to_brute(a), r)) << format_set_literal(a);
      if (w.witness) {
        EXPECT_TRUE(validate_witness(a, *w.witness));
      }
    }
    const WitnessResult wm = r_wise_witness(a, 2, 11);
    EXPECT_EQ(wm.status == SearchStatus::found, brute::r_wise(to_brute(a), 2, 11)) << format_set_literal(a);
  }
}

TEST(RWise, BudgetExhaustionIsReported) {
  const WitnessResult w = r_wise_witness(IntSet::interval(1, 40), 3, std::nullopt, 5);
  EXPECT_EQ(w.status, SearchStatus::budget_exhausted);
  EXPECT_FALSE(w.witness.has_value());
}

TEST(RWise, SubsetsOfWitnessesStayRWise) {
  std::mt19937 rng(3);
  const IntSet base = f14(40) | f23(40);
  const WitnessResult w = r_wise_witness(base, 2);
  ASSERT_EQ(w.status, SearchStatus::found);
  for (int t = 0; t < 50; ++t) {
    PartitionWitness cut = *w.witness;
    IntSet kept = base;
    for (int e : base.elements())
      if (rng() % 3 == 0) {
        kept.erase(e);
        for (IntSet& p : cut.parts) p.erase(e);
      }
    EXPECT_TRUE(validate_witness(kept, cut));
    EXPECT_EQ(r_wise_witness(kept, 2).status, SearchStatus::found);
  }
}

TEST(ValidateWitness, RejectsBrokenPartitions) {
  PartitionWitness w{2, {IntSet{1, 4}, IntSet{2, 3}}, std::nullopt};
  EXPECT_TRUE(validate_witness(IntSet::interval(1, 4), w));
  EXPECT_FALSE(validate_witness(IntSet::interval(1, 5), w));
  PartitionWitness overlap{2, {IntSet{1, 4}, IntSet{1, 3}}, std::nullopt};
  EXPECT_FALSE(validate_witness(IntSet{1, 3, 4}, overlap));
  PartitionWitness bad{2, {IntSet{1, 2}, IntSet{3}}, std::nullopt};
  EXPECT_FALSE(validate_witness(IntSet{1, 2, 3}, bad));
}

TEST(Mu, Examples) {
  EXPECT_EQ(mu(10, 1).value, 5);
  EXPECT_EQ(mu(10, 2).value, 8);
  EXPECT_EQ(mu(1, 1).value, 1);
  EXPECT_EQ(mu(0, 2).value, 0);
  EXPECT_THROW(mu(3, 0), precondition_error);
}

TEST(Mu, MatchesBruteForceForSmallN) {
  // largest r-wise sum-free subset of [n], by trying all subsets
  for (int n = 1; n <= 9; ++n)
    for (int r = 1; r <= 2; ++r) {
      int best = 0;
      for (bits::Mask m = 0; m < (bits::Mask{1} << n); ++m) {
        const int size = bits::popcount(m);
        if (size > best && brute::r_wise(brute::from_mask(m, 1), r)) best = size;
      }
      const MuResult res = mu(n, r);
      EXPECT_EQ(res.value, best) << "n=" << n << " r=" << r;
      EXPECT_TRUE(res.exact);
      EXPECT_TRUE(validate_witness(res.witness_set, res.witness));
    }
}

TEST(Mu, LowerBoundFromModularPartition) {
  // mu(n,2) >= n - floor(n/5), via the lift of {1,4},{2,3} mod 5
  const ModularSchurResult h2 = modular_schur_number(2);
  ASSERT_TRUE(h2.witness.has_value());
  for (int n = 1; n <= 20; ++n) {
    auto [set, w] = lift_modular_partition(n, *h2.witness);
    EXPECT_TRUE(validate_witness(set, PartitionWitness{w.r, w.parts, std::nullopt}));
    EXPECT_EQ(set.size(), n - n / 5);
    if (n <= 12) {
      EXPECT_GE(mu(n, 2).value, n - n / (h2.lower + 1));
    }
  }
}

TEST(Mu, BudgetForRThreeGivesLowerBound) {
  const MuResult m = mu(14, 3, 50);
  EXPECT_FALSE(m.exact);
  EXPECT_GE(m.value, 1);
  EXPECT_TRUE(validate_witness(m.witness_set, m.witness));
}

TEST(ModularSchur, SmallValues) {
  const ModularSchurResult h1 = modular_schur_number(1);
  EXPECT_TRUE(h1.certified);
  EXPECT_EQ(h1.lower, 1);
  const ModularSchurResult h2 = modular_schur_number(2);
  EXPECT_TRUE(h2.certified);
  EXPECT_EQ(h2.lower, 4);
  ASSERT_TRUE(h2.witness.has_value());
  EXPECT_TRUE(validate_witness(IntSet::interval(1, 4), *h2.witness));
  EXPECT_EQ(*h2.witness->modulus, 5);
}

TEST(ModularSchur, BudgetGivesBracket) {
  const ModularSchurResult h = modular_schur_number(3, 20);
  EXPECT_FALSE(h.certified);
  EXPECT_FALSE(h.upper.has_value());
}
