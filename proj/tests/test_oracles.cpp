#include <gtest/gtest.h>

#include "brute.hpp"
#include "sumfree/oracles.hpp"

using namespace sumfree;

namespace {

brute::Set to_brute(const IntSet& s) {
  const auto e = s.elements();
  return brute::Set(e.begin(), e.end());
}

const IntSet& set_named(const Violation& v, const std::string& name) {
  for (const auto& [k, s] : v.sets)
    if (k == name) return s;
  throw std::runtime_error("missing set " + name);
}

}  // namespace

TEST(LongInterval, NoViolations) {
  const VerificationReport r = verify_long_interval(12, 2);
  EXPECT_EQ(r.total_violations(), 0u);
  EXPECT_GT(r.parts.at("i").instances, 0u);
  EXPECT_GT(r.parts.at("ii").instances, 0u);
  EXPECT_GT(r.parts.at("iii").instances, 0u);
}

TEST(LongInterval, SetCountMatchesSumFreeEnumeration) {
  const int n = 12;
  std::uint64_t want = 0;
  for (std::uint64_t m = 0; m < (1u << n); ++m) want += brute::sum_free(brute::from_mask(m, 1));
  EXPECT_EQ(verify_long_interval(n).sets_enumerated, want);
}

TEST(Summation, ReadingsSeparate) {
  const VerificationReport r = verify_summation(8, 10, 2);
  EXPECT_GT(r.violations("strict"), 0u);
  EXPECT_EQ(r.violations("slack-1"), 0u);
  EXPECT_EQ(r.violations("corrected-length"), 0u);
  EXPECT_EQ(r.counters.at("strict_failures_eps_positive"), 0u);
  EXPECT_EQ(r.counters.at("strict_failures_eps_zero"), r.violations("strict"));
}

TEST(Summation, StrictFailuresRevalidate) {
  const VerificationReport r = verify_summation(6, 8);
  const PartTally& t = r.parts.at("strict");
  ASSERT_FALSE(t.examples.empty());
  for (const Violation& v : t.examples) {
    const brute::Set a = to_brute(set_named(v, "A")), b = to_brute(set_named(v, "B"));
    const int k = static_cast<int>(v.params.at("k"));
    const int len_b = *b.rbegin() - *b.begin() + 1;
    const long long sum = static_cast<long long>(brute::sumset(a, b).size());
    // (1 - 4 eps)(k + l(B)) with eps = 1 - |A|/k; failure means |A+B| below it
    const Rational need = Rational(4 * static_cast<long long>(a.size()) - 3 * k, k) * Rational(k + len_b);
    EXPECT_LT(Rational(sum), need);
    EXPECT_EQ(static_cast<int>(a.size()), k);  // only the full interval fails
    EXPECT_EQ(sum, k + len_b - 1);
  }
}

TEST(Summation, InstanceCountMatchesDirectCount) {
  const int max_k = 4, max_span = 6;
  std::uint64_t want = 0;
  for (int k = 1; k <= max_k; ++k)
    for (std::uint64_t ar = 0; ar < (1u << (k - 1)); ++ar)
      for (std::uint64_t br = 0; br < (1u << max_span); ++br) {
        const brute::Set b = brute::from_mask((br << 1) | 1);
        int prev = 0;
        bool ok = true;
        for (int e : b) {
          ok = ok && e - prev <= k;
          prev = e;
        }
        want += ok;
      }
  EXPECT_EQ(verify_summation(max_k, max_span).parts.at("strict").instances, want);
}

TEST(Bootstrap, NoViolations) {
  const VerificationReport r = verify_bootstrap(12, 2);
  EXPECT_EQ(r.sets_enumerated, (1u << 13) - 1);
  EXPECT_EQ(r.total_violations(), 0u);
}

TEST(Bootstrap, PartOneAgainstBrute) {
  for (std::uint64_t m = 1; m < (1u << 10); ++m) {
    const brute::Set a = brute::from_mask(m);
    const int span = *a.rbegin() - *a.begin() + 1;
    const brute::Set d = brute::difference(a, a);
    for (int x = 1; x <= 2 * static_cast<int>(a.size()) - span - 1; ++x) EXPECT_TRUE(d.count(x));
  }
}

TEST(LevSmeliansky, NoViolationsAndGcdFilter) {
  const VerificationReport r = verify_lev_smeliansky_diff(12, 2);
  EXPECT_EQ(r.total_violations(), 0u);
  std::uint64_t want = 0;
  for (std::uint64_t rest = 0; rest < (1u << 12); ++rest) {
    const brute::Set a = brute::from_mask((rest << 1) | 1);
    want += brute::gcd_of_differences(a) == 1;
  }
  EXPECT_EQ(r.sets_enumerated, want);
}

TEST(Plunnecke, ExamplesAndSweep) {
  EXPECT_EQ(plunnecke_check(IntSet::interval(0, 9), 5).total_violations(), 0u);
  EXPECT_EQ(plunnecke_check(IntSet{0, 1, 3, 7, 15}, 4).total_violations(), 0u);
  EXPECT_EQ(plunnecke_check(IntSet{5}, 3).total_violations(), 0u);
  EXPECT_THROW(plunnecke_check(IntSet(), 3), precondition_error);
  EXPECT_EQ(verify_plunnecke(9, 4, 2).total_violations(), 0u);
}

TEST(ApCover, Examples) {
  const ApCover one = ap_cover_check(IntSet{3, 7, 11, 19}, 1, 5);
  EXPECT_TRUE(one.found);
  EXPECT_EQ(one.step, 4);
  EXPECT_EQ(one.total_length, 5);
  const ApCover two = ap_cover_check(IntSet{0, 1, 2, 12, 13, 14}, 2, 6);
  EXPECT_TRUE(two.found);
  EXPECT_EQ(two.total_length, 6);
  ASSERT_TRUE(two.p2.has_value());
  EXPECT_EQ(two.p1.start, 0);
  EXPECT_EQ(two.p2->start, 12);
  EXPECT_FALSE(ap_cover_check(IntSet{0, 1, 2, 12, 13, 14}, 1, 14).found);
}

TEST(ApCover, MatchesBruteOnAllSmallSets) {
  for (std::uint64_t m = 1; m < (1u << 13); ++m) {
    const IntSet a = IntSet::from_mask(m);
    const brute::Set b = brute::from_mask(m);
    const ApCover one = ap_cover_check(a, 1, 0), two = ap_cover_check(a, 2, 0);
    ASSERT_EQ(one.total_length, brute::min_ap_length(b)) << format_set_literal(a);
    ASSERT_EQ(two.total_length, brute::min_two_ap_total(b)) << format_set_literal(a);
    // the reported progressions really cover A
    for (int e : a.elements()) EXPECT_TRUE(one.p1.contains(e));
    for (int e : a.elements()) EXPECT_TRUE(two.p1.contains(e) || (two.p2 && two.p2->contains(e)));
  }
}

TEST(Example42, DifferenceSizeAndFailures) {
  for (int x = 1; x <= 6; ++x)
    for (int y : {4 * x, 4 * x + 3, 6 * x}) {
      const Example42Record e = example42(x, y);
      EXPECT_EQ(e.size, 3 * x);
      EXPECT_EQ(e.difference_size, 10 * x - 5);
      EXPECT_EQ(static_cast<int>(brute::difference(to_brute(e.set), to_brute(e.set)).size()), 10 * x - 5);
      EXPECT_EQ(e.r, x - 2);
      if (x >= 3) {
        EXPECT_FALSE(e.conclusion_i) << x << " " << y;
        EXPECT_FALSE(e.conclusion_ii) << x << " " << y;
      }
    }
  EXPECT_THROW(example42(3, 11), precondition_error);
}

TEST(Conjecture, SmallSearchHasNoCandidates) {
  const Conjecture41Report r = conjecture41_search(8, 24, 2);
  EXPECT_GT(r.sets_examined, 0u);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.label, "no candidates");
  for (const auto& c : r.boundary_witnesses) {
    EXPECT_FALSE(c.conclusion_i);
    EXPECT_FALSE(c.conclusion_ii);
  }
}

TEST(Conjecture, EvaluateAgreesWithBrute) {
  const IntSet a{0, 1, 2, 3, 5, 8, 9, 10, 11};
  const Conjecture41Candidate c = conjecture41_evaluate(a);
  const brute::Set b = to_brute(a);
  EXPECT_EQ(c.difference_size, static_cast<int>(brute::difference(b, b).size()));
  EXPECT_EQ(c.r, c.difference_size - 3 * a.size() + 3);
  EXPECT_EQ(c.ap_length, brute::min_ap_length(b));
  EXPECT_EQ(c.two_ap_total, brute::min_two_ap_total(b));
}
