#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "sumfree/counting.hpp"

using namespace sumfree;

TEST(CountSF1, FrozenSmallValues) {
  const std::vector<std::uint64_t> want = {1, 2, 3, 6, 9, 16, 24, 42, 61, 108, 151, 253, 369, 607, 847};
  for (int n = 0; n < static_cast<int>(want.size()); ++n) {
    EXPECT_EQ(count_sum_free_dfs(n), want[static_cast<std::size_t>(n)]) << n;
    EXPECT_EQ(count_sum_free_naive(n), want[static_cast<std::size_t>(n)]) << n;
  }
}

TEST(CountSF1, EnginesAgreeAndMatchBrute) {
  for (int n = 0; n <= 10; ++n) {
    std::uint64_t brute_count = 0;
    for (std::uint64_t m = 0; m < (1u << n); ++m) brute_count += brute::sum_free(brute::from_mask(m, 1));
    EXPECT_EQ(count_sum_free_dfs(n), brute_count);
  }
  for (int n = 15; n <= kSf1NaiveCap; ++n) EXPECT_EQ(count_sum_free_dfs(n, 2), count_sum_free_naive(n)) << n;
}

TEST(CountSF2, FrozenSmallValues) {
  const std::vector<std::uint64_t> want = {1,   2,   4,    8,    16,   31,   62,  124,
                                           246, 488, 940, 1830, 3611, 7076, 13887};
  for (int n = 0; n < static_cast<int>(want.size()); ++n) {
    EXPECT_EQ(count_two_wise_dfs(n), want[static_cast<std::size_t>(n)]) << n;
    EXPECT_EQ(count_two_wise_naive(n), want[static_cast<std::size_t>(n)]) << n;
  }
}

TEST(CountSF2, EnginesAgreeAndMatchBrute) {
  for (int n = 0; n <= 8; ++n) {
    std::uint64_t brute_count = 0;
    for (std::uint64_t m = 0; m < (1u << n); ++m) brute_count += brute::r_wise(brute::from_mask(m, 1), 2);
    EXPECT_EQ(count_two_wise_dfs(n), brute_count);
  }
  for (int n = 15; n <= kSf2NaiveCap; ++n) EXPECT_EQ(count_two_wise_dfs(n, 2), count_two_wise_naive(n));
}

TEST(CountRecords, LowerBoundsAndRatio) {
  for (int n = 1; n <= 20; ++n) {
    const CountRecord a = count_sum_free(n);
    EXPECT_TRUE(a.lower_bound_holds) << n;
    EXPECT_GE(a.exact_count, std::uint64_t{1} << (n - n / 2));
    EXPECT_EQ(a.benchmark_num, n);
    EXPECT_EQ(a.benchmark_den, 2);
    EXPECT_NEAR(a.ratio, static_cast<double>(a.exact_count) / std::exp2(n / 2.0), 1e-9 * a.ratio);
    const CountRecord b = count_two_wise_sum_free(n);
    EXPECT_TRUE(b.lower_bound_holds) << n;
    EXPECT_GE(b.exact_count, std::uint64_t{1} << (n - n / 5));
    EXPECT_GE(b.exact_count, a.exact_count);
  }
}

TEST(CountRecords, ThreadCountDoesNotMatter) {
  EXPECT_EQ(count_sum_free_dfs(26, 1), count_sum_free_dfs(26, 4));
  EXPECT_EQ(count_two_wise_dfs(18, 1), count_two_wise_dfs(18, 4));
}

TEST(CountRecords, CapsAndOverride) {
  EXPECT_THROW(count_sum_free_dfs(kSf1Cap + 1), cap_exceeded);
  EXPECT_THROW(count_two_wise_dfs(kSf2Cap + 1), cap_exceeded);
  EXPECT_THROW(count_sum_free_naive(kSf1NaiveCap + 1), cap_exceeded);
  EXPECT_THROW(count_two_wise_dfs(kTwoWiseHardCap + 1, 1, 40), cap_exceeded);
  EXPECT_THROW(count_sum_free_dfs(-1), precondition_error);
  EXPECT_NO_THROW(count_sum_free_dfs(12, 1, 12));
  EXPECT_THROW(count_sum_free_dfs(13, 1, 12), cap_exceeded);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(entropy(0.25), 0.811278124459, 1e-9);
  EXPECT_DOUBLE_EQ(entropy(0.5), 1.0);
  EXPECT_EQ(entropy(0.0), 0.0);
  EXPECT_EQ(entropy(1.0), 0.0);
  EXPECT_THROW(entropy(1.5), precondition_error);
}

TEST(Entropy, BinomialBoundsHold) {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) {
      const EntropyBinomialReport r = entropy_binomial_check(n, k, 0.5 * k / std::max(n, 1));
      EXPECT_TRUE(*r.binomial.satisfied) << n << " " << k;
      EXPECT_TRUE(*r.partial_sum.satisfied) << n << " " << k;
      if (n <= 30) {
        EXPECT_EQ(r.binomial.exact_value->convert_to<long long>(), brute::binomial(n, k));
      }
    }
  EXPECT_THROW(entropy_binomial_check(5, 6, 0.1), precondition_error);
  EXPECT_THROW(entropy_binomial_check(5, 2, 0.6), precondition_error);
}

TEST(Partitions, ExamplesAndRecurrence) {
  EXPECT_EQ(distinct_partitions(10, 3), 4);
  EXPECT_EQ(distinct_partitions(0, 0), 1);
  EXPECT_EQ(distinct_partitions(5, 0), 0);
  // q(k, l) = q(k - l, l) + q(k - l, l - 1)
  for (int k = 1; k <= 60; ++k)
    for (int l = 1; l <= 10 && l <= k; ++l)
      EXPECT_EQ(distinct_partitions(k, l), distinct_partitions(k - l, l) + distinct_partitions(k - l, l - 1));
  for (int k = 0; k <= 30; ++k)
    for (int l = 0; l <= 8; ++l)
      EXPECT_EQ(distinct_partitions(k, l).convert_to<long long>(), brute::distinct_partitions(k, l, k));
}

TEST(Partitions, BoundHolds) {
  for (int k = 1; k <= 60; ++k)
    for (int l = 1; l <= 10; ++l) EXPECT_TRUE(*restricted_partitions(k, l).satisfied) << k << " " << l;
  EXPECT_THROW(restricted_partitions(0, 1), precondition_error);
}

TEST(GreenMorris, Example) {
  const BoundReport b = green_morris_bound(0.5, 3, 3, 8);
  EXPECT_TRUE(b.advisory);
  EXPECT_NEAR(b.bound_value, std::exp2(1.5) * 4 * 512, 1e-6);
  ASSERT_TRUE(b.exact_value.has_value());
  EXPECT_TRUE(*b.satisfied);
}

TEST(GreenMorris, DoublingCountMatchesBrute) {
  for (int d = 1; d <= 10; ++d)
    for (int s = 1; s <= 4; ++s)
      for (double r : {1.5, 2.0, 3.0}) {
        long long want = 0;
        for (std::uint64_t m = 0; m < (1u << d); ++m) {
          const brute::Set a = brute::from_mask(m, 1);
          if (static_cast<int>(a.size()) == s && brute::sumset(a, a).size() <= r * s) ++want;
        }
        EXPECT_EQ(count_small_doubling(d, s, r).convert_to<long long>(), want) << d << " " << s << " " << r;
      }
}

TEST(Janson, ExampleAndRandomInstances) {
  const BoundReport ex = janson_bound({IntSet{0, 1}, IntSet{1, 2}, IntSet{3}}, 4);
  EXPECT_DOUBLE_EQ(ex.quantities.at("mu"), 0.25 + 0.25 + 0.5);
  EXPECT_DOUBLE_EQ(ex.quantities.at("Delta"), 2 * 0.125);
  EXPECT_TRUE(*ex.satisfied);

  std::mt19937 rng(17);
  for (int t = 0; t < 1000; ++t) {
    const int g = 1 + static_cast<int>(rng() % 14);
    const int sets = 1 + static_cast<int>(rng() % 6);
    std::vector<IntSet> fam;
    for (int i = 0; i < sets; ++i) {
      IntSet s;
      while (s.empty())
        for (int e = 0; e < g; ++e)
          if (rng() % 3 == 0) s.insert(e);
      fam.push_back(s);
    }
    const BoundReport b = janson_bound(fam, g);
    ASSERT_TRUE(b.satisfied.has_value());
    EXPECT_TRUE(*b.satisfied) << t;
  }
  EXPECT_THROW(janson_bound({IntSet{5}}, 3), precondition_error);
}

TEST(ForbiddenGraph, EmptySAndRandomS) {
  const ForbiddenGraph e = forbidden_graph(IntSet(), 40);
  EXPECT_EQ(e.edge_count, 0);
  EXPECT_EQ(e.vertices, IntSet::interval(9, 16));
  std::mt19937 rng(23);
  for (int t = 0; t < 200; ++t) {
    const int n = 5 + static_cast<int>(rng() % 80);
    IntSet s;
    for (int x = 1; x <= n / 5; ++x)
      if (rng() % 3 == 0) s.insert(x);
    const ForbiddenGraph g = forbidden_graph(s, n);
    long long formula = 0;
    for (int step : s.elements()) formula += std::max(0, (2 * n / 5 - n / 5) - step);
    EXPECT_EQ(g.edge_count, formula);
    EXPECT_EQ(g.edge_count, g.edge_formula);
    EXPECT_TRUE(g.degree_bound_holds);
    EXPECT_TRUE(g.delta_bound_holds);
    EXPECT_DOUBLE_EQ(g.mu, g.edge_count / 4.0);
    for (auto [x, y] : g.edges) EXPECT_TRUE(s.contains(y - x));
  }
  EXPECT_THROW(forbidden_graph(IntSet{9}, 40), precondition_error);
}
