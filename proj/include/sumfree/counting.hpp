#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sumfree/bits.hpp"
#include "sumfree/enumerate.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/int_set.hpp"
#include "sumfree/parallel.hpp"
#include "sumfree/schur.hpp"

namespace sumfree {

using BigInt = boost::multiprecision::cpp_int;

enum class Family { sf1, sf2 };

inline const char* to_string(Family f) { return f == Family::sf1 ? "SF1" : "SF2"; }

/// Exact size of a family at n, against 2^(benchmark) with benchmark n/2 or 4n/5.
struct CountRecord {
  int n = 0;
  Family family = Family::sf1;
  std::uint64_t exact_count = 0;
  int benchmark_num = 0;  // benchmark exponent = num / den
  int benchmark_den = 1;
  double ratio = 0.0;
  std::uint64_t lower_bound = 0;  // 2^ceil(n/2) or 2^(n - floor(n/5))
  bool lower_bound_holds = false;
  std::string engine;
};

inline constexpr int kSf1Cap = 34;
inline constexpr int kSf2Cap = 24;
inline constexpr int kSf1NaiveCap = 22;
inline constexpr int kSf2NaiveCap = 16;

namespace detail {
inline void check_cap(int n, int cap, const char* what, std::optional<int> override_cap, int hard_cap) {
  require(n >= 0, "n must be >= 0");
  const int effective = override_cap ? std::min(*override_cap, hard_cap) : cap;
  if (n > effective) throw cap_exceeded(std::string(what) + " refuses n = " + std::to_string(n), effective);
}

inline CountRecord make_record(int n, Family f, std::uint64_t count, const char* engine) {
  CountRecord rec;
  rec.n = n;
  rec.family = f;
  rec.exact_count = count;
  rec.engine = engine;
  if (f == Family::sf1) {
    rec.benchmark_num = n;
    rec.benchmark_den = 2;
    rec.lower_bound = std::uint64_t{1} << (n - n / 2);
  } else {
    rec.benchmark_num = 4 * n;
    rec.benchmark_den = 5;
    rec.lower_bound = std::uint64_t{1} << (n - n / 5);
  }
  rec.ratio = static_cast<double>(count) /
              std::exp2(static_cast<double>(rec.benchmark_num) / rec.benchmark_den);
  rec.lower_bound_holds = count >= rec.lower_bound;
  return rec;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// |SF1(n)|

/// Filters all 2^n subsets of [n]; the independent reference engine.
inline std::uint64_t count_sum_free_naive(int n) {
  detail::check_cap(n, kSf1NaiveCap, "naive SF1 count", std::nullopt, kSf1NaiveCap);
  std::uint64_t count = 0;
  const bits::Mask limit = bits::Mask{1} << n;
  for (bits::Mask s = 0; s < limit; ++s)
    if (bits::is_sum_free(s << 1)) ++count;
  return count;
}

/// Pruned DFS, sharded by sum-free prefixes of [10]; totals independent of `threads`.
inline std::uint64_t count_sum_free_dfs(int n, unsigned threads = 1, std::optional<int> cap_override = std::nullopt) {
  detail::check_cap(n, kSf1Cap, "SF1 count", cap_override, enumerate::kMaxUniverse);
  const int p = enumerate::default_prefix(n);
  const auto roots = enumerate::roots(p);
  std::vector<std::uint64_t> partial(roots.size(), 0);
  run_shards(roots.size(), threads, [&](std::size_t i) {
    std::uint64_t c = 0;
    auto visit = [&](bits::Mask) { ++c; };
    enumerate::descend_root(n, p, roots[i], visit);
    partial[i] = c;
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

inline CountRecord count_sum_free(int n, unsigned threads = 1, std::optional<int> cap_override = std::nullopt) {
  return detail::make_record(n, Family::sf1, count_sum_free_dfs(n, threads, cap_override), "pruned-dfs");
}

// ---------------------------------------------------------------------------
// |SF2(n)|

/// Tests every subset of [n] with the generic partition search.
inline std::uint64_t count_two_wise_naive(int n) {
  detail::check_cap(n, kSf2NaiveCap, "naive SF2 count", std::nullopt, kSf2NaiveCap);
  std::uint64_t count = 0;
  const bits::Mask limit = bits::Mask{1} << n;
  for (bits::Mask s = 0; s < limit; ++s) {
    const IntSet a = IntSet::from_mask(s << 1);
    if (r_wise_witness(a, 2).status == SearchStatus::found) ++count;
  }
  return count;
}

namespace detail {

// One 2-colouring of the current set: parts and their self-sumsets.
struct TwoColouring {
  std::uint32_t part1 = 0;
  std::uint32_t part2 = 0;
  std::uint64_t sums1 = 0;
  std::uint64_t sums2 = 0;
};

/**
 * Colex DFS over 2-wise sum-free sets. Each node carries every 2-colouring of
 * its set with the smallest element in part 1. Appending f keeps a colouring
 * for each part whose sumset misses f; a set left with no colouring has no
 * 2-wise sum-free superset in this branch, so the branch is cut.
 */
class TwoWiseCounter {
 public:
  explicit TwoWiseCounter(int n) : n_(n), levels_(static_cast<std::size_t>(n) + 2) {}

  static void extend(const std::vector<TwoColouring>& from, int f, bool empty_set,
                     std::vector<TwoColouring>& to) {
    to.clear();
    const std::uint32_t bit = std::uint32_t{1} << f;
    if (empty_set) {
      to.push_back({bit, 0, std::uint64_t{bit} << f, 0});
      return;
    }
    for (const TwoColouring& c : from) {
      if (!((c.sums1 >> f) & 1)) {
        const std::uint32_t p = c.part1 | bit;
        to.push_back({p, c.part2, c.sums1 | (std::uint64_t{p} << f), c.sums2});
      }
      if (!((c.sums2 >> f) & 1)) {
        const std::uint32_t p = c.part2 | bit;
        to.push_back({c.part1, p, c.sums1, c.sums2 | (std::uint64_t{p} << f)});
      }
    }
  }

  // Count the node at `depth` (already populated) and all extensions by [next, n].
  std::uint64_t count_from(std::size_t depth, int next, bool empty_set) {
    std::uint64_t total = 1;
    for (int f = next; f <= n_; ++f) {
      extend(levels_[depth], f, empty_set, levels_[depth + 1]);
      if (levels_[depth + 1].empty()) continue;
      total += count_from(depth + 1, f + 1, false);
    }
    return total;
  }

  std::vector<TwoColouring>& level(std::size_t d) { return levels_[d]; }

 private:
  int n_;
  std::vector<std::vector<TwoColouring>> levels_;
};

// 2-wise sum-free subsets of [p] together with all their colourings.
struct TwoWiseRoot {
  bool empty_set = true;
  std::vector<TwoColouring> colourings;
};

inline std::vector<TwoWiseRoot> two_wise_roots(int p) {
  std::vector<TwoWiseRoot> out;
  std::vector<std::vector<TwoColouring>> lv(static_cast<std::size_t>(p) + 2);
  auto rec = [&](auto&& self, std::size_t depth, int next, bool empty_set) -> void {
    out.push_back({empty_set, lv[depth]});
    for (int f = next; f <= p; ++f) {
      TwoWiseCounter::extend(lv[depth], f, empty_set, lv[depth + 1]);
      if (lv[depth + 1].empty()) continue;
      self(self, depth + 1, f + 1, false);
    }
  };
  rec(rec, 0, 1, true);
  return out;
}

}  // namespace detail

inline constexpr int kTwoWiseHardCap = 31;  // colourings carry sums in 64 bits

inline std::uint64_t count_two_wise_dfs(int n, unsigned threads = 1, std::optional<int> cap_override = std::nullopt) {
  detail::check_cap(n, kSf2Cap, "SF2 count", cap_override, kTwoWiseHardCap);
  const int p = n < 12 ? n : 12;
  const auto roots = detail::two_wise_roots(p);
  std::vector<std::uint64_t> partial(roots.size(), 0);
  run_shards(roots.size(), threads, [&](std::size_t i) {
    detail::TwoWiseCounter counter(n);
    counter.level(0) = roots[i].colourings;
    partial[i] = counter.count_from(0, p + 1, roots[i].empty_set);
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

inline CountRecord count_two_wise_sum_free(int n, unsigned threads = 1,
                                           std::optional<int> cap_override = std::nullopt) {
  return detail::make_record(n, Family::sf2, count_two_wise_dfs(n, threads, cap_override), "colouring-dfs");
}

// ---------------------------------------------------------------------------
// Bound formulas

/// A computed bound, the exact quantity it dominates, and the comparison.
struct BoundReport {
  std::string bound_name;
  std::map<std::string, double> parameters;
  double bound_value = 0.0;
  std::optional<BigInt> exact_value;
  std::optional<bool> satisfied;
  bool advisory = false;
  std::map<std::string, double> quantities;  // auxiliary values such as mu, Delta
  std::vector<std::string> notes;
};

inline constexpr double kBoundTolerance = 1e-9;

/// exact <= bound after widening the bound by a relative 1e-9 band.
inline bool exact_within(const BigInt& exact, double bound) {
  if (std::isinf(bound) && bound > 0) return true;
  const long double e = exact.convert_to<long double>();
  const long double b = static_cast<long double>(bound);
  return e <= b + std::fabs(b) * kBoundTolerance + kBoundTolerance;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// Binary entropy H(x) with H(0) = H(1) = 0.
inline double entropy(double x) {
  require(x >= 0.0 && x <= 1.0, "entropy argument must be in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// C(n,k) <= 2^(H(k/n) n) and sum_{i <= alpha n} C(n,i) <= 2^(H(alpha) n), exactly.
struct EntropyBinomialReport {
  BoundReport binomial;
  BoundReport partial_sum;
};

inline EntropyBinomialReport entropy_binomial_check(int n, int k, double alpha) {
  require(n >= 0 && k >= 0 && k <= n, "need 0 <= k <= n");
  require(alpha >= 0.0 && alpha <= 0.5, "need 0 <= alpha <= 1/2");
  EntropyBinomialReport out;
  {
    BoundReport& b = out.binomial;
    b.bound_name = "entropy_binomial";
    b.parameters = {{"n", n}, {"k", k}};
    const double h = n == 0 ? 0.0 : entropy(static_cast<double>(k) / n);
    b.bound_value = std::exp2(h * n);
    b.exact_value = binomial(n, k);
    b.satisfied = exact_within(*b.exact_value, b.bound_value);
  }
  {
    BoundReport& b = out.partial_sum;
    b.bound_name = "entropy_partial_sum";
    b.parameters = {{"n", n}, {"alpha", alpha}};
    BigInt sum = 0;
    // i <= alpha n, evaluated without float rounding at exact-integer products
    const double limit = alpha * n;
    for (int i = 0; i <= n && i <= limit + 1e-12; ++i) sum += binomial(n, i);
    b.bound_value = std::exp2(entropy(alpha) * n);
    b.exact_value = sum;
    b.satisfied = exact_within(sum, b.bound_value);
  }
  return out;
}

/// Partitions of k into exactly l distinct positive parts, by 0/1 knapsack over part values.
inline BigInt distinct_partitions(int k, int l) {
  require(k >= 0 && l >= 0, "k and l must be non-negative");
  // ways[j][s]: j distinct parts from the values seen so far summing to s
  std::vector<std::vector<BigInt>> ways(static_cast<std::size_t>(l) + 1,
                                        std::vector<BigInt>(static_cast<std::size_t>(k) + 1, 0));
  ways[0][0] = 1;
  for (int v = 1; v <= k; ++v)
    for (int j = l; j >= 1; --j)
      for (int s = k; s >= v; --s)
        ways[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] +=
            ways[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(s - v)];
  return ways[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
}

inline BoundReport restricted_partitions(int k, int l) {
  require(k >= 1 && l >= 1, "k and l must be >= 1");
  BoundReport b;
  b.bound_name = "restricted_partitions";
  b.parameters = {{"k", k}, {"l", l}};
  b.exact_value = distinct_partitions(k, l);
  b.bound_value = std::pow(std::exp(2.0) * k / (static_cast<double>(l) * l), l);
  b.satisfied = exact_within(*b.exact_value, b.bound_value);
  return b;
}

/// Sets S of [D] with |S| = s and |S+S| <= R s, by exhaustive enumeration.
inline BigInt count_small_doubling(int d, int s, double r) {
  require(d >= 1 && s >= 1 && d <= 40, "brute-force doubling count needs 1 <= s, 1 <= D <= 40");
  BigInt count = 0;
  if (s > d) return count;
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    bits::Mask m = 0;
    for (int v : idx) m |= bits::Mask{1} << v;
    if (bits::popcount(bits::sumset(m, m)) <= r * s + 1e-12) ++count;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == d - s + i + 1) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return count;
}

/**
 * 2^(delta s) C(floor(R s / 2), s) D^floor(R + delta). The upper binomial index
 * is floored. The brute-force comparison is advisory: the bound only applies
 * for s beyond an unspecified threshold depending on delta and R.
 */
inline BoundReport green_morris_bound(double delta, double r, int s, int d, bool brute_force = true) {
  require(delta > 0 && r > 0 && s >= 1 && d >= 1, "need delta > 0, R > 0, s >= 1, D >= 1");
  BoundReport b;
  b.bound_name = "green_morris";
  b.parameters = {{"delta", delta}, {"R", r}, {"s", s}, {"D", d}};
  b.advisory = true;
  const auto top = static_cast<long long>(std::floor(r * s / 2.0 + 1e-12));
  const BigInt choose = binomial(top, s);
  const auto power = static_cast<int>(std::floor(r + delta + 1e-12));
  b.quantities["binomial_upper_index"] = static_cast<double>(top);
  b.quantities["binomial"] = choose.convert_to<double>();
  b.quantities["D_exponent"] = power;
  b.bound_value = std::exp2(delta * s) * choose.convert_to<double>() * std::pow(static_cast<double>(d), power);
  b.notes.push_back("upper binomial index floor(R*s/2)");
  if (brute_force && d <= 40 && binomial(d, s) <= 5'000'000) {
    b.exact_value = count_small_doubling(d, s, r);
    b.satisfied = exact_within(*b.exact_value, b.bound_value);
    b.notes.push_back("comparison advisory: s may be below the lemma's threshold");
  }
  return b;
}

/**
 * Lower-tail count for subsets of Gamma = {0, ..., gamma_size-1} containing at
 * most mu/2 of the sets U_i, against e^(-mu^2/(8 mu + 8 Delta)) 2^|Gamma|.
 * Delta sums over ordered pairs i != j with U_i, U_j intersecting.
 */
inline BoundReport janson_bound(const std::vector<IntSet>& family, int gamma_size, bool brute_force = true) {
  require(gamma_size >= 0, "|Gamma| must be >= 0");
  std::vector<bits::Mask> u;
  u.reserve(family.size());
  const bool small = gamma_size <= 63;
  for (const IntSet& s : family) {
    if (!s.empty())
      require(s.max() < gamma_size, "U_i must be a subset of Gamma = [0, |Gamma|-1]");
    if (small) u.push_back(s.to_mask());
  }
  double mu = 0.0;
  for (const IntSet& s : family) mu += std::exp2(-s.size());
  double delta = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      if (i != j && family[i].intersects(family[j])) delta += std::exp2(-(family[i] | family[j]).size());

  BoundReport b;
  b.bound_name = "janson";
  b.parameters = {{"gamma_size", gamma_size}, {"sets", static_cast<double>(family.size())}};
  b.quantities = {{"mu", mu}, {"Delta", delta}};
  const double exponent = mu > 0 ? -mu * mu / (8 * mu + 8 * delta) : 0.0;
  b.bound_value = std::exp(exponent) * std::exp2(gamma_size);
  if (brute_force && small && gamma_size <= 20) {
    std::uint64_t count = 0;
    const bits::Mask limit = bits::Mask{1} << gamma_size;
    for (bits::Mask x = 0; x < limit; ++x) {
      int contained = 0;
      for (bits::Mask ui : u)
        if ((ui & x) == ui) ++contained;
      if (2.0 * contained <= mu) ++count;
    }
    b.exact_value = BigInt(count);
    b.satisfied = exact_within(*b.exact_value, b.bound_value);
  }
  return b;
}

/// Graph of forbidden monochromatic pairs on V = (floor(n/5), floor(2n/5)], edges {x, x+s}.
struct ForbiddenGraph {
  int n = 0;
  IntSet vertices;
  std::vector<std::pair<int, int>> edges;
  long long edge_count = 0;
  long long edge_formula = 0;  // sum over s of (|V| - s)
  int max_degree = 0;
  int degree_bound = 0;        // 2 |S|
  double mu = 0.0;             // k / 4
  double delta = 0.0;          // exact Janson Delta for the edge family
  double delta_upper = 0.0;    // k |S| / 2
  bool degree_bound_holds = false;
  bool delta_bound_holds = false;
  bool mu_matches = false;
};

inline ForbiddenGraph forbidden_graph(const IntSet& s, int n) {
  require(n >= 0, "n must be >= 0");
  const int lo = n / 5;
  const int hi = 2 * n / 5;
  if (!s.empty()) require(s.min() >= 1 && s.max() <= lo, "S must be a subset of [n/5]");
  ForbiddenGraph g;
  g.n = n;
  g.vertices = IntSet::interval(lo + 1, hi);
  const int vsize = hi - lo;
  std::map<int, int> degree;
  s.for_each([&](int step) {
    for (int x = lo + 1; x + step <= hi; ++x) {
      g.edges.emplace_back(x, x + step);
      ++degree[x];
      ++degree[x + step];
    }
    g.edge_formula += std::max(0, vsize - step);
  });
  g.edge_count = static_cast<long long>(g.edges.size());
  for (auto& [v, d] : degree) g.max_degree = std::max(g.max_degree, d);
  g.degree_bound = 2 * s.size();
  g.degree_bound_holds = g.max_degree <= g.degree_bound;
  g.mu = static_cast<double>(g.edge_count) / 4.0;
  // ordered pairs of distinct edges sharing a vertex; each union has 3 vertices
  long long touching = 0;
  for (auto& [v, d] : degree) touching += static_cast<long long>(d) * (d - 1);
  g.delta = static_cast<double>(touching) / 8.0;
  g.delta_upper = static_cast<double>(g.edge_count) * s.size() / 2.0;
  g.delta_bound_holds = g.delta <= g.delta_upper + kBoundTolerance;
  double mu_direct = 0.0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) mu_direct += 0.25;
  g.mu_matches = mu_direct == g.mu;
  return g;
}

}  // namespace sumfree
