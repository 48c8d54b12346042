#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "sumfree/bits.hpp"
#include "sumfree/enumerate.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/int_set.hpp"
#include "sumfree/parallel.hpp"

// Exhaustive finite verifiers for additive inequalities, the conclusion
// checkers for arithmetic-progression covers, and the small-doubling
// counterexample search.

namespace sumfree {

using Rational = boost::rational<long long>;

inline long long floor_rational(const Rational& q) {
  long long f = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) --f;
  return f;
}

/// One failing instance: the inputs plus both sides of `lhs relation rhs`.
struct Violation {
  std::string part;
  std::vector<std::pair<std::string, IntSet>> sets;
  std::map<std::string, long long> params;
  Rational lhs{0};
  Rational rhs{0};
  std::string relation;  // ">=" or "<="
};

struct PartTally {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;
  std::map<long long, std::uint64_t> slack_histogram;  // floor of the margin; negative = violated
  std::vector<Violation> examples;                     // first kMaxExamples violations
};

inline constexpr std::size_t kMaxExamples = 100;

struct VerificationReport {
  std::string lemma_id;
  std::map<std::string, long long> domain;
  std::uint64_t sets_enumerated = 0;
  std::map<std::string, PartTally> parts;
  std::map<std::string, std::uint64_t> counters;

  std::uint64_t instances_checked() const {
    std::uint64_t t = 0;
    for (auto& [k, p] : parts) t += p.instances;
    return t;
  }
  std::uint64_t violations(const std::string& part) const {
    auto it = parts.find(part);
    return it == parts.end() ? 0 : it->second.violations;
  }
  std::uint64_t total_violations() const {
    std::uint64_t t = 0;
    for (auto& [k, p] : parts) t += p.violations;
    return t;
  }

  // Records one instance of `lhs relation rhs`; returns whether it held.
  template <class MakeViolation>
  bool check(const std::string& part, const Rational& lhs, const std::string& relation, const Rational& rhs,
             MakeViolation&& make) {
    PartTally& t = parts[part];
    ++t.instances;
    const Rational margin = relation == ">=" ? lhs - rhs : rhs - lhs;
    ++t.slack_histogram[floor_rational(margin)];
    if (margin >= 0) return true;
    ++t.violations;
    if (t.examples.size() < kMaxExamples) {
      Violation v = make();
      v.part = part;
      v.lhs = lhs;
      v.rhs = rhs;
      v.relation = relation;
      t.examples.push_back(std::move(v));
    }
    return false;
  }

  void merge(VerificationReport&& o) {
    sets_enumerated += o.sets_enumerated;
    for (auto& [name, src] : o.parts) {
      PartTally& dst = parts[name];
      dst.instances += src.instances;
      dst.violations += src.violations;
      for (auto& [k, c] : src.slack_histogram) dst.slack_histogram[k] += c;
      for (auto& v : src.examples)
        if (dst.examples.size() < kMaxExamples) dst.examples.push_back(std::move(v));
    }
    for (auto& [k, c] : o.counters) counters[k] += c;
  }
};

namespace detail {

inline constexpr std::size_t kSweepChunks = 256;

// fn(mask, report) for every mask in [begin, end), chunked independently of
// the thread count and merged in chunk order.
template <class Fn>
void sweep_masks(VerificationReport& out, bits::Mask begin, bits::Mask end, unsigned threads, Fn&& fn) {
  if (end <= begin) return;
  const bits::Mask total = end - begin;
  const std::size_t chunks = static_cast<std::size_t>(std::min<bits::Mask>(kSweepChunks, total));
  std::vector<VerificationReport> partial(chunks);
  run_shards(chunks, threads, [&](std::size_t c) {
    const bits::Mask lo = begin + total * c / chunks;
    const bits::Mask hi = begin + total * (c + 1) / chunks;
    for (bits::Mask m = lo; m < hi; ++m) fn(m, partial[c]);
  });
  for (auto& p : partial) out.merge(std::move(p));
}

inline IntSet mask_set(bits::Mask m) { return IntSet::from_mask(m); }

inline int mask_gcd(bits::Mask m) {
  const int lo = bits::lowest(m);
  int g = 0;
  bits::for_each(m, [&](int e) { g = std::gcd(g, e - lo); });
  return g;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// long-interval: for sum-free A and m in A,
//   (i)   |A n ([u,v] u [u+m,v+m])| <= v-u+1
//   (ii)  |A n [u,u+2m-1]| <= m
//   (iii) |A n [u,v]| <= (v-u+m+1)/2

inline VerificationReport verify_long_interval(int max_n, unsigned threads = 1) {
  require(max_n >= 1 && max_n <= 20, "long-interval sweep needs 1 <= max_n <= 20");
  VerificationReport rep;
  rep.lemma_id = "long-interval";
  rep.domain = {{"max_n", max_n}};
  const int p = std::min(max_n, 8);
  const auto roots = enumerate::roots(p);
  std::vector<VerificationReport> partial(roots.size());
  run_shards(roots.size(), threads, [&](std::size_t i) {
    VerificationReport& r = partial[i];
    auto visit = [&](bits::Mask a) {
      ++r.sets_enumerated;
      bits::for_each(a, [&](int m) {
        auto make = [&](int u, int v) {
          return [=] {
            Violation w;
            w.sets = {{"A", detail::mask_set(a)}};
            w.params = {{"m", m}, {"u", u}, {"v", v}};
            return w;
          };
        };
        for (int u = 1; u <= max_n; ++u) {
          const int in_window = bits::popcount(a & bits::range(u, u + 2 * m - 1));
          r.check("ii", in_window, "<=", m, make(u, u + 2 * m - 1));
          for (int v = u; v <= max_n; ++v) {
            const int pair = bits::popcount(a & (bits::range(u, v) | bits::range(u + m, v + m)));
            r.check("i", pair, "<=", v - u + 1, make(u, v));
            const int plain = bits::popcount(a & bits::range(u, v));
            r.check("iii", Rational(plain), "<=", Rational(v - u + m + 1, 2), make(u, v));
          }
        }
      });
    };
    enumerate::descend_root(max_n, p, roots[i], visit);
  });
  for (auto& r : partial) rep.merge(std::move(r));
  return rep;
}

// ---------------------------------------------------------------------------
// summation: A in [0,k-1], |A| = (1-eps) k, B with gaps <= k:
//   |A+B| >= (1-4 eps)(k + l(B))
// Three readings are recorded: "strict" as stated, "slack-1" allowing one
// unit, and "corrected-length" with k + l(B) - 1, the size of the interval
// [min B, max B + k - 1] that contains A+B.

inline VerificationReport verify_summation(int max_k, int max_span, unsigned threads = 1) {
  require(max_k >= 1 && max_k <= 12, "summation sweep needs 1 <= max_k <= 12");
  require(max_span >= 0 && max_span <= 16, "summation sweep needs 0 <= max_span <= 16");
  VerificationReport rep;
  rep.lemma_id = "summation";
  rep.domain = {{"max_k", max_k}, {"max_span", max_span}, {"normalized_min_a", 0}, {"normalized_min_b", 0}};
  rep.counters["strict_failures_eps_zero"] = 0;
  rep.counters["strict_failures_eps_positive"] = 0;
  // B ranges over subsets of [0, max_span] containing 0.
  const bits::Mask b_count = bits::Mask{1} << max_span;
  for (int k = 1; k <= max_k; ++k) {
    const bits::Mask a_count = bits::Mask{1} << (k - 1);  // A = {0} u subset of [1, k-1]
    detail::sweep_masks(rep, 0, a_count, threads, [&](bits::Mask a_rest, VerificationReport& r) {
      const bits::Mask a = (a_rest << 1) | 1;
      const int size_a = bits::popcount(a);
      ++r.sets_enumerated;
      for (bits::Mask b_rest = 0; b_rest < b_count; ++b_rest) {
        const bits::Mask b = (b_rest << 1) | 1;
        // consecutive gaps <= k
        bool gaps_ok = true;
        int prev = 0;
        bits::for_each(b, [&](int e) {
          if (e - prev > k) gaps_ok = false;
          prev = e;
        });
        if (!gaps_ok) continue;
        const int len_b = bits::highest(b) + 1;
        const long long lhs = bits::popcount(bits::sumset(a, b));
        // (1 - 4 eps) = (4|A| - 3k) / k
        const Rational factor(4LL * size_a - 3LL * k, k);
        auto make = [&] {
          Violation w;
          w.sets = {{"A", detail::mask_set(a)}, {"B", detail::mask_set(b)}};
          w.params = {{"k", k}, {"size_a", size_a}, {"span_b", len_b}};
          return w;
        };
        const bool strict = r.check("strict", Rational(lhs), ">=", factor * Rational(k + len_b), make);
        r.check("slack-1", Rational(lhs + 1), ">=", factor * Rational(k + len_b), make);
        r.check("corrected-length", Rational(lhs), ">=", factor * Rational(k + len_b - 1), make);
        if (!strict) ++r.counters[size_a == k ? "strict_failures_eps_zero" : "strict_failures_eps_positive"];
      }
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// bootstrap: (i) A-A contains [1, 2|A| - l(A) - 1];
//            (ii) A in [0,k] implies 2A contains [2k - 2|A| + 2, 2|A| - 2].

inline VerificationReport verify_bootstrap(int max_k, unsigned threads = 1) {
  require(max_k >= 1 && max_k <= 18, "bootstrap sweep needs 1 <= max_k <= 18");
  VerificationReport rep;
  rep.lemma_id = "bootstrap";
  rep.domain = {{"max_k", max_k}};
  const bits::Mask end = bits::Mask{1} << (max_k + 1);
  detail::sweep_masks(rep, 1, end, threads, [&](bits::Mask a, VerificationReport& r) {
    ++r.sets_enumerated;
    const int s = bits::popcount(a);
    const int span = bits::highest(a) - bits::lowest(a) + 1;
    const bits::Mask diffs = bits::positive_differences(a);
    // missing count in the required interval: 0 means contained
    auto missing = [](bits::Mask have, int lo, int hi) {
      const bits::Mask need = bits::range(lo, hi);
      return bits::popcount(need & ~have);
    };
    {
      const int hi = 2 * s - span - 1;
      r.check("i", Rational(0), ">=", Rational(missing(diffs, 1, hi)), [&] {
        Violation w;
        w.sets = {{"A", detail::mask_set(a)}};
        w.params = {{"interval_hi", hi}};
        return w;
      });
    }
    const bits::Wide two_a = bits::sumset(a, a);
    for (int k = std::max(1, bits::highest(a)); k <= max_k; ++k) {
      const int lo = 2 * k - 2 * s + 2;
      const int hi = 2 * s - 2;
      int miss = 0;
      for (int x = std::max(lo, 0); x <= hi; ++x)
        if (!((two_a >> x) & 1)) ++miss;
      r.check("ii", Rational(0), ">=", Rational(miss), [&] {
        Violation w;
        w.sets = {{"A", detail::mask_set(a)}};
        w.params = {{"k", k}, {"interval_lo", lo}, {"interval_hi", hi}};
        return w;
      });
    }
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Difference form of Lev-Smeliansky: d(A) = 1 implies
//   |(A-A)+| >= min{(|A| + l(A) - 2)/2, 3|A|/2 - 2}.

inline VerificationReport verify_lev_smeliansky_diff(int max_span, unsigned threads = 1) {
  require(max_span >= 1 && max_span <= 16, "difference sweep needs 1 <= max_span <= 16");
  VerificationReport rep;
  rep.lemma_id = "lev-smeliansky";
  rep.domain = {{"max_span", max_span}, {"normalized_min_a", 0}};
  const bits::Mask end = bits::Mask{1} << max_span;
  detail::sweep_masks(rep, 1, end, threads, [&](bits::Mask rest, VerificationReport& r) {
    const bits::Mask a = (rest << 1) | 1;
    if (detail::mask_gcd(a) != 1) return;
    ++r.sets_enumerated;
    const long long s = bits::popcount(a);
    const long long span = bits::highest(a) + 1;
    const long long lhs = bits::popcount(bits::positive_differences(a));
    const Rational rhs = std::min(Rational(s + span - 2, 2), Rational(3 * s - 4, 2));
    r.check("main", Rational(lhs), ">=", rhs, [&] {
      Violation w;
      w.sets = {{"A", detail::mask_set(a)}};
      return w;
    });
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Plunnecke: |S+S| <= R |S| implies |kS| <= R^k |S|, checked as
// |kS| |S|^(k-1) <= |2S|^k with R = |2S| / |S|.

namespace detail {
inline void plunnecke_instance(const IntSet& s, int k_max, VerificationReport& r) {
  const long long size = s.size();
  const long long doubled = sumset(s, s).size();
  IntSet ks = s;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) ks = sumset(ks, s);
    long long lhs = ks.size();
    long long rhs = 1;
    for (int i = 0; i < k - 1; ++i) lhs *= size;
    for (int i = 0; i < k; ++i) rhs *= doubled;
    r.check("main", Rational(lhs), "<=", Rational(rhs), [&] {
      Violation w;
      w.sets = {{"S", s}};
      w.params = {{"k", k}};
      return w;
    });
  }
}
}  // namespace detail

inline VerificationReport plunnecke_check(const IntSet& s, int k_max) {
  require(!s.empty(), "S must be non-empty");
  require(k_max >= 1 && k_max <= 5, "k_max must be in [1, 5]");
  VerificationReport rep;
  rep.lemma_id = "plunnecke";
  rep.domain = {{"k_max", k_max}};
  rep.sets_enumerated = 1;
  detail::plunnecke_instance(s, k_max, rep);
  return rep;
}

inline VerificationReport verify_plunnecke(int max_elem, int k_max, unsigned threads = 1) {
  require(max_elem >= 0 && max_elem <= 14, "Plunnecke sweep needs 0 <= max_elem <= 14");
  require(k_max >= 1 && k_max <= 5, "k_max must be in [1, 5]");
  VerificationReport rep;
  rep.lemma_id = "plunnecke";
  rep.domain = {{"max_elem", max_elem}, {"k_max", k_max}};
  const bits::Mask end = bits::Mask{1} << (max_elem + 1);
  detail::sweep_masks(rep, 1, end, threads, [&](bits::Mask m, VerificationReport& r) {
    ++r.sets_enumerated;
    detail::plunnecke_instance(detail::mask_set(m), k_max, r);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Covers by arithmetic progressions

struct Progression {
  int start = 0;
  int step = 1;
  int length = 0;
  bool contains(int v) const {
    if (length <= 0 || v < start) return false;
    return (v - start) % step == 0 && (v - start) / step < length;
  }
};

struct ApCover {
  bool found = false;  // minimal total length <= max_total_length
  int count = 1;
  int step = 1;
  Progression p1;
  std::optional<Progression> p2;  // absent when a single progression suffices
  int total_length = 0;           // minimal over all covers with `count` pieces
};

namespace detail {

// Best cover of sorted `a` by at most two progressions of step d, or nullopt
// when A meets more than two residue classes mod d.
inline std::optional<ApCover> two_cover_for_step(const std::vector<int>& a, int d) {
  std::vector<std::vector<int>> classes;
  std::vector<int> keys;
  for (int v : a) {
    const int key = ((v % d) + d) % d;
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      if (keys.size() == 2) return std::nullopt;
      keys.push_back(key);
      classes.push_back({v});
    } else {
      classes[static_cast<std::size_t>(it - keys.begin())].push_back(v);
    }
  }
  ApCover c;
  c.count = 2;
  c.step = d;
  auto piece = [d](int lo, int hi) { return Progression{lo, d, (hi - lo) / d + 1}; };
  if (classes.size() == 1) {
    const auto& cl = classes[0];
    if (cl.size() == 1) {
      c.p1 = piece(cl[0], cl[0]);
      c.total_length = 1;
      return c;
    }
    // Cut at the widest gap (first widest on ties).
    std::size_t cut = 0;
    int widest = -1;
    for (std::size_t i = 0; i + 1 < cl.size(); ++i) {
      if (cl[i + 1] - cl[i] > widest) {
        widest = cl[i + 1] - cl[i];
        cut = i;
      }
    }
    c.p1 = piece(cl.front(), cl[cut]);
    c.p2 = piece(cl[cut + 1], cl.back());
    c.total_length = c.p1.length + c.p2->length;
    return c;
  }
  c.p1 = piece(classes[0].front(), classes[0].back());
  c.p2 = piece(classes[1].front(), classes[1].back());
  if (c.p2->start < c.p1.start) std::swap(c.p1, *c.p2);
  c.total_length = c.p1.length + c.p2->length;
  return c;
}

}  // namespace detail

/// Minimal cover of A by `count` (1 or 2) progressions with a common step.
inline ApCover ap_cover_check(const IntSet& a, int count, int max_total_length) {
  require(!a.empty(), "A must be non-empty");
  require(count == 1 || count == 2, "count must be 1 or 2");
  const std::vector<int> el = a.elements();
  const int lo = el.front(), hi = el.back();
  ApCover best;
  best.count = count;
  if (el.size() == 1) {
    best.p1 = {lo, 1, 1};
    best.total_length = 1;
  } else if (count == 1) {
    const int d = difference_gcd(a);
    best.step = d;
    best.p1 = {lo, d, (hi - lo) / d + 1};
    best.total_length = best.p1.length;
  } else {
    best.total_length = -1;
    for (int d = 1; d <= std::max(hi - lo, 1); ++d) {
      auto c = detail::two_cover_for_step(el, d);
      if (c && (best.total_length < 0 || c->total_length < best.total_length)) best = *c;
    }
  }
  best.found = best.total_length <= max_total_length;
  return best;
}

// ---------------------------------------------------------------------------
// Small doubling: |A-A| = 3|A| - 3 + r with 0 < r < |A|/3 - 2 should give an
// AP of length 2|A|-1+2r or a two-AP cover of total length |A|+r.

struct Conjecture41Candidate {
  IntSet set;
  int r = 0;
  int difference_size = 0;
  int ap_length = 0;   // minimal single-AP length
  int two_ap_total = 0;  // minimal two-AP total length
  bool conclusion_i = false;
  bool conclusion_ii = false;
};

struct Conjecture41Report {
  int max_size = 0;
  int max_span = 0;
  std::uint64_t sets_examined = 0;  // min 0, d(A) = 1, |A| <= max_size
  std::uint64_t in_range = 0;       // 0 < r, 3r < |A| - 6
  std::uint64_t boundary = 0;       // 0 < r, 3r = |A| - 6
  std::vector<Conjecture41Candidate> candidates;
  std::vector<Conjecture41Candidate> boundary_witnesses;  // boundary sets failing both conclusions
  std::string label;
};

inline constexpr std::size_t kMaxBoundaryListed = 100;

inline Conjecture41Candidate conjecture41_evaluate(const IntSet& a) {
  Conjecture41Candidate c;
  c.set = a;
  c.difference_size = difference_set(a, a).size();
  c.r = c.difference_size - 3 * a.size() + 3;
  const ApCover one = ap_cover_check(a, 1, 2 * a.size() - 1 + 2 * c.r);
  const ApCover two = ap_cover_check(a, 2, a.size() + c.r);
  c.ap_length = one.total_length;
  c.two_ap_total = two.total_length;
  c.conclusion_i = one.found;
  c.conclusion_ii = two.found;
  return c;
}

inline Conjecture41Report conjecture41_search(int max_size, int max_span, unsigned threads = 1) {
  require(max_size >= 1 && max_size <= 12, "max_size must be in [1, 12]");
  require(max_span >= 1 && max_span <= 40, "max_span must be in [1, 40]");
  Conjecture41Report rep;
  rep.max_size = max_size;
  rep.max_span = max_span;
  // Shard on the bit pattern of [1, p]; each shard extends over (p, max_span].
  const int p = std::min(max_span, 10);
  const std::size_t shards = std::size_t{1} << p;
  std::vector<Conjecture41Report> partial(shards);
  run_shards(shards, threads, [&](std::size_t sh) {
    Conjecture41Report& r = partial[sh];
    const bits::Mask prefix = (static_cast<bits::Mask>(sh) << 1) | 1;
    if (bits::popcount(prefix) > max_size) return;
    auto visit = [&](bits::Mask a) {
      if (bits::popcount(a) < 2 || detail::mask_gcd(a) != 1) return;
      ++r.sets_examined;
      const int s = bits::popcount(a);
      if (s < 10) return;  // 0 < r < s/3 - 2 needs s >= 10
      const int r_val = 2 * bits::popcount(bits::positive_differences(a)) + 1 - 3 * s + 3;
      if (r_val <= 0 || 3 * r_val > s - 6) return;
      Conjecture41Candidate c = conjecture41_evaluate(detail::mask_set(a));
      if (3 * r_val < s - 6) {
        ++r.in_range;
        if (!c.conclusion_i && !c.conclusion_ii) r.candidates.push_back(std::move(c));
      } else {
        ++r.boundary;
        if (!c.conclusion_i && !c.conclusion_ii && r.boundary_witnesses.size() < kMaxBoundaryListed)
          r.boundary_witnesses.push_back(std::move(c));
      }
    };
    auto rec = [&](auto&& self, bits::Mask a, int next) -> void {
      visit(a);
      if (bits::popcount(a) >= max_size) return;
      for (int f = next; f <= max_span; ++f) self(self, a | (bits::Mask{1} << f), f + 1);
    };
    // the prefix itself, then every extension by elements above p
    rec(rec, prefix, p + 1);
  });
  for (auto& r : partial) {
    rep.sets_examined += r.sets_examined;
    rep.in_range += r.in_range;
    rep.boundary += r.boundary;
    for (auto& c : r.candidates) rep.candidates.push_back(std::move(c));
    for (auto& c : r.boundary_witnesses)
      if (rep.boundary_witnesses.size() < kMaxBoundaryListed) rep.boundary_witnesses.push_back(std::move(c));
  }
  rep.label = rep.candidates.empty() ? "no candidates" : "candidates only (threshold K unknown)";
  return rep;
}

struct Example42Record {
  int x = 0;
  int y = 0;
  IntSet set;
  int size = 0;
  int difference_size = 0;
  int expected_difference_size = 0;  // 10x - 5
  int r = 0;                         // |A-A| - 3|A| + 3 = x - 2
  int ap_length_allowed = 0;         // 2|A| - 1 + 2r
  int two_ap_allowed = 0;            // |A| + r
  int difference_gcd = 0;
  bool conclusion_i = false;
  bool conclusion_ii = false;
};

/// A = {0, y, 2y} + [0, x-1].
inline Example42Record example42(int x, int y) {
  require(x >= 1, "x must be >= 1");
  require(y >= 4 * x, "example needs y >= 4x");
  Example42Record rec;
  rec.x = x;
  rec.y = y;
  for (int b : {0, y, 2 * y})
    for (int i = 0; i < x; ++i) rec.set.insert(b + i);
  rec.size = rec.set.size();
  rec.difference_size = difference_set(rec.set, rec.set).size();
  rec.expected_difference_size = 10 * x - 5;
  rec.r = rec.difference_size - 3 * rec.size + 3;
  rec.ap_length_allowed = 2 * rec.size - 1 + 2 * rec.r;
  rec.two_ap_allowed = rec.size + rec.r;
  rec.difference_gcd = difference_gcd(rec.set);
  rec.conclusion_i = ap_cover_check(rec.set, 1, rec.ap_length_allowed).found;
  rec.conclusion_ii = ap_cover_check(rec.set, 2, rec.two_ap_allowed).found;
  return rec;
}

}  // namespace sumfree
