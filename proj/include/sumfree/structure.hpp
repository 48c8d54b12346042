#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/bits.hpp"
#include "sumfree/enumerate.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/int_set.hpp"
#include "sumfree/parallel.hpp"
#include "sumfree/schur.hpp"

// Decision procedures for the structural alternatives of large sum-free sets:
//   (i)   every element odd
//   (ii)  every element is 1 or 4 mod 5
//   (iii) every element is 2 or 3 mod 5
//   (iv)  min(A) >= |A|
//   (v)   A inside a window around (n/5, 2n/5] and (4n/5, n]

namespace sumfree {

/// Bitmask over the alternatives (i)..(v); bit k is alternative k+1.
struct Alternatives {
  unsigned bits = 0;

  static constexpr std::array<const char*, 5> kNames = {"i", "ii", "iii", "iv", "v"};

  bool has(int k) const { return (bits >> (k - 1)) & 1u; }
  void set(int k, bool on = true) {
    if (on) bits |= 1u << (k - 1);
  }
  bool any() const { return bits != 0; }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (int k = 1; k <= 5; ++k)
      if (has(k)) out.emplace_back(kNames[static_cast<std::size_t>(k - 1)]);
    return out;
  }
  bool operator==(const Alternatives&) const = default;
};

/// Integer window [a_lo, a_hi] u [b_lo, b_hi] inside [1, n].
struct Window {
  long long a_lo = 0, a_hi = 0, b_lo = 0, b_hi = 0;

  bool contains(int e) const { return (e >= a_lo && e <= a_hi) || (e >= b_lo && e <= b_hi); }
  bool covers(const IntSet& a) const {
    bool ok = true;
    a.for_each([&](int e) { ok = ok && contains(e); });
    return ok;
  }
  bool covers_all(int n) const {
    if (n <= 0) return true;
    if (a_lo > 1) return false;
    if (a_hi >= n) return true;
    return b_lo <= a_hi + 1 && b_hi >= n;
  }
};

namespace detail {

inline void require_in_range(const IntSet& a, int n) {
  require(n >= 1, "n must be >= 1");
  if (!a.empty()) require(a.min() >= 1 && a.max() <= n, "set must lie in [1, n]");
}

inline void require_sum_free(const IntSet& a, const char* what) {
  if (!is_sum_free(a)) throw precondition_error(std::string(what) + " is not sum-free");
}

// (i)-(iv), which do not depend on n.
inline Alternatives residue_alternatives(const IntSet& a) {
  Alternatives alt;
  bool odd = true, f14 = true, f23 = true;
  a.for_each([&](int e) {
    odd = odd && (e % 2 == 1);
    f14 = f14 && (e % 5 == 1 || e % 5 == 4);
    f23 = f23 && (e % 5 == 2 || e % 5 == 3);
  });
  alt.set(1, odd);
  alt.set(2, f14);
  alt.set(3, f23);
  alt.set(4, a.empty() || a.min() >= a.size());
  return alt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Main structural alternatives with slack 200 sqrt(eta) n

struct ClassificationReport {
  int n = 0;
  double eta = 0.0;
  Alternatives satisfied;
  long long interval_slack = 0;  // ceil(200 sqrt(eta) n)
  Window window;
  bool vacuous_v = false;
  bool trivial = false;  // empty input: every alternative holds
};

// Guards the window ends against float noise in (1/5 - w) n and friends.
inline constexpr double kWindowEpsilon = 1e-9;

/**
 * The (v) window in integers: every integer x with (1/5 - w) n <= x <=
 * (2/5 + w) n, or (4/5 - w) n <= x <= n, where w = 200 sqrt(eta).
 */
inline Window main_window(int n, double eta) {
  const double w = 200.0 * std::sqrt(eta) * n;
  Window win;
  win.a_lo = std::max<long long>(1, static_cast<long long>(std::ceil(n / 5.0 - w - kWindowEpsilon)));
  win.a_hi = std::min<long long>(n, static_cast<long long>(std::floor(2.0 * n / 5.0 + w + kWindowEpsilon)));
  win.b_lo = std::max<long long>(1, static_cast<long long>(std::ceil(4.0 * n / 5.0 - w - kWindowEpsilon)));
  win.b_hi = n;
  return win;
}

inline ClassificationReport classify(const IntSet& a, int n, double eta) {
  detail::require_in_range(a, n);
  require(eta > 0.0, "eta must be > 0");
  detail::require_sum_free(a, "A");
  ClassificationReport rep;
  rep.n = n;
  rep.eta = eta;
  rep.window = main_window(n, eta);
  rep.interval_slack = static_cast<long long>(std::ceil(200.0 * std::sqrt(eta) * n - kWindowEpsilon));
  rep.vacuous_v = rep.window.covers_all(n);
  rep.trivial = a.empty();
  rep.satisfied = detail::residue_alternatives(a);
  rep.satisfied.set(5, rep.window.covers(a));
  return rep;
}

// ---------------------------------------------------------------------------
// Dense case: |A| >= 5n/12 + 2 forces odd or interval-like

struct FreimanVerdict {
  int n = 0;
  int size = 0;
  bool premise_met = false;  // 12 |A| >= 5n + 24
  bool odd = false;          // alternative (i)
  bool min_at_least_size = false;  // alternative (ii)
  bool holds = false;        // premise_met implies (odd or min_at_least_size)
};

inline FreimanVerdict freiman_check(const IntSet& a, int n) {
  detail::require_in_range(a, n);
  detail::require_sum_free(a, "A");
  FreimanVerdict v;
  v.n = n;
  v.size = a.size();
  v.premise_met = 12LL * a.size() >= 5LL * n + 24;
  const Alternatives alt = detail::residue_alternatives(a);
  v.odd = alt.has(1);
  v.min_at_least_size = alt.has(4);
  v.holds = !v.premise_met || v.odd || v.min_at_least_size;
  return v;
}

// ---------------------------------------------------------------------------
// Near 2n/5 with absolute slack K

struct DfstReport {
  int n = 0;
  double x = 0.0;
  int k = 0;
  bool premise_met = false;  // |A| >= 2n/5 - x
  Alternatives satisfied;
  Window window;
};

/// Window [n/5 - K, 2n/5 + K] u [4n/5 - K, n] in integers.
inline Window dfst_window(int n, int k) {
  auto ceil_div5 = [](long long v) { return v >= 0 ? (v + 4) / 5 : -((-v) / 5); };
  auto floor_div5 = [](long long v) { return v >= 0 ? v / 5 : -((-v + 4) / 5); };
  Window win;
  win.a_lo = std::max<long long>(1, ceil_div5(static_cast<long long>(n) - 5LL * k));
  win.a_hi = std::min<long long>(n, floor_div5(2LL * n + 5LL * k));
  win.b_lo = std::max<long long>(1, ceil_div5(4LL * n - 5LL * k));
  win.b_hi = n;
  return win;
}

inline DfstReport dfst_check(const IntSet& a, int n, double x, int k) {
  detail::require_in_range(a, n);
  require(x >= 0.0, "x must be >= 0");
  require(k >= 0, "K must be >= 0");
  detail::require_sum_free(a, "A");
  DfstReport rep;
  rep.n = n;
  rep.x = x;
  rep.k = k;
  rep.premise_met = 5.0 * a.size() >= 2.0 * n - 5.0 * x - kWindowEpsilon;
  rep.window = dfst_window(n, k);
  rep.satisfied = detail::residue_alternatives(a);
  rep.satisfied.set(5, rep.window.covers(a));
  return rep;
}

// ---------------------------------------------------------------------------
// Stability of pairs of sum-free sets

/// I1 = (n/5, 2n/5] u (4n/5, n] and I2 = (2n/5, 4n/5].
inline IntSet interval_class_1(int n) {
  IntSet out(n);
  for (int x = 1; x <= n; ++x)
    if ((5 * x > n && 5 * x <= 2 * n) || 5 * x > 4 * n) out.insert(x);
  return out;
}

inline IntSet interval_class_2(int n) {
  IntSet out(n);
  for (int x = 1; x <= n; ++x)
    if (5 * x > 2 * n && 5 * x <= 4 * n) out.insert(x);
  return out;
}

/// min over both orders of |C1 \ X| + |C2 \ Y|.
inline int pair_defect(const IntSet& c1, const IntSet& c2, const IntSet& x, const IntSet& y) {
  const int straight = (c1 - x).size() + (c2 - y).size();
  const int swapped = (c2 - x).size() + (c1 - y).size();
  return std::min(straight, swapped);
}

struct StabilityReport {
  int n = 0;
  double eta = 0.0;
  bool premise_met = false;  // |C1 u C2| >= (4/5 - eta) n
  int union_size = 0;
  int defect_a = 0;          // against (F14, F23)
  int defect_b = 0;          // against (I1, I2)
  double threshold_a = 0.0;  // 14 eta n
  double threshold_b = 0.0;  // 2424 sqrt(eta) n
  bool verdict_i = false;
  bool verdict_ii = false;
};

inline StabilityReport stability_classify(const IntSet& c1, const IntSet& c2, int n, double eta) {
  detail::require_in_range(c1, n);
  detail::require_in_range(c2, n);
  require(eta > 0.0, "eta must be > 0");
  detail::require_sum_free(c1, "C1");
  detail::require_sum_free(c2, "C2");
  StabilityReport rep;
  rep.n = n;
  rep.eta = eta;
  rep.union_size = (c1 | c2).size();
  rep.premise_met = 5.0 * rep.union_size >= (4.0 - 5.0 * eta) * n - kWindowEpsilon;
  rep.defect_a = pair_defect(c1, c2, f14(n), f23(n));
  rep.defect_b = pair_defect(c1, c2, interval_class_1(n), interval_class_2(n));
  rep.threshold_a = 14.0 * eta * n;
  rep.threshold_b = 2424.0 * std::sqrt(eta) * n;
  rep.verdict_i = rep.defect_a <= rep.threshold_a + kWindowEpsilon;
  rep.verdict_ii = rep.defect_b <= rep.threshold_b + kWindowEpsilon;
  return rep;
}

enum class PairType { a, b, both, neither };

inline const char* to_string(PairType t) {
  switch (t) {
    case PairType::a: return "a";
    case PairType::b: return "b";
    case PairType::both: return "both";
    case PairType::neither: return "neither";
  }
  return "neither";
}

struct TypeReport {
  int n = 0;
  double delta = 0.0;
  int defect_a = 0;
  int defect_b = 0;
  PairType verdict = PairType::neither;
};

inline TypeReport type_ab_classify(const IntSet& a1, const IntSet& a2, int n, double delta) {
  detail::require_in_range(a1, n);
  detail::require_in_range(a2, n);
  require(delta >= 0.0, "delta must be >= 0");
  require(!a1.intersects(a2), "A1 and A2 must be disjoint");
  detail::require_sum_free(a1, "A1");
  detail::require_sum_free(a2, "A2");
  TypeReport rep;
  rep.n = n;
  rep.delta = delta;
  rep.defect_a = pair_defect(a1, a2, f14(n), f23(n));
  rep.defect_b = pair_defect(a1, a2, interval_class_1(n), interval_class_2(n));
  const double limit = delta * n + kWindowEpsilon;
  const bool ta = rep.defect_a <= limit;
  const bool tb = rep.defect_b <= limit;
  rep.verdict = ta && tb ? PairType::both : ta ? PairType::a : tb ? PairType::b : PairType::neither;
  return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive scans over all sum-free subsets of [n]

enum class Theorem { freiman, dfst, structure };

inline const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::freiman: return "freiman";
    case Theorem::dfst: return "dfst";
    case Theorem::structure: return "structure";
  }
  return "structure";
}

struct ScanParams {
  Theorem theorem = Theorem::structure;
  double eta = 0.0;  // structure
  double x = 0.0;    // dfst
  int k = 0;         // dfst
};

struct ScanReport {
  int n = 0;
  ScanParams params;
  std::uint64_t sets_enumerated = 0;  // every sum-free subset of [n], including the empty set
  std::uint64_t premise_count = 0;
  std::array<std::uint64_t, 5> per_alternative{};  // freiman uses slots i (odd) and iv (min >= |A|)
  std::uint64_t violator_count = 0;
  std::vector<IntSet> violators;  // first kMaxListedViolators in enumeration order
  bool vacuous_v = false;
  std::string label;
};

inline constexpr int kScanCap = 28;
inline constexpr std::size_t kMaxListedViolators = 1000;
inline constexpr int kScanPrefix = 8;

inline ScanReport structure_scan(int n, const ScanParams& params, unsigned threads = 1,
                                 std::optional<int> cap_override = std::nullopt) {
  require(n >= 1, "n must be >= 1");
  const int cap = cap_override ? std::min(*cap_override, enumerate::kMaxUniverse) : kScanCap;
  if (n > cap) throw cap_exceeded("structure scan refuses n = " + std::to_string(n), cap);
  if (params.theorem == Theorem::structure) require(params.eta > 0.0, "eta must be > 0");

  ScanReport rep;
  rep.n = n;
  rep.params = params;
  Window win;
  if (params.theorem == Theorem::structure) win = main_window(n, params.eta);
  if (params.theorem == Theorem::dfst) win = dfst_window(n, params.k);
  rep.vacuous_v = params.theorem != Theorem::freiman && win.covers_all(n);

  auto premise = [&](int size) -> bool {
    switch (params.theorem) {
      case Theorem::freiman: return 12LL * size >= 5LL * n + 24;
      case Theorem::dfst: return 5.0 * size >= 2.0 * n - 5.0 * params.x - kWindowEpsilon;
      case Theorem::structure: return 5.0 * size >= (2.0 - 5.0 * params.eta) * n - kWindowEpsilon;
    }
    return false;
  };
  const bits::Mask win_mask = bits::range(static_cast<int>(win.a_lo), static_cast<int>(win.a_hi)) |
                              bits::range(static_cast<int>(win.b_lo), static_cast<int>(win.b_hi));
  bits::Mask odd_mask = 0, f14_mask = 0, f23_mask = 0;
  for (int e = 1; e <= n; ++e) {
    if (e % 2 == 1) odd_mask |= bits::Mask{1} << e;
    if (e % 5 == 1 || e % 5 == 4) f14_mask |= bits::Mask{1} << e;
    if (e % 5 == 2 || e % 5 == 3) f23_mask |= bits::Mask{1} << e;
  }

  struct Partial {
    std::uint64_t sets = 0, premise = 0, violators = 0;
    std::array<std::uint64_t, 5> per{};
    std::vector<bits::Mask> listed;
  };
  const int p = std::min(n, kScanPrefix);
  const auto roots = enumerate::roots(p);
  std::vector<Partial> parts(roots.size());
  run_shards(roots.size(), threads, [&](std::size_t i) {
    Partial& part = parts[i];
    auto visit = [&](bits::Mask s) {
      ++part.sets;
      const int size = bits::popcount(s);
      if (!premise(size)) return;
      ++part.premise;
      Alternatives alt;
      alt.set(1, (s & ~odd_mask) == 0);
      alt.set(4, s == 0 || bits::lowest(s) >= size);
      bool ok = false;
      if (params.theorem == Theorem::freiman) {
        ok = alt.has(1) || alt.has(4);
      } else {
        alt.set(2, (s & ~f14_mask) == 0);
        alt.set(3, (s & ~f23_mask) == 0);
        alt.set(5, (s & ~win_mask) == 0);
        ok = alt.any();
      }
      for (int k = 1; k <= 5; ++k)
        if (alt.has(k)) ++part.per[static_cast<std::size_t>(k - 1)];
      if (!ok) {
        ++part.violators;
        if (part.listed.size() < kMaxListedViolators) part.listed.push_back(s);
      }
    };
    enumerate::descend_root(n, p, roots[i], visit);
  });
  for (const Partial& part : parts) {
    rep.sets_enumerated += part.sets;
    rep.premise_count += part.premise;
    rep.violator_count += part.violators;
    for (std::size_t k = 0; k < 5; ++k) rep.per_alternative[k] += part.per[k];
    for (bits::Mask s : part.listed)
      if (rep.violators.size() < kMaxListedViolators) rep.violators.push_back(IntSet::from_mask(s));
  }
  if (rep.premise_count == 0)
    rep.label = "no sets meet premise";
  else if (rep.violator_count == 0)
    rep.label = "no violators";
  else
    rep.label = params.theorem == Theorem::freiman ? "violators found" : "outside proven regime";
  return rep;
}

}  // namespace sumfree
