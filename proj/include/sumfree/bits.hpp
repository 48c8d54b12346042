#pragma once

#include <bit>
#include <cstdint>

// Small-universe helpers: a subset of [0, 63] as a 64-bit mask, bit i = element i.
// The exhaustive engines run on these; IntSet is the general carrier.

namespace sumfree::bits {

using Mask = std::uint64_t;
using Wide = unsigned __int128;

inline int popcount(Mask m) { return std::popcount(m); }

inline int lowest(Mask m) { return std::countr_zero(m); }

inline int highest(Mask m) { return 63 - std::countl_zero(m); }

template <class F>
inline void for_each(Mask m, F&& f) {
  while (m) {
    f(std::countr_zero(m));
    m &= m - 1;
  }
}

// Mask of [lo, hi] intersected with [0, 63]; empty when hi < lo.
inline Mask range(int lo, int hi) {
  if (lo < 0) lo = 0;
  if (hi > 63) hi = 63;
  if (hi < lo) return 0;
  const Mask upper = hi == 63 ? ~Mask{0} : ((Mask{1} << (hi + 1)) - 1);
  return upper & ~((Mask{1} << lo) - 1);
}

// A + B truncated to 128 bits; callers keep max(A)+max(B) < 128.
inline Wide sumset(Mask a, Mask b) {
  Wide out = 0;
  for_each(a, [&](int x) { out |= static_cast<Wide>(b) << x; });
  return out;
}

inline int popcount(Wide w) {
  return std::popcount(static_cast<Mask>(w)) + std::popcount(static_cast<Mask>(w >> 64));
}

// (A - A) restricted to positive values: bit d set iff some a, a+d in A.
inline Mask positive_differences(Mask a) {
  Mask out = 0;
  for_each(a, [&](int x) { out |= a >> x; });
  return out & ~Mask{1};
}

// No x, y, z in A with x + y = z (x = y allowed).
inline bool is_sum_free(Mask a) {
  Mask rest = a;
  while (rest) {
    const int x = std::countr_zero(rest);
    if (x == 0) return false;
    if ((a << x) & a) return false;
    rest &= rest - 1;
  }
  return true;
}

}  // namespace sumfree::bits
