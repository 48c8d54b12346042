#pragma once

// Independent reference implementations on std::set<int>, used only as test
// oracles. Nothing here calls the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace brute {

using Set = std::set<int>;

inline Set from_mask(std::uint64_t m, int offset = 0) {
  Set s;
  for (int i = 0; i < 64; ++i)
    if ((m >> i) & 1) s.insert(i + offset);
  return s;
}

inline Set sumset(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    for (int y : b) out.insert(x + y);
  return out;
}

inline Set difference(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    for (int y : b) out.insert(x - y);
  return out;
}

inline bool sum_free(const Set& a) {
  for (int x : a)
    for (int y : a)
      if (a.count(x + y)) return false;
  return true;
}

inline bool sum_free_mod(const Set& a, int m) {
  for (int x : a)
    for (int y : a)
      for (int z : a)
        if (((x + y - z) % m + m) % m == 0) return false;
  return true;
}

// Tries every assignment of elements to r parts.
inline bool r_wise(const Set& a, int r, int modulus = 0) {
  const std::vector<int> el(a.begin(), a.end());
  const std::size_t n = el.size();
  std::vector<int> colour(n, 0);
  while (true) {
    std::vector<Set> parts(static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < n; ++i) parts[static_cast<std::size_t>(colour[i])].insert(el[i]);
    bool ok = true;
    for (const Set& p : parts) ok = ok && (modulus ? sum_free_mod(p, modulus) : sum_free(p));
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && colour[i] == r - 1) colour[i++] = 0;
    if (i == n) return false;
    ++colour[i];
  }
}

inline int gcd_of_differences(const Set& a) {
  int g = 0;
  for (int x : a) g = std::gcd(g, x - *a.begin());
  return g;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Partitions of k into exactly l distinct parts, by direct recursion on the largest part.
inline long long distinct_partitions(int k, int l, int max_part) {
  if (l == 0) return k == 0 ? 1 : 0;
  long long total = 0;
  for (int p = std::min(k, max_part); p >= 1; --p) total += distinct_partitions(k - p, l - 1, p - 1);
  return total;
}

// Smallest single AP (any step) containing A: try every step.
inline int min_ap_length(const Set& a) {
  if (a.size() == 1) return 1;
  const int lo = *a.begin(), hi = *a.rbegin();
  int best = -1;
  for (int d = 1; d <= hi - lo; ++d) {
    bool ok = true;
    for (int x : a) ok = ok && (x - lo) % d == 0;
    if (ok) {
      const int len = (hi - lo) / d + 1;
      if (best < 0 || len < best) best = len;
    }
  }
  return best;
}

// Smallest |P1| + |P2| over two APs of common step d covering A, trying every
// step, every pair of endpoints of P1 inside A, and covering the rest by one AP of step d.
inline int min_two_ap_total(const Set& a) {
  const std::vector<int> el(a.begin(), a.end());
  if (el.size() == 1) return 1;
  const int lo = el.front(), hi = el.back();
  int best = -1;
  auto consider = [&](int v) {
    if (best < 0 || v < best) best = v;
  };
  for (int d = 1; d <= hi - lo; ++d) {
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i; j < el.size(); ++j) {
        const int s = el[i], e = el[j];
        if ((e - s) % d != 0) continue;
        auto in_p1 = [&](int x) { return x >= s && x <= e && (x - s) % d == 0; };
        std::vector<int> rest;
        for (int x : el)
          if (!in_p1(x)) rest.push_back(x);
        const int len1 = (e - s) / d + 1;
        if (rest.empty()) {
          consider(len1);
          continue;
        }
        bool ok = true;
        for (int x : rest) ok = ok && (x - rest.front()) % d == 0;
        if (ok) consider(len1 + (rest.back() - rest.front()) / d + 1);
      }
  }
  return best;
}

}  // namespace brute
