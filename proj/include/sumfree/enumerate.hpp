#pragma once

#include <cstdint>
#include <vector>

#include "sumfree/bits.hpp"
#include "sumfree/errors.hpp"

// Depth-first enumeration of the sum-free subsets of [n], n <= 63.
//
// Sets grow by appending a new largest element f; f is admissible iff it is
// not in S + S, which is carried incrementally. Shards are the sum-free
// subsets of a fixed prefix [p]; shard i owns its prefix set and every
// extension by elements of (p, n].

namespace sumfree::enumerate {

using bits::Mask;
using bits::Wide;

struct Root {
  Mask set = 0;
  Wide sums = 0;  // set + set
};

inline constexpr int kMaxUniverse = 63;

inline Wide extend_sums(Mask set, Wide sums, int f) {
  const Mask with = set | (Mask{1} << f);
  return sums | (static_cast<Wide>(with) << f);
}

/// Calls visit(set) for `root` and every sum-free extension by elements in [next, n].
template <class Visit>
void descend(int n, Mask set, Wide sums, int next, Visit& visit) {
  visit(set);
  for (int f = next; f <= n; ++f) {
    if ((sums >> f) & 1) continue;
    descend(n, set | (Mask{1} << f), extend_sums(set, sums, f), f + 1, visit);
  }
}

/// Sum-free subsets of [p], in DFS order; these are the shard roots.
inline std::vector<Root> roots(int p) {
  std::vector<Root> out;
  auto rec = [&](auto&& self, Mask set, Wide sums, int next) -> void {
    out.push_back({set, sums});
    for (int f = next; f <= p; ++f) {
      if ((sums >> f) & 1) continue;
      self(self, set | (Mask{1} << f), extend_sums(set, sums, f), f + 1);
    }
  };
  rec(rec, 0, 0, 1);
  return out;
}

inline int default_prefix(int n) { return n < 10 ? n : 10; }

/// Visits every sum-free subset of [n] (including the empty set) in shard `root`.
template <class Visit>
void descend_root(int n, int prefix, const Root& root, Visit& visit) {
  descend(n, root.set, root.sums, prefix + 1, visit);
}

template <class Visit>
void for_each_sum_free(int n, Visit&& visit) {
  require(n >= 0 && n <= kMaxUniverse, "enumeration universe must be within [0, 63]");
  descend(n, 0, 0, 1, visit);
}

}  // namespace sumfree::enumerate
