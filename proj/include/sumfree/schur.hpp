#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sumfree/bits.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/int_set.hpp"

namespace sumfree {

/// x + y = z with x <= y; x = y allowed.
struct SchurTriple {
  int x = 0;
  int y = 0;
  int z = 0;
  auto operator<=>(const SchurTriple&) const = default;
};

/// All Schur triples inside A, in lexicographic order.
inline std::vector<SchurTriple> schur_triples(const IntSet& a) {
  std::vector<SchurTriple> out;
  const std::vector<int> el = a.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i; j < el.size(); ++j)
      if (a.contains(el[i] + el[j])) out.push_back({el[i], el[j], el[i] + el[j]});
  return out;
}

/// (A + A) n A = {}: for each x in A, A and A + x are disjoint.
inline bool is_sum_free(const IntSet& a) {
  bool ok = true;
  a.for_each([&](int x) {
    if (ok && a.intersects_shifted(a, x)) ok = false;
  });
  return ok;
}

/// No x, y, z in A with x + y = z (mod m), after reducing A mod m.
inline bool is_sum_free_mod(const IntSet& a, int m) {
  require(m >= 1, "modulus must be >= 1");
  std::vector<char> present(static_cast<std::size_t>(m), 0);
  std::vector<int> residues;
  a.for_each([&](int e) {
    const int r = e % m;
    if (!present[static_cast<std::size_t>(r)]) {
      present[static_cast<std::size_t>(r)] = 1;
      residues.push_back(r);
    }
  });
  for (int x : residues)
    for (int y : residues)
      if (present[static_cast<std::size_t>((x + y) % m)]) return false;
  return true;
}

/// A partition of a set into r parts, each sum-free (mod `modulus` when set).
struct PartitionWitness {
  int r = 0;
  std::vector<IntSet> parts;
  std::optional<int> modulus;
};

/// Independent re-check: parts disjoint, union equals `a`, every part sum-free.
inline bool validate_witness(const IntSet& a, const PartitionWitness& w) {
  if (w.r < 1 || static_cast<int>(w.parts.size()) != w.r) return false;
  IntSet uni;
  int total = 0;
  for (const IntSet& p : w.parts) {
    if (uni.intersects(p)) return false;
    uni = uni | p;
    total += p.size();
    const bool ok = w.modulus ? is_sum_free_mod(p, *w.modulus) : is_sum_free(p);
    if (!ok) return false;
  }
  return uni == a && total == a.size();
}

enum class SearchStatus { found, none, budget_exhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "unknown";
}

inline constexpr std::uint64_t kUnlimitedNodes = std::numeric_limits<std::uint64_t>::max();

struct WitnessResult {
  SearchStatus status = SearchStatus::none;
  std::optional<PartitionWitness> witness;
  std::uint64_t nodes = 0;
};

namespace detail {

/**
 * Backtracking r-colouring of a set with no monochromatic Schur triple.
 *
 * Elements are coloured in increasing order. Each element is keyed by its
 * value, or by its residue in modular mode. Assigning key k to part p forbids
 * in p every key that would complete a triple with k and a key already in p;
 * a wipe-out of any uncoloured key's parts fails the branch immediately.
 * An element may open at most one new part, which pins the smallest element
 * to part 0 and removes part-permutation symmetry.
 */
class ColouringSearch {
 public:
  ColouringSearch(const IntSet& a, int r, std::optional<int> modulus, std::uint64_t max_nodes)
      : r_(r), modulus_(modulus.value_or(0)), max_nodes_(max_nodes) {
    values_ = a.elements();
    key_space_ = modulus_ ? modulus_ : (values_.empty() ? 1 : values_.back() + 1);
    keys_.reserve(values_.size());
    pending_.assign(static_cast<std::size_t>(key_space_), 0);
    for (int v : values_) {
      const int k = modulus_ ? v % modulus_ : v;
      keys_.push_back(k);
      ++pending_[static_cast<std::size_t>(k)];
    }
    const auto cells = static_cast<std::size_t>(r_) * static_cast<std::size_t>(key_space_);
    forbid_.assign(cells, 0);
    members_.assign(cells, 0);
    part_keys_.assign(static_cast<std::size_t>(r_), {});
    colour_.assign(values_.size(), -1);
  }

  WitnessResult run() {
    WitnessResult res;
    bool impossible = false;
    for (int k : keys_)
      if (k == 0) impossible = true;  // 0 + 0 = 0
    if (impossible) {
      res.status = SearchStatus::none;
      return res;
    }
    const bool ok = descend(0, 0);
    res.nodes = nodes_;
    if (ok) {
      res.status = SearchStatus::found;
      PartitionWitness w;
      w.r = r_;
      w.modulus = modulus_ ? std::optional<int>(modulus_) : std::nullopt;
      w.parts.assign(static_cast<std::size_t>(r_), IntSet());
      for (std::size_t i = 0; i < values_.size(); ++i)
        w.parts[static_cast<std::size_t>(colour_[i])].insert(values_[i]);
      res.witness = std::move(w);
    } else {
      res.status = out_of_budget_ ? SearchStatus::budget_exhausted : SearchStatus::none;
    }
    return res;
  }

 private:
  std::size_t cell(int part, int key) const {
    return static_cast<std::size_t>(part) * static_cast<std::size_t>(key_space_) +
           static_cast<std::size_t>(key);
  }

  int reduce(int k) const {
    if (!modulus_) return k;
    k %= modulus_;
    return k < 0 ? k + modulus_ : k;
  }

  // Forbid key q in part p; returns false on wipe-out of an uncoloured key.
  bool forbid(int p, int q, int used_parts) {
    if (q < 0 || q >= key_space_) return true;
    const std::size_t c = cell(p, q);
    trail_.push_back(c);
    if (forbid_[c]++ != 0) return true;
    if (pending_[static_cast<std::size_t>(q)] == 0) return true;
    // A fresh part is always available while fewer than r are in use.
    if (used_parts < r_) return true;
    for (int pp = 0; pp < r_; ++pp)
      if (forbid_[cell(pp, q)] == 0) return true;
    return false;
  }

  bool descend(std::size_t idx, int used_parts) {
    if (idx == values_.size()) return true;
    const int k = keys_[idx];
    --pending_[static_cast<std::size_t>(k)];
    const int limit = std::min(r_, used_parts + 1);
    for (int p = 0; p < limit; ++p) {
      if (nodes_ >= max_nodes_) {
        out_of_budget_ = true;
        break;
      }
      ++nodes_;
      if (forbid_[cell(p, k)] != 0) continue;
      if (modulus_ && members_[cell(p, reduce(2 * k))] != 0) continue;

      const bool fresh_key = members_[cell(p, k)] == 0;
      const int next_used = std::max(used_parts, p + 1);
      const std::size_t mark = trail_.size();
      bool alive = true;
      if (fresh_key) {
        auto& pk = part_keys_[static_cast<std::size_t>(p)];
        pk.push_back(k);
        for (int x : pk) {
          if (!alive) break;
          alive = forbid(p, modulus_ ? reduce(k + x) : k + x, next_used);
          if (alive && modulus_) alive = forbid(p, reduce(k - x), next_used);
          if (alive && modulus_) alive = forbid(p, reduce(x - k), next_used);
        }
      }
      ++members_[cell(p, k)];
      colour_[idx] = p;
      if (alive && descend(idx + 1, next_used)) return true;
      colour_[idx] = -1;
      --members_[cell(p, k)];
      while (trail_.size() > mark) {
        --forbid_[trail_.back()];
        trail_.pop_back();
      }
      if (fresh_key) part_keys_[static_cast<std::size_t>(p)].pop_back();
      if (out_of_budget_) break;
    }
    ++pending_[static_cast<std::size_t>(k)];
    return false;
  }

  int r_;
  int modulus_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
  int key_space_ = 1;
  std::vector<int> values_;
  std::vector<int> keys_;
  std::vector<int> pending_;  // uncoloured elements per key
  std::vector<int> forbid_;   // [part][key] number of reasons the key is barred
  std::vector<int> members_;  // [part][key] elements of that key in the part
  std::vector<std::vector<int>> part_keys_;
  std::vector<int> colour_;
  std::vector<std::size_t> trail_;
};

}  // namespace detail

/**
 * Partition of A into r sum-free parts (sum-free mod `modulus` when given),
 * or a certified "none" after exhaustive backtracking. Every returned witness
 * has been re-validated.
 */
inline WitnessResult r_wise_witness(const IntSet& a, int r, std::optional<int> modulus = std::nullopt,
                                    std::uint64_t max_nodes = kUnlimitedNodes) {
  require(r >= 1, "r must be >= 1");
  if (modulus) require(*modulus >= 1, "modulus must be >= 1");
  WitnessResult res = detail::ColouringSearch(a, r, modulus, max_nodes).run();
  if (res.witness && !validate_witness(a, *res.witness))
    throw std::logic_error("partition search produced an invalid witness");
  return res;
}

// ---------------------------------------------------------------------------
// Extremal searches

struct MuResult {
  int n = 0;
  int r = 0;
  int value = 0;       // exact maximum, or a lower bound when !exact
  bool exact = true;
  IntSet witness_set;
  PartitionWitness witness;
  std::uint64_t subsets_checked = 0;
  std::uint64_t nodes = 0;
};

namespace detail {

// Visits the s-subsets of [n] with larger elements first:
// {n, n-1, ..., n-s+1} comes first. Stops when visit returns true.
template <class Visit>
bool for_each_top_heavy_subset(int n, int s, Visit&& visit) {
  if (s > n || s < 0) return false;
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> values(static_cast<std::size_t>(s));
  while (true) {
    for (int i = 0; i < s; ++i) values[static_cast<std::size_t>(i)] = n - idx[static_cast<std::size_t>(i)];
    if (visit(values)) return true;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace detail

/**
 * mu(n, r): the largest r-wise sum-free subset of [n], with a witness.
 *
 * r = 1, 2: candidate sizes are tried downward from n and the first witness
 * found is the answer. r >= 3: sizes are tried upward so an exhausted budget
 * still leaves the best size found, reported with exact = false.
 */
inline MuResult mu(int n, int r, std::uint64_t max_nodes = 2'000'000'000ull) {
  require(n >= 0, "n must be >= 0");
  require(r >= 1, "r must be >= 1");
  MuResult out;
  out.n = n;
  out.r = r;
  out.witness.r = r;
  out.witness.parts.assign(static_cast<std::size_t>(r), IntSet());
  if (n == 0) return out;

  std::uint64_t spent = 0;
  bool exhausted = false;
  // status of the size-s query: found / none / budget_exhausted
  auto probe = [&](int s) {
    SearchStatus status = SearchStatus::none;
    detail::for_each_top_heavy_subset(n, s, [&](const std::vector<int>& values) {
      if (spent >= max_nodes) {
        status = SearchStatus::budget_exhausted;
        return true;
      }
      ++out.subsets_checked;
      ++spent;
      IntSet cand = IntSet::from_range(values);
      if (r == 1) {
        const bool ok = n < 64 ? bits::is_sum_free(cand.to_mask()) : is_sum_free(cand);
        if (ok) {
          out.witness_set = cand;
          out.witness.parts = {cand};
          status = SearchStatus::found;
          return true;
        }
        return false;
      }
      WitnessResult w = r_wise_witness(cand, r, std::nullopt, max_nodes - spent);
      spent += w.nodes;
      out.nodes += w.nodes;
      if (w.status == SearchStatus::found) {
        out.witness_set = cand;
        out.witness = *w.witness;
        status = SearchStatus::found;
        return true;
      }
      if (w.status == SearchStatus::budget_exhausted) {
        status = SearchStatus::budget_exhausted;
        return true;
      }
      return false;
    });
    return status;
  };

  if (r <= 2) {
    for (int s = n; s >= 1; --s) {
      const SearchStatus st = probe(s);
      if (st == SearchStatus::found) {
        out.value = s;
        out.exact = !exhausted;
        break;
      }
      if (st == SearchStatus::budget_exhausted) {
        exhausted = true;
        break;
      }
    }
    if (exhausted) {
      out.exact = false;
      // Fall back to the best singleton-level certificate we have.
      if (out.value == 0) {
        out.value = 1;
        out.witness_set = IntSet{n};
        out.witness.parts.assign(static_cast<std::size_t>(r), IntSet());
        out.witness.parts[0] = IntSet{n};
      }
    }
  } else {
    out.value = 0;
    for (int s = 1; s <= n; ++s) {
      const SearchStatus st = probe(s);
      if (st == SearchStatus::found) {
        out.value = s;
        continue;
      }
      out.exact = st == SearchStatus::none;
      break;
    }
  }
  if (out.value > 0 && !validate_witness(out.witness_set, out.witness))
    throw std::logic_error("mu search produced an invalid witness");
  return out;
}

struct ModularSchurResult {
  int r = 0;
  int lower = 0;               // largest m certified to partition [m] mod m+1
  std::optional<int> upper;    // equals lower when certified
  bool certified = false;
  std::optional<PartitionWitness> witness;  // for [lower] mod lower+1
  int refuted_plain_at = 0;    // [m] with no plain r-partition, proving the bound
  std::uint64_t nodes = 0;
};

/**
 * h(r): the largest m such that [m] splits into r classes sum-free mod m+1.
 *
 * m increases from 1. A class sum-free mod m+1 is sum-free in the integers,
 * so once [m] has no plain sum-free r-partition no larger m can succeed,
 * which certifies the largest modular success seen so far.
 */
inline ModularSchurResult modular_schur_number(int r, std::uint64_t max_nodes = kUnlimitedNodes) {
  require(r >= 1, "r must be >= 1");
  ModularSchurResult out;
  out.r = r;
  std::uint64_t spent = 0;
  for (int m = 1;; ++m) {
    const IntSet range = IntSet::interval(1, m);
    const WitnessResult modular = r_wise_witness(range, r, m + 1, max_nodes - spent);
    spent += modular.nodes;
    if (modular.status == SearchStatus::found) {
      out.lower = m;
      out.witness = modular.witness;
      continue;
    }
    if (modular.status == SearchStatus::budget_exhausted) break;
    const WitnessResult plain = r_wise_witness(range, r, std::nullopt, max_nodes - spent);
    spent += plain.nodes;
    if (plain.status == SearchStatus::none) {
      out.certified = true;
      out.upper = out.lower;
      out.refuted_plain_at = m;
      break;
    }
    if (plain.status == SearchStatus::budget_exhausted) break;
  }
  out.nodes = spent;
  return out;
}

/**
 * Extends a partition of [h] sum-free mod h+1 to [n]: a joins the class of
 * a mod (h+1), multiples of h+1 are dropped. Size n - floor(n/(h+1)).
 */
inline std::pair<IntSet, PartitionWitness> lift_modular_partition(int n, const PartitionWitness& base) {
  require(base.modulus.has_value(), "lift needs a modular partition");
  const int q = *base.modulus;
  PartitionWitness w;
  w.r = base.r;
  w.parts.assign(base.parts.size(), IntSet());
  IntSet all;
  for (int a = 1; a <= n; ++a) {
    const int res = a % q;
    if (res == 0) continue;
    for (std::size_t p = 0; p < base.parts.size(); ++p)
      if (base.parts[p].contains(res)) {
        w.parts[p].insert(a);
        all.insert(a);
      }
  }
  return {all, w};
}

}  // namespace sumfree
