#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sumfree/errors.hpp"

namespace sumfree {

/**
 * A finite set of non-negative integers stored as a bit-vector keyed by value.
 *
 * `universe_bound` is inclusive capacity metadata: every element satisfies
 * 0 <= e <= universe_bound. Inserting past the bound grows it. Storage only
 * spans the words up to the largest element, so a default bound of 2^16 costs
 * nothing for small sets. Equality is element-wise.
 */
class IntSet {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;
  static constexpr int kDefaultBound = 1 << 16;

  IntSet() = default;
  explicit IntSet(int universe_bound) : bound_(universe_bound) {
    require(universe_bound >= 0, "universe_bound must be >= 0");
  }

  IntSet(std::initializer_list<int> elements) {
    for (int e : elements) insert(e);
  }

  template <class Range>
  static IntSet from_range(const Range& elements) {
    IntSet s;
    for (int e : elements) s.insert(e);
    return s;
  }

  // {lo, lo+1, ..., hi}; empty when hi < lo.
  static IntSet interval(int lo, int hi) {
    require(lo >= 0, "interval start must be non-negative");
    IntSet s;
    for (int e = lo; e <= hi; ++e) s.insert(e);
    return s;
  }

  // Bit i of `mask` means element i.
  static IntSet from_mask(std::uint64_t mask) {
    IntSet s;
    if (mask != 0) {
      s.words_.push_back(mask);
      s.refresh_count();
    }
    return s;
  }

  void insert(int e) {
    require(e >= 0, "IntSet elements must be non-negative, got " + std::to_string(e));
    if (e > bound_) bound_ = e;
    auto w = static_cast<std::size_t>(e / kWordBits);
    if (w >= words_.size()) words_.resize(w + 1, 0);
    Word bit = Word{1} << (e % kWordBits);
    if (!(words_[w] & bit)) {
      words_[w] |= bit;
      ++count_;
    }
  }

  void erase(int e) {
    if (!contains(e)) return;
    words_[static_cast<std::size_t>(e / kWordBits)] &= ~(Word{1} << (e % kWordBits));
    --count_;
    trim();
  }

  bool contains(int e) const {
    if (e < 0) return false;
    auto w = static_cast<std::size_t>(e / kWordBits);
    return w < words_.size() && ((words_[w] >> (e % kWordBits)) & 1u);
  }

  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  int universe_bound() const { return bound_; }

  int min() const {
    require(!empty(), "min of empty set");
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i) * kWordBits + std::countr_zero(words_[i]);
    return -1;
  }

  int max() const {
    require(!empty(), "max of empty set");
    const std::size_t i = words_.size() - 1;
    return static_cast<int>(i) * kWordBits + (kWordBits - 1 - std::countl_zero(words_[i]));
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w) {
        f(static_cast<int>(i) * kWordBits + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count_));
    for_each([&](int e) { out.push_back(e); });
    return out;
  }

  std::span<const Word> words() const { return words_; }

  // Only valid when every element is below 64.
  std::uint64_t to_mask() const {
    require(words_.size() <= 1, "set does not fit a 64-bit mask");
    return words_.empty() ? 0 : words_[0];
  }

  bool operator==(const IntSet& other) const { return words_ == other.words_; }

  bool is_subset_of(const IntSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word o = i < other.words_.size() ? other.words_[i] : 0;
      if (words_[i] & ~o) return false;
    }
    return true;
  }

  bool intersects(const IntSet& other) const {
    const std::size_t n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  friend IntSet operator|(const IntSet& a, const IntSet& b) {
    IntSet r = a.words_.size() >= b.words_.size() ? a : b;
    const IntSet& s = a.words_.size() >= b.words_.size() ? b : a;
    for (std::size_t i = 0; i < s.words_.size(); ++i) r.words_[i] |= s.words_[i];
    r.bound_ = std::max(a.bound_, b.bound_);
    r.refresh_count();
    return r;
  }

  friend IntSet operator&(const IntSet& a, const IntSet& b) {
    IntSet r(std::max(a.bound_, b.bound_));
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    r.words_.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.words_[i] = a.words_[i] & b.words_[i];
    r.trim();
    r.refresh_count();
    return r;
  }

  // Set difference a \ b.
  friend IntSet operator-(const IntSet& a, const IntSet& b) {
    IntSet r = a;
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i) r.words_[i] &= ~b.words_[i];
    r.trim();
    r.refresh_count();
    return r;
  }

  // this |= src << shift, for shift >= 0.
  void or_shifted(const IntSet& src, int shift) {
    if (src.empty()) return;
    const int top = src.max() + shift;
    if (top > bound_) bound_ = top;
    const auto need = static_cast<std::size_t>(top / kWordBits + 1);
    if (words_.size() < need) words_.resize(need, 0);
    const std::size_t ws = static_cast<std::size_t>(shift / kWordBits);
    const int bs = shift % kWordBits;
    for (std::size_t i = 0; i < src.words_.size(); ++i) {
      const Word w = src.words_[i];
      if (!w) continue;
      words_[i + ws] |= w << bs;
      if (bs != 0 && i + ws + 1 < words_.size()) words_[i + ws + 1] |= w >> (kWordBits - bs);
    }
    refresh_count();
  }

  // Whether some e in `src` has e + shift in this set.
  bool intersects_shifted(const IntSet& src, int shift) const {
    const std::size_t ws = static_cast<std::size_t>(shift / kWordBits);
    const int bs = shift % kWordBits;
    for (std::size_t i = 0; i < src.words_.size() && i + ws < words_.size(); ++i) {
      const Word w = src.words_[i];
      if (!w) continue;
      if (words_[i + ws] & (w << bs)) return true;
      if (bs != 0 && i + ws + 1 < words_.size() && (words_[i + ws + 1] & (w >> (kWordBits - bs))))
        return true;
    }
    return false;
  }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }
  void refresh_count() {
    count_ = 0;
    for (Word w : words_) count_ += std::popcount(w);
  }

  std::vector<Word> words_;
  int count_ = 0;
  int bound_ = kDefaultBound;
};

/// A finite set of integers of either sign, stored as an IntSet shifted by `offset`.
class SignedSet {
 public:
  SignedSet() = default;
  SignedSet(IntSet shifted, int offset) : body_(std::move(shifted)), offset_(offset) {}

  bool contains(int v) const { return body_.contains(v - offset_); }
  int size() const { return body_.size(); }
  bool empty() const { return body_.empty(); }
  int min() const { return body_.min() + offset_; }
  int max() const { return body_.max() + offset_; }

  std::vector<int> elements() const {
    std::vector<int> out = body_.elements();
    for (int& v : out) v += offset_;
    return out;
  }

  const IntSet& shifted_body() const { return body_; }
  int offset() const { return offset_; }

  bool operator==(const SignedSet& other) const { return elements() == other.elements(); }

 private:
  IntSet body_;
  int offset_ = 0;
};

// ---------------------------------------------------------------------------
// Set algebra

/// {a+b : a in A, b in B}. Shift-or over the smaller operand. Empty if either operand is.
inline IntSet sumset(const IntSet& a, const IntSet& b) {
  const IntSet& small = a.size() <= b.size() ? a : b;
  const IntSet& large = a.size() <= b.size() ? b : a;
  IntSet result(std::max(a.universe_bound(), b.universe_bound()));
  small.for_each([&](int e) { result.or_shifted(large, e); });
  return result;
}

/// {a-b : a in A, b in B}, computed as A + (max(B) - B) shifted down by max(B).
inline SignedSet difference_set(const IntSet& a, const IntSet& b) {
  if (a.empty() || b.empty()) return {};
  const int top = b.max();
  IntSet reflected;
  b.for_each([&](int e) { reflected.insert(top - e); });
  return SignedSet(sumset(a, reflected), -top);
}

inline IntSet positive_part(const SignedSet& d) {
  IntSet out;
  for (int v : d.elements())
    if (v > 0) out.insert(v);
  return out;
}

inline IntSet k_fold_sumset(const IntSet& a, int k) {
  require(k >= 1, "k-fold sumset needs k >= 1");
  IntSet acc = a;
  for (int i = 1; i < k; ++i) acc = sumset(acc, a);
  return acc;
}

/// k . A = {k a : a in A}.
inline IntSet dilate(const IntSet& a, int k) {
  require(k >= 1, "dilation factor must be >= 1");
  IntSet out;
  a.for_each([&](int e) { out.insert(k * e); });
  return out;
}

/// gcd of all pairwise differences, d(A). Undefined for |A| < 2.
inline int difference_gcd(const IntSet& a) {
  require(a.size() >= 2, "d(A) is undefined for sets with fewer than two elements");
  const int lo = a.min();
  int g = 0;
  a.for_each([&](int e) { g = std::gcd(g, e - lo); });
  return g;
}

struct SetStats {
  int min = 0;
  int max = 0;
  int span = 0;                       // max - min + 1
  std::optional<int> difference_gcd;  // absent for singletons
};

inline SetStats stats(const IntSet& a) {
  require(!a.empty(), "stats of empty set");
  SetStats s{a.min(), a.max(), a.max() - a.min() + 1, std::nullopt};
  if (a.size() >= 2) s.difference_gcd = difference_gcd(a);
  return s;
}

inline int span(const IntSet& a) { return a.max() - a.min() + 1; }

/// {a in [1,n] : a mod modulus in residues}.
inline IntSet residue_class_set(int n, int modulus, std::initializer_list<int> residues) {
  require(modulus >= 1, "modulus must be >= 1");
  std::vector<bool> keep(static_cast<std::size_t>(modulus), false);
  for (int r : residues) {
    require(r >= 0 && r < modulus, "residue " + std::to_string(r) + " outside [0, modulus-1]");
    keep[static_cast<std::size_t>(r)] = true;
  }
  IntSet out;
  for (int a = 1; a <= n; ++a)
    if (keep[static_cast<std::size_t>(a % modulus)]) out.insert(a);
  return out;
}

inline IntSet residue_class_set(int n, int modulus, const std::vector<int>& residues) {
  require(modulus >= 1, "modulus must be >= 1");
  std::vector<bool> keep(static_cast<std::size_t>(modulus), false);
  for (int r : residues) {
    require(r >= 0 && r < modulus, "residue " + std::to_string(r) + " outside [0, modulus-1]");
    keep[static_cast<std::size_t>(r)] = true;
  }
  IntSet out;
  for (int a = 1; a <= n; ++a)
    if (keep[static_cast<std::size_t>(a % modulus)]) out.insert(a);
  return out;
}

// F_{1,4}, F_{2,3}, O and E inside [n].
inline IntSet f14(int n) { return residue_class_set(n, 5, {1, 4}); }
inline IntSet f23(int n) { return residue_class_set(n, 5, {2, 3}); }
inline IntSet odds(int n) { return residue_class_set(n, 2, {1}); }
inline IntSet evens(int n) { return residue_class_set(n, 2, {0}); }

// ---------------------------------------------------------------------------
// Text formats: "1,4,6,9" literals and one-integer-per-line files.

namespace detail {
inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline int parse_element(std::string_view tok) {
  tok = trim(tok);
  require(!tok.empty(), "empty element in set literal");
  int v = 0;
  for (char c : tok) {
    require(c >= '0' && c <= '9', "malformed set element '" + std::string(tok) + "'");
    require(v <= (1 << 26), "set element too large: " + std::string(tok));
    v = v * 10 + (c - '0');
  }
  return v;
}
}  // namespace detail

/// Parses a comma-separated strictly ascending list of non-negative integers.
inline IntSet parse_set_literal(std::string_view text) {
  IntSet out;
  text = detail::trim(text);
  if (text.empty()) return out;
  int last = -1;
  while (true) {
    const auto comma = text.find(',');
    const int v = detail::parse_element(text.substr(0, comma));
    require(v > last, "set literal must be strictly ascending");
    out.insert(v);
    last = v;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

inline std::string format_set_literal(const IntSet& s) {
  std::string out;
  s.for_each([&](int e) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  });
  return out;
}

/// One integer per line; '#' starts a comment; blank lines ignored.
inline IntSet parse_set_lines(std::istream& in) {
  IntSet out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = line;
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = detail::trim(v);
    if (v.empty()) continue;
    out.insert(detail::parse_element(v));
  }
  return out;
}

inline IntSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open set file: " + path);
  return parse_set_lines(in);
}

}  // namespace sumfree
