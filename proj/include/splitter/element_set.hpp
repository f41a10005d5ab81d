#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace splitter {

/// Element labels are small integers in [0, 64). Labels survive minors, so a
/// set of elements of any minor is a mask over the same label space as the
/// matroid it came from.
using ElementId = int;

inline constexpr int kMaxElements = 64;

/// Fixed-width subset of the label space.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<ElementId> ids) {
    for (ElementId e : ids) bits_ |= bit(e);
  }

  static ElementSet of(const std::vector<ElementId>& ids) {
    ElementSet s;
    for (ElementId e : ids) s.insert(e);
    return s;
  }
  /// {0, 1, ..., n-1}
  static constexpr ElementSet range(int n) {
    return ElementSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr ElementSet single(ElementId e) { return ElementSet(bit(e)); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(ElementId e) const { return (bits_ >> e) & 1u; }
  constexpr bool containsAll(ElementSet o) const { return (o.bits_ & ~bits_) == 0; }
  constexpr bool intersects(ElementSet o) const { return (o.bits_ & bits_) != 0; }
  constexpr ElementId first() const { return bits_ ? std::countr_zero(bits_) : -1; }
  constexpr ElementId last() const { return bits_ ? 63 - std::countl_zero(bits_) : -1; }

  constexpr void insert(ElementId e) { bits_ |= bit(e); }
  constexpr void erase(ElementId e) { bits_ &= ~bit(e); }

  constexpr ElementSet with(ElementId e) const { return ElementSet(bits_ | bit(e)); }
  constexpr ElementSet without(ElementId e) const { return ElementSet(bits_ & ~bit(e)); }

  constexpr ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  constexpr ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  constexpr ElementSet operator-(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  constexpr ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
  constexpr ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }
  constexpr ElementSet& operator-=(ElementSet o) { bits_ &= ~o.bits_; return *this; }
  constexpr bool operator==(const ElementSet&) const = default;

  /// Lexicographic order on the sorted member lists.
  friend bool lexLess(ElementSet a, ElementSet b) {
    std::uint64_t x = a.bits_, y = b.bits_;
    while (x && y) {
      int ex = std::countr_zero(x), ey = std::countr_zero(y);
      if (ex != ey) return ex < ey;
      x &= x - 1;
      y &= y - 1;
    }
    return !x && y;
  }

  class iterator {
   public:
    using value_type = ElementId;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t b) : b_(b) {}
    constexpr ElementId operator*() const { return std::countr_zero(b_); }
    constexpr iterator& operator++() { b_ &= b_ - 1; return *this; }
    constexpr iterator operator++(int) { iterator t = *this; ++*this; return t; }
    constexpr bool operator==(const iterator&) const = default;
   private:
    std::uint64_t b_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<ElementId> toVector() const { return {begin(), end()}; }

  std::string toString() const {
    std::string s = "{";
    bool firstItem = true;
    for (ElementId e : *this) {
      if (!firstItem) s += ',';
      s += std::to_string(e);
      firstItem = false;
    }
    return s + "}";
  }

 private:
  static constexpr std::uint64_t bit(ElementId e) { return std::uint64_t{1} << e; }
  std::uint64_t bits_ = 0;
};

struct ElementSetHash {
  std::size_t operator()(ElementSet s) const noexcept {
    std::uint64_t x = s.bits() * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

/// Calls fn(subset) for every k-subset of `from`, in lexicographic order of
/// the sorted member lists. Stops early when fn returns false.
template <typename Fn>
bool forEachSubsetOfSize(ElementSet from, int k, Fn&& fn) {
  std::vector<ElementId> pool = from.toVector();
  int n = static_cast<int>(pool.size());
  if (k < 0 || k > n) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    ElementSet s;
    for (int i : idx) s.insert(pool[i]);
    if (!fn(s)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls fn(subset) for every subset of `from` (Gosper-free submask walk).
template <typename Fn>
void forEachSubset(ElementSet from, Fn&& fn) {
  std::uint64_t m = from.bits();
  std::uint64_t s = 0;
  while (true) {
    fn(ElementSet(s));
    if (s == m) break;
    s = (s - m) & m;
  }
}

}  // namespace splitter
