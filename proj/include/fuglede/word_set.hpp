#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "fuglede/errors.hpp"
#include "fuglede/group.hpp"

namespace fuglede {

/// Fixed-capacity bitset over Z_N with N <= 64 * Words.
template <std::size_t Words>
struct WordSet {
  std::array<std::uint64_t, Words> w{};

  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }

  bool any() const {
    for (auto x : w) {
      if (x) return true;
    }
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  /// Index of the lowest set bit; call only when any().
  std::size_t lowest() const {
    for (std::size_t k = 0; k < Words; ++k) {
      if (w[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w[k]));
    }
    return Words * 64;
  }
  bool intersects(const WordSet& o) const {
    for (std::size_t k = 0; k < Words; ++k) {
      if (w[k] & o.w[k]) return true;
    }
    return false;
  }
  /// Every bit of o is set here.
  bool covers(const WordSet& o) const {
    for (std::size_t k = 0; k < Words; ++k) {
      if (o.w[k] & ~w[k]) return false;
    }
    return true;
  }
  WordSet operator&(const WordSet& o) const {
    WordSet r;
    for (std::size_t k = 0; k < Words; ++k) r.w[k] = w[k] & o.w[k];
    return r;
  }
  WordSet operator|(const WordSet& o) const {
    WordSet r;
    for (std::size_t k = 0; k < Words; ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }
  WordSet without(const WordSet& o) const {
    WordSet r;
    for (std::size_t k = 0; k < Words; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  /// Bits strictly above i.
  WordSet above(std::size_t i) const {
    WordSet r = *this;
    for (std::size_t k = 0; k < Words; ++k) {
      const std::size_t lo = k * 64;
      if (lo + 63 <= i) {
        r.w[k] = 0;
      } else if (lo <= i) {
        r.w[k] &= ~std::uint64_t{0} << ((i - lo) + 1);
      }
    }
    return r;
  }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (std::size_t k = 0; k < Words; ++k) {
      std::uint64_t x = w[k];
      while (x) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }
  bool operator==(const WordSet&) const = default;
};

/// Calls f.template operator()<W>() with the smallest supported word count for N.
template <typename F>
decltype(auto) dispatch_words(std::uint64_t n, F&& f) {
  if (n <= 64) return f.template operator()<1>();
  if (n <= 128) return f.template operator()<2>();
  if (n <= 256) return f.template operator()<4>();
  if (n <= 512) return f.template operator()<8>();
  if (n <= 1024) return f.template operator()<16>();
  throw UnsupportedStructureError("search routines support N <= 1024");
}

}  // namespace fuglede
