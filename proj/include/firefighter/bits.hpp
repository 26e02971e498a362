#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace firefighter {

/// Fixed-capacity vertex set over W 64-bit words. Used as search state by
/// the solvers, where states are hashed and copied constantly.
template <std::size_t W> struct FixedBits {
  static constexpr std::size_t kCapacity = 64 * W;

  std::array<std::uint64_t, W> words{};

  void set(std::size_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1u; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }
  bool none() const {
    for (auto w : words) {
      if (w != 0) {
        return false;
      }
    }
    return true;
  }

  template <typename F> void for_each(F &&f) const {
    for (std::size_t k = 0; k < W; ++k) {
      for (std::uint64_t w = words[k]; w != 0; w &= w - 1) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
  }

  FixedBits &operator|=(const FixedBits &o) {
    for (std::size_t k = 0; k < W; ++k) {
      words[k] |= o.words[k];
    }
    return *this;
  }
  FixedBits &operator&=(const FixedBits &o) {
    for (std::size_t k = 0; k < W; ++k) {
      words[k] &= o.words[k];
    }
    return *this;
  }
  friend FixedBits operator|(FixedBits a, const FixedBits &b) {
    return a |= b;
  }
  friend FixedBits operator&(FixedBits a, const FixedBits &b) {
    return a &= b;
  }
  /// a minus b
  friend FixedBits operator-(FixedBits a, const FixedBits &b) {
    for (std::size_t k = 0; k < W; ++k) {
      a.words[k] &= ~b.words[k];
    }
    return a;
  }
  friend bool operator==(const FixedBits &, const FixedBits &) = default;

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

} // namespace firefighter
