#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>

#include "rescert/var_registry.hpp"

namespace rescert {

// Exponent vector packed as 16-bit fields, four per word, variable 0 in the
// top bits of word 0. Comparing the words in order is the lex order with
// variable 0 most significant.
struct Monomial {
  static constexpr std::uint32_t kMaxExp = 0xFFFF;
  std::array<std::uint64_t, kMaxVars / 4> w{};

  std::uint32_t get(std::size_t i) const {
    return static_cast<std::uint32_t>((w[i >> 2] >> (48 - 16 * (i & 3))) & 0xFFFF);
  }
  void set(std::size_t i, std::uint32_t v) {
    const unsigned sh = 48 - 16 * (i & 3);
    w[i >> 2] = (w[i >> 2] & ~(0xFFFFULL << sh)) | (static_cast<std::uint64_t>(v & 0xFFFF) << sh);
  }
  bool is_one() const {
    for (auto x : w) {
      if (x) return false;
    }
    return true;
  }
  // Caller guarantees no field overflows.
  Monomial operator+(const Monomial& o) const {
    Monomial r;
    for (std::size_t k = 0; k < w.size(); ++k) r.w[k] = w[k] + o.w[k];
    return r;
  }
  // Caller guarantees divides(o, *this).
  Monomial operator-(const Monomial& o) const {
    Monomial r;
    for (std::size_t k = 0; k < w.size(); ++k) r.w[k] = w[k] - o.w[k];
    return r;
  }
  std::uint32_t total_degree() const {
    std::uint32_t t = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) t += get(i);
    return t;
  }
  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

// True iff d divides m.
inline bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t k = 0; k < d.w.size(); ++k) {
    const std::uint64_t a = m.w[k], b = d.w[k];
    if (a == b) continue;
    for (unsigned sh = 0; sh < 64; sh += 16) {
      if (((a >> sh) & 0xFFFF) < ((b >> sh) & 0xFFFF)) return false;
    }
  }
  return true;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (auto x : m.w) {
      h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

}  // namespace rescert
