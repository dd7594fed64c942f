#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rescert/error.hpp"

namespace rescert {

bool is_prime_u64(std::uint64_t n);

// Random prime with exactly `bits` bits, 2 <= bits <= 63.
std::uint64_t random_prime(int bits, std::mt19937_64& rng);

// Sum of products with a single final reduction.
struct WideAccumulator {
  unsigned __int128 acc = 0;
  std::uint64_t carry = 0;
  void add(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
    acc += t;
    carry += acc < t;
  }
};

// Residues in [0, p), p < 2^63. Products are reduced by Barrett reduction
// with a precomputed reciprocal.
class PrimeField {
 public:
  using Elem = std::uint64_t;

  PrimeField() { set_reciprocal(); }
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  Elem reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  Elem reduce_u(std::uint64_t v) const { return v % p_; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
    const auto hi = static_cast<std::uint64_t>(t >> (shift_ - 1));
    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(hi) * mu_) >> (shift_ + 1));
    std::uint64_t r = static_cast<std::uint64_t>(t) - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }
  // Any 128-bit value; the fast path covers sums of a few products.
  Elem reduce_wide(unsigned __int128 t) const {
    if ((t >> (shift_ + 63)) == 0 && (t >> (2 * shift_ + 3)) == 0) {
      const auto hi = static_cast<std::uint64_t>(t >> (shift_ - 1));
      const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(hi) * mu_) >> (shift_ + 1));
      unsigned __int128 r = t - static_cast<unsigned __int128>(q) * p_;
      while (r >= p_) r -= p_;
      return static_cast<Elem>(r);
    }
    return static_cast<Elem>(t % p_);
  }
  // a*b + c*d
  Elem mul_add(Elem a, Elem b, Elem c, Elem d) const {
    return reduce_wide(static_cast<unsigned __int128>(a) * b + static_cast<unsigned __int128>(c) * d);
  }
  // carry * 2^128 + t
  Elem reduce_wide(std::uint64_t carry, unsigned __int128 t) const {
    return carry == 0 ? reduce_wide(t) : add(mul(carry % p_, r128_), reduce_wide(t));
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  Elem inv(Elem a) const;  // DivisionByZero on 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // Euler's criterion. DomainError on a == 0.
  bool is_quadratic_residue(Elem a) const;

  // Signed representative in (-p/2, p/2].
  std::int64_t centered(Elem a) const {
    return a > p_ / 2 ? -static_cast<std::int64_t>(p_ - a) : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  void set_reciprocal() {
    shift_ = 64 - __builtin_clzll(p_);
    mu_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << (2 * shift_)) / p_);
    const auto r64 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) % p_);
    r128_ = mul(r64, r64);
  }

  std::uint64_t p_ = 2;
  std::uint64_t mu_ = 0;  // floor(2^(2*shift) / p)
  int shift_ = 0;         // bit length of p
  std::uint64_t r128_ = 0;  // 2^128 mod p
};

// NotPrime if p is not prime (p < 2 included); DomainError if p >= 2^63.
PrimeField make_prime_field(std::int64_t p);
PrimeField make_prime_field_u(std::uint64_t p);

}  // namespace rescert
