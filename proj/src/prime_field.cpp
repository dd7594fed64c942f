#include "rescert/prime_field.hpp"

namespace rescert {

namespace {

std::uint64_t mulmod128(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod128(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod128(r, a, m);
    a = mulmod128(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod128(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime(int bits, std::mt19937_64& rng) {
  if (bits < 2 || bits > 63) throw Error(ErrorKind::DomainError, "prime bit size must be in [2, 63]");
  const std::uint64_t lo = 1ULL << (bits - 1);
  const std::uint64_t span = lo;
  for (;;) {
    std::uint64_t c = lo + (rng() % span);
    if (bits > 2) c |= 1;
    if (is_prime_u64(c)) return c;
  }
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (1ULL << 63)) throw Error(ErrorKind::DomainError, "modulus must be below 2^63");
  if (!is_prime_u64(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  set_reciprocal();
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p_));
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(t);
}

bool PrimeField::is_quadratic_residue(Elem a) const {
  a %= p_;
  if (a == 0) throw Error(ErrorKind::DomainError, "quadratic residue status of 0 is excluded");
  if (p_ == 2) return true;
  return pow(a, (p_ - 1) / 2) == 1;
}

PrimeField make_prime_field(std::int64_t p) {
  if (p < 2) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  return PrimeField(static_cast<std::uint64_t>(p));
}

PrimeField make_prime_field_u(std::uint64_t p) { return PrimeField(p); }

}  // namespace rescert
