#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "rescert/error.hpp"
#include "rescert/prime_field.hpp"

namespace rescert {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical num/den; DivisionByZero when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

// Coefficient domain Q.
struct RationalRing {
  using Elem = Rational;

  bool operator==(const RationalRing&) const { return true; }
  std::string name() const { return "Q"; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_rational(const Rational& q) const { return q; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 in Q");
    return Elem(1) / a;
  }
  Elem div(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) throw Error(ErrorKind::DivisionByZero, "division by 0 in Q");
    return a / b;
  }
  void add_to(Elem& acc, const Elem& a) const { acc += a; }
  void sub_mul_to(Elem& acc, const Elem& a, const Elem& b) const { acc -= a * b; }
  void add_mul_to(Elem& acc, const Elem& a, const Elem& b) const { acc += a * b; }
  std::string str(const Elem& a) const { return a.get_str(); }
  bool is_negative(const Elem& a) const { return sgn(a) < 0; }
};

// Coefficient domain F_p.
struct ModRing {
  using Elem = std::uint64_t;
  PrimeField field;

  ModRing() = default;
  explicit ModRing(PrimeField f) : field(f) {}

  bool operator==(const ModRing& o) const { return field == o.field; }
  std::string name() const { return "F_" + std::to_string(field.modulus()); }
  std::uint64_t modulus() const { return field.modulus(); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const { return field.reduce(v); }
  // BadReduction when p divides the denominator.
  Elem from_rational(const Rational& q) const;
  Elem from_integer(const Integer& z) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  Elem add(Elem a, Elem b) const { return field.add(a, b); }
  Elem sub(Elem a, Elem b) const { return field.sub(a, b); }
  Elem mul(Elem a, Elem b) const { return field.mul(a, b); }
  Elem neg(Elem a) const { return field.neg(a); }
  Elem inv(Elem a) const { return field.inv(a); }
  Elem div(Elem a, Elem b) const { return field.div(a, b); }
  void add_to(Elem& acc, Elem a) const { acc = field.add(acc, a); }
  void sub_mul_to(Elem& acc, Elem a, Elem b) const { acc = field.sub(acc, field.mul(a, b)); }
  void add_mul_to(Elem& acc, Elem a, Elem b) const { acc = field.add(acc, field.mul(a, b)); }
  std::string str(Elem a) const { return std::to_string(a); }
  bool is_negative(Elem) const { return false; }
};

}  // namespace rescert
