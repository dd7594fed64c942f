#include "rescert/rings.hpp"

namespace rescert {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ModRing::Elem ModRing::from_integer(const Integer& z) const {
  Integer r = z % Integer(static_cast<unsigned long>(field.modulus()));
  if (r < 0) r += Integer(static_cast<unsigned long>(field.modulus()));
  return static_cast<Elem>(r.get_ui());
}

ModRing::Elem ModRing::from_rational(const Rational& q) const {
  Elem den = from_integer(q.get_den());
  if (den == 0) {
    throw Error(ErrorKind::BadReduction,
                "denominator " + q.get_den().get_str() + " divisible by " + std::to_string(field.modulus()));
  }
  return field.div(from_integer(q.get_num()), den);
}

}  // namespace rescert
