#include <gtest/gtest.h>

#include "rescert/parser.hpp"

using namespace rescert;

namespace {

RegistryPtr xy() { return VarRegistry::make({"x", "y"}); }

}  // namespace

TEST(PrimeField, Construction) {
  EXPECT_EQ(make_prime_field(7).modulus(), 7u);
  EXPECT_EQ(make_prime_field(10007).modulus(), 10007u);
  try {
    make_prime_field(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
}

TEST(PrimeField, TrialDivisionOracle) {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime_u64(n), trial(n)) << n;
}

TEST(PrimeField, Inverse) {
  auto F = make_prime_field(7);
  EXPECT_EQ(F.inv(2), 4u);
  EXPECT_EQ(F.inv(1), 1u);
  EXPECT_EQ(make_prime_field(10007).inv(1), 1u);
  try {
    F.inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZero);
  }
}

TEST(PrimeField, QuadraticResidue) {
  auto F17 = make_prime_field(17);
  EXPECT_FALSE(F17.is_quadratic_residue(F17.reduce(-3)));
  auto F7 = make_prime_field(7);
  EXPECT_TRUE(F7.is_quadratic_residue(2));
  EXPECT_TRUE(F7.is_quadratic_residue(1));
  EXPECT_THROW(F7.is_quadratic_residue(0), Error);
}

TEST(PrimeField, EulerMatchesSquareEnumeration) {
  for (std::int64_t p : {3, 5, 7, 11, 13, 17, 29, 41, 53, 101, 151}) {
    auto F = make_prime_field(p);
    std::vector<bool> sq(p, false);
    for (std::int64_t x = 1; x < p; ++x) sq[(x * x) % p] = true;
    for (std::int64_t a = 1; a < p; ++a) EXPECT_EQ(F.is_quadratic_residue(a), sq[a]) << p << " " << a;
  }
}

TEST(PrimeField, MulMatchesInt128) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    PrimeField F(random_prime(63 - (t % 30), rng));
    for (int i = 0; i < 2000; ++i) {
      std::uint64_t a = rng() % F.modulus(), b = rng() % F.modulus();
      auto want = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % F.modulus());
      ASSERT_EQ(F.mul(a, b), want);
    }
  }
}

TEST(Poly, ArithmeticExamples) {
  auto r = xy();
  EXPECT_EQ(parse_qpoly("(x*y - 1) + 1", r), parse_qpoly("x*y", r));
  EXPECT_EQ(parse_qpoly("(x + y)*(x - y)", r), parse_qpoly("x^2 - y^2", r));
  EXPECT_EQ(parse_qpoly("(x+y)^2", r).to_string(), "x^2 + 2*x*y + y^2");
  EXPECT_EQ(parse_qpoly("12757/10872*x - 2/151", r).to_string(), "12757/10872*x - 2/151");
  EXPECT_EQ(parse_qpoly("-x", r).to_string(), "-x");
  EXPECT_TRUE(parse_qpoly("x - x", r).is_zero());
}

TEST(Poly, RegistryMismatch) {
  auto a = parse_qpoly("x", xy());
  auto b = parse_qpoly("z", VarRegistry::make({"z"}));
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RegistryMismatch);
  }
}

TEST(Poly, Substitute) {
  auto r = xy();
  EXPECT_TRUE(parse_qpoly("x - y", r).substitute("x", parse_qpoly("y", r)).is_zero());
  EXPECT_EQ(parse_qpoly("x*y - 1", r).substitute("x", parse_qpoly("0", r)), parse_qpoly("-1", r));
  EXPECT_THROW(parse_qpoly("x", r).substitute("w", parse_qpoly("0", r)), Error);
}

TEST(Poly, DegreeAndCoefficient) {
  auto r = xy();
  EXPECT_EQ(parse_qpoly("x^2 + y^2 - 4", r).degree_in("x"), 2);
  EXPECT_EQ(parse_qpoly("0", r).degree_in("x"), NEG_INF);
  EXPECT_EQ(parse_qpoly("x*y - 1", r).coefficient_in("x", 1), parse_qpoly("y", r));
  EXPECT_TRUE(parse_qpoly("x + 1", r).coefficient_in("x", 2).is_zero());
  try {
    parse_qpoly("x", r).degree_in("q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownVariable);
  }
}

TEST(Poly, ExactDivide) {
  auto r = xy();
  EXPECT_EQ(exact_divide(parse_qpoly("x^2 - y^2", r), parse_qpoly("x - y", r)), parse_qpoly("x + y", r));
  try {
    exact_divide(parse_qpoly("x*y - 1", r), parse_qpoly("x", r));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDivisible);
  }
  EXPECT_THROW(exact_divide(parse_qpoly("x", r), parse_qpoly("0", r)), Error);
}

TEST(Poly, Evaluate) {
  auto r = VarRegistry::make({"y"});
  auto F101 = make_prime_field(101);
  EXPECT_EQ(evaluate(parse_qpoly("y^4 - 4*y^2 + 1", r), {0}, F101), 1u);
  auto r2 = xy();
  EXPECT_EQ(evaluate(parse_qpoly("x*y - 1", r2), {2, 3}, make_prime_field(7)), 5u);
}

TEST(Poly, BadReduction) {
  auto r = VarRegistry::make({"x"});
  auto q = parse_qpoly("x^5 - 12757/10872*x^4 + 1123/3624*x^3 + 289/1359*x^2 - 49/453*x - 2/151", r);
  try {
    evaluate(q, {1}, make_prime_field(151));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadReduction);
  }
  EXPECT_NO_THROW(evaluate(q, {1}, make_prime_field(157)));
}

TEST(Parser, Errors) {
  auto r = xy();
  auto kind = [&](const char* s) {
    try {
      parse_qpoly(s, r);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind(""), ErrorKind::ParseError);
  EXPECT_EQ(kind("x +"), ErrorKind::ParseError);
  EXPECT_EQ(kind("(x"), ErrorKind::ParseError);
  EXPECT_EQ(kind("x/y"), ErrorKind::ParseError);
  EXPECT_EQ(kind("g9 + 1"), ErrorKind::UndefinedName);
  EXPECT_EQ(kind("1/0"), ErrorKind::ParseError);
}

TEST(Parser, PowerForm) {
  auto p = split_power_form("(x2-1)^2");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->base, "(x2-1)");
  EXPECT_EQ(p->exponent, 2u);
  EXPECT_TRUE(split_power_form("b2^89"));
  EXPECT_FALSE(split_power_form("(x-1)*(y-1)^2"));
  EXPECT_FALSE(split_power_form("x-1"));
  EXPECT_FALSE(split_power_form("2*x^2"));
}

TEST(PrimeField, ReduceWideMatchesInt128) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    PrimeField F(random_prime(2 + (t * 61) / 39, rng));
    const std::uint64_t p = F.modulus();
    for (int i = 0; i < 3000; ++i) {
      unsigned __int128 x = (static_cast<unsigned __int128>(rng()) << 64) | rng();
      if (i % 3 == 0) x = static_cast<unsigned __int128>(rng() % p) * (rng() % p);
      if (i % 3 == 1) x >>= (rng() % 128);
      ASSERT_EQ(F.reduce_wide(x), static_cast<std::uint64_t>(x % p));
      WideAccumulator acc;
      unsigned __int128 want = 0;
      for (int k = 0; k < 20; ++k) {
        const std::uint64_t a = rng() % p, b = rng() % p;
        acc.add(a, b);
        want = (want + static_cast<unsigned __int128>(a) * b % p) % p;
      }
      ASSERT_EQ(F.reduce_wide(acc.carry, acc.acc), static_cast<std::uint64_t>(want));
    }
    for (int i = 0; i < 3000; ++i) {
      const std::uint64_t a = rng() % p, b = rng() % p;
      ASSERT_EQ(F.mul(a, b), static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p));
    }
  }
}

TEST(PrimeField, MulAddEdges) {
  std::mt19937_64 rng(13);
  for (int bits : {2, 3, 31, 32, 33, 61, 62, 63}) {
    for (int t = 0; t < 5; ++t) {
      PrimeField F(random_prime(bits, rng));
      const std::uint64_t p = F.modulus();
      for (int i = 0; i < 2000; ++i) {
        std::uint64_t a = rng() % p, b = rng() % p, c = rng() % p, d = rng() % p;
        if (i < 4) a = b = c = d = p - 1 - i % 2;
        const unsigned __int128 want =
            (static_cast<unsigned __int128>(a) * b % p + static_cast<unsigned __int128>(c) * d % p) % p;
        ASSERT_EQ(F.mul_add(a, b, c, d), static_cast<std::uint64_t>(want));
      }
    }
  }
}
