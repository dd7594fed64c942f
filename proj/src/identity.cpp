#include "rescert/identity.hpp"

#include <cmath>
#include <sstream>

namespace rescert {

std::optional<Rational> as_nonzero_constant(const QPoly& q) {
  if (q.is_zero() || !q.is_constant()) return std::nullopt;
  return q.constant_value();
}

std::optional<Rational> rational_reconstruct(std::uint64_t a, std::uint64_t p) {
  Integer P(static_cast<unsigned long>(p));
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(P / 2).get_mpz_t());
  Integer r0 = P, r1 = Integer(static_cast<unsigned long>(a % p));
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out = make_rational(r1, t1);
  return out;
}

QPoly factor_product(const std::vector<Factor>& factors, const QPoly& like) {
  QPoly prod = like.constant_like(Rational(1));
  for (const auto& fac : factors) {
    if (fac.poly.is_zero()) throw Error(ErrorKind::DomainError, "zero factor in identity");
    prod = prod * fac.poly.pow(fac.multiplicity);
  }
  return prod;
}

namespace {

std::string short_poly(const QPoly& p) {
  std::string s = p.to_string();
  if (s.size() > 200) s = s.substr(0, 200) + " ... (" + std::to_string(p.size()) + " terms)";
  return s;
}

}  // namespace

VerifiedClaim verify_identity_exact(const IdentityClaim& claim, std::size_t term_budget) {
  QPoly res = resultant(claim.f, claim.g, claim.var, DetMethod::Auto, term_budget);
  if (term_budget && res.size() > term_budget) {
    throw Error(ErrorKind::BudgetExceeded, "resultant has " + std::to_string(res.size()) + " terms");
  }
  QPoly q = res;
  for (const auto& fac : claim.factors) {
    if (fac.poly.is_zero()) throw Error(ErrorKind::DomainError, "zero factor in identity");
    for (unsigned k = 0; k < fac.multiplicity; ++k) {
      QPoly next;
      if (!try_exact_divide(q, fac.poly, next)) {
        throw Error(ErrorKind::IdentityFails, "resultant not divisible by " + short_poly(fac.poly) +
                                                  (fac.multiplicity > 1 ? "^" + std::to_string(k + 1) : ""));
      }
      q = std::move(next);
    }
  }
  VerifiedClaim out;
  out.mode = VerifyMode::Exact;
  if (claim.residual) {
    QPoly u;
    if (!try_exact_divide(q, *claim.residual, u) || !as_nonzero_constant(u)) {
      throw Error(ErrorKind::IdentityFails, "quotient differs from the declared residual: " + short_poly(q));
    }
    out.unit = *as_nonzero_constant(u);
    out.residual = claim.residual;
    return out;
  }
  if (auto u = as_nonzero_constant(q)) {
    out.unit = *u;
    return out;
  }
  if (claim.allow_residual && !q.is_zero()) {
    out.unit = 1;
    out.residual = q;
    return out;
  }
  throw Error(ErrorKind::IdentityFails, "quotient is not a nonzero constant: " + short_poly(q));
}

VerifiedClaim verify_identity_modular(const IdentityClaim& claim, unsigned trials, int prime_bits,
                                      std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::DomainError, "trials must be >= 1");
  if (prime_bits < 32 || prime_bits > 63) throw Error(ErrorKind::DomainError, "prime_bits must be in [32, 63]");
  claim.f.check_compatible(claim.g);
  const std::size_t nv = claim.f.registry()->size();
  std::mt19937_64 rng(seed);

  // A prime for which every coefficient reduces.
  ModRing R;
  ModPoly f, g, rhs, resid;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100) throw Error(ErrorKind::BadPrime, "no usable prime found");
    R = ModRing(PrimeField(random_prime(prime_bits, rng)));
    try {
      f = reduce_mod(claim.f, R);
      g = reduce_mod(claim.g, R);
      rhs = reduce_mod(factor_product(claim.factors, claim.f), R);
      if (claim.residual) resid = reduce_mod(*claim.residual, R);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BadReduction) throw;
    }
  }
  const PrimeField& F = R.field;
  const int m = f.degree_in(claim.var), n = g.degree_in(claim.var);
  if (m <= 0 && n <= 0) throw Error(ErrorKind::BothConstant, "both polynomials are constant in the variable");
  if (m == NEG_INF || n == NEG_INF) throw Error(ErrorKind::DomainError, "zero polynomial in identity");
  const auto fc = f.univariate_coeffs(claim.var), gc = g.univariate_coeffs(claim.var);
  if (fc.back().is_zero() || gc.back().is_zero()) {
    throw Error(ErrorKind::DegeneratePrime, "leading coefficient vanishes mod p");
  }

  // Schwartz-Zippel: the difference resultant - unit*rhs has total degree at
  // most max(deg bound, deg rhs); the leading coefficients add theirs.
  const int dres = resultant_degree_bound(claim.f, claim.g, claim.var, -1);
  int drhs = rhs.total_degree();
  if (claim.residual) drhs += resid.total_degree();
  const double D = std::max(dres, drhs) + fc.back().total_degree() + gc.back().total_degree();

  VerifiedClaim out;
  out.mode = VerifyMode::Modular;
  out.trials = trials;
  out.prime = F.modulus();
  out.seed = seed;
  out.sz_bound_per_trial = D / static_cast<double>(F.modulus());

  std::optional<std::uint64_t> unit;
  std::vector<std::uint64_t> point(nv, 0);
  for (unsigned t = 0; t < trials; ++t) {
    unsigned tries = 0;
    for (;;) {
      for (auto& v : point) v = rng() % F.modulus();
      point[claim.var] = 0;
      if (evaluate(fc.back(), point) != 0 && evaluate(gc.back(), point) != 0) break;
      ++out.resamples;
      if (++tries > 100) throw Error(ErrorKind::DegeneratePrime, "leading coefficients keep vanishing");
    }
    std::vector<std::uint64_t> a(fc.size()), b(gc.size());
    for (std::size_t i = 0; i < fc.size(); ++i) a[i] = evaluate(fc[i], point);
    for (std::size_t i = 0; i < gc.size(); ++i) b[i] = evaluate(gc[i], point);
    const std::uint64_t lhs = univariate_resultant(a, b, F);
    std::uint64_t r = evaluate(rhs, point);
    if (claim.residual) r = F.mul(r, evaluate(resid, point));
    auto witness = [&] {
      std::ostringstream os;
      os << "trial " << t << " at ";
      for (std::size_t i = 0; i < nv; ++i) {
        if (i == claim.var) continue;
        os << claim.f.registry()->name(i) << "=" << F.centered(point[i]) << " ";
      }
      os << "resultant=" << F.centered(lhs) << " rhs=" << F.centered(r) << " (mod " << F.modulus() << ")";
      return os.str();
    };
    if (r == 0) {
      if (lhs != 0) throw Error(ErrorKind::IdentityFails, witness());
      continue;
    }
    const std::uint64_t u = F.div(lhs, r);
    if (u == 0) throw Error(ErrorKind::IdentityFails, "unit vanishes: " + witness());
    if (unit && *unit != u) throw Error(ErrorKind::IdentityFails, "unit changes between trials: " + witness());
    unit = u;
  }
  if (!unit) throw Error(ErrorKind::IdentityFails, "no trial determined the unit");
  auto q = rational_reconstruct(*unit, F.modulus());
  if (!q) throw Error(ErrorKind::IdentityFails, "unit has no small rational preimage");
  out.unit = *q;
  out.residual = claim.residual;
  return out;
}

}  // namespace rescert
