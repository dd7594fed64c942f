#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rescert/resultant.hpp"

namespace rescert {

struct Factor {
  QPoly poly;
  unsigned multiplicity = 1;
};

// Claim: resultant(f, g, var) = unit * prod(factors) [* residual].
// With no residual declared, exact mode returns a non-constant quotient as
// the extracted residual when allow_residual is set.
struct IdentityClaim {
  QPoly f, g;
  std::size_t var = 0;
  std::vector<Factor> factors;
  std::optional<QPoly> residual;
  bool allow_residual = false;
};

enum class VerifyMode { Exact, Modular };

struct VerifiedClaim {
  VerifyMode mode = VerifyMode::Exact;
  Rational unit;
  std::optional<QPoly> residual;
  // modular only
  unsigned trials = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  double sz_bound_per_trial = 0.0;
  unsigned resamples = 0;
};

// Returns the nonzero constant u with q == u, or nullopt.
std::optional<Rational> as_nonzero_constant(const QPoly& q);

// Smallest |n|, d with n/d == a (mod p), |n|, d <= sqrt(p/2).
std::optional<Rational> rational_reconstruct(std::uint64_t a, std::uint64_t p);

QPoly factor_product(const std::vector<Factor>& factors, const QPoly& like);

// IdentityFails, BudgetExceeded.
VerifiedClaim verify_identity_exact(const IdentityClaim& claim, std::size_t term_budget = 5000000);

// IdentityFails with a witness point, DegeneratePrime, BadPrime.
VerifiedClaim verify_identity_modular(const IdentityClaim& claim, unsigned trials, int prime_bits,
                                      std::uint64_t seed);

}  // namespace rescert
