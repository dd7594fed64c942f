#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rescert/poly.hpp"

namespace rescert {

template <class Ring>
struct SylvesterMatrix {
  using Poly = MultiPoly<Ring>;
  std::size_t dim = 0;
  std::vector<std::vector<Poly>> a;  // a[row][col]
  Poly f, g;
  std::size_t var = 0;
};

// Column j < deg g holds the coefficients of f, leading coefficient at row j;
// the remaining deg f columns hold those of g. For f = xy-1, g = x^2+y^2-4
// this gives [[y,0,1],[-1,y,0],[0,-1,y^2-4]].
template <class Ring>
SylvesterMatrix<Ring> sylvester(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, std::size_t var) {
  f.check_compatible(g);
  const int m = f.degree_in(var), n = g.degree_in(var);
  if (m <= 0 && n <= 0) throw Error(ErrorKind::BothConstant, "both polynomials are constant in the variable");
  if (m == NEG_INF || n == NEG_INF) throw Error(ErrorKind::DomainError, "Sylvester matrix of the zero polynomial");
  SylvesterMatrix<Ring> s;
  s.f = f;
  s.g = g;
  s.var = var;
  s.dim = static_cast<std::size_t>(m + n);
  const auto fc = f.univariate_coeffs(var), gc = g.univariate_coeffs(var);
  s.a.assign(s.dim, std::vector<MultiPoly<Ring>>(s.dim, f.zero_like()));
  for (int j = 0; j < n; ++j) {
    for (int e = 0; e <= m; ++e) s.a[j + (m - e)][j] = fc[e];
  }
  for (int j = 0; j < m; ++j) {
    for (int e = 0; e <= n; ++e) s.a[j + (n - e)][n + j] = gc[e];
  }
  return s;
}

// Fraction-free elimination; every division is exact.
template <class Ring>
MultiPoly<Ring> det_bareiss(std::vector<std::vector<MultiPoly<Ring>>> a, std::size_t term_budget = 0) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorKind::DomainError, "empty matrix");
  const auto& proto = a[0][0];
  MultiPoly<Ring> prev = proto.constant_like(proto.ring().one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (!a[i][k].is_zero() && (best == n || a[i][k].size() < a[best][k].size())) best = i;
    }
    if (best == n) return proto.zero_like();
    if (best != k) {
      std::swap(a[best], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        auto t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = exact_divide(t, prev);
        if (term_budget && a[i][j].size() > term_budget) {
          throw Error(ErrorKind::BudgetExceeded, "Bareiss entry exceeds " + std::to_string(term_budget) + " terms");
        }
      }
      a[i][k] = proto.zero_like();
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

// Laplace expansion along the first row (intended for dim <= 4).
template <class Ring>
MultiPoly<Ring> det_cofactor(const std::vector<std::vector<MultiPoly<Ring>>>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorKind::DomainError, "empty matrix");
  if (n == 1) return a[0][0];
  auto acc = a[0][0].zero_like();
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<MultiPoly<Ring>>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t cc = 0; cc < n; ++cc) {
        if (cc != c) minor[r - 1].push_back(a[r][cc]);
      }
    }
    auto term = a[0][c] * det_cofactor(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

enum class DetMethod { Auto, Bareiss, Cofactor };

// Upper bound on deg_v of the resultant: the best assignment of Sylvester
// entries weighted by their deg_v (or total degree when var_for_bound < 0).
template <class Ring>
int resultant_degree_bound(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, std::size_t var, int var_for_bound);

// Max-weight perfect matching value; entries < -1e8 are forbidden.
// Returns NEG_INF if every permutation hits a forbidden entry.
long long max_weight_assignment(const std::vector<std::vector<long long>>& w);

// Resultant over the polynomial ring via the Sylvester determinant.
// Zero input against a non-constant polynomial gives 0.
template <class Ring>
MultiPoly<Ring> resultant(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, std::size_t var,
                          DetMethod method = DetMethod::Auto, std::size_t term_budget = 0) {
  f.check_compatible(g);
  const int m = f.degree_in(var), n = g.degree_in(var);
  if (m <= 0 && n <= 0) throw Error(ErrorKind::BothConstant, "both polynomials are constant in the variable");
  if (m == NEG_INF || n == NEG_INF) return f.zero_like();
  if (m == 0) return f.pow(static_cast<unsigned>(n));
  if (n == 0) return g.pow(static_cast<unsigned>(m));
  auto s = sylvester(f, g, var);
  if (method == DetMethod::Cofactor) return det_cofactor(s.a);
  return det_bareiss(std::move(s.a), term_budget);
}

// Univariate resultant over F_p from dense coefficient vectors (index =
// degree, leading entry nonzero). Returned as num/den to let callers batch
// the single inversion.
struct ModFraction {
  std::uint64_t num;
  std::uint64_t den;
};
ModFraction univariate_resultant_frac(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                      const PrimeField& F);
std::uint64_t univariate_resultant(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                   const PrimeField& F);

// Resultant over F_p by evaluation at random points and dense interpolation,
// one variable at a time, using assignment degree bounds. Points where a
// leading coefficient in `var` vanishes are skipped.
ModPoly resultant_modular(const ModPoly& f, const ModPoly& g, std::size_t var, std::mt19937_64& rng);

// Definitions of the degree bound template.
template <class Ring>
int resultant_degree_bound(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, std::size_t var, int var_for_bound) {
  const int m = f.degree_in(var), n = g.degree_in(var);
  if (m == NEG_INF || n == NEG_INF) return NEG_INF;
  const auto fc = f.univariate_coeffs(var), gc = g.univariate_coeffs(var);
  auto weight = [&](const MultiPoly<Ring>& p) -> long long {
    if (p.is_zero()) return -1000000000LL;
    return var_for_bound < 0 ? p.total_degree() : p.degree_in(static_cast<std::size_t>(var_for_bound));
  };
  if (m == 0 && n == 0) return 0;
  if (m == 0) return n * static_cast<int>(weight(fc[0]));
  if (n == 0) return m * static_cast<int>(weight(gc[0]));
  const std::size_t N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<long long>> w(N, std::vector<long long>(N, -1000000000LL));
  for (int j = 0; j < n; ++j) {
    for (int e = 0; e <= m; ++e) w[j + (m - e)][j] = weight(fc[e]);
  }
  for (int j = 0; j < m; ++j) {
    for (int e = 0; e <= n; ++e) w[j + (n - e)][n + j] = weight(gc[e]);
  }
  long long best = max_weight_assignment(w);
  if (best == NEG_INF) return NEG_INF;
  return static_cast<int>(best);
}

}  // namespace rescert
