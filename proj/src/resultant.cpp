#include "rescert/resultant.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <unordered_set>
#include <unordered_map>

namespace rescert {

long long max_weight_assignment(const std::vector<std::vector<long long>>& w) {
  // Hungarian algorithm (potentials form) on cost = -weight, 1-indexed.
  const std::size_t n = w.size();
  const long long INF = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), INF);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      long long delta = INF;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  long long total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const long long x = w[p[j] - 1][j - 1];
    if (x < -100000000LL) return NEG_INF;
    total += x;
  }
  return total;
}

namespace {

void strip(std::vector<std::uint64_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

}  // namespace

namespace {

// Consumes a and b.
ModFraction resultant_frac_inplace(std::vector<std::uint64_t>& a, std::vector<std::uint64_t>& b,
                                   const PrimeField& F) {
  strip(a);
  strip(b);
  if (a.empty() || b.empty()) {
    if ((a.size() <= 1) && (b.size() <= 1)) throw Error(ErrorKind::BothConstant, "both polynomials are constant");
    return {0, 1};
  }
  std::uint64_t num = 1, den = 1;
  for (;;) {
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    if (n == 0) return {F.mul(num, F.pow(b[0], m)), den};
    if (m == 0) return {F.mul(num, F.pow(a[0], n)), den};
    if (m < n) {
      if ((m * n) & 1) num = F.neg(num);
      std::swap(a, b);
      continue;
    }
    // Pseudo-remainder: lc(b)^e * a = q*b + r.
    const std::uint64_t lb = b[n];
    std::size_t e = 0;
    while (a.size() >= b.size()) {
      const std::size_t shift = a.size() - b.size();
      const std::uint64_t la = a.back();
      for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] = F.mul(a[i], lb);
      for (std::size_t i = 0; i < n; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(la, b[i]));
      a.pop_back();
      ++e;
      strip(a);
    }
    if (a.empty()) return {0, 1};
    const std::size_t k = a.size() - 1;
    // Res(A,B) = (-1)^{mn} Res(B,A) and Res(B, lb^e A) = lb^{m-k} Res(B, r).
    if ((m * n) & 1) num = F.neg(num);
    num = F.mul(num, F.pow(lb, m - k));
    den = F.mul(den, F.pow(lb, e * n));
    std::swap(a, b);
  }
}

// Many resultants with the same degree shape, run in lockstep over the
// points so the inner loops are independent. a[e][i] is coefficient e of
// point i; top rows are nonzero. Points whose remainder sequence leaves the
// generic shape are redone one at a time.
void batch_resultant_frac(const std::vector<std::vector<std::uint64_t>>& A0,
                          const std::vector<std::vector<std::uint64_t>>& B0, std::size_t cnt, const PrimeField& F,
                          std::vector<std::uint64_t>& num, std::vector<std::uint64_t>& den) {
  auto a = A0, b = B0;
  std::size_t da = a.size() - 1, db = b.size() - 1;
  num.assign(cnt, 1);
  den.assign(cnt, 1);
  std::vector<char> irregular(cnt, 0);
  std::vector<std::uint64_t> lb, nla(cnt);
  for (;;) {
    if (db == 0) {
      for (std::size_t i = 0; i < cnt; ++i) num[i] = F.mul(num[i], F.pow(b[0][i], da));
      break;
    }
    if (da == 0) {
      for (std::size_t i = 0; i < cnt; ++i) num[i] = F.mul(num[i], F.pow(a[0][i], db));
      break;
    }
    if (da < db) {
      if ((da * db) & 1) {
        for (auto& x : num) x = F.neg(x);
      }
      std::swap(a, b);
      std::swap(da, db);
      continue;
    }
    const std::size_t m = da, n = db;
    lb = b[n];
    std::size_t e = 0;
    while (da >= n) {
      const std::size_t shift = da - n;
      for (std::size_t i = 0; i < cnt; ++i) nla[i] = F.neg(a[da][i]);
      for (std::size_t j = 0; j < shift; ++j) {
        auto& row = a[j];
        for (std::size_t i = 0; i < cnt; ++i) row[i] = F.mul(row[i], lb[i]);
      }
      for (std::size_t j = shift; j < da; ++j) {
        auto& row = a[j];
        const auto& brow = b[j - shift];
        for (std::size_t i = 0; i < cnt; ++i) row[i] = F.mul_add(row[i], lb[i], nla[i], brow[i]);
      }
      a.pop_back();
      --da;
      ++e;
      for (std::size_t i = 0; i < cnt; ++i) irregular[i] |= a[da][i] == 0;
    }
    const std::size_t k = da;
    const bool flip = (m * n) & 1;
    for (std::size_t i = 0; i < cnt; ++i) {
      std::uint64_t x = F.mul(num[i], F.pow(lb[i], m - k));
      num[i] = flip ? F.neg(x) : x;
      den[i] = F.mul(den[i], F.pow(lb[i], e * n));
    }
    std::swap(a, b);
    std::swap(da, db);
  }
  std::vector<std::uint64_t> ca(A0.size()), cb(B0.size());
  for (std::size_t i = 0; i < cnt; ++i) {
    if (!irregular[i]) continue;
    for (std::size_t r = 0; r < A0.size(); ++r) ca[r] = A0[r][i];
    for (std::size_t r = 0; r < B0.size(); ++r) cb[r] = B0[r][i];
    auto fr = resultant_frac_inplace(ca, cb, F);
    num[i] = fr.num;
    den[i] = fr.den;
    ca.resize(A0.size());
    cb.resize(B0.size());
  }
}

}  // namespace

ModFraction univariate_resultant_frac(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                      const PrimeField& F) {
  return resultant_frac_inplace(a, b, F);
}

std::uint64_t univariate_resultant(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                   const PrimeField& F) {
  auto fr = univariate_resultant_frac(a, b, F);
  return fr.num == 0 ? 0 : F.div(fr.num, fr.den);
}

namespace {

// Batch inversion: replaces every entry by its inverse (entries nonzero).
void batch_invert(std::vector<std::uint64_t>& xs, const PrimeField& F) {
  if (xs.empty()) return;
  std::vector<std::uint64_t> prefix(xs.size());
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    prefix[i] = acc;
    acc = F.mul(acc, xs[i]);
  }
  std::uint64_t inv = F.inv(acc);
  for (std::size_t i = xs.size(); i-- > 0;) {
    const std::uint64_t xi = xs[i];
    xs[i] = F.mul(inv, prefix[i]);
    inv = F.mul(inv, xi);
  }
}

// Newton interpolation at a fixed node set.
class Interpolator {
 public:
  Interpolator(std::vector<std::uint64_t> nodes, const PrimeField& F) : x_(std::move(nodes)), F_(F) {
    const std::size_t n = x_.size();
    std::vector<std::uint64_t> diffs;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = j; i < n; ++i) diffs.push_back(F_.sub(x_[i], x_[i - j]));
    }
    batch_invert(diffs, F_);
    inv_ = std::move(diffs);
  }
  const std::vector<std::uint64_t>& nodes() const { return x_; }

  // Values at the nodes -> monomial coefficients (index = degree). Node sets
  // that are used more than n times switch to a cached inverse Vandermonde
  // matrix with one reduction per output.
  void interpolate(std::vector<std::uint64_t>& y) const {
    const std::size_t n = x_.size();
    if (vinv_.empty() && ++calls_ > n && n >= 4) build_inverse();
    if (!vinv_.empty()) {
      std::vector<std::uint64_t> c(n);
      for (std::size_t k = 0; k < n; ++k) {
        WideAccumulator acc;
        const std::uint64_t* row = &vinv_[k * n];
        for (std::size_t j = 0; j < n; ++j) acc.add(row[j], y[j]);
        c[k] = F_.reduce_wide(acc.carry, acc.acc);
      }
      y = std::move(c);
      return;
    }
    newton(y);
  }

 private:
  void build_inverse() const {
    const std::size_t n = x_.size();
    std::vector<std::uint64_t> m(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint64_t> e(n, 0);
      e[j] = 1;
      newton(e);
      for (std::size_t k = 0; k < n; ++k) m[k * n + j] = e[k];
    }
    vinv_ = std::move(m);
  }

  void newton(std::vector<std::uint64_t>& y) const {
    const std::size_t n = x_.size();
    std::size_t k = 0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = n - 1; i >= j; --i) {
        // inverse of x_i - x_{i-j} lives at offset k + (i - j)
        y[i] = F_.mul(F_.sub(y[i], y[i - 1]), inv_[k + (i - j)]);
        if (i == j) break;
      }
      k += n - j;
    }
    // Horner on the Newton form.
    std::vector<std::uint64_t> p(n, 0);
    p[0] = y[n - 1];
    std::size_t deg = 0;
    for (std::size_t i = n - 1; i-- > 0;) {
      // p = p * (v - x_i) + y_i
      const std::uint64_t xi = x_[i];
      p[deg + 1] = p[deg];
      for (std::size_t d = deg; d >= 1; --d) p[d] = F_.sub(p[d - 1], F_.mul(p[d], xi));
      p[0] = F_.sub(y[i], F_.mul(p[0], xi));
      ++deg;
    }
    y = std::move(p);
  }

  std::vector<std::uint64_t> x_;
  const PrimeField& F_;
  std::vector<std::uint64_t> inv_;
  mutable std::vector<std::uint64_t> vinv_;
  mutable std::size_t calls_ = 0;
};

class DenseResultant {
 public:
  DenseResultant(const ModPoly& f, const ModPoly& g, std::size_t var, std::mt19937_64& rng)
      : F_(f.ring().field), var_(var), rng_(rng), reg_(f.registry()), ring_(f.ring()) {
    m_ = f.degree_in(var);
    n_ = g.degree_in(var);
    auto df = f.degrees(), dg = g.degrees();
    for (std::size_t v = 0; v < df.size(); ++v) {
      if (v != var && (df[v] > 0 || dg[v] > 0)) others_.push_back(v);
    }
    // Smallest boxes outermost: fewer sparse specialisations, and the
    // largest degree is handled by the dense innermost loop.
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t v : others_) {
      const int b = resultant_degree_bound(f, g, var, static_cast<int>(v));
      order.push_back({b < 0 ? 0 : b, v});
    }
    std::stable_sort(order.begin(), order.end());
    others_.clear();
    for (auto& [b, v] : order) {
      others_.push_back(v);
      bounds_.push_back(b);
    }
    for (std::size_t level = 0; level < others_.size(); ++level) {
      const std::size_t need = static_cast<std::size_t>(bounds_[level]) + 1;
      std::vector<std::uint64_t> pts;
      while (pts.size() < need + kSpare) pts.push_back(fresh_point());
      candidates_.push_back(pts);
      default_interp_.emplace_back(std::vector<std::uint64_t>(pts.begin(), pts.begin() + need), F_);
    }
  }

  ModPoly run(const ModPoly& f, const ModPoly& g) { return rec(f, g, 0); }

 private:
  static constexpr std::size_t kSpare = 24;

  std::uint64_t fresh_point() {
    for (;;) {
      std::uint64_t x = rng_() % F_.modulus();
      if (x != 0 && used_.insert(x).second) return x;
    }
  }

  // Candidate points for a level; extended on demand when many are skipped.
  std::uint64_t candidate(std::size_t level, std::size_t i) {
    auto& c = candidates_[level];
    while (c.size() <= i) {
      if (c.size() > static_cast<std::size_t>(bounds_[level]) + 1 + 100) {
        throw Error(ErrorKind::DegeneratePrime, "leading coefficients vanish at too many evaluation points");
      }
      c.push_back(fresh_point());
    }
    return c[i];
  }

  // Powers 1, a, a^2, ... of candidate i at a level, at least `width` long.
  const std::uint64_t* powers(std::size_t level, std::size_t i, std::size_t width) {
    if (powers_.size() <= level) powers_.resize(level + 1);
    auto& tab = powers_[level];
    if (tab.size() <= i) tab.resize(i + 1);
    auto& row = tab[i];
    if (row.size() < width) {
      const std::uint64_t a = candidate(level, i);
      if (row.empty()) row.push_back(1);
      while (row.size() < width) row.push_back(F_.mul(row.back(), a));
    }
    return row.data();
  }

  const Interpolator& interpolator_for(std::size_t level, const std::vector<std::size_t>& chosen,
                                       std::unique_ptr<Interpolator>& scratch) {
    bool is_default = true;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      if (chosen[i] != i) {
        is_default = false;
        break;
      }
    }
    if (is_default) return default_interp_[level];
    std::vector<std::uint64_t> nodes;
    for (auto i : chosen) nodes.push_back(candidates_[level][i]);
    scratch = std::make_unique<Interpolator>(std::move(nodes), F_);
    return *scratch;
  }

  ModPoly rec(const ModPoly& f, const ModPoly& g, std::size_t level) {
    if (level + 1 == others_.size()) return bivariate(f, g, level);
    const std::size_t v = others_[level];
    const std::size_t need = static_cast<std::size_t>(bounds_[level]) + 1;
    std::vector<std::size_t> chosen;
    std::vector<ModPoly> vals;
    for (std::size_t i = 0; chosen.size() < need; ++i) {
      const std::uint64_t a = candidate(level, i);
      ModPoly fa = f.specialize(v, a), ga = g.specialize(v, a);
      if (fa.degree_in(var_) != m_ || ga.degree_in(var_) != n_) continue;
      vals.push_back(rec(fa, ga, level + 1));
      chosen.push_back(i);
    }
    std::unique_ptr<Interpolator> scratch;
    const Interpolator& ip = interpolator_for(level, chosen, scratch);
    // Interpolate coefficientwise over the union of supports.
    std::unordered_map<Monomial, std::vector<std::uint64_t>, MonomialHash> table;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (const auto& t : vals[i].terms()) {
        auto& row = table[t.m];
        if (row.empty()) row.assign(need, 0);
        row[i] = t.c;
      }
    }
    std::vector<ModPoly::Term> out;
    for (auto& [mono, row] : table) {
      ip.interpolate(row);
      for (std::size_t e = 0; e < row.size(); ++e) {
        if (row[e] == 0) continue;
        Monomial mm = mono;
        mm.set(v, static_cast<std::uint32_t>(e));
        out.push_back({mm, row[e]});
      }
    }
    return ModPoly::from_terms(reg_, ring_, std::move(out));
  }

  // f, g involve only var_ and others_[level].
  ModPoly bivariate(const ModPoly& f, const ModPoly& g, std::size_t level) {
    const std::size_t v = others_[level];
    const std::size_t need = static_cast<std::size_t>(bounds_[level]) + 1;
    auto dense = [&](const ModPoly& p, int dx, std::vector<std::vector<std::uint64_t>>& out) {
      const int dv = std::max(0, p.degree_in(v));
      out.assign(static_cast<std::size_t>(dx) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(dv) + 1, 0));
      for (const auto& t : p.terms()) out[t.m.get(var_)][t.m.get(v)] = t.c;
    };
    std::vector<std::vector<std::uint64_t>> A, B;
    dense(f, m_, A);
    dense(g, n_, B);
    std::size_t width = 0;
    for (const auto& r : A) width = std::max(width, r.size());
    for (const auto& r : B) width = std::max(width, r.size());
    auto dot = [&](const std::vector<std::uint64_t>& c, const std::uint64_t* pw) {
      WideAccumulator w;
      for (std::size_t k = 0; k < c.size(); ++k) w.add(c[k], pw[k]);
      return F_.reduce_wide(w.carry, w.acc);
    };
    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::uint64_t>> FA(A.size()), GA(B.size());
    for (std::size_t i = 0; chosen.size() < need; ++i) {
      const std::uint64_t* pw = powers(level, i, width);
      const std::uint64_t lf = dot(A.back(), pw), lg = dot(B.back(), pw);
      if (lf == 0 || lg == 0) continue;
      for (std::size_t e = 0; e + 1 < A.size(); ++e) FA[e].push_back(dot(A[e], pw));
      for (std::size_t e = 0; e + 1 < B.size(); ++e) GA[e].push_back(dot(B[e], pw));
      FA.back().push_back(lf);
      GA.back().push_back(lg);
      chosen.push_back(i);
    }
    std::vector<std::uint64_t> nums, dens;
    batch_resultant_frac(FA, GA, need, F_, nums, dens);
    batch_invert(dens, F_);
    for (std::size_t i = 0; i < nums.size(); ++i) nums[i] = F_.mul(nums[i], dens[i]);
    std::unique_ptr<Interpolator> scratch;
    const Interpolator& ip = interpolator_for(level, chosen, scratch);
    ip.interpolate(nums);
    std::vector<ModPoly::Term> out;
    for (std::size_t e = nums.size(); e-- > 0;) {
      if (nums[e] == 0) continue;
      Monomial mm;
      mm.set(v, static_cast<std::uint32_t>(e));
      out.push_back({mm, nums[e]});
    }
    return ModPoly::from_sorted_terms(reg_, ring_, std::move(out));
  }

  const PrimeField& F_;
  std::size_t var_;
  std::mt19937_64& rng_;
  RegistryPtr reg_;
  ModRing ring_;
  int m_ = 0, n_ = 0;
  std::vector<std::size_t> others_;
  std::vector<int> bounds_;
  std::vector<std::vector<std::uint64_t>> candidates_;
  std::vector<Interpolator> default_interp_;
  std::vector<std::vector<std::vector<std::uint64_t>>> powers_;
  std::unordered_set<std::uint64_t> used_;
};

}  // namespace

ModPoly resultant_modular(const ModPoly& f, const ModPoly& g, std::size_t var, std::mt19937_64& rng) {
  f.check_compatible(g);
  const int m = f.degree_in(var), n = g.degree_in(var);
  if (m <= 0 && n <= 0) throw Error(ErrorKind::BothConstant, "both polynomials are constant in the variable");
  if (m == NEG_INF || n == NEG_INF) return f.zero_like();
  if (m == 0) return f.pow(static_cast<unsigned>(n));
  if (n == 0) return g.pow(static_cast<unsigned>(m));
  bool has_others = false;
  auto df = f.degrees(), dg = g.degrees();
  for (std::size_t v = 0; v < df.size(); ++v) {
    if (v != var && (df[v] > 0 || dg[v] > 0)) has_others = true;
  }
  if (!has_others) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(m) + 1, 0), b(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& t : f.terms()) a[t.m.get(var)] = t.c;
    for (const auto& t : g.terms()) b[t.m.get(var)] = t.c;
    return f.constant_like(univariate_resultant(a, b, f.ring().field));
  }
  DenseResultant dr(f, g, var, rng);
  return dr.run(f, g);
}

}  // namespace rescert
