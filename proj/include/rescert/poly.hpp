#pragma once

#include <algorithm>
#include <climits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "rescert/error.hpp"
#include "rescert/monomial.hpp"
#include "rescert/rings.hpp"
#include "rescert/var_registry.hpp"

namespace rescert {

// Degree of the zero polynomial.
inline constexpr int NEG_INF = INT_MIN;

// Sparse polynomial over Ring in the variables of a registry. Terms are kept
// sorted by strictly decreasing monomial and never carry a zero coefficient,
// so the term vector is a canonical form.
template <class Ring>
class MultiPoly {
 public:
  using Elem = typename Ring::Elem;
  struct Term {
    Monomial m;
    Elem c;
  };

  MultiPoly() = default;
  MultiPoly(RegistryPtr reg, Ring ring) : reg_(std::move(reg)), ring_(std::move(ring)) {}

  static MultiPoly constant(RegistryPtr reg, Ring ring, Elem c) {
    MultiPoly p(std::move(reg), std::move(ring));
    if (!p.ring_.is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }
  static MultiPoly variable(RegistryPtr reg, Ring ring, std::size_t var, std::uint32_t exp = 1) {
    MultiPoly p(std::move(reg), std::move(ring));
    if (var >= p.reg_->size()) throw Error(ErrorKind::UnknownVariable, "variable index out of range");
    Monomial m;
    m.set(var, exp);
    p.terms_.push_back({m, p.ring_.one()});
    return p;
  }
  // Sorts, merges equal monomials and drops zeros.
  static MultiPoly from_terms(RegistryPtr reg, Ring ring, std::vector<Term> terms) {
    MultiPoly p(std::move(reg), std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().m == t.m) {
        p.ring_.add_to(p.terms_.back().c, t.c);
      } else {
        if (!p.terms_.empty() && p.ring_.is_zero(p.terms_.back().c)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.ring_.is_zero(p.terms_.back().c)) p.terms_.pop_back();
    return p;
  }
  // Terms must already be strictly decreasing with nonzero coefficients.
  static MultiPoly from_sorted_terms(RegistryPtr reg, Ring ring, std::vector<Term> terms) {
    MultiPoly p(std::move(reg), std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RegistryPtr& registry() const { return reg_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Elem constant_value() const {
    if (terms_.empty()) return ring_.zero();
    if (!is_constant()) throw Error(ErrorKind::DomainError, "polynomial is not constant");
    return terms_[0].c;
  }
  const Term& leading_term() const { return terms_.front(); }

  MultiPoly zero_like() const { return MultiPoly(reg_, ring_); }
  MultiPoly constant_like(Elem c) const { return constant(reg_, ring_, std::move(c)); }

  int degree_in(std::size_t var) const {
    if (terms_.empty()) return NEG_INF;
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.get(var));
    return static_cast<int>(d);
  }
  int degree_in(const std::string& var) const { return degree_in(reg_->index(var)); }
  int total_degree() const {
    if (terms_.empty()) return NEG_INF;
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.total_degree());
    return static_cast<int>(d);
  }
  std::vector<int> degrees() const {
    std::vector<int> d(reg_->size(), terms_.empty() ? NEG_INF : 0);
    for (const auto& t : terms_) {
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], static_cast<int>(t.m.get(i)));
    }
    return d;
  }
  bool uses_var(std::size_t var) const { return degree_in(var) > 0; }

  // Coefficient of var^k as a polynomial in the remaining variables.
  MultiPoly coefficient_in(std::size_t var, std::uint32_t k) const {
    check_var(var);
    MultiPoly r(reg_, ring_);
    for (const auto& t : terms_) {
      if (t.m.get(var) == k) {
        Monomial m = t.m;
        m.set(var, 0);
        r.terms_.push_back({m, t.c});
      }
    }
    // Clearing one field keeps the remaining order only within blocks, so re-sort.
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    return r;
  }
  MultiPoly coefficient_in(const std::string& var, std::uint32_t k) const {
    return coefficient_in(reg_->index(var), k);
  }

  // Dense list c with f = sum_k c[k] * var^k; empty for the zero polynomial.
  std::vector<MultiPoly> univariate_coeffs(std::size_t var) const {
    check_var(var);
    const int d = degree_in(var);
    if (d == NEG_INF) return {};
    std::vector<MultiPoly> c(static_cast<std::size_t>(d) + 1, MultiPoly(reg_, ring_));
    for (const auto& t : terms_) {
      Monomial m = t.m;
      const std::uint32_t e = m.get(var);
      m.set(var, 0);
      c[e].terms_.push_back({m, t.c});
    }
    for (auto& p : c) {
      std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) { return a.m > b.m; });
    }
    return c;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c = ring_.neg(t.c);
    return r;
  }
  MultiPoly operator+(const MultiPoly& o) const { return merge(o, false); }
  MultiPoly operator-(const MultiPoly& o) const { return merge(o, true); }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(o, false); }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(o, true); }
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scale(const Elem& s) const {
    if (ring_.is_zero(s)) return MultiPoly(reg_, ring_);
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.c = ring_.mul(t.c, s);
    return r;
  }
  MultiPoly mul_monomial(const Monomial& m) const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.m = t.m + m;
    return r;
  }
  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(reg_, ring_, ring_.one());
    MultiPoly base = *this;
    while (k) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result;
  }

  // Replace var by g everywhere (Horner in var).
  MultiPoly substitute(std::size_t var, const MultiPoly& g) const {
    check_compatible(g);
    auto c = univariate_coeffs(var);
    if (c.empty()) return MultiPoly(reg_, ring_);
    MultiPoly r = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) r = r * g + c[k];
    return r;
  }
  MultiPoly substitute(const std::string& var, const MultiPoly& g) const {
    return substitute(reg_->index(var), g);
  }

  // Replace var by the constant v.
  MultiPoly specialize(std::size_t var, const Elem& v) const {
    check_var(var);
    const int d = degree_in(var);
    if (d <= 0) return *this;
    std::vector<Elem> pw(static_cast<std::size_t>(d) + 1);
    pw[0] = ring_.one();
    for (int i = 1; i <= d; ++i) pw[i] = ring_.mul(pw[i - 1], v);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m = t.m;
      const std::uint32_t e = m.get(var);
      m.set(var, 0);
      out.push_back({m, e ? ring_.mul(t.c, pw[e]) : t.c});
    }
    return from_terms(reg_, ring_, std::move(out));
  }

  bool operator==(const MultiPoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].m != o.terms_[i].m || !(terms_[i].c == o.terms_[i].c)) return false;
    }
    return true;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::string to_string() const;

  void check_compatible(const MultiPoly& o) const {
    if (reg_ != o.reg_ && (!reg_ || !o.reg_ || reg_->names() != o.reg_->names())) {
      throw Error(ErrorKind::RegistryMismatch, "polynomials use different variable registries");
    }
    if (!(ring_ == o.ring_)) throw Error(ErrorKind::RegistryMismatch, "polynomials use different coefficient domains");
  }

 private:
  void check_var(std::size_t var) const {
    if (!reg_ || var >= reg_->size()) throw Error(ErrorKind::UnknownVariable, "variable index out of range");
  }
  MultiPoly merge(const MultiPoly& o, bool subtract) const;

  RegistryPtr reg_;
  Ring ring_;
  std::vector<Term> terms_;
};

template <class Ring>
MultiPoly<Ring> MultiPoly<Ring>::merge(const MultiPoly& o, bool subtract) const {
  check_compatible(o);
  MultiPoly r(reg_, ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].m > o.terms_[j].m)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].m > terms_[i].m) {
      r.terms_.push_back({o.terms_[j].m, subtract ? ring_.neg(o.terms_[j].c) : o.terms_[j].c});
      ++j;
    } else {
      Elem c = subtract ? ring_.sub(terms_[i].c, o.terms_[j].c) : ring_.add(terms_[i].c, o.terms_[j].c);
      if (!ring_.is_zero(c)) r.terms_.push_back({terms_[i].m, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

namespace detail {

struct HeapEntry {
  Monomial m;
  std::uint32_t i;
  std::uint32_t j;
  bool operator<(const HeapEntry& o) const { return m < o.m; }
};

template <class Ring>
void check_degree_sum(const MultiPoly<Ring>& a, const MultiPoly<Ring>& b) {
  auto da = a.degrees(), db = b.degrees();
  for (std::size_t v = 0; v < da.size(); ++v) {
    if (static_cast<long>(da[v]) + db[v] > static_cast<long>(Monomial::kMaxExp)) {
      throw Error(ErrorKind::BudgetExceeded, "exponent overflow in product");
    }
  }
}

}  // namespace detail

// Heap-based product (terms come out in decreasing order).
template <class Ring>
MultiPoly<Ring> MultiPoly<Ring>::operator*(const MultiPoly& o) const {
  check_compatible(o);
  if (is_zero() || o.is_zero()) return MultiPoly(reg_, ring_);
  detail::check_degree_sum(*this, o);
  const MultiPoly& a = terms_.size() <= o.terms_.size() ? *this : o;
  const MultiPoly& b = terms_.size() <= o.terms_.size() ? o : *this;
  MultiPoly r(reg_, ring_);
  if (a.terms_.size() == 1) {
    r.terms_.reserve(b.terms_.size());
    for (const auto& t : b.terms_) {
      Elem c = ring_.mul(a.terms_[0].c, t.c);
      if (!ring_.is_zero(c)) r.terms_.push_back({a.terms_[0].m + t.m, std::move(c)});
    }
    return r;
  }
  std::vector<detail::HeapEntry> heap;
  heap.reserve(a.terms_.size());
  for (std::uint32_t i = 0; i < a.terms_.size(); ++i) {
    heap.push_back({a.terms_[i].m + b.terms_[0].m, i, 0});
  }
  std::make_heap(heap.begin(), heap.end());
  while (!heap.empty()) {
    const Monomial m = heap.front().m;
    Elem acc = ring_.zero();
    while (!heap.empty() && heap.front().m == m) {
      std::pop_heap(heap.begin(), heap.end());
      detail::HeapEntry e = heap.back();
      heap.pop_back();
      ring_.add_mul_to(acc, a.terms_[e.i].c, b.terms_[e.j].c);
      if (e.j + 1 < b.terms_.size()) {
        ++e.j;
        e.m = a.terms_[e.i].m + b.terms_[e.j].m;
        heap.push_back(e);
        std::push_heap(heap.begin(), heap.end());
      }
    }
    if (!ring_.is_zero(acc)) r.terms_.push_back({m, std::move(acc)});
  }
  return r;
}

// Exact quotient f / g. Returns false when g does not divide f.
template <class Ring>
bool try_exact_divide(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g, MultiPoly<Ring>& quotient) {
  using Elem = typename Ring::Elem;
  using Term = typename MultiPoly<Ring>::Term;
  f.check_compatible(g);
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by the zero polynomial");
  const Ring& ring = f.ring();
  const auto& ft = f.terms();
  const auto& gt = g.terms();
  const Elem lead_inv = ring.inv(gt[0].c);
  std::vector<Term> q;
  // One heap slot per non-leading divisor term j, walking the quotient terms.
  std::vector<detail::HeapEntry> heap;
  std::vector<std::uint32_t> stalled;
  for (std::uint32_t j = 1; j < gt.size(); ++j) stalled.push_back(j);
  std::size_t i = 0;
  for (;;) {
    const bool have_f = i < ft.size();
    if (!have_f && heap.empty()) break;
    Monomial m;
    if (have_f && (heap.empty() || ft[i].m > heap.front().m)) {
      m = ft[i].m;
    } else if (!heap.empty()) {
      m = heap.front().m;
    }
    Elem acc = ring.zero();
    if (have_f && ft[i].m == m) {
      acc = ft[i].c;
      ++i;
    }
    while (!heap.empty() && heap.front().m == m) {
      std::pop_heap(heap.begin(), heap.end());
      detail::HeapEntry e = heap.back();
      heap.pop_back();
      ring.sub_mul_to(acc, gt[e.i].c, q[e.j].c);
      if (e.j + 1 < q.size()) {
        ++e.j;
        e.m = gt[e.i].m + q[e.j].m;
        heap.push_back(e);
        std::push_heap(heap.begin(), heap.end());
      } else {
        stalled.push_back(e.i);
      }
    }
    if (ring.is_zero(acc)) continue;
    if (!divides(gt[0].m, m)) return false;
    q.push_back({m - gt[0].m, ring.mul(acc, lead_inv)});
    const auto k = static_cast<std::uint32_t>(q.size() - 1);
    for (std::uint32_t j : stalled) {
      heap.push_back({gt[j].m + q[k].m, j, k});
      std::push_heap(heap.begin(), heap.end());
    }
    stalled.clear();
  }
  quotient = MultiPoly<Ring>::from_sorted_terms(f.registry(), ring, std::move(q));
  return true;
}

// NotDivisible when a nonzero remainder arises.
template <class Ring>
MultiPoly<Ring> exact_divide(const MultiPoly<Ring>& f, const MultiPoly<Ring>& g) {
  MultiPoly<Ring> q;
  if (!try_exact_divide(f, g, q)) throw Error(ErrorKind::NotDivisible, "nonzero remainder");
  return q;
}

template <class Ring>
std::string MultiPoly<Ring>::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Elem c = t.c;
    const bool neg = ring_.is_negative(c);
    if (neg) c = ring_.neg(c);
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t v = 0; v < reg_->size(); ++v) {
      const auto e = t.m.get(v);
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += reg_->name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      s += ring_.str(c);
    } else if (ring_.is_one(c)) {
      s += mono;
    } else {
      s += ring_.str(c) + "*" + mono;
    }
  }
  return s;
}

using QPoly = MultiPoly<RationalRing>;
using ModPoly = MultiPoly<ModRing>;

// Value of f at a full point (one residue per registry variable).
std::uint64_t evaluate(const ModPoly& f, const std::vector<std::uint64_t>& point);

// Reduce coefficients mod p. BadReduction if a denominator vanishes mod p.
ModPoly reduce_mod(const QPoly& f, const ModRing& ring);

// evaluate(reduce_mod(f), point).
std::uint64_t evaluate(const QPoly& f, const std::vector<std::uint64_t>& point, const PrimeField& field);

// Variables (registry indices) that occur in f.
template <class Ring>
std::vector<std::size_t> occurring_vars(const MultiPoly<Ring>& f) {
  std::vector<std::size_t> out;
  auto d = f.degrees();
  for (std::size_t v = 0; v < d.size(); ++v) {
    if (d[v] > 0) out.push_back(v);
  }
  return out;
}

}  // namespace rescert
