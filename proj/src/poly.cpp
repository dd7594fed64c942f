#include "rescert/poly.hpp"

namespace rescert {

std::uint64_t evaluate(const ModPoly& f, const std::vector<std::uint64_t>& point) {
  const auto& reg = *f.registry();
  if (point.size() != reg.size()) throw Error(ErrorKind::DomainError, "point has wrong arity");
  const auto& F = f.ring().field;
  const auto deg = f.degrees();
  std::vector<std::vector<std::uint64_t>> pw(reg.size());
  for (std::size_t v = 0; v < reg.size(); ++v) {
    if (deg[v] <= 0) continue;
    pw[v].resize(static_cast<std::size_t>(deg[v]) + 1);
    pw[v][0] = 1;
    const std::uint64_t x = F.reduce_u(point[v]);
    for (int e = 1; e <= deg[v]; ++e) pw[v][e] = F.mul(pw[v][e - 1], x);
  }
  std::uint64_t acc = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t c = t.c;
    for (std::size_t v = 0; v < reg.size(); ++v) {
      const auto e = t.m.get(v);
      if (e) c = F.mul(c, pw[v][e]);
    }
    acc = F.add(acc, c);
  }
  return acc;
}

ModPoly reduce_mod(const QPoly& f, const ModRing& ring) {
  std::vector<ModPoly::Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto c = ring.from_rational(t.c);
    if (c) out.push_back({t.m, c});
  }
  return ModPoly::from_sorted_terms(f.registry(), ring, std::move(out));
}

std::uint64_t evaluate(const QPoly& f, const std::vector<std::uint64_t>& point, const PrimeField& field) {
  return evaluate(reduce_mod(f, ModRing(field)), point);
}

}  // namespace rescert
