#include "rescert/checkers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "rescert/error.hpp"

namespace rescert {

namespace {

std::uint64_t triple_key(std::uint64_t n, VertexId a, VertexId b, VertexId c) { return (a * n + b) * n + c; }

StructureCertificate make_cert(std::string construction, std::uint64_t p, std::string check, std::int64_t measured,
                               std::int64_t bound) {
  StructureCertificate c;
  c.construction = std::move(construction);
  c.p = p;
  c.check = std::move(check);
  c.measured_max = measured;
  c.bound = bound;
  c.pass = measured <= bound;
  return c;
}

std::string vertex_str(const std::vector<std::uint64_t>& label, VertexId id) {
  return std::to_string(id) + format_label(label);
}

}  // namespace

FanResult max_fan_count(const Graph& g) {
  if (g.kind == "theta") throw Error(ErrorKind::WrongKind, "fan counts apply to the subdivision graph, got kind theta");
  const std::uint64_t n = g.vertex_count();
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  FanResult r;
  for (VertexId w = 0; w < n; ++w) {
    const auto& N = g.adj[w];
    for (VertexId x : N) {
      for (VertexId y : N) {
        if (y == x) continue;
        for (VertexId z : N) {
          if (z == x || z == y) continue;
          for (VertexId a : g.adj[x]) {
            if (a == w || a == y || a == z) continue;
            for (VertexId b : g.adj[y]) {
              if (b == w || b == x || b == z || b == a) continue;
              for (VertexId c : g.adj[z]) {
                if (c == w || c == x || c == y || c == a || c == b) continue;
                ++counts[triple_key(n, a, b, c)];
                ++r.sequences;
              }
            }
          }
        }
      }
    }
  }
  std::uint64_t best_key = 0;
  for (auto [key, cnt] : counts) {
    if (cnt > r.max_count || (cnt == r.max_count && key < best_key)) {
      r.max_count = cnt;
      best_key = key;
    }
  }
  r.triples = counts.size();
  if (r.max_count > 0) {
    r.argmax = {static_cast<VertexId>(best_key / (n * n)), static_cast<VertexId>((best_key / n) % n),
                static_cast<VertexId>(best_key % n)};
  }
  r.certificate = make_cert(g.kind, g.p, "max fan count over (a,b,c)", r.max_count, 24);
  r.certificate.domain = n * (n - 1) * (n > 1 ? n - 2 : 0);
  if (r.max_count > 0) {
    r.certificate.witness = "a=" + vertex_str(g.labels[r.argmax[0]], r.argmax[0]) +
                            " b=" + vertex_str(g.labels[r.argmax[1]], r.argmax[1]) +
                            " c=" + vertex_str(g.labels[r.argmax[2]], r.argmax[2]);
  }
  return r;
}

std::int64_t fan_count_for(const Graph& g, VertexId a, VertexId b, VertexId c) {
  if (a == b || a == c || b == c) return 0;
  // w is a common neighbour of x in N(a), y in N(b), z in N(c).
  std::int64_t total = 0;
  for (VertexId x : g.adj[a]) {
    if (x == b || x == c) continue;
    for (VertexId w : g.adj[x]) {
      if (w == a || w == b || w == c) continue;
      for (VertexId y : g.adj[w]) {
        if (y == x || y == a || y == c || !g.adjacent(y, b)) continue;
        for (VertexId z : g.adj[w]) {
          if (z == x || z == y || z == a || z == b || !g.adjacent(z, c)) continue;
          ++total;
        }
      }
    }
  }
  return total;
}

namespace {

std::vector<char> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> m(n * n, 0);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v : g.adj[u]) m[u * n + v] = 1;
  }
  return m;
}

bool all_distinct(std::initializer_list<VertexId> vs) {
  for (auto i = vs.begin(); i != vs.end(); ++i) {
    for (auto j = std::next(i); j != vs.end(); ++j) {
      if (*i == *j) return false;
    }
  }
  return true;
}

}  // namespace

std::int64_t naive_max_fan_count(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const auto A = adjacency_matrix(g);
  std::map<std::array<VertexId, 3>, std::int64_t> counts;
  for (VertexId w = 0; w < n; ++w)
    for (VertexId x = 0; x < n; ++x) {
      if (!A[w * n + x]) continue;
      for (VertexId y = 0; y < n; ++y) {
        if (!A[w * n + y]) continue;
        for (VertexId z = 0; z < n; ++z) {
          if (!A[w * n + z]) continue;
          for (VertexId a = 0; a < n; ++a) {
            if (!A[x * n + a]) continue;
            for (VertexId b = 0; b < n; ++b) {
              if (!A[y * n + b]) continue;
              for (VertexId c = 0; c < n; ++c) {
                if (!A[z * n + c]) continue;
                if (all_distinct({w, x, y, z, a, b, c})) ++counts[{a, b, c}];
              }
            }
          }
        }
      }
    }
  std::int64_t best = 0;
  for (const auto& [k, v] : counts) best = std::max(best, v);
  return best;
}

std::int64_t naive_fan_count_for(const Graph& g, VertexId a, VertexId b, VertexId c) {
  const std::size_t n = g.vertex_count();
  const auto A = adjacency_matrix(g);
  std::int64_t total = 0;
  for (VertexId x = 0; x < n; ++x)
    for (VertexId y = 0; y < n; ++y)
      for (VertexId z = 0; z < n; ++z)
        for (VertexId w = 0; w < n; ++w) {
          if (A[a * n + x] && A[x * n + w] && A[b * n + y] && A[y * n + w] && A[c * n + z] && A[z * n + w] &&
              all_distinct({w, x, y, z, a, b, c})) {
            ++total;
          }
        }
  return total;
}

StructureCertificate certify_subdivision_free(const Graph& g, std::int64_t t) {
  if (g.kind != "subdiv") throw Error(ErrorKind::WrongKind, "expected a subdivision graph, got kind '" + g.kind + "'");
  auto r = max_fan_count(g);
  auto c = r.certificate;
  c.check = "K'_{3," + std::to_string(t) + "}-free (max fan count <= " + std::to_string(t - 1) + ")";
  c.bound = t - 1;
  c.pass = c.measured_max <= c.bound;
  return c;
}

// ---- paths -------------------------------------------------------------------

namespace {

// All simple paths of k edges from u, reported with their endpoint.
void paths_from(const Graph& g, VertexId u, unsigned k,
                const std::function<void(VertexId, const std::vector<VertexId>&)>& emit) {
  std::vector<VertexId> stack{u};
  std::function<void()> rec = [&]() {
    const VertexId last = stack.back();
    if (stack.size() == k + 1) {
      emit(last, stack);
      return;
    }
    for (VertexId nb : g.adj[last]) {
      if (std::find(stack.begin(), stack.end(), nb) != stack.end()) continue;
      stack.push_back(nb);
      rec();
      stack.pop_back();
    }
  };
  rec();
}

}  // namespace

std::vector<std::vector<VertexId>> paths_of_length(const Graph& g, VertexId u, VertexId v, unsigned k) {
  std::vector<std::vector<VertexId>> out;
  if (u == v || k == 0) return out;
  paths_from(g, u, k, [&](VertexId end, const std::vector<VertexId>& path) {
    if (end == v) out.emplace_back(path.begin() + 1, path.end() - 1);
  });
  return out;
}

std::size_t max_disjoint_family(const std::vector<std::vector<VertexId>>& paths) {
  const std::size_t m = paths.size();
  std::vector<std::vector<char>> clash(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      bool c = false;
      for (VertexId a : paths[i]) c = c || std::find(paths[j].begin(), paths[j].end(), a) != paths[j].end();
      clash[i][j] = clash[j][i] = c;
    }
  }
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    best = std::max(best, chosen.size());
    if (i == m || chosen.size() + (m - i) <= best) return;
    bool ok = true;
    for (auto c : chosen) ok = ok && !clash[c][i];
    if (ok) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  rec(0);
  return best;
}

std::size_t max_internally_disjoint_paths(const Graph& g, VertexId u, VertexId v, unsigned k) {
  if (u == v) throw Error(ErrorKind::DomainError, "endpoints must differ");
  if (k < 2) throw Error(ErrorKind::DomainError, "path length must be at least 2");
  return max_disjoint_family(paths_of_length(g, u, v, k));
}

StructureCertificate certify_disjoint_paths(const Graph& g, unsigned k, std::int64_t t) {
  const std::size_t n = g.vertex_count();
  std::int64_t best = 0;
  std::size_t maximised = 0;
  std::string witness;
  std::unordered_map<VertexId, std::vector<std::vector<VertexId>>> by_end;
  for (VertexId u = 0; u < n; ++u) {
    by_end.clear();
    paths_from(g, u, k, [&](VertexId end, const std::vector<VertexId>& path) {
      if (end > u) by_end[end].emplace_back(path.begin() + 1, path.end() - 1);
    });
    for (auto& [v, ps] : by_end) {
      // below three raw paths the family is read off directly
      std::int64_t val = static_cast<std::int64_t>(ps.size());
      if (ps.size() >= 3) {
        ++maximised;
        val = static_cast<std::int64_t>(max_disjoint_family(ps));
      } else if (ps.size() == 2) {
        val = static_cast<std::int64_t>(max_disjoint_family(ps));
      }
      if (val > best) {
        best = val;
        witness = "u=" + vertex_str(g.labels[u], u) + " v=" + vertex_str(g.labels[v], v) +
                  " raw=" + std::to_string(ps.size());
      }
    }
  }
  auto c = make_cert(g.kind, g.p, "internally disjoint " + std::to_string(k) + "-paths over all pairs", best, t - 1);
  c.domain = n * (n - 1) / 2;
  c.witness = witness + " maximised_pairs=" + std::to_string(maximised);
  return c;
}

// ---- Berge ---------------------------------------------------------------------

void validate_type(const BergeType& type) {
  for (int i = 0; i < 4; ++i) {
    if (type[i] < 1 || type[i] > 3) throw Error(ErrorKind::BadType, "part index out of range in " + type_name(type));
    if (i && type[i] == type[i - 1]) throw Error(ErrorKind::BadType, "consecutive parts equal in " + type_name(type));
  }
}

std::string type_name(const BergeType& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
         std::to_string(t[3]) + ")";
}

namespace {

// Every Berge 3-path starting at v1 whose parts match `type` (0 = any).
template <class F>
void for_each_3path(const LinearHypergraph& h, VertexId v1, const BergeType& type, F&& f) {
  auto match = [&](VertexId v, int j) { return type[j] == 0 || h.part(v) == type[j]; };
  if (!match(v1, 0)) return;
  for (std::uint32_t e1 : h.incidence[v1]) {
    for (VertexId v2 : h.edges[e1].v) {
      if (v2 == v1 || !match(v2, 1)) continue;
      for (std::uint32_t e2 : h.incidence[v2]) {
        if (e2 == e1) continue;
        for (VertexId v3 : h.edges[e2].v) {
          if (v3 == v2 || v3 == v1 || !match(v3, 2)) continue;
          for (std::uint32_t e3 : h.incidence[v3]) {
            if (e3 == e1 || e3 == e2) continue;
            for (VertexId v4 : h.edges[e3].v) {
              if (v4 == v3 || v4 == v2 || v4 == v1 || !match(v4, 3)) continue;
              f(v2, v3, v4, e1, e2, e3);
            }
          }
        }
      }
    }
  }
}

std::vector<std::vector<VertexId>> vertices_by_part(const LinearHypergraph& h) {
  std::vector<std::vector<VertexId>> parts(4);
  for (VertexId v = 0; v < h.vertex_count(); ++v) parts[h.part(v)].push_back(v);
  return parts;
}

// Up to n distinct indices in [0, domain), uniformly without replacement.
std::vector<std::uint64_t> sample_indices(std::uint64_t domain, std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (n >= domain) {
    for (std::uint64_t i = 0; i < domain; ++i) out.push_back(i);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < n) {
    const std::uint64_t i = rng() % domain;
    if (seen.insert(i).second) out.push_back(i);
  }
  return out;
}

// Ordered pairs in A x B minus the diagonal when A == B, by index.
struct PairSpace {
  const std::vector<VertexId>* A;
  const std::vector<VertexId>* B;
  bool same;
  std::uint64_t size() const {
    const std::uint64_t a = A->size(), b = B->size();
    return same ? a * (a - (a > 0)) : a * b;
  }
  std::pair<VertexId, VertexId> at(std::uint64_t i) const {
    const std::uint64_t w = same ? B->size() - 1 : B->size();
    const std::uint64_t r = i / w, c = i % w;
    return {(*A)[r], (*B)[same && c >= r ? c + 1 : c]};
  }
};

std::string berge_vertex(const LinearHypergraph& h, VertexId v) {
  return vertex_str({h.labels[v].begin(), h.labels[v].end()}, v);
}

}  // namespace

BergePathResult berge_3path_counts(const LinearHypergraph& h, const BergeType& type, const PairSelection& sel,
                                   std::int64_t bound) {
  validate_type(type);
  const auto parts = vertices_by_part(h);
  const PairSpace space{&parts[type[0]], &parts[type[3]], type[0] == type[3]};
  BergePathResult r;
  auto consider = [&](VertexId a, VertexId b, std::int64_t cnt) {
    if (cnt > r.max_count || (cnt == r.max_count && r.max_count > 0 && std::make_pair(a, b) < std::make_pair(r.from, r.to))) {
      r.max_count = cnt;
      r.from = a;
      r.to = b;
    }
  };
  std::vector<std::int64_t> cnt(h.vertex_count(), 0);
  std::vector<VertexId> touched;
  bool exhaustive = sel.exhaustive || sel.n >= space.size();
  if (exhaustive) {
    for (VertexId v1 : *space.A) {
      touched.clear();
      for_each_3path(h, v1, type, [&](VertexId, VertexId, VertexId v4, std::uint32_t, std::uint32_t, std::uint32_t) {
        if (cnt[v4]++ == 0) touched.push_back(v4);
        ++r.total_paths;
      });
      for (VertexId v4 : touched) {
        consider(v1, v4, cnt[v4]);
        cnt[v4] = 0;
      }
      r.pairs += touched.size();
    }
  } else {
    auto idx = sample_indices(space.size(), sel.n, sel.seed);
    std::map<VertexId, std::vector<VertexId>> by_source;
    for (auto i : idx) {
      auto [a, b] = space.at(i);
      by_source[a].push_back(b);
    }
    for (auto& [v1, targets] : by_source) {
      touched.clear();
      for_each_3path(h, v1, type, [&](VertexId, VertexId, VertexId v4, std::uint32_t, std::uint32_t, std::uint32_t) {
        if (cnt[v4]++ == 0) touched.push_back(v4);
      });
      for (VertexId v4 : targets) {
        r.total_paths += cnt[v4];
        consider(v1, v4, cnt[v4]);
      }
      for (VertexId v4 : touched) cnt[v4] = 0;
    }
    r.pairs = idx.size();
  }
  auto& c = r.certificate;
  c = make_cert("berge", h.p, "Berge 3-paths of type " + type_name(type) + " per pair", r.max_count, bound);
  c.exhaustive = exhaustive;
  c.sample_size = exhaustive ? space.size() : sel.n;
  c.seed = exhaustive ? 0 : sel.seed;
  c.domain = space.size();
  if (r.max_count > 0) c.witness = berge_vertex(h, r.from) + " -> " + berge_vertex(h, r.to);
  return r;
}

std::int64_t berge_3path_count_between(const LinearHypergraph& h, const BergeType& type, VertexId from, VertexId to) {
  validate_type(type);
  std::int64_t total = 0;
  for_each_3path(h, from, type, [&](VertexId, VertexId, VertexId v4, std::uint32_t, std::uint32_t, std::uint32_t) {
    total += v4 == to;
  });
  return total;
}

namespace {

// All ordered edge triples; calls f(v1, v4) once per Berge 3-path of the type.
template <class F>
void naive_paths(const LinearHypergraph& h, const BergeType& type, F&& f) {
  const std::size_t m = h.edges.size();
  auto in = [](const Hyperedge& e, VertexId v) { return e.v[0] == v || e.v[1] == v || e.v[2] == v; };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const auto &a = h.edges[i], &b = h.edges[j];
      if (!in(b, a.v[0]) && !in(b, a.v[1]) && !in(b, a.v[2])) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        const auto &e1 = h.edges[i], &e2 = h.edges[j], &e3 = h.edges[k];
        for (VertexId v1 : e1.v)
          for (VertexId v2 : e1.v)
            for (VertexId v3 : e2.v)
              for (VertexId v4 : e3.v) {
                if (!in(e2, v2) || !in(e3, v3)) continue;
                if (!all_distinct({v1, v2, v3, v4})) continue;
                if (h.part(v1) != type[0] || h.part(v2) != type[1] || h.part(v3) != type[2] || h.part(v4) != type[3])
                  continue;
                f(v1, v4);
              }
      }
    }
}

}  // namespace

std::int64_t naive_berge_3path_max(const LinearHypergraph& h, const BergeType& type) {
  validate_type(type);
  std::map<std::pair<VertexId, VertexId>, std::int64_t> counts;
  naive_paths(h, type, [&](VertexId a, VertexId b) { ++counts[{a, b}]; });
  std::int64_t best = 0;
  for (const auto& [k, v] : counts) best = std::max(best, v);
  return best;
}

std::int64_t naive_berge_3path_count_between(const LinearHypergraph& h, const BergeType& type, VertexId from,
                                             VertexId to) {
  validate_type(type);
  std::int64_t total = 0;
  naive_paths(h, type, [&](VertexId a, VertexId b) { total += a == from && b == to; });
  return total;
}

std::optional<BergeCycle> berge_4cycle_exists(const LinearHypergraph& h, const BergeType& type) {
  validate_type(type);
  if (type[3] == type[0]) throw Error(ErrorKind::BadType, "cycle closes within one part in " + type_name(type));
  const auto parts = vertices_by_part(h);
  for (VertexId v1 : parts[type[0]]) {
    std::optional<BergeCycle> found;
    for_each_3path(h, v1, type, [&](VertexId v2, VertexId v3, VertexId v4, std::uint32_t e1, std::uint32_t e2,
                                    std::uint32_t e3) {
      if (found) return;
      for (std::uint32_t e4 : h.incidence[v4]) {
        if (e4 == e1 || e4 == e2 || e4 == e3) continue;
        const auto& ev = h.edges[e4].v;
        if (std::find(ev.begin(), ev.end(), v1) != ev.end()) {
          found = BergeCycle{{v1, v2, v3, v4}, {e1, e2, e3, e4}};
          return;
        }
      }
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::vector<StructureCertificate> certify_theta_berge_free(const LinearHypergraph& h, std::int64_t t,
                                                           const PairSelection& sel) {
  const auto parts = vertices_by_part(h);
  const std::size_t n = h.vertex_count();
  const BergeType any{0, 0, 0, 0};
  std::int64_t best[2] = {0, 0};  // same part, cross part
  std::pair<VertexId, VertexId> arg[2] = {{0, 0}, {0, 0}};
  std::vector<std::int64_t> cnt(n, 0);
  std::vector<VertexId> touched;
  auto note = [&](VertexId a, VertexId b, std::int64_t c) {
    const int cls = h.part(a) == h.part(b) ? 0 : 1;
    if (c > best[cls]) {
      best[cls] = c;
      arg[cls] = {a, b};
    }
  };
  auto run_source = [&](VertexId v1) {
    touched.clear();
    for_each_3path(h, v1, any, [&](VertexId, VertexId, VertexId v4, std::uint32_t, std::uint32_t, std::uint32_t) {
      if (cnt[v4]++ == 0) touched.push_back(v4);
    });
  };
  std::uint64_t same_domain = 0, cross_domain = 0;
  for (int i = 1; i <= 3; ++i) {
    const std::uint64_t s = parts[i].size();
    same_domain += s * (s - (s > 0));
    cross_domain += s * (n - s);
  }
  bool exhaustive = sel.exhaustive || (sel.n >= same_domain && sel.n >= cross_domain);
  if (exhaustive) {
    for (VertexId v1 = 0; v1 < n; ++v1) {
      run_source(v1);
      for (VertexId v4 : touched) {
        note(v1, v4, cnt[v4]);
        cnt[v4] = 0;
      }
    }
  } else {
    // Same-part and cross-part pairs sampled separately, each uniform without replacement.
    std::map<VertexId, std::vector<VertexId>> by_source;
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<PairSpace> spaces;
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          if ((i == j) == (cls == 0)) spaces.push_back({&parts[i], &parts[j], i == j});
        }
      }
      std::uint64_t total = 0;
      for (const auto& s : spaces) total += s.size();
      for (auto idx : sample_indices(total, sel.n, sel.seed + static_cast<std::uint64_t>(cls))) {
        for (const auto& s : spaces) {
          if (idx < s.size()) {
            auto [a, b] = s.at(idx);
            by_source[a].push_back(b);
            break;
          }
          idx -= s.size();
        }
      }
    }
    for (auto& [v1, targets] : by_source) {
      run_source(v1);
      for (VertexId v4 : targets) note(v1, v4, cnt[v4]);
      for (VertexId v4 : touched) cnt[v4] = 0;
    }
  }
  auto fill = [&](StructureCertificate c, int cls, std::uint64_t domain) {
    c.exhaustive = exhaustive;
    c.sample_size = exhaustive ? domain : std::min<std::uint64_t>(sel.n, domain);
    c.seed = exhaustive ? 0 : sel.seed;
    c.domain = domain;
    if (cls >= 0 && best[cls] > 0) c.witness = berge_vertex(h, arg[cls].first) + " -> " + berge_vertex(h, arg[cls].second);
    return c;
  };
  std::vector<StructureCertificate> out;
  out.push_back(fill(make_cert("berge", h.p, "Berge 3-paths between same-part vertices", best[0], 216), 0, same_domain));
  out.push_back(fill(make_cert("berge", h.p, "Berge 3-paths between cross-part vertices", best[1], 80), 1, cross_domain));
  const int top = best[0] >= best[1] ? 0 : 1;
  out.push_back(fill(make_cert("berge", h.p, "Berge 3-paths between any two vertices < " + std::to_string(t),
                               std::max(best[0], best[1]), t - 1),
                     top, same_domain + cross_domain));
  return out;
}

}  // namespace rescert
