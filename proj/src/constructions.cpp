#include "rescert/constructions.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "rescert/error.hpp"
#include "rescert/prime_field.hpp"

namespace rescert {

std::size_t Graph::edge_count() const {
  std::size_t s = 0;
  for (const auto& n : adj) s += n.size();
  return s / 2;
}

std::size_t Graph::min_degree() const {
  std::size_t m = adj.empty() ? 0 : adj[0].size();
  for (const auto& n : adj) m = std::min(m, n.size());
  return m;
}

std::size_t Graph::max_degree() const {
  std::size_t m = 0;
  for (const auto& n : adj) m = std::max(m, n.size());
  return m;
}

bool Graph::adjacent(VertexId u, VertexId v) const { return std::binary_search(adj[u].begin(), adj[u].end(), v); }

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (VertexId u = 0; u < adj.size(); ++u) {
    for (VertexId v : adj[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

void finish_adjacency(Graph& g) {
  for (auto& n : g.adj) {
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
  }
}

std::vector<std::uint64_t> digits_of(std::uint64_t id, std::uint64_t base, std::size_t k) {
  std::vector<std::uint64_t> d(k);
  for (std::size_t i = k; i-- > 0;) {
    d[i] = id % base;
    id /= base;
  }
  return d;
}

}  // namespace

Graph graph_from_edges(std::string kind, std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Graph g;
  g.kind = std::move(kind);
  g.adj.resize(n);
  g.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.labels[i] = {i};
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorKind::DomainError, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::DomainError, "self-loop at " + std::to_string(u));
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  finish_adjacency(g);
  return g;
}

void check_graph(const Graph& g) {
  for (VertexId u = 0; u < g.adj.size(); ++u) {
    const auto& n = g.adj[u];
    if (!std::is_sorted(n.begin(), n.end()) || std::adjacent_find(n.begin(), n.end()) != n.end()) {
      throw Error(ErrorKind::DomainError, "neighbour list of " + std::to_string(u) + " not strictly sorted");
    }
    for (VertexId v : n) {
      if (v == u) throw Error(ErrorKind::DomainError, "self-loop at " + std::to_string(u));
      if (!g.adjacent(v, u)) throw Error(ErrorKind::DomainError, "asymmetric edge " + std::to_string(u) + "-" + std::to_string(v));
    }
  }
}

SubdivBaseSet build_subdiv_base_set(std::uint64_t p) {
  if (!is_prime_u64(p) || p % 6 != 5 || p <= 11) {
    throw Error(ErrorKind::BadPrime, "subdivision construction needs a prime p = 5 mod 6 with p > 11, got " + std::to_string(p));
  }
  SubdivBaseSet s;
  s.p = p;
  for (std::uint64_t x = 1; x <= (p - 5) / 6; ++x) {
    if (x % 3 == 1) s.S.push_back(x);
  }
  return s;
}

std::string check_subdiv_conditions(const SubdivBaseSet& s) {
  const std::uint64_t p = s.p;
  const auto& S = s.S;
  // sums of two elements, for the four-term condition
  std::vector<char> pair_sum(p, 0);
  for (auto x : S) {
    for (auto y : S) {
      if ((x + y) % p == 0) return "x+y = 0 at x=" + std::to_string(x) + " y=" + std::to_string(y);
      if ((x + 5 * y) % p == 0) return "x+5y = 0 at x=" + std::to_string(x) + " y=" + std::to_string(y);
      if ((x * x + x * y + y * y) % p == 0) return "x^2+xy+y^2 = 0 at x=" + std::to_string(x) + " y=" + std::to_string(y);
      pair_sum[(x + y) % p] = 1;
    }
  }
  for (std::uint64_t a = 0; a < p; ++a) {
    if (pair_sum[a] && pair_sum[(p - a) % p]) return "x+y+z+t = 0 with x+y = " + std::to_string(a);
  }
  return {};
}

Graph build_subdivision_graph(std::uint64_t p) {
  const auto base = build_subdiv_base_set(p);
  if (auto msg = check_subdiv_conditions(base); !msg.empty()) throw Error(ErrorKind::BadPrime, msg);
  const PrimeField F(p);
  const auto& S = base.S;
  std::vector<std::int64_t> index_of(p, -1);
  for (std::size_t i = 0; i < S.size(); ++i) index_of[S[i]] = static_cast<std::int64_t>(i);
  Graph g;
  g.kind = "subdiv";
  g.p = p;
  const std::size_t n = S.size() * p * p;
  g.adj.resize(n);
  g.labels.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    const std::uint64_t x1 = S[id / (p * p)], x2 = (id / p) % p, x3 = id % p;
    g.labels[id] = {x1, x2, x3};
    for (std::size_t j = 0; j < S.size(); ++j) {
      const std::uint64_t y1 = S[j];
      const std::uint64_t y3 = F.sub(F.mul(x1, F.mul(y1, y1)), x2);
      const std::uint64_t y2 = F.sub(F.mul(F.mul(x1, x1), y1), x3);
      const std::size_t other = (j * p + y2) * p + y3;
      if (other != id) g.adj[id].push_back(static_cast<VertexId>(other));
    }
  }
  finish_adjacency(g);
  return g;
}

Graph build_theta_graph(std::uint64_t q) {
  if (q < 3 || !is_prime_u64(q)) throw Error(ErrorKind::BadPrime, "theta construction needs an odd prime, got " + std::to_string(q));
  if (q > 251) throw Error(ErrorKind::DomainError, "q too large for 32-bit vertex ids");
  const PrimeField F(q);
  Graph g;
  g.kind = "theta";
  g.p = q;
  const std::size_t n = q * q * q * q;
  g.adj.resize(n);
  g.labels.resize(n);
  for (std::size_t id = 0; id < n; ++id) {
    const auto u = digits_of(id, q, 4);
    g.labels[id] = u;
    for (std::uint64_t v1 = 0; v1 < q; ++v1) {
      const std::uint64_t v2 = F.sub(F.mul(u[0], v1), u[1]);
      const std::uint64_t v4 = F.sub(F.mul(u[0], F.mul(v1, v1)), u[2]);
      const std::uint64_t v3 = F.sub(F.mul(F.mul(u[0], u[0]), v1), u[3]);
      const std::size_t other = ((v1 * q + v2) * q + v3) * q + v4;
      if (other != id) g.adj[id].push_back(static_cast<VertexId>(other));
    }
  }
  finish_adjacency(g);
  return g;
}

const std::array<std::pair<long, long>, 6>& berge_quintic() {
  static const std::array<std::pair<long, long>, 6> c = {
      {{1, 1}, {-12757, 10872}, {1123, 3624}, {289, 1359}, {-49, 453}, {-2, 151}}};
  return c;
}

BergeIndexSets build_berge_index_sets(std::uint64_t p) {
  if (p < 3 || !is_prime_u64(p)) throw Error(ErrorKind::BadPrime, "hypergraph construction needs an odd prime, got " + std::to_string(p));
  const PrimeField F(p);
  std::vector<std::uint64_t> coeff;
  for (auto [num, den] : berge_quintic()) {
    if (static_cast<std::uint64_t>(den) % p == 0) {
      throw Error(ErrorKind::BadReduction, std::to_string(p) + " divides the denominator " + std::to_string(den));
    }
    coeff.push_back(F.div(F.reduce(num), F.reduce(den)));
  }
  BergeIndexSets s;
  s.p = p;
  std::vector<char> neg_square(p, 0), excluded(p, 0);
  for (std::uint64_t x = 0; x < p; ++x) neg_square[F.neg(F.mul(x, x))] = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const bool t4 = F.add(F.sub(F.mul(x, x), F.mul(4, x)), 1) == 0 || F.sub(F.mul(3, x), 1) == 0 ||
                    F.sub(F.mul(3, x), 2) == 0;
    std::uint64_t v = 0;
    for (auto c : coeff) v = F.add(F.mul(v, x), c);
    if (t4) s.T4.push_back(x);
    if (v == 0) s.T5.push_back(x);
    excluded[x] = t4 || v == 0;
  }
  auto in_t1 = [&](std::uint64_t x) { return x >= 2 && x <= (p - 1) / 2; };
  auto in_t2 = [&](std::uint64_t x) { return x >= (p + 3) / 2 && x <= p - 1; };
  for (std::uint64_t x = 0; x < p; ++x) {
    if (neg_square[x]) continue;
    s.t1_cap_t3 += in_t1(x);
    s.t2_cap_t3 += in_t2(x);
  }
  s.half = 4 * s.t1_cap_t3 + 7 >= p ? 1 : 2;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (neg_square[x] || excluded[x]) continue;
    if (s.half == 1 ? in_t1(x) : in_t2(x)) s.S1.push_back(x);
  }
  for (std::uint64_t x = 2; x < p; ++x) s.S2.push_back(x);
  if (s.S1.empty()) throw Error(ErrorKind::EmptyS1, "S1 is empty at p = " + std::to_string(p));
  return s;
}

void LinearHypergraph::rebuild_incidence() {
  incidence.assign(labels.size(), {});
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    for (VertexId v : edges[e].v) incidence[v].push_back(e);
  }
}

void check_linear(const LinearHypergraph& h) {
  std::unordered_map<std::uint64_t, std::uint32_t> owner;
  owner.reserve(3 * h.edges.size());
  for (std::uint32_t e = 0; e < h.edges.size(); ++e) {
    const auto& v = h.edges[e].v;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const std::uint64_t a = std::min(v[i], v[j]), b = std::max(v[i], v[j]);
        auto [it, fresh] = owner.emplace((a << 32) | b, e);
        if (!fresh) {
          throw Error(ErrorKind::LinearityViolation, "edges " + std::to_string(it->second) + " and " +
                                                         std::to_string(e) + " share vertices " + std::to_string(a) +
                                                         ", " + std::to_string(b));
        }
      }
    }
  }
}

LinearHypergraph build_berge_hypergraph(std::uint64_t p) {
  LinearHypergraph h;
  h.p = p;
  h.sets = build_berge_index_sets(p);
  const auto& S1 = h.sets.S1;
  const std::uint64_t w = p - 2;
  if (3 * S1.size() * w * w > 0xffffffffULL) throw Error(ErrorKind::DomainError, "p too large for 32-bit vertex ids");
  std::vector<std::int64_t> s1_index(p, -1);
  for (std::size_t i = 0; i < S1.size(); ++i) s1_index[S1[i]] = static_cast<std::int64_t>(i);
  // Lexicographic order of (b, c, d, part).
  auto id_of = [&](std::uint64_t b, std::uint64_t c, std::uint64_t d, std::uint64_t part) {
    return static_cast<VertexId>(((static_cast<std::uint64_t>(s1_index[b]) * w + (c - 2)) * w + (d - 2)) * 3 + (part - 1));
  };
  const std::size_t n = 3 * S1.size() * w * w;
  h.labels.resize(n);
  for (auto b : S1) {
    for (std::uint64_t c = 2; c < p; ++c) {
      for (std::uint64_t d = 2; d < p; ++d) {
        for (std::uint64_t part = 1; part <= 3; ++part) h.labels[id_of(b, c, d, part)] = {b, c, d, part};
      }
    }
  }
  const PrimeField F(p);
  auto in_s2 = [](std::uint64_t v) { return v >= 2; };
  for (auto x1 : S1) {
    for (auto x2 : S1) {
      for (auto x3 : S1) {
        // (x1, x2 x3 + a, x2^2 x3 + a), (x2, x3 x1 + a, x3^2 x1 + a), (x3, x1 x2 + a, x1^2 x2 + a)
        const std::uint64_t c1 = F.mul(x2, x3), d1 = F.mul(c1, x2);
        const std::uint64_t c2 = F.mul(x3, x1), d2 = F.mul(c2, x3);
        const std::uint64_t c3 = F.mul(x1, x2), d3 = F.mul(c3, x1);
        for (std::uint64_t a = 1; a < p; ++a) {
          const std::uint64_t v[6] = {F.add(c1, a), F.add(d1, a), F.add(c2, a), F.add(d2, a), F.add(c3, a), F.add(d3, a)};
          if (!std::all_of(v, v + 6, in_s2)) continue;
          Hyperedge e;
          e.v = {id_of(x1, v[0], v[1], 1), id_of(x2, v[2], v[3], 2), id_of(x3, v[4], v[5], 3)};
          e.gen = {x1, x2, x3, a};
          h.edges.push_back(e);
        }
      }
    }
  }
  h.rebuild_incidence();
  check_linear(h);
  return h;
}

LinearHypergraph restrict_to_parts(const LinearHypergraph& h, unsigned parts) {
  LinearHypergraph r;
  r.p = h.p;
  r.sets = h.sets;
  r.labels = h.labels;
  for (const auto& e : h.edges) {
    bool keep = true;
    for (VertexId v : e.v) keep = keep && ((parts >> (h.part(v) - 1)) & 1u);
    if (keep) r.edges.push_back(e);
  }
  r.rebuild_incidence();
  return r;
}

Graph relabel(const Graph& g, const std::vector<VertexId>& perm) {
  Graph r;
  r.kind = g.kind;
  r.p = g.p;
  r.adj.resize(g.adj.size());
  r.labels.resize(g.labels.size());
  for (VertexId u = 0; u < g.adj.size(); ++u) {
    r.labels[perm[u]] = g.labels[u];
    for (VertexId v : g.adj[u]) r.adj[perm[u]].push_back(perm[v]);
  }
  finish_adjacency(r);
  return r;
}

LinearHypergraph relabel(const LinearHypergraph& h, const std::vector<VertexId>& perm) {
  LinearHypergraph r;
  r.p = h.p;
  r.sets = h.sets;
  r.labels.resize(h.labels.size());
  for (VertexId u = 0; u < h.labels.size(); ++u) r.labels[perm[u]] = h.labels[u];
  r.edges = h.edges;
  for (auto& e : r.edges) {
    for (auto& v : e.v) v = perm[v];
  }
  r.rebuild_incidence();
  return r;
}

std::string format_label(const std::vector<std::uint64_t>& label) {
  std::string s = "(";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(label[i]);
  }
  return s + ")";
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

}  // namespace

void write_graph(const Graph& g, const std::string& edge_path, const std::string& label_path) {
  auto out = open_out(edge_path);
  const auto es = g.edges();
  out << "# kind=" << g.kind << " p=" << g.p << " n=" << g.vertex_count() << " m=" << es.size() << "\n";
  for (auto [u, v] : es) out << u << " " << v << "\n";
  auto lab = open_out(label_path);
  for (std::size_t i = 0; i < g.labels.size(); ++i) lab << i << "\t" << format_label(g.labels[i]) << "\n";
}

Graph read_graph(const std::string& edge_path) {
  std::ifstream in(edge_path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + edge_path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw Error(ErrorKind::ParseError, "missing header in " + edge_path);
  std::map<std::string, std::string> kv;
  std::istringstream hs(line.substr(2));
  for (std::string tok; hs >> tok;) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  if (!kv.count("kind") || !kv.count("n")) throw Error(ErrorKind::ParseError, "header lacks kind/n in " + edge_path);
  std::vector<std::pair<VertexId, VertexId>> es;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    VertexId u, v;
    if (!(ls >> u >> v)) throw Error(ErrorKind::ParseError, "bad edge line '" + line + "'");
    es.emplace_back(u, v);
  }
  Graph g = graph_from_edges(kv["kind"], std::stoul(kv["n"]), es);
  if (kv.count("p")) g.p = std::stoull(kv["p"]);
  return g;
}

void write_hypergraph(const LinearHypergraph& h, const std::string& edge_path, const std::string& label_path) {
  auto out = open_out(edge_path);
  out << "# kind=berge p=" << h.p << " n=" << h.vertex_count() << " m=" << h.edges.size() << "\n";
  for (const auto& e : h.edges) {
    out << e.v[0] << " " << e.v[1] << " " << e.v[2] << " # " << e.gen[0] << " " << e.gen[1] << " " << e.gen[2] << " "
        << e.gen[3] << "\n";
  }
  auto lab = open_out(label_path);
  for (std::size_t i = 0; i < h.labels.size(); ++i) {
    lab << i << "\t" << format_label({h.labels[i].begin(), h.labels[i].end()}) << "\n";
  }
}

}  // namespace rescert
