#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "rescert/checkers.hpp"
#include "rescert/constructions.hpp"
#include "rescert/error.hpp"
#include "rescert/prime_field.hpp"

using namespace rescert;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

std::int64_t md(std::int64_t v, std::int64_t p) { return ((v % p) + p) % p; }

}  // namespace

TEST(SubdivBase, Examples) {
  EXPECT_EQ(build_subdiv_base_set(29).S, (std::vector<std::uint64_t>{1, 4}));
  EXPECT_EQ(build_subdiv_base_set(17).S, (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(kind_of([] { build_subdiv_base_set(13); }), ErrorKind::BadPrime);
  EXPECT_EQ(kind_of([] { build_subdiv_base_set(11); }), ErrorKind::BadPrime);
  EXPECT_EQ(kind_of([] { build_subdiv_base_set(35); }), ErrorKind::BadPrime);
}

TEST(SubdivBase, ConditionsHoldAndCountMatchesFormula) {
  for (std::uint64_t p = 17; p < 400; ++p) {
    if (!is_prime_u64(p) || p % 6 != 5) continue;
    const auto s = build_subdiv_base_set(p);
    EXPECT_EQ(check_subdiv_conditions(s), "") << p;
    // direct S^4 scan
    for (auto x : s.S)
      for (auto y : s.S)
        for (auto z : s.S)
          for (auto t : s.S) ASSERT_NE((x + y + z + t) % p, 0u);
    EXPECT_EQ(s.S.size(), static_cast<std::size_t>(std::ceil((static_cast<double>(p) - 5) / 18))) << p;
  }
}

TEST(SubdivGraph, CountsAndEquations) {
  const auto g = build_subdivision_graph(29);
  check_graph(g);
  EXPECT_EQ(g.vertex_count(), 1682u);
  EXPECT_GE(g.min_degree(), 1u);
  EXPECT_LE(g.max_degree(), 2u);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto& x = g.labels[u];
    for (VertexId v : g.adj[u]) {
      const auto& y = g.labels[v];
      const std::int64_t p = 29;
      EXPECT_EQ(md(x[1] + y[2] - std::int64_t(x[0] * y[0] * y[0]), p), 0);
      EXPECT_EQ(md(x[2] + y[1] - std::int64_t(x[0] * x[0] * y[0]), p), 0);
    }
  }
  // Lexicographic ids.
  for (VertexId u = 1; u < g.vertex_count(); ++u) EXPECT_LT(g.labels[u - 1], g.labels[u]);
}

TEST(SubdivGraph, DegreesAndCommonNeighbours) {
  for (std::uint64_t p : {17u, 23u, 29u, 41u, 47u, 53u}) {
    const auto g = build_subdivision_graph(p);
    const auto s = build_subdiv_base_set(p).S.size();
    EXPECT_EQ(g.vertex_count(), s * p * p);
    for (const auto& n : g.adj) EXPECT_TRUE(n.size() == s || n.size() + 1 == s);
    EXPECT_GE(static_cast<double>(g.min_degree()), (static_cast<double>(p) - 23) / 18);
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
      for (VertexId x : g.adj[w]) {
        for (VertexId y : g.adj[w]) {
          if (x == y) continue;
          for (int i = 0; i < 3; ++i) EXPECT_NE(g.labels[x][i], g.labels[y][i]);
        }
      }
    }
  }
}

TEST(ThetaGraph, CountsAndEquations) {
  EXPECT_EQ(build_theta_graph(5).vertex_count(), 625u);
  const auto g = build_theta_graph(7);
  EXPECT_EQ(g.vertex_count(), 2401u);
  check_graph(g);
  const std::int64_t q = 7;
  for (VertexId a = 0; a < g.vertex_count(); ++a) {
    const auto& u = g.labels[a];
    for (VertexId b : g.adj[a]) {
      const auto& v = g.labels[b];
      EXPECT_EQ(md(u[1] + v[1] - std::int64_t(u[0] * v[0]), q), 0);
      EXPECT_EQ(md(u[2] + v[3] - std::int64_t(u[0] * v[0] * v[0]), q), 0);
      EXPECT_EQ(md(u[3] + v[2] - std::int64_t(u[0] * u[0] * v[0]), q), 0);
    }
    for (VertexId x : g.adj[a])
      for (VertexId y : g.adj[a])
        if (x != y) EXPECT_NE(g.labels[x][0], g.labels[y][0]);
  }
  EXPECT_EQ(kind_of([] { build_theta_graph(4); }), ErrorKind::BadPrime);
  EXPECT_EQ(kind_of([] { build_theta_graph(2); }), ErrorKind::BadPrime);
  EXPECT_EQ(kind_of([] { build_theta_graph(9); }), ErrorKind::BadPrime);
}

TEST(BergeSets, Examples) {
  EXPECT_EQ(kind_of([] { build_berge_index_sets(151); }), ErrorKind::BadReduction);
  EXPECT_EQ(kind_of([] { build_berge_index_sets(3); }), ErrorKind::BadReduction);
  EXPECT_EQ(kind_of([] { build_berge_index_sets(5); }), ErrorKind::EmptyS1);
  EXPECT_EQ(kind_of([] { build_berge_index_sets(15); }), ErrorKind::BadPrime);
  // Cross-checked by a separate enumeration.
  EXPECT_EQ(build_berge_index_sets(29).S1, (std::vector<std::uint64_t>{2, 3, 8, 11, 12, 14}));
  EXPECT_EQ(build_berge_index_sets(13).S1, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(build_berge_index_sets(7).S1, (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(build_berge_index_sets(59).T5, (std::vector<std::uint64_t>{38, 54}));
}

TEST(BergeSets, Invariants) {
  for (std::uint64_t p = 7; p < 400; ++p) {
    if (!is_prime_u64(p) || p == 151) continue;
    const auto s = build_berge_index_sets(p);
    EXPECT_EQ(s.S2.size(), p - 2);
    EXPECT_GE(4.0 * static_cast<double>(s.S1.size()), static_cast<double>(p) - 43) << p;
    EXPECT_LE(s.T4.size(), 4u);
    EXPECT_LE(s.T5.size(), 5u);
    EXPECT_GE(4 * std::max(s.t1_cap_t3, s.t2_cap_t3) + 7, p);
    std::set<std::uint64_t> bad(s.T4.begin(), s.T4.end());
    bad.insert(s.T5.begin(), s.T5.end());
    bad.insert(0);
    bad.insert(1);
    for (auto x : s.S1) {
      EXPECT_FALSE(bad.count(x));
      for (std::uint64_t y = 0; y < p; ++y) EXPECT_NE((x + y * y) % p, 0u);
      if (s.half == 1) {
        EXPECT_TRUE(x >= 2 && x <= (p - 1) / 2);
      } else {
        EXPECT_TRUE(x >= (p + 3) / 2);
      }
    }
  }
}

TEST(BergeHypergraph, CountsLinearityAndGenerators) {
  // Edge counts from a separate enumeration.
  const std::map<std::uint64_t, std::size_t> expected_edges = {{7, 3}, {11, 37}, {13, 8}, {17, 73}, {19, 662}, {29, 3951}};
  for (auto [p, m] : expected_edges) {
    const auto h = build_berge_hypergraph(p);
    const auto k = h.sets.S1.size();
    EXPECT_EQ(h.vertex_count(), 3 * k * (p - 2) * (p - 2));
    EXPECT_EQ(h.edges.size(), m) << p;
    std::set<std::array<VertexId, 3>> distinct;
    for (const auto& e : h.edges) {
      for (int i = 0; i < 3; ++i) EXPECT_EQ(h.part(e.v[i]), i + 1);
      distinct.insert(e.v);
      const std::uint64_t x[3] = {e.gen[0], e.gen[1], e.gen[2]}, a = e.gen[3];
      for (int i = 0; i < 3; ++i) {
        const auto& lab = h.labels[e.v[i]];
        const std::uint64_t y = x[(i + 1) % 3], z = x[(i + 2) % 3];
        EXPECT_EQ(lab[0], x[i]);
        EXPECT_EQ(lab[1], (y * z + a) % p);
        EXPECT_EQ(lab[2], (y * y * z + a) % p);
      }
    }
    EXPECT_EQ(distinct.size(), h.edges.size());
    EXPECT_NO_THROW(check_linear(h));
  }
}

TEST(BergeHypergraph, LinearityViolationDetected) {
  auto h = build_berge_hypergraph(19);
  h.edges.push_back(h.edges.front());
  h.edges.back().v[2] = h.edges.back().v[2] + 3;  // still shares two vertices
  EXPECT_EQ(kind_of([&] { check_linear(h); }), ErrorKind::LinearityViolation);
}

TEST(Files, GraphRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "rescert_files_test";
  std::filesystem::create_directories(dir);
  const auto g = build_subdivision_graph(17);
  write_graph(g, (dir / "g.edges").string(), (dir / "g.labels").string());
  const auto r = read_graph((dir / "g.edges").string());
  EXPECT_EQ(r.adj, g.adj);
  EXPECT_EQ(r.kind, "subdiv");
  std::ifstream in(dir / "g.edges");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# kind=subdiv p=17 n=289 m=" + std::to_string(g.edge_count()));
  std::ifstream lab(dir / "g.labels");
  std::string first;
  std::getline(lab, first);
  EXPECT_EQ(first, "0\t(1,0,0)");
  std::filesystem::remove_all(dir);
}

// ---- checkers ----

TEST(Fans, SmallGraphs) {
  const auto path = graph_from_edges("custom", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(max_fan_count(path).max_count, 0);
  std::vector<std::pair<VertexId, VertexId>> k7;
  for (VertexId i = 0; i < 7; ++i)
    for (VertexId j = i + 1; j < 7; ++j) k7.emplace_back(i, j);
  const auto g = graph_from_edges("custom", 7, k7);
  const auto oracle = naive_fan_count_for(g, 0, 1, 2);
  EXPECT_EQ(fan_count_for(g, 0, 1, 2), oracle);
  EXPECT_EQ(oracle, 24);  // 4 choices of w, then 3! orderings of the rest
  EXPECT_EQ(max_fan_count(g).max_count, naive_max_fan_count(g));
}

TEST(Fans, SubdivisionGraphs) {
  // Maxima agree with a separate enumeration: 0 at 29 and 41, 1 at 53.
  EXPECT_EQ(max_fan_count(build_subdivision_graph(29)).max_count, 0);
  EXPECT_EQ(max_fan_count(build_subdivision_graph(41)).max_count, 0);
  const auto g53 = build_subdivision_graph(53);
  const auto r = max_fan_count(g53);
  EXPECT_EQ(r.max_count, 1);
  EXPECT_EQ(fan_count_for(g53, r.argmax[0], r.argmax[1], r.argmax[2]), 1);
  EXPECT_TRUE(certify_subdivision_free(build_subdivision_graph(29), 25).pass);
  EXPECT_FALSE(certify_subdivision_free(g53, 1).pass);
  EXPECT_EQ(kind_of([] { max_fan_count(build_theta_graph(3)); }), ErrorKind::WrongKind);
  EXPECT_EQ(kind_of([] { certify_subdivision_free(build_theta_graph(3), 25); }), ErrorKind::WrongKind);
}

TEST(DisjointPaths, Examples) {
  std::vector<std::pair<VertexId, VertexId>> c8;
  for (VertexId i = 0; i < 8; ++i) c8.emplace_back(i, (i + 1) % 8);
  EXPECT_EQ(max_internally_disjoint_paths(graph_from_edges("custom", 8, c8), 0, 4, 4), 2u);
  std::vector<std::pair<VertexId, VertexId>> k4;
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
  EXPECT_EQ(max_internally_disjoint_paths(graph_from_edges("custom", 4, k4), 0, 1, 2), 2u);
  EXPECT_EQ(kind_of([&] { max_internally_disjoint_paths(graph_from_edges("custom", 4, k4), 0, 0, 2); }),
            ErrorKind::DomainError);
  const auto c = certify_disjoint_paths(build_theta_graph(5), 4, 3);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.measured_max, 2);
}

namespace {

// Four edges over three parts with a (1,2,1,2) Berge 4-cycle through the
// vertices 0 (part 1), 1 (part 2), 3 (part 1), 4 (part 2).
LinearHypergraph four_cycle() {
  LinearHypergraph h;
  h.labels = {{0, 0, 0, 1}, {0, 0, 0, 2}, {0, 0, 0, 3}, {1, 0, 0, 1}, {1, 0, 0, 2},
              {1, 0, 0, 3}, {2, 0, 0, 3}, {3, 0, 0, 3}};
  h.edges = {{{0, 1, 2}, {}}, {{3, 1, 5}, {}}, {{3, 4, 6}, {}}, {{0, 4, 7}, {}}};
  h.rebuild_incidence();
  return h;
}

}  // namespace

TEST(Berge, TypesAndCycles) {
  const auto h = four_cycle();
  EXPECT_NO_THROW(check_linear(h));
  EXPECT_EQ(kind_of([&] { berge_3path_counts(h, {1, 1, 2, 3}, PairSelection::all()); }), ErrorKind::BadType);
  EXPECT_EQ(kind_of([&] { berge_3path_counts(h, {1, 2, 4, 3}, PairSelection::all()); }), ErrorKind::BadType);
  const auto cyc = berge_4cycle_exists(h, {1, 2, 1, 2});
  ASSERT_TRUE(cyc.has_value());
  std::set<std::uint32_t> es(cyc->e.begin(), cyc->e.end());
  EXPECT_EQ(es.size(), 4u);
  EXPECT_FALSE(berge_4cycle_exists(restrict_to_parts(h, 1u), {1, 2, 1, 2}).has_value());
  EXPECT_EQ(berge_3path_count_between(h, {1, 2, 1, 2}, 0, 4), 1);
  EXPECT_EQ(naive_berge_3path_count_between(h, {1, 2, 1, 2}, 0, 4), 1);
}

TEST(Berge, ConstructionChecks) {
  // Smallest prime with S1 nonempty.
  const auto h7 = build_berge_hypergraph(7);
  EXPECT_FALSE(berge_4cycle_exists(h7, {1, 2, 1, 2}).has_value());
  const auto h = build_berge_hypergraph(19);
  EXPECT_FALSE(berge_4cycle_exists(h, {1, 2, 1, 2}).has_value());
  // Maxima from a separate enumeration at p = 19.
  EXPECT_EQ(berge_3path_counts(h, {1, 2, 1, 2}, PairSelection::all()).max_count, 1);
  EXPECT_EQ(berge_3path_counts(h, {1, 2, 3, 1}, PairSelection::all()).max_count, 1);
  EXPECT_EQ(berge_3path_counts(h, {1, 2, 3, 2}, PairSelection::all()).max_count, 1);
  const auto certs = certify_theta_berge_free(h, 217, PairSelection::all());
  for (const auto& c : certs) EXPECT_TRUE(c.pass) << c.check;
  const auto fail = certify_theta_berge_free(h, 1, PairSelection::all());
  EXPECT_FALSE(fail.back().pass);
}

TEST(Berge, SamplingIsReproducible) {
  const auto h = build_berge_hypergraph(29);
  const auto a = berge_3path_counts(h, {1, 2, 3, 1}, PairSelection::sample(1000, 7), 108);
  const auto b = berge_3path_counts(h, {1, 2, 3, 1}, PairSelection::sample(1000, 7), 108);
  EXPECT_FALSE(a.certificate.exhaustive);
  EXPECT_EQ(a.pairs, 1000u);
  EXPECT_EQ(a.max_count, b.max_count);
  EXPECT_EQ(a.total_paths, b.total_paths);
  EXPECT_EQ(a.certificate.witness, b.certificate.witness);
  // Small domains fall back to every pair.
  const auto h7 = build_berge_hypergraph(7);
  const auto c = berge_3path_counts(h7, {1, 2, 1, 2}, PairSelection::sample(1000, 7), 8);
  EXPECT_TRUE(c.certificate.exhaustive);
  EXPECT_EQ(c.certificate.sample_size, 25u * 25u);
}
