#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rescert {

using VertexId = std::uint32_t;

// Simple undirected graph on ids 0..n-1 with sorted neighbour lists.
struct Graph {
  std::string kind;  // "subdiv", "theta", or anything for hand-built graphs
  std::uint64_t p = 0;
  std::vector<std::vector<std::uint64_t>> labels;
  std::vector<std::vector<VertexId>> adj;

  std::size_t vertex_count() const { return adj.size(); }
  std::size_t edge_count() const;
  std::size_t min_degree() const;
  std::size_t max_degree() const;
  bool adjacent(VertexId u, VertexId v) const;
  std::vector<std::pair<VertexId, VertexId>> edges() const;  // u < v, sorted
};

// Symmetric graph from an edge list; rejects loops, duplicates collapse.
Graph graph_from_edges(std::string kind, std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges);

// Throws unless adjacency is symmetric, sorted, loop free.
void check_graph(const Graph& g);

struct SubdivBaseSet {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> S;
};

// S = {x in 1..(p-5)/6 : x = 1 mod 3}; p prime, p = 5 mod 6, p > 11.
SubdivBaseSet build_subdiv_base_set(std::uint64_t p);

// The four non-vanishing conditions over S^4, checked exhaustively.
// Returns an empty string on success, else a description of the failure.
std::string check_subdiv_conditions(const SubdivBaseSet& s);

// Vertices S x F_p x F_p, x ~ y iff x != y, x2 + y3 = x1 y1^2, x3 + y2 = x1^2 y1.
Graph build_subdivision_graph(std::uint64_t p);

// Vertices F_q^4, u ~ v iff u != v, u2 + v2 = u1 v1, u3 + v4 = u1 v1^2, u4 + v3 = u1^2 v1.
Graph build_theta_graph(std::uint64_t q);

struct BergeIndexSets {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> S1;
  std::vector<std::uint64_t> S2;
  int half = 1;  // 1 or 2: which of T1, T2 was intersected with T3
  std::size_t t1_cap_t3 = 0, t2_cap_t3 = 0;
  std::vector<std::uint64_t> T4, T5;
};

// Coefficients of the quintic excluded set, leading first.
const std::array<std::pair<long, long>, 6>& berge_quintic();

BergeIndexSets build_berge_index_sets(std::uint64_t p);

struct Hyperedge {
  std::array<VertexId, 3> v;          // one vertex per part, part order 1,2,3
  std::array<std::uint64_t, 4> gen;  // x1, x2, x3, a
};

struct LinearHypergraph {
  std::uint64_t p = 0;
  BergeIndexSets sets;
  std::vector<std::array<std::uint64_t, 4>> labels;  // (b, c, d, part)
  std::vector<Hyperedge> edges;
  std::vector<std::vector<std::uint32_t>> incidence;  // vertex -> edge indices

  std::size_t vertex_count() const { return labels.size(); }
  int part(VertexId v) const { return static_cast<int>(labels[v][3]); }
  void rebuild_incidence();
};

// Throws LinearityViolation with the offending pair of edges.
void check_linear(const LinearHypergraph& h);

LinearHypergraph build_berge_hypergraph(std::uint64_t p);

// Same vertices, only edges whose three vertices all lie in `parts` (bitmask
// over parts 1..3, bit i-1).
LinearHypergraph restrict_to_parts(const LinearHypergraph& h, unsigned parts);

// Relabels vertex ids by a permutation (perm[old] = new).
Graph relabel(const Graph& g, const std::vector<VertexId>& perm);
LinearHypergraph relabel(const LinearHypergraph& h, const std::vector<VertexId>& perm);

std::string format_label(const std::vector<std::uint64_t>& label);

// File formats: graph edge list + label file; hypergraph edge list with the
// generator tuple as a trailing comment.
void write_graph(const Graph& g, const std::string& edge_path, const std::string& label_path);
Graph read_graph(const std::string& edge_path);
void write_hypergraph(const LinearHypergraph& h, const std::string& edge_path, const std::string& label_path);

}  // namespace rescert
