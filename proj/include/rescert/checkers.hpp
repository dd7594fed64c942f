#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rescert/constructions.hpp"

namespace rescert {

struct StructureCertificate {
  std::string construction;  // kind of the object checked
  std::uint64_t p = 0;
  std::string check;
  bool exhaustive = true;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  std::size_t domain = 0;  // items enumerated (triples, pairs, ...)
  std::int64_t measured_max = 0;
  std::int64_t bound = 0;
  bool pass = false;
  std::string witness;
};

// ---- fans ----------------------------------------------------------------

// Sequences (x,y,z,w) with a-x-w, b-y-w, c-z-w, all seven vertices distinct,
// grouped by the ordered triple (a,b,c).
struct FanResult {
  std::int64_t max_count = 0;
  std::array<VertexId, 3> argmax{};
  std::size_t triples = 0;      // distinct (a,b,c) seen
  std::size_t sequences = 0;    // total 7-tuples enumerated
  StructureCertificate certificate;
};

// Pivots on w. Graphs built by another construction (kind "theta") are
// rejected with WrongKind; hand-built graphs are accepted.
FanResult max_fan_count(const Graph& g);
std::int64_t fan_count_for(const Graph& g, VertexId a, VertexId b, VertexId c);

// Oracles: plain nested loops over the vertex set with an adjacency matrix.
std::int64_t naive_max_fan_count(const Graph& g);
std::int64_t naive_fan_count_for(const Graph& g, VertexId a, VertexId b, VertexId c);

// pass iff max fan count <= t - 1.
StructureCertificate certify_subdivision_free(const Graph& g, std::int64_t t);

// ---- internally disjoint paths ---------------------------------------------

// Simple u-v paths with exactly k edges, as their internal vertex lists.
std::vector<std::vector<VertexId>> paths_of_length(const Graph& g, VertexId u, VertexId v, unsigned k);

// Largest family of pairwise internally disjoint paths among `paths`.
std::size_t max_disjoint_family(const std::vector<std::vector<VertexId>>& paths);

std::size_t max_internally_disjoint_paths(const Graph& g, VertexId u, VertexId v, unsigned k);

// Max over all ordered pairs; raw path counts are computed first and only
// pairs with at least three raw paths are maximised. bound = t - 1.
StructureCertificate certify_disjoint_paths(const Graph& g, unsigned k, std::int64_t t);

// ---- Berge paths and cycles ----------------------------------------------

using BergeType = std::array<int, 4>;
void validate_type(const BergeType& type);  // BadType
std::string type_name(const BergeType& type);

struct PairSelection {
  bool exhaustive = true;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  static PairSelection all() { return {}; }
  static PairSelection sample(std::size_t n, std::uint64_t seed) { return {false, n, seed}; }
};

struct BergePathResult {
  std::int64_t max_count = 0;
  VertexId from = 0, to = 0;
  std::size_t pairs = 0;       // pairs examined (all pairs with a path when exhaustive)
  std::size_t total_paths = 0;
  StructureCertificate certificate;
};

// Paths v1 e1 v2 e2 v3 e3 v4: distinct edges, distinct core vertices,
// v_j in part type[j].
BergePathResult berge_3path_counts(const LinearHypergraph& h, const BergeType& type, const PairSelection& sel,
                                   std::int64_t bound = 0);
std::int64_t berge_3path_count_between(const LinearHypergraph& h, const BergeType& type, VertexId from, VertexId to);

// Oracle: all ordered triples of distinct edges.
// Returns max over ordered pairs of the count of the given type.
std::int64_t naive_berge_3path_max(const LinearHypergraph& h, const BergeType& type);
std::int64_t naive_berge_3path_count_between(const LinearHypergraph& h, const BergeType& type, VertexId from,
                                             VertexId to);

struct BergeCycle {
  std::array<VertexId, 4> v;
  std::array<std::uint32_t, 4> e;
};
std::optional<BergeCycle> berge_4cycle_exists(const LinearHypergraph& h, const BergeType& type);

// Totals over all types: same-part pairs against 216, cross-part pairs
// against 80, and every pair against t - 1. Returns the three certificates.
std::vector<StructureCertificate> certify_theta_berge_free(const LinearHypergraph& h, std::int64_t t,
                                                           const PairSelection& sel);

}  // namespace rescert
