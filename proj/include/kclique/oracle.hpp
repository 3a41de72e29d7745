#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kclique/counting.hpp"
#include "kclique/graph.hpp"

namespace kclique::oracle {

/// Reference implementations used to check the fast paths. They share no
/// code with the production algorithms: everything here works on the
/// undirected graph in plain id order, exhaustively. Inputs above these
/// limits are refused with std::invalid_argument.
inline constexpr VertexId kMaxSubsetVertices = 16;  // 2^n subset scans
inline constexpr VertexId kMaxEnumVertices = 40;    // clique backtracking

/// Exact k-clique count by backtracking over ascending vertex ids.
/// Always fills per_vertex. Requires k >= 2 and n <= kMaxEnumVertices.
CliqueCounts brute_force_count(const Graph& g, int k);

/// Exact arboricity: max over vertex subsets U (|U| >= 2) of
/// ceil(edges(U) / (|U| - 1)). 0 for edgeless graphs. Requires
/// n <= kMaxSubsetVertices.
uint64_t exact_arboricity(const Graph& g);

struct DensestResult {
  double density = 0.0;
  std::vector<VertexId> subset;  // ascending
};

/// Exhaustive k-clique densest subgraph: maximizes
/// (k-cliques inside U) / |U| over all nonempty U. Ties prefer smaller
/// |U|, then the lexicographically smallest vertex sequence. Requires
/// k >= 2 and n <= kMaxSubsetVertices.
DensestResult exact_densest(const Graph& g, int k);

/// result[z] = unordered pairs of distinct k-cliques sharing exactly z
/// vertices, for z in [2, k-1]; other slots stay 0. Size k. Requires
/// n <= kMaxSubsetVertices.
std::vector<uint64_t> shared_pairs(const Graph& g, int k);

}  // namespace kclique::oracle
