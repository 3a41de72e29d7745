#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kclique/graph.hpp"

namespace kclique {

enum class Parallelism { node, edge };

struct CountConfig {
  Parallelism parallelism = Parallelism::node;
  /// Build a relabeled induced subgraph of each root's out-neighborhood
  /// before recursing (node parallelism only). Usually faster for small
  /// out-degrees; the flat path works directly on the full graph.
  bool build_induced = true;
};

struct CliqueCounts {
  int k = 0;
  uint64_t total = 0;
  /// Per-vertex participation counts (sum == k * total); empty unless the
  /// per-vertex entry point was used.
  std::vector<uint64_t> per_vertex;
};

/// Heuristic choice used by the CLI's auto mode: node parallelism for
/// small k, edge parallelism from k = 8 up.
Parallelism default_parallelism(int k);

/// Exact number of k-cliques. Requires k >= 2.
CliqueCounts count_total(const DirectedGraph& dg, int k,
                         const CountConfig& cfg = {});

/// Exact count plus per-vertex participation counts.
CliqueCounts count_per_vertex(const DirectedGraph& dg, int k,
                              const CountConfig& cfg = {});

/// Invoked once per clique with its vertices in ascending rank order.
/// The span is only valid during the call. Callbacks may run
/// concurrently and must be thread-safe.
using CliqueCallback = std::function<void(std::span<const VertexId>)>;

/// Enumerates every k-clique; returns the same totals as count_total.
CliqueCounts list_cliques(const DirectedGraph& dg, int k,
                          const CountConfig& cfg, const CliqueCallback& emit);

}  // namespace kclique
