#pragma once

#include <cstdint>
#include <span>

#include "kclique/counting.hpp"
#include "kclique/graph.hpp"
#include "kclique/orientation.hpp"

namespace kclique {

struct SampleEstimate {
  int k = 0;
  uint64_t colors = 1;
  double p = 1.0;           // 1 / colors
  uint64_t sub_count = 0;   // exact count inside the sparsified graph
  double estimate = 0.0;    // sub_count * p^-(k-1)
  uint64_t seed = 0;
};

/// Assigns each vertex one of `colors` colors by a deterministic hash of
/// (seed, vertex id) and keeps only monochromatic edges. A fixed seed
/// gives identical output across runs and thread counts. Requires
/// colors >= 1.
Graph colorful_sparsify(const Graph& g, uint64_t colors, uint64_t seed);

/// Sparsifies, counts k-cliques exactly in the subgraph, and scales by
/// p^-(k-1). Unbiased over the color assignment.
SampleEstimate approx_count(const Graph& g, int k, uint64_t colors,
                            uint64_t seed, const OrientConfig& ocfg = {},
                            const CountConfig& ccfg = {});

/// Closed-form variance of the estimator for a graph with `true_count`
/// k-cliques where shared_pairs[z] is the number of unordered clique
/// pairs sharing exactly z vertices (entries outside [2, k-1] are
/// ignored).
double analytic_variance(uint64_t true_count, double p, int k,
                         std::span<const uint64_t> shared_pairs);

}  // namespace kclique
