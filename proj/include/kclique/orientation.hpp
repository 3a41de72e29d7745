#pragma once

#include <cstdint>
#include <optional>

#include "kclique/graph.hpp"

namespace kclique {

enum class OrientStrategy {
  degree,            // non-decreasing degree, ties by id
  original,          // identity order
  kcore,             // degeneracy order (repeated min induced degree)
  goodrich_pszona,   // batched low-degree peeling, out-degree < (2+eps)*arboricity
  barenboim_elkin,   // threshold peeling against an arboricity estimate
};

struct OrientConfig {
  OrientStrategy strategy = OrientStrategy::degree;
  double epsilon = 1.0;                 // used by the peeling strategies
  std::optional<uint64_t> alpha_hat;    // barenboim_elkin only; estimated if absent
};

Ranking rank_by_degree(const Graph& g);
Ranking rank_original(const Graph& g);
Ranking rank_by_kcore(const Graph& g);

/// Repeatedly moves the max(1, floor(eps*n'/(2+eps))) remaining vertices
/// of lowest induced degree (ties by id) to the back of the order, where
/// n' is the number of remaining vertices. If `rounds_out` is non-null it
/// receives the number of rounds taken. Throws std::invalid_argument for
/// eps <= 0.
Ranking rank_goodrich_pszona(const Graph& g, double epsilon,
                             uint64_t* rounds_out = nullptr);

/// Repeatedly removes every remaining vertex of induced degree below
/// (2+eps)*alpha_hat, in id order within a round. A round that removes
/// nothing doubles the threshold, so the order is total even when
/// alpha_hat undershoots the true arboricity. Throws
/// std::invalid_argument for eps <= 0 or alpha_hat < 1.
Ranking rank_barenboim_elkin(const Graph& g, double epsilon,
                             uint64_t alpha_hat,
                             uint64_t* rounds_out = nullptr);

/// Peels vertices of induced degree <= 2*(1+eps)*(current edge density)
/// until the graph is empty and returns ceil of the peak density seen,
/// clamped to at least 1. The result is between roughly half the optimum
/// density and the true arboricity. Throws std::invalid_argument for
/// eps <= 0.
uint64_t estimate_arboricity(const Graph& g, double epsilon);

/// Dispatches on cfg.strategy; computes an arboricity estimate for
/// barenboim_elkin when cfg.alpha_hat is absent.
Ranking make_ranking(const Graph& g, const OrientConfig& cfg = {});

}  // namespace kclique
