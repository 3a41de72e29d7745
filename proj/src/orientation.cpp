#include "kclique/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace kclique {

Ranking rank_by_degree(const Graph& g) {
  std::vector<VertexId> order(g.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return g.degree(a) < g.degree(b);
  });
  return Ranking::from_order(order);
}

Ranking rank_original(const Graph& g) {
  return Ranking::identity(g.num_vertices());
}

Ranking rank_by_kcore(const Graph& g) {
  VertexId n = g.num_vertices();
  std::vector<uint64_t> deg(n);
  for (VertexId v = 0; v < n; v++) deg[v] = g.degree(v);
  // Lazy-deletion heap keyed by (induced degree, id); stale entries are
  // skipped when their recorded degree no longer matches.
  using Entry = std::pair<uint64_t, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (VertexId v = 0; v < n; v++) heap.emplace(deg[v], v);
  std::vector<uint8_t> done(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d != deg[v]) continue;
    done[v] = 1;
    order.push_back(v);
    for (VertexId u : g.neighbors(v)) {
      if (!done[u]) heap.emplace(--deg[u], u);
    }
  }
  return Ranking::from_order(order);
}

Ranking rank_goodrich_pszona(const Graph& g, double epsilon,
                             uint64_t* rounds_out) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  VertexId n = g.num_vertices();
  std::vector<uint64_t> deg(n);
  for (VertexId v = 0; v < n; v++) deg[v] = g.degree(v);
  std::vector<uint8_t> alive(n, 1);
  std::vector<VertexId> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<VertexId> order;
  order.reserve(n);
  uint64_t rounds = 0;
  while (!remaining.empty()) {
    rounds++;
    uint64_t take = std::max<uint64_t>(
        1, static_cast<uint64_t>(
               std::floor(epsilon * double(remaining.size()) / (2 + epsilon))));
    take = std::min<uint64_t>(take, remaining.size());
    // All of this round's picks are judged against the same snapshot of
    // induced degrees.
    std::sort(remaining.begin(), remaining.end(), [&](VertexId a, VertexId b) {
      return std::pair(deg[a], a) < std::pair(deg[b], b);
    });
    for (uint64_t i = 0; i < take; i++) {
      VertexId v = remaining[i];
      order.push_back(v);
      alive[v] = 0;
    }
    for (uint64_t i = 0; i < take; i++) {
      for (VertexId u : g.neighbors(remaining[i]))
        if (alive[u]) deg[u]--;
    }
    remaining.erase(remaining.begin(), remaining.begin() + take);
  }
  if (rounds_out) *rounds_out = rounds;
  return Ranking::from_order(order);
}

Ranking rank_barenboim_elkin(const Graph& g, double epsilon,
                             uint64_t alpha_hat, uint64_t* rounds_out) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (alpha_hat < 1) throw std::invalid_argument("alpha_hat must be >= 1");
  VertexId n = g.num_vertices();
  std::vector<uint64_t> deg(n);
  for (VertexId v = 0; v < n; v++) deg[v] = g.degree(v);
  std::vector<uint8_t> alive(n, 1);
  std::vector<VertexId> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<VertexId> order;
  order.reserve(n);
  double threshold = (2 + epsilon) * double(alpha_hat);
  uint64_t rounds = 0;
  while (!remaining.empty()) {
    rounds++;
    std::vector<VertexId> batch;
    for (VertexId v : remaining)
      if (double(deg[v]) < threshold) batch.push_back(v);
    if (batch.empty()) {
      // alpha_hat was too small for this residual graph; back off rather
      // than spin forever.
      threshold *= 2;
      continue;
    }
    for (VertexId v : batch) {
      order.push_back(v);  // remaining is id-sorted, so batch is too
      alive[v] = 0;
    }
    for (VertexId v : batch)
      for (VertexId u : g.neighbors(v))
        if (alive[u]) deg[u]--;
    std::erase_if(remaining, [&](VertexId v) { return !alive[v]; });
  }
  if (rounds_out) *rounds_out = rounds;
  return Ranking::from_order(order);
}

uint64_t estimate_arboricity(const Graph& g, double epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  VertexId n = g.num_vertices();
  std::vector<uint64_t> deg(n);
  for (VertexId v = 0; v < n; v++) deg[v] = g.degree(v);
  std::vector<uint8_t> alive(n, 1);
  std::vector<VertexId> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  uint64_t edges_left = g.num_edges();
  double peak = 0;
  while (!remaining.empty()) {
    double density = double(edges_left) / double(remaining.size());
    peak = std::max(peak, density);
    double cutoff = 2 * (1 + epsilon) * density;
    std::vector<VertexId> batch;
    for (VertexId v : remaining)
      if (double(deg[v]) <= cutoff) batch.push_back(v);
    // Some vertex has degree at most twice the density, so the batch is
    // never empty and the loop terminates.
    for (VertexId v : batch) {
      for (VertexId u : g.neighbors(v)) {
        if (alive[u]) {
          deg[u]--;
          edges_left--;
        }
      }
      alive[v] = 0;
    }
    std::erase_if(remaining, [&](VertexId v) { return !alive[v]; });
  }
  return std::max<uint64_t>(1, static_cast<uint64_t>(std::ceil(peak)));
}

Ranking make_ranking(const Graph& g, const OrientConfig& cfg) {
  switch (cfg.strategy) {
    case OrientStrategy::degree:
      return rank_by_degree(g);
    case OrientStrategy::original:
      return rank_original(g);
    case OrientStrategy::kcore:
      return rank_by_kcore(g);
    case OrientStrategy::goodrich_pszona:
      return rank_goodrich_pszona(g, cfg.epsilon);
    case OrientStrategy::barenboim_elkin: {
      uint64_t alpha = cfg.alpha_hat ? *cfg.alpha_hat
                                     : estimate_arboricity(g, cfg.epsilon);
      return rank_barenboim_elkin(g, cfg.epsilon, alpha);
    }
  }
  throw std::invalid_argument("unknown orientation strategy");
}

}  // namespace kclique
