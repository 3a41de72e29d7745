#include "kclique/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace kclique::oracle {

namespace {

// Collects every k-clique as a sorted vertex vector, by backtracking in
// ascending id order over the undirected adjacency.
void enumerate(const Graph& g, int k, std::vector<VertexId>& clique,
               const std::vector<VertexId>& cands,
               const std::function<void(const std::vector<VertexId>&)>& sink) {
  int need = k - static_cast<int>(clique.size());
  if (need == 0) {
    sink(clique);
    return;
  }
  if (cands.size() < static_cast<size_t>(need)) return;
  for (VertexId c : cands) {
    auto nb = g.neighbors(c);
    std::vector<VertexId> narrowed;
    for (VertexId x : cands) {
      if (x <= c) continue;
      if (std::binary_search(nb.begin(), nb.end(), x)) narrowed.push_back(x);
    }
    clique.push_back(c);
    enumerate(g, k, clique, narrowed, sink);
    clique.pop_back();
  }
}

void check_enum_size(const Graph& g) {
  if (g.num_vertices() > kMaxEnumVertices)
    throw std::invalid_argument("graph too large for exhaustive reference");
}

void check_subset_size(const Graph& g) {
  if (g.num_vertices() > kMaxSubsetVertices)
    throw std::invalid_argument("graph too large for subset reference");
}

std::vector<uint32_t> clique_masks(const Graph& g, int k) {
  std::vector<uint32_t> masks;
  std::vector<VertexId> clique;
  std::vector<VertexId> all(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); v++) all[v] = v;
  enumerate(g, k, clique, all, [&](const std::vector<VertexId>& c) {
    uint32_t m = 0;
    for (VertexId v : c) m |= uint32_t(1) << v;
    masks.push_back(m);
  });
  return masks;
}

}  // namespace

CliqueCounts brute_force_count(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  check_enum_size(g);
  CliqueCounts out;
  out.k = k;
  out.per_vertex.assign(g.num_vertices(), 0);
  std::vector<VertexId> clique;
  std::vector<VertexId> all(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); v++) all[v] = v;
  enumerate(g, k, clique, all, [&](const std::vector<VertexId>& c) {
    out.total++;
    for (VertexId v : c) out.per_vertex[v]++;
  });
  return out;
}

uint64_t exact_arboricity(const Graph& g) {
  check_subset_size(g);
  const VertexId n = g.num_vertices();
  if (g.num_edges() == 0) return 0;
  std::vector<uint32_t> adj(n, 0);
  for (VertexId v = 0; v < n; v++)
    for (VertexId u : g.neighbors(v)) adj[v] |= uint32_t(1) << u;
  // edges[S] = edge count inside S, peeled one lowest vertex at a time.
  std::vector<uint32_t> edges(size_t(1) << n, 0);
  uint64_t best = 0;
  for (uint32_t mask = 1; mask < (uint32_t(1) << n); mask++) {
    int v = std::countr_zero(mask);
    uint32_t rest = mask & (mask - 1);
    edges[mask] = edges[rest] + std::popcount(adj[v] & rest);
    int size = std::popcount(mask);
    if (size >= 2 && edges[mask] > 0) {
      uint64_t need = (edges[mask] + uint64_t(size) - 2) / (size - 1);
      best = std::max(best, need);
    }
  }
  return best;
}

DensestResult exact_densest(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  check_subset_size(g);
  const VertexId n = g.num_vertices();
  if (n == 0) return {};
  std::vector<uint32_t> cliques = clique_masks(g, k);

  auto vertices_of = [](uint32_t mask) {
    std::vector<VertexId> vs;
    while (mask) {
      vs.push_back(std::countr_zero(mask));
      mask &= mask - 1;
    }
    return vs;
  };

  uint64_t best_count = 0;
  uint32_t best_mask = 1;  // vertex {0}: density 0, the smallest candidate
  std::vector<VertexId> best_vs = vertices_of(best_mask);
  for (uint32_t mask = 1; mask < (uint32_t(1) << n); mask++) {
    uint64_t cnt = 0;
    for (uint32_t c : cliques)
      if ((c & mask) == c) cnt++;
    uint64_t size = std::popcount(mask);
    using U = unsigned __int128;
    U lhs = U(cnt) * std::popcount(best_mask);
    U rhs = U(best_count) * size;
    bool better = lhs > rhs;
    if (!better && lhs == rhs) {
      // Tie on density: prefer fewer vertices, then the earlier vertex
      // sequence.
      uint64_t bsize = std::popcount(best_mask);
      if (size < bsize) {
        better = true;
      } else if (size == bsize) {
        better = vertices_of(mask) < best_vs;
      }
    }
    if (better) {
      best_count = cnt;
      best_mask = mask;
      best_vs = vertices_of(mask);
    }
  }
  DensestResult res;
  res.density = double(best_count) / double(std::popcount(best_mask));
  res.subset = best_vs;
  return res;
}

std::vector<uint64_t> shared_pairs(const Graph& g, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  check_subset_size(g);
  std::vector<uint32_t> cliques = clique_masks(g, k);
  std::vector<uint64_t> shared(k, 0);
  for (size_t i = 0; i < cliques.size(); i++) {
    for (size_t j = i + 1; j < cliques.size(); j++) {
      int z = std::popcount(cliques[i] & cliques[j]);
      if (z >= 2 && z <= k - 1) shared[z]++;
    }
  }
  return shared;
}

}  // namespace kclique::oracle
