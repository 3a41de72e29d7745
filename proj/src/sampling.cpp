#include "kclique/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace kclique {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based color draw: a pure function of (seed, v), so results are
// identical across runs, thread counts, and platforms.
uint64_t color_of(uint64_t seed, VertexId v, uint64_t colors) {
  uint64_t h =
      splitmix64(splitmix64(seed) + 0x9e3779b97f4a7c15ULL * (uint64_t(v) + 1));
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(h) * colors) >> 64);
}

}  // namespace

Graph colorful_sparsify(const Graph& g, uint64_t colors, uint64_t seed) {
  if (colors < 1) throw std::invalid_argument("colors must be at least 1");
  const VertexId n = g.num_vertices();
  if (colors == 1) return g;
  std::vector<uint64_t> color(n);
  for (VertexId v = 0; v < n; v++) color[v] = color_of(seed, v, colors);
  std::vector<std::pair<VertexId, VertexId>> kept;
  for (VertexId u = 0; u < n; u++) {
    for (VertexId v : g.neighbors(u))
      if (v > u && color[u] == color[v]) kept.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(kept));
}

SampleEstimate approx_count(const Graph& g, int k, uint64_t colors,
                            uint64_t seed, const OrientConfig& ocfg,
                            const CountConfig& ccfg) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  Graph sub = colorful_sparsify(g, colors, seed);
  DirectedGraph dg = direct_by_ranking(sub, make_ranking(sub, ocfg));
  CliqueCounts counts = count_total(dg, k, ccfg);
  SampleEstimate est;
  est.k = k;
  est.colors = colors;
  est.p = 1.0 / double(colors);
  est.sub_count = counts.total;
  est.estimate = double(counts.total) * std::pow(double(colors), k - 1);
  est.seed = seed;
  return est;
}

double analytic_variance(uint64_t true_count, double p, int k,
                         std::span<const uint64_t> shared_pairs) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("p must be in (0, 1]");
  const double e = k - 1;  // survival exponent for one clique
  double var = double(true_count) * (std::pow(p, e) - std::pow(p, 2 * e));
  for (int z = 2; z <= k - 1; z++) {
    if (static_cast<size_t>(z) >= shared_pairs.size()) break;
    // Two cliques sharing z vertices survive together with probability
    // p^(2(k-1) - z + 1), which covariance-wise beats independence.
    // shared_pairs[z] counts unordered pairs; the covariance sum runs
    // over ordered ones, hence the factor of two.
    var += 2.0 * double(shared_pairs[z]) *
           (std::pow(p, 2 * e - z + 1) - std::pow(p, 2 * e));
  }
  return var * std::pow(p, -2 * e);
}

}  // namespace kclique
