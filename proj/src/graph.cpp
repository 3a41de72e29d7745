#include "kclique/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace kclique {

Graph Graph::from_edges(VertexId n,
                        std::vector<std::pair<VertexId, VertexId>> edges) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.n_ = n;
  g.m_ = edges.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    g.offsets_[u + 1]++;
    g.offsets_[v + 1]++;
  }
  for (VertexId i = 0; i < n; i++) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(2 * g.m_);
  std::vector<uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted (u, v) with u < v, so each slice fills low ids
  // (from edges where this vertex is the larger endpoint) before high
  // ids and stays sorted.
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Ranking::Ranking(std::vector<VertexId> rank) : rank_(std::move(rank)) {
  std::vector<uint8_t> seen(rank_.size(), 0);
  for (VertexId r : rank_) {
    if (r >= rank_.size() || seen[r])
      throw std::invalid_argument("ranking is not a bijection");
    seen[r] = 1;
  }
}

Ranking Ranking::identity(VertexId n) {
  Ranking r;
  r.rank_.resize(n);
  for (VertexId v = 0; v < n; v++) r.rank_[v] = v;
  return r;
}

Ranking Ranking::from_order(std::span<const VertexId> order) {
  std::vector<VertexId> rank(order.size(), static_cast<VertexId>(order.size()));
  for (VertexId i = 0; i < order.size(); i++) {
    VertexId v = order[i];
    if (v >= order.size() || rank[v] != order.size())
      throw std::invalid_argument("order is not a permutation");
    rank[v] = i;
  }
  Ranking r;
  r.rank_ = std::move(rank);
  return r;
}

std::vector<VertexId> Ranking::order() const {
  std::vector<VertexId> ord(rank_.size());
  for (VertexId v = 0; v < rank_.size(); v++) ord[rank_[v]] = v;
  return ord;
}

uint64_t DirectedGraph::max_out_degree() const {
  uint64_t best = 0;
  for (VertexId v = 0; v < n_; v++) best = std::max(best, out_degree(v));
  return best;
}

bool DirectedGraph::has_out_edge(VertexId u, VertexId v) const {
  auto nb = out_neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

DirectedGraph direct_by_ranking(const Graph& g, const Ranking& r) {
  if (r.size() != g.num_vertices())
    throw std::invalid_argument("ranking size does not match graph");
  DirectedGraph dg;
  dg.n_ = g.num_vertices();
  dg.m_ = g.num_edges();
  dg.ranking_ = r;
  dg.out_offsets_.assign(dg.n_ + 1, 0);
  for (VertexId u = 0; u < dg.n_; u++) {
    for (VertexId v : g.neighbors(u))
      if (r.rank_of(v) > r.rank_of(u)) dg.out_offsets_[u + 1]++;
  }
  for (VertexId i = 0; i < dg.n_; i++) dg.out_offsets_[i + 1] += dg.out_offsets_[i];
  dg.out_neighbors_.resize(dg.m_);
  uint64_t pos = 0;
  for (VertexId u = 0; u < dg.n_; u++) {
    for (VertexId v : g.neighbors(u))
      if (r.rank_of(v) > r.rank_of(u)) dg.out_neighbors_[pos++] = v;
  }
  return dg;
}

namespace {

// Returns false on a blank or comment line, throws on anything that is
// not exactly two integers.
bool parse_line(const std::string& line, uint64_t lineno, uint64_t* a,
                uint64_t* b) {
  const char* p = line.data();
  const char* end = p + line.size();
  auto skip_ws = [&] {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == '\v' ||
                       *p == '\f'))
      p++;
  };
  skip_ws();
  if (p == end || *p == '#') return false;
  uint64_t vals[2];
  for (int i = 0; i < 2; i++) {
    if (p == end) throw ParseError("expected two vertex ids", lineno);
    auto [next, ec] = std::from_chars(p, end, vals[i]);
    if (ec != std::errc() || next == p)
      throw ParseError("expected a non-negative integer vertex id", lineno);
    p = next;
    if (p < end && !(*p == ' ' || *p == '\t' || *p == '\r' || *p == '\v' ||
                     *p == '\f'))
      throw ParseError("expected a non-negative integer vertex id", lineno);
    skip_ws();
  }
  if (p != end) throw ParseError("expected two vertex ids", lineno);
  *a = vals[0];
  *b = vals[1];
  return true;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<uint64_t> originals;
  std::unordered_map<uint64_t, VertexId> interned;
  auto intern = [&](uint64_t orig) {
    auto [it, fresh] =
        interned.try_emplace(orig, static_cast<VertexId>(originals.size()));
    if (fresh) originals.push_back(orig);
    return it->second;
  };

  std::string line;
  uint64_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    uint64_t a, b;
    if (!parse_line(line, lineno, &a, &b)) continue;
    VertexId u = intern(a);
    VertexId v = intern(b);
    if (u != v) edges.emplace_back(u, v);
  }
  ParsedGraph out;
  out.graph = Graph::from_edges(static_cast<VertexId>(originals.size()),
                                std::move(edges));
  out.original_ids = std::move(originals);
  return out;
}

void serialize_edge_list(const Graph& g, std::ostream& out) {
  for (VertexId u = 0; u < g.num_vertices(); u++) {
    for (VertexId v : g.neighbors(u))
      if (v > u) out << u << ' ' << v << '\n';
  }
}

void serialize_edge_list(const ParsedGraph& pg, std::ostream& out) {
  // Internal ids follow first-appearance order, not the original ids'
  // numeric order, so the edge list has to be re-sorted in original-id
  // space to stay canonical.
  std::vector<std::pair<uint64_t, uint64_t>> edges;
  edges.reserve(pg.graph.num_edges());
  for (VertexId u = 0; u < pg.graph.num_vertices(); u++) {
    for (VertexId v : pg.graph.neighbors(u)) {
      if (v <= u) continue;
      uint64_t a = pg.original_ids[u], b = pg.original_ids[v];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << a << ' ' << b << '\n';
}

}  // namespace kclique
