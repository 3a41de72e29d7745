#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kclique {

using VertexId = uint32_t;

/// Thrown on malformed edge-list input. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, uint64_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  uint64_t line() const { return line_; }

 private:
  uint64_t line_;
};

/// Undirected simple graph in compressed-sparse-row form.
///
/// Immutable after construction and safe to share across threads.
/// Every adjacency slice is sorted ascending with no duplicates, there
/// are no self-loops, and adjacency is symmetric.
class Graph {
 public:
  Graph() = default;

  /// Builds a normalized graph on vertices [0, n): self-loops and
  /// duplicate edges are dropped, edges are symmetrized.
  /// Throws std::invalid_argument if an endpoint is >= n.
  static Graph from_edges(VertexId n,
                          std::vector<std::pair<VertexId, VertexId>> edges);

  VertexId num_vertices() const { return n_; }
  /// Undirected edge count.
  uint64_t num_edges() const { return m_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v],
            neighbors_.data() + offsets_[v + 1]};
  }
  uint64_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  const std::vector<uint64_t>& offsets() const { return offsets_; }
  const std::vector<VertexId>& adjacency() const { return neighbors_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  VertexId n_ = 0;
  uint64_t m_ = 0;
  std::vector<uint64_t> offsets_ = {0};  // length n+1
  std::vector<VertexId> neighbors_;      // length 2m
};

/// A total order on vertices: rank[v] = position of v in [0, n).
class Ranking {
 public:
  Ranking() = default;
  /// rank[v] = position; throws std::invalid_argument unless `rank` is a
  /// bijection onto [0, n).
  explicit Ranking(std::vector<VertexId> rank);
  static Ranking identity(VertexId n);
  /// order[i] = the vertex holding rank i.
  static Ranking from_order(std::span<const VertexId> order);

  VertexId size() const { return static_cast<VertexId>(rank_.size()); }
  VertexId rank_of(VertexId v) const { return rank_[v]; }
  std::span<const VertexId> ranks() const { return rank_; }
  /// Inverse permutation: result[i] = vertex with rank i.
  std::vector<VertexId> order() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<VertexId> rank_;
};

/// Acyclic orientation of a Graph under a Ranking; stores out-neighbors
/// only. Every directed edge (u, v) satisfies rank(v) > rank(u). Slices
/// are sorted ascending by vertex id. Immutable and shareable.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  VertexId num_vertices() const { return n_; }
  /// Directed edge count; equals the source graph's undirected count.
  uint64_t num_edges() const { return m_; }

  std::span<const VertexId> out_neighbors(VertexId v) const {
    return {out_neighbors_.data() + out_offsets_[v],
            out_neighbors_.data() + out_offsets_[v + 1]};
  }
  uint64_t out_degree(VertexId v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  uint64_t out_offset(VertexId v) const { return out_offsets_[v]; }
  /// Flat target array; slice [out_offset(v), out_offset(v+1)) belongs to v.
  const std::vector<VertexId>& out_targets() const { return out_neighbors_; }
  uint64_t max_out_degree() const;
  bool has_out_edge(VertexId u, VertexId v) const;
  const Ranking& ranking() const { return ranking_; }

  friend DirectedGraph direct_by_ranking(const Graph& g, const Ranking& r);

 private:
  VertexId n_ = 0;
  uint64_t m_ = 0;
  std::vector<uint64_t> out_offsets_ = {0};
  std::vector<VertexId> out_neighbors_;
  Ranking ranking_;
};

/// Directs every undirected edge toward its higher-ranked endpoint.
/// Throws std::invalid_argument if r.size() != g.num_vertices().
DirectedGraph direct_by_ranking(const Graph& g, const Ranking& r);

/// Result of parsing a whitespace edge list: the normalized graph plus
/// the original id of each internal vertex (internal ids are assigned
/// densely in first-appearance order).
struct ParsedGraph {
  Graph graph;
  std::vector<uint64_t> original_ids;
};

/// Parses a whitespace-separated edge list. Lines whose first
/// non-whitespace character is '#' are comments; blank lines are
/// skipped; every other line must hold exactly two non-negative integer
/// ids. Self-loops and duplicate edges are dropped, edges are
/// symmetrized. Throws ParseError with the offending 1-based line.
ParsedGraph parse_edge_list(std::istream& in);

/// Writes each edge once as "u v" with u < v, sorted lexicographically,
/// using the graph's internal ids.
void serialize_edge_list(const Graph& g, std::ostream& out);

/// Same format, but written in the parse-time original ids. Because the
/// output is a pure function of the original-id edge set, parsing and
/// re-serializing it reproduces the text byte for byte (round trips are
/// a fixed point after the first normalization).
void serialize_edge_list(const ParsedGraph& pg, std::ostream& out);

}  // namespace kclique
