#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "kclique/graph.hpp"

namespace kclique {

/// Bucketed priority structure over vertex values. Only a sliding window
/// of buckets starting at the current minimum is materialized; values at
/// or beyond the window live in an overflow set and are pulled in as the
/// minimum advances. Values may move in either direction via update();
/// extraction always returns the exact global minimum.
class BucketQueue {
 public:
  static constexpr uint64_t kDefaultWindow = 128;

  explicit BucketQueue(std::span<const uint64_t> values,
                       uint64_t window = kDefaultWindow);

  bool empty() const { return live_ == 0; }
  uint64_t size() const { return live_; }
  /// Value of v as last seen by the queue.
  uint64_t value(VertexId v) const { return value_[v]; }

  /// Removes every vertex holding the minimum value and returns
  /// (value, vertices sorted by id). Throws std::logic_error when empty.
  std::pair<uint64_t, std::vector<VertexId>> extract_min();

  /// Reassigns v's value; v must not have been extracted.
  void update(VertexId v, uint64_t value);

 private:
  std::vector<VertexId>& bucket_at(uint64_t offset) {
    return buckets_[(start_ + offset) % window_];
  }
  void place(VertexId v, uint64_t value);
  void shift_down(uint64_t delta);
  void rebuild_from_overflow();

  uint64_t window_;
  uint64_t base_ = 0;   // value mapped to bucket offset 0
  uint64_t start_ = 0;  // physical slot of offset 0 (circular)
  uint64_t live_ = 0;
  std::vector<std::vector<VertexId>> buckets_;  // window_ slots; lazy entries
  std::vector<VertexId> overflow_;              // values >= base_ + window_
  std::vector<uint64_t> value_;
  std::vector<uint8_t> extracted_;
};

struct UpdateResult {
  uint64_t removed = 0;               // k-cliques destroyed by the batch
  std::vector<VertexId> changed;      // survivors whose count dropped, sorted
};

/// Removes batch A from the graph for peeling purposes: counts every
/// k-clique containing at least one batch member (each clique charged to
/// its lowest-ranked batch member so nothing is double counted) and
/// decrements `counts` for the clique's surviving vertices. `peeled`
/// flags vertices removed in earlier rounds; batch members must not be
/// flagged (std::invalid_argument otherwise). `counts` must hold
/// per-vertex k-clique counts consistent with the unpeeled subgraph.
UpdateResult update_counts(const Graph& g, const DirectedGraph& dg, int k,
                           std::span<uint64_t> counts,
                           std::span<const VertexId> batch,
                           std::span<const uint8_t> peeled);

struct PeelOutcome {
  /// core[v] = largest t such that v survives while every remaining
  /// vertex sits in at least t k-cliques. Empty for approximate peeling.
  std::vector<uint64_t> core;
  uint64_t rounds = 0;          // number of extraction rounds
  uint64_t total_cliques = 0;   // k-clique count of the input graph
  double best_density = 0.0;    // max over rounds of remaining cliques / remaining vertices
  uint64_t best_round = 0;      // first round attaining best_density (0 = before any removal)
  std::vector<VertexId> dense_vertices;  // vertices alive at best_round, sorted
};

/// Exact peeling: repeatedly extracts all vertices of minimum k-clique
/// count. Requires k >= 2.
PeelOutcome peel_exact(const Graph& g, const DirectedGraph& dg, int k);

/// Approximate peeling: each round removes every vertex whose count is
/// at most k*(1+eps) times the current average (cliques per vertex),
/// giving O(log n) rounds and a k*(1+eps)-approximation of the densest
/// subgraph found by exact peeling's best round. Requires k >= 2 and
/// eps > 0. The returned core vector is empty.
PeelOutcome peel_approx(const Graph& g, const DirectedGraph& dg, int k,
                        double epsilon);

}  // namespace kclique
