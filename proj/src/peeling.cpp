#include "kclique/peeling.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "clique_rec.hpp"
#include "kclique/counting.hpp"

namespace kclique {

// ---------------------------------------------------------------------
// BucketQueue

BucketQueue::BucketQueue(std::span<const uint64_t> values, uint64_t window)
    : window_(std::max<uint64_t>(1, window)) {
  value_.assign(values.begin(), values.end());
  extracted_.assign(value_.size(), 0);
  live_ = value_.size();
  buckets_.resize(window_);
  if (!value_.empty())
    base_ = *std::min_element(value_.begin(), value_.end());
  for (VertexId v = 0; v < value_.size(); v++) place(v, value_[v]);
}

void BucketQueue::place(VertexId v, uint64_t value) {
  if (value < base_) shift_down(base_ - value);
  if (value - base_ < window_)
    bucket_at(value - base_).push_back(v);
  else
    overflow_.push_back(v);
}

// Lowers base_ by delta; the delta highest window slots spill to the
// overflow set and become the new lowest slots.
void BucketQueue::shift_down(uint64_t delta) {
  uint64_t spill = std::min(delta, window_);
  for (uint64_t i = 0; i < spill; i++) {
    auto& b = bucket_at(window_ - 1 - i);
    overflow_.insert(overflow_.end(), b.begin(), b.end());
    b.clear();
  }
  if (delta >= window_) {
    start_ = 0;
  } else {
    start_ = (start_ + window_ - delta) % window_;
  }
  base_ -= delta;
}

// Called when no live vertex maps into the window: every live vertex's
// latest entry sits in overflow, so rebase at their minimum and deal the
// overflow back out.
void BucketQueue::rebuild_from_overflow() {
  uint64_t lo = UINT64_MAX;
  for (VertexId v : overflow_)
    if (!extracted_[v]) lo = std::min(lo, value_[v]);
  if (lo == UINT64_MAX)
    throw std::logic_error("live vertex lost by bucket queue");
  base_ = lo;
  start_ = 0;
  std::vector<VertexId> pending;
  pending.swap(overflow_);
  for (VertexId v : pending) {
    if (extracted_[v]) continue;
    if (value_[v] - base_ < window_)
      bucket_at(value_[v] - base_).push_back(v);
    else
      overflow_.push_back(v);
  }
}

void BucketQueue::update(VertexId v, uint64_t value) {
  if (extracted_[v]) throw std::logic_error("update after extraction");
  value_[v] = value;
  place(v, value);
}

std::pair<uint64_t, std::vector<VertexId>> BucketQueue::extract_min() {
  if (live_ == 0) throw std::logic_error("extract_min on empty queue");
  for (;;) {
    for (uint64_t off = 0; off < window_; off++) {
      auto& b = bucket_at(off);
      if (b.empty()) continue;
      // Drop entries that were extracted or superseded by a later
      // update; the current entry for a vertex always matches value_.
      const uint64_t val = base_ + off;
      std::erase_if(b, [&](VertexId v) {
        return extracted_[v] || value_[v] != val;
      });
      if (b.empty()) continue;
      std::vector<VertexId> batch;
      batch.swap(b);
      std::sort(batch.begin(), batch.end());
      batch.erase(std::unique(batch.begin(), batch.end()), batch.end());
      for (VertexId v : batch) extracted_[v] = 1;
      live_ -= batch.size();
      return {val, std::move(batch)};
    }
    rebuild_from_overflow();
  }
}

// ---------------------------------------------------------------------
// Peeling rounds

namespace {

struct BatchScratch {
  std::vector<uint64_t> in_batch;  // token per vertex
  std::vector<uint64_t> claimed;   // token per vertex, dedups `changed`
  uint64_t token = 0;
};

// One peeling round: destroys every k-clique touching the batch and
// decrements the surviving members' counts. Cliques spanning several
// batch members are charged to the lowest-ranked one: that member keeps
// higher-ranked batch vertices (its dg out-neighbors) in its candidate
// set while lower-ranked ones are filtered out.
UpdateResult run_update(const Graph& g, const DirectedGraph& dg, int k,
                        std::span<uint64_t> counts,
                        std::span<const VertexId> batch,
                        std::span<const uint8_t> peeled, BatchScratch& bs) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const VertexId n = g.num_vertices();
  if (bs.in_batch.size() < n) {
    bs.in_batch.resize(n, 0);
    bs.claimed.resize(n, 0);
  }
  const uint64_t tok = ++bs.token;
  for (VertexId v : batch) {
    if (v >= n || peeled[v])
      throw std::invalid_argument("batch vertex already peeled");
    bs.in_batch[v] = tok;
  }

  uint64_t removed = 0;
  std::atomic<bool> underflow{false};
  std::vector<std::vector<VertexId>> tl_changed;
#pragma omp parallel reduction(+ : removed)
  {
#pragma omp single
    tl_changed.resize(omp_get_num_threads());
    auto& my_changed = tl_changed[omp_get_thread_num()];
    detail::CliqueScratch sc;
    sc.bind(n, k);
    std::vector<VertexId> cand;
#pragma omp for schedule(dynamic, 8)
    for (size_t bi = 0; bi < batch.size(); bi++) {
      VertexId v = batch[bi];
      cand.clear();
      for (VertexId u : g.neighbors(v)) {
        if (peeled[u]) continue;
        if (bs.in_batch[u] == tok && !dg.has_out_edge(v, u)) continue;
        cand.push_back(u);
      }
      if (cand.size() + 1 < static_cast<size_t>(k)) continue;
      detail::EmitFn on_clique = [&](std::span<const VertexId> rest) {
        for (VertexId u : rest) {
          if (bs.in_batch[u] == tok) continue;
          uint64_t before = std::atomic_ref<uint64_t>(counts[u]).fetch_sub(
              1, std::memory_order_relaxed);
          if (before == 0) underflow.store(true, std::memory_order_relaxed);
          uint64_t prev = std::atomic_ref<uint64_t>(bs.claimed[u])
                              .exchange(tok, std::memory_order_relaxed);
          if (prev != tok) my_changed.push_back(u);
        }
      };
      sc.chain_global.clear();
      removed += detail::cliques_in_subset(dg, cand, k - 1, sc, false,
                                           &on_clique);
    }
  }

  if (underflow.load())
    throw std::logic_error("clique count went negative during update");
  UpdateResult res;
  res.removed = removed;
  size_t total = 0;
  for (auto& c : tl_changed) total += c.size();
  res.changed.reserve(total);
  for (auto& c : tl_changed)
    res.changed.insert(res.changed.end(), c.begin(), c.end());
  std::sort(res.changed.begin(), res.changed.end());
  return res;
}

// Shared bookkeeping for both peeling modes: density of what remains
// after each round, compared exactly as fractions.
struct DensityTracker {
  uint64_t best_cliques = 0;
  uint64_t best_alive = 1;
  uint64_t best_round = 0;

  void offer(uint64_t cliques, uint64_t alive, uint64_t round) {
    if (alive == 0) return;
    using U = unsigned __int128;
    if (U(cliques) * best_alive > U(best_cliques) * alive) {
      best_cliques = cliques;
      best_alive = alive;
      best_round = round;
    }
  }
  double density() const {
    return best_alive ? double(best_cliques) / double(best_alive) : 0.0;
  }
};

std::vector<VertexId> alive_after(const std::vector<uint64_t>& peel_round,
                                  uint64_t round) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < peel_round.size(); v++)
    if (peel_round[v] > round) out.push_back(v);
  return out;
}

}  // namespace

UpdateResult update_counts(const Graph& g, const DirectedGraph& dg, int k,
                           std::span<uint64_t> counts,
                           std::span<const VertexId> batch,
                           std::span<const uint8_t> peeled) {
  BatchScratch bs;
  return run_update(g, dg, k, counts, batch, peeled, bs);
}

PeelOutcome peel_exact(const Graph& g, const DirectedGraph& dg, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const VertexId n = g.num_vertices();
  CliqueCounts counts = count_per_vertex(dg, k, {default_parallelism(k)});

  PeelOutcome out;
  out.total_cliques = counts.total;
  out.core.assign(n, 0);
  if (n == 0) return out;

  std::vector<uint64_t> cur = counts.per_vertex;
  std::vector<uint8_t> peeled(n, 0);
  std::vector<uint64_t> peel_round(n, UINT64_MAX);
  BucketQueue queue(cur);
  BatchScratch bs;
  DensityTracker tracker;
  tracker.offer(counts.total, n, 0);

  uint64_t remaining_cliques = counts.total;
  uint64_t alive = n;
  uint64_t round = 0;
  uint64_t level = 0;  // running max of extraction values
  while (!queue.empty()) {
    round++;
    auto [val, batch] = queue.extract_min();
    level = std::max(level, val);
    UpdateResult res = run_update(g, dg, k, cur, batch, peeled, bs);
    for (VertexId v : batch) {
      out.core[v] = level;
      peeled[v] = 1;
      peel_round[v] = round;
    }
    remaining_cliques -= res.removed;
    alive -= batch.size();
    for (VertexId u : res.changed) queue.update(u, cur[u]);
    tracker.offer(remaining_cliques, alive, round);
  }
  out.rounds = round;
  out.best_density = tracker.density();
  out.best_round = tracker.best_round;
  out.dense_vertices = alive_after(peel_round, tracker.best_round);
  return out;
}

PeelOutcome peel_approx(const Graph& g, const DirectedGraph& dg, int k,
                        double epsilon) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const VertexId n = g.num_vertices();
  CliqueCounts counts = count_per_vertex(dg, k, {default_parallelism(k)});

  PeelOutcome out;
  out.total_cliques = counts.total;
  if (n == 0) return out;

  std::vector<uint64_t> cur = counts.per_vertex;
  std::vector<uint8_t> peeled(n, 0);
  std::vector<uint64_t> peel_round(n, UINT64_MAX);
  BatchScratch bs;
  DensityTracker tracker;
  tracker.offer(counts.total, n, 0);

  uint64_t remaining_cliques = counts.total;
  uint64_t alive = n;
  uint64_t round = 0;
  while (alive > 0) {
    round++;
    // Every vertex at or below k*(1+eps) times the mean clique share
    // goes this round; the mean itself qualifies, so progress is
    // guaranteed.
    double cutoff = double(k) * (1.0 + epsilon) *
                    (double(remaining_cliques) / double(alive));
    std::vector<VertexId> batch;
    for (VertexId v = 0; v < n; v++)
      if (!peeled[v] && double(cur[v]) <= cutoff) batch.push_back(v);
    if (batch.empty())
      throw std::logic_error("approximate peeling made no progress");
    UpdateResult res = run_update(g, dg, k, cur, batch, peeled, bs);
    for (VertexId v : batch) {
      peeled[v] = 1;
      peel_round[v] = round;
    }
    remaining_cliques -= res.removed;
    alive -= batch.size();
    tracker.offer(remaining_cliques, alive, round);
  }
  out.rounds = round;
  out.best_density = tracker.density();
  out.best_round = tracker.best_round;
  out.dense_vertices = alive_after(peel_round, tracker.best_round);
  return out;
}

}  // namespace kclique
