#pragma once

// Internal mark-and-filter clique recursion shared by the counting and
// peeling engines. Not part of the installed headers.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kclique/graph.hpp"

namespace kclique::detail {

using EmitFn = std::function<void(std::span<const VertexId>)>;

// Recursively extends cliques by one vertex per level. The candidate set
// at `depth` is whatever the stamp array marks with token_base + depth;
// ids live in the space served by `adj` and stamp/pv/chain use that same
// space. Fresh token_base values per task mean the stamp array never
// needs clearing. `chain` must be non-null when pv or emit is used.
// Each sibling's marks are undone after its subtree returns, so the
// parent's candidate marks stay intact.
template <class AdjFn>
uint64_t clique_rec(const AdjFn& adj, std::span<const VertexId> cands,
                    int remaining, int depth, uint64_t token_base,
                    std::vector<uint64_t>& stamp,
                    std::vector<std::vector<VertexId>>& bufs, uint64_t* pv,
                    std::vector<VertexId>* chain, const EmitFn* emit) {
  if (cands.size() < static_cast<size_t>(remaining)) return 0;
  if (remaining == 1) {
    uint64_t found = cands.size();
    if (pv) {
      for (VertexId x : cands) pv[x]++;
      for (VertexId y : *chain) pv[y] += found;
    }
    if (emit) {
      for (VertexId x : cands) {
        chain->push_back(x);
        (*emit)(*chain);
        chain->pop_back();
      }
    }
    return found;
  }
  const uint64_t token = token_base + static_cast<uint64_t>(depth);
  uint64_t total = 0;
  std::vector<VertexId>& next = bufs[depth + 1];
  for (VertexId u : cands) {
    next.clear();
    for (VertexId w : adj(u))
      if (stamp[w] == token) next.push_back(w);
    if (next.size() + 1 < static_cast<size_t>(remaining)) continue;
    for (VertexId w : next) stamp[w] = token + 1;
    if (chain) chain->push_back(u);
    total += clique_rec(adj, next, remaining - 1, depth + 1, token_base,
                        stamp, bufs, pv, chain, emit);
    if (chain) chain->pop_back();
    for (VertexId w : next) stamp[w] = token;
  }
  return total;
}

// Reusable per-thread workspace. gmark doubles as the induced-subgraph
// membership map (keyed by global id) and as the stamp array for
// recursions that run directly in global id space.
struct CliqueScratch {
  std::vector<uint64_t> gmark;
  std::vector<VertexId> local_of;
  std::vector<uint64_t> lstamp;
  std::vector<uint32_t> loff;
  std::vector<VertexId> ladj;
  std::vector<std::vector<VertexId>> bufs;
  std::vector<uint64_t> pv_local;
  std::vector<VertexId> chain;
  std::vector<VertexId> chain_global;
  uint64_t next_token = 1;

  void bind(VertexId n, int k) {
    if (gmark.size() < n) {
      gmark.resize(n, 0);
      local_of.resize(n);
    }
    if (bufs.size() < static_cast<size_t>(k) + 2) bufs.resize(k + 2);
  }
  uint64_t take_tokens(uint64_t count) {
    uint64_t base = next_token;
    next_token += count;
    return base;
  }
};

// Counts cliques of `size` vertices inside dg restricted to `verts`
// (ascending global ids). Vertices are relabeled to [0, |verts|) so the
// inner loops touch small dense arrays. With want_pv, sc.pv_local[i]
// holds the count through verts[i] afterwards. With emit, each clique is
// reported as sc.chain_global's existing prefix plus the clique's global
// ids in discovery order (ascending rank).
uint64_t cliques_in_subset(const DirectedGraph& dg,
                           std::span<const VertexId> verts, int size,
                           CliqueScratch& sc, bool want_pv,
                           const EmitFn* emit);

}  // namespace kclique::detail
