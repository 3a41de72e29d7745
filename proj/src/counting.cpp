#include "kclique/counting.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

#include "clique_rec.hpp"

namespace kclique {

using detail::CliqueScratch;
using detail::EmitFn;

Parallelism default_parallelism(int k) {
  return k < 8 ? Parallelism::node : Parallelism::edge;
}

namespace detail {

uint64_t cliques_in_subset(const DirectedGraph& dg,
                           std::span<const VertexId> verts, int size,
                           CliqueScratch& sc, bool want_pv,
                           const EmitFn* emit) {
  const uint32_t s = static_cast<uint32_t>(verts.size());
  if (s < static_cast<uint32_t>(size)) {
    if (want_pv) sc.pv_local.assign(s, 0);
    return 0;
  }
  const uint64_t member = sc.take_tokens(1);
  for (uint32_t i = 0; i < s; i++) {
    sc.gmark[verts[i]] = member;
    sc.local_of[verts[i]] = i;
  }
  sc.loff.assign(s + 1, 0);
  for (uint32_t i = 0; i < s; i++) {
    for (VertexId b : dg.out_neighbors(verts[i]))
      if (sc.gmark[b] == member) sc.loff[i + 1]++;
  }
  for (uint32_t i = 0; i < s; i++) sc.loff[i + 1] += sc.loff[i];
  sc.ladj.resize(sc.loff[s]);
  {
    std::vector<uint32_t> cur(sc.loff.begin(), sc.loff.end() - 1);
    for (uint32_t i = 0; i < s; i++) {
      for (VertexId b : dg.out_neighbors(verts[i]))
        if (sc.gmark[b] == member) sc.ladj[cur[i]++] = sc.local_of[b];
    }
  }
  if (sc.lstamp.size() < s) sc.lstamp.resize(s, 0);
  const uint64_t tb = sc.take_tokens(size + 2);
  std::vector<VertexId>& roots = sc.bufs[1];
  roots.resize(s);
  for (uint32_t i = 0; i < s; i++) {
    roots[i] = i;
    sc.lstamp[i] = tb + 1;
  }
  if (want_pv) sc.pv_local.assign(s, 0);
  sc.chain.clear();

  EmitFn translate;
  if (emit) {
    translate = [&](std::span<const VertexId> locals) {
      size_t prefix = sc.chain_global.size();
      for (VertexId lid : locals) sc.chain_global.push_back(verts[lid]);
      (*emit)(sc.chain_global);
      sc.chain_global.resize(prefix);
    };
  }
  auto adj = [&](VertexId u) {
    return std::span<const VertexId>(sc.ladj.data() + sc.loff[u],
                                     sc.ladj.data() + sc.loff[u + 1]);
  };
  return clique_rec(adj, std::span<const VertexId>(roots), size, 1, tb,
                    sc.lstamp, sc.bufs,
                    want_pv ? sc.pv_local.data() : nullptr,
                    (want_pv || emit) ? &sc.chain : nullptr,
                    emit ? &translate : nullptr);
}

}  // namespace detail

namespace {

// Core engine behind the three public entry points.
CliqueCounts count_impl(const DirectedGraph& dg, int k, const CountConfig& cfg,
                        bool want_pv, const CliqueCallback* emit) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const VertexId n = dg.num_vertices();
  CliqueCounts out;
  out.k = k;

  uint64_t total = 0;
  std::vector<std::vector<uint64_t>> tl_pv;

  if (cfg.parallelism == Parallelism::node) {
#pragma omp parallel reduction(+ : total)
    {
#pragma omp single
      tl_pv.resize(omp_get_num_threads());
      uint64_t* mypv = nullptr;
      if (want_pv) {
        tl_pv[omp_get_thread_num()].assign(n, 0);
        mypv = tl_pv[omp_get_thread_num()].data();
      }
      CliqueScratch sc;
      sc.bind(n, k);
#pragma omp for schedule(dynamic, 16)
      for (VertexId v = 0; v < n; v++) {
        auto nbrs = dg.out_neighbors(v);
        if (nbrs.size() + 1 < static_cast<size_t>(k)) continue;
        if (emit) {
          sc.chain_global.clear();
          sc.chain_global.push_back(v);
        }
        if (cfg.build_induced) {
          uint64_t cnt =
              detail::cliques_in_subset(dg, nbrs, k - 1, sc, want_pv, emit);
          total += cnt;
          if (want_pv && cnt) {
            mypv[v] += cnt;
            for (size_t i = 0; i < nbrs.size(); i++)
              if (sc.pv_local[i]) mypv[nbrs[i]] += sc.pv_local[i];
          }
        } else {
          // Flat variant: recurse on the full graph with a global stamp
          // array instead of relabeling the neighborhood.
          const uint64_t tb = sc.take_tokens(k + 2);
          for (VertexId u : nbrs) sc.gmark[u] = tb + 1;
          sc.chain.clear();
          sc.chain.push_back(v);
          auto adj = [&](VertexId u) { return dg.out_neighbors(u); };
          total += detail::clique_rec(
              adj, nbrs, k - 1, 1, tb, sc.gmark, sc.bufs, mypv,
              (want_pv || emit) ? &sc.chain : nullptr, emit);
        }
      }
    }
  } else {
    // Edge parallelism: one task per directed edge, for flatter work
    // distribution when k is large.
    const uint64_t m = dg.num_edges();
    std::vector<VertexId> source(m);
    for (VertexId v = 0; v < n; v++) {
      uint64_t begin = dg.out_offset(v);
      for (uint64_t e = 0; e < dg.out_degree(v); e++) source[begin + e] = v;
    }
#pragma omp parallel reduction(+ : total)
    {
#pragma omp single
      tl_pv.resize(omp_get_num_threads());
      uint64_t* mypv = nullptr;
      if (want_pv) {
        tl_pv[omp_get_thread_num()].assign(n, 0);
        mypv = tl_pv[omp_get_thread_num()].data();
      }
      CliqueScratch sc;
      sc.bind(n, k);
#pragma omp for schedule(dynamic, 64)
      for (uint64_t e = 0; e < m; e++) {
        VertexId v = source[e];
        VertexId u = dg.out_targets()[e];
        sc.chain.clear();
        sc.chain.push_back(v);
        sc.chain.push_back(u);
        if (k == 2) {
          total += 1;
          if (mypv) {
            mypv[v]++;
            mypv[u]++;
          }
          if (emit) (*emit)(sc.chain);
          continue;
        }
        auto nv = dg.out_neighbors(v);
        auto nu = dg.out_neighbors(u);
        std::vector<VertexId>& both = sc.bufs[2];
        both.clear();
        std::set_intersection(nv.begin(), nv.end(), nu.begin(), nu.end(),
                              std::back_inserter(both));
        if (both.size() + 2 < static_cast<size_t>(k)) continue;
        const uint64_t tb = sc.take_tokens(k + 2);
        for (VertexId w : both) sc.gmark[w] = tb + 2;
        auto adj = [&](VertexId w) { return dg.out_neighbors(w); };
        total += detail::clique_rec(
            adj, std::span<const VertexId>(both), k - 2, 2, tb, sc.gmark,
            sc.bufs, mypv, (want_pv || emit) ? &sc.chain : nullptr, emit);
      }
    }
  }

  out.total = total;
  if (want_pv) {
    out.per_vertex.assign(n, 0);
    for (const auto& part : tl_pv) {
      if (part.empty()) continue;
      for (VertexId v = 0; v < n; v++) out.per_vertex[v] += part[v];
    }
  }
  return out;
}

}  // namespace

CliqueCounts count_total(const DirectedGraph& dg, int k,
                         const CountConfig& cfg) {
  return count_impl(dg, k, cfg, false, nullptr);
}

CliqueCounts count_per_vertex(const DirectedGraph& dg, int k,
                              const CountConfig& cfg) {
  return count_impl(dg, k, cfg, true, nullptr);
}

CliqueCounts list_cliques(const DirectedGraph& dg, int k,
                          const CountConfig& cfg, const CliqueCallback& emit) {
  return count_impl(dg, k, cfg, false, &emit);
}

}  // namespace kclique
