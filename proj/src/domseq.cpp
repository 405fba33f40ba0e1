#include "treembed/domseq.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_map>

#include "treembed/errors.hpp"

namespace treembed {

DomSeqs brute_force_domseq(const Graph& g, const Permutation& pi) {
  DomSeqs seqs(g.n);
  std::vector<ExactDistances> all;
  all.reserve(g.n);
  for (int32_t s = 0; s < g.n; ++s) all.push_back(dijkstra_exact(g, s));
  for (int32_t x = 0; x < g.n; ++x) {
    int64_t best = kInfDist;
    for (int32_t r = 1; r <= g.n; ++r) {
      int32_t p = pi.vertex_at(r);
      int64_t d = all[p].d[x];
      if (d == kInfDist) continue;
      if (d < best) {
        seqs[x].push_back({p, d});
        best = d;
      }
    }
  }
  return seqs;
}

DomSeqs build_domseq_exact(const Graph& g, const Permutation& pi) {
  DomSeqs seqs(g.n);
  std::vector<int64_t> delta(g.n, kInfDist);
  std::vector<int64_t> tent(g.n, kInfDist);
  std::vector<int32_t> touched;
  using Item = std::pair<int64_t, int32_t>;
  for (int32_t r = 1; r <= g.n; ++r) {
    int32_t u = pi.vertex_at(r);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    tent[u] = 0;
    touched.push_back(u);
    pq.push({0, u});
    while (!pq.empty()) {
      auto [dd, x] = pq.top();
      pq.pop();
      if (dd != tent[x]) continue;
      delta[x] = dd;
      seqs[x].push_back({u, dd});
      for (auto [y, w] : g.adj[x]) {
        int64_t nd = dd + w;
        if (nd < delta[y] && nd < tent[y]) {
          tent[y] = nd;
          touched.push_back(y);
          pq.push({nd, y});
        }
      }
    }
    for (int32_t t : touched) tent[t] = kInfDist;
    touched.clear();
  }
  return seqs;
}

int32_t PriorityUnionFind::component_of(int32_t v, int32_t i) const {
  while (parent[v] != v && link_tag[v] <= i) v = parent[v];
  return v;
}

void PriorityUnionFind::members(int32_t root, int32_t i,
                                std::vector<int32_t>& out) const {
  out.push_back(root);
  for (size_t at = out.size() - 1; at < out.size(); ++at) {
    int32_t v = out[at];
    for (auto [child, tag] : kids[v])
      if (tag <= i) out.push_back(child);
  }
}

size_t PriorityUnionFind::root_path_len(int32_t v) const {
  size_t len = 0;
  while (parent[v] != v) {
    v = parent[v];
    ++len;
  }
  return len;
}

std::pair<PriorityUnionFind, SubproblemPlan> build_priority_union_find(
    const Graph& g) {
  PriorityUnionFind uf;
  uf.parent.resize(g.n);
  uf.rnk.assign(g.n, 0);
  uf.link_tag.assign(g.n, -1);
  uf.kids.assign(g.n, {});
  for (int32_t v = 0; v < g.n; ++v) uf.parent[v] = v;

  SubproblemPlan plan;
  plan.sorted_edges = g.edges;
  std::sort(plan.sorted_edges.begin(), plan.sorted_edges.end(),
            [](const Graph::Edge& a, const Graph::Edge& b) {
              if (a.w != b.w) return a.w < b.w;
              if (a.u != b.u) return a.u < b.u;
              return a.v < b.v;
            });
  // pw = floor(log_n w) by threshold scan (n >= 2 whenever edges exist)
  plan.pw.resize(plan.sorted_edges.size());
  {
    int32_t i = 0;
    __int128 next_threshold = g.n;  // n^(i+1)
    for (size_t e = 0; e < plan.sorted_edges.size(); ++e) {
      while (static_cast<__int128>(plan.sorted_edges[e].w) >= next_threshold) {
        ++i;
        next_threshold *= g.n;
      }
      plan.pw[e] = i;
    }
  }
  // merge scan: edge with exponent class i merges at tag i
  for (size_t e = 0; e < plan.sorted_edges.size(); ++e) {
    int32_t a = uf.component_of(plan.sorted_edges[e].u,
                                std::numeric_limits<int32_t>::max());
    int32_t b = uf.component_of(plan.sorted_edges[e].v,
                                std::numeric_limits<int32_t>::max());
    if (a == b) continue;
    if (uf.rnk[a] < uf.rnk[b]) std::swap(a, b);
    uf.parent[b] = a;
    uf.link_tag[b] = plan.pw[e];
    uf.kids[a].emplace_back(b, plan.pw[e]);
    if (uf.rnk[a] == uf.rnk[b]) ++uf.rnk[a];
    uf.merge_tags.push_back(plan.pw[e]);
  }
  // subproblem index set: distinct exponent classes and their successors
  std::vector<int32_t> idxs;
  for (size_t e = 0; e < plan.pw.size(); ++e) {
    if (e == 0 || plan.pw[e] != plan.pw[e - 1]) {
      idxs.push_back(plan.pw[e]);
      idxs.push_back(plan.pw[e] + 1);
    }
  }
  std::sort(idxs.begin(), idxs.end());
  idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
  for (auto it = idxs.rbegin(); it != idxs.rend(); ++it) {
    int32_t i = *it;
    // contiguous range of edges with pw in {i-1, i}
    size_t lo = 0, hi = plan.pw.size();
    while (lo < hi && plan.pw[lo] < i - 1) ++lo;
    size_t end = lo;
    while (end < hi && plan.pw[end] <= i) ++end;
    Subproblem sp;
    sp.idx = i;
    sp.edge_begin = lo;
    sp.edge_end = end;
    sp.out_lo = 1;
    for (int32_t t = 0; t < i; ++t) sp.out_lo *= g.n;
    sp.out_hi = sp.out_lo * g.n;
    plan.subs.push_back(sp);
  }
  return {std::move(uf), std::move(plan)};
}

DomSeqs build_domseq_approx(const Graph& g, const Permutation& pi,
                            BucketTree::Stats* stats_out) {
  DomSeqs seqs(g.n);
  BucketTree::Stats stats;
  auto [uf, plan] = build_priority_union_find(g);
  std::vector<int32_t> mem_buf;
  for (const auto& sp : plan.subs) {
    int32_t tag = sp.idx - 2;
    // components touching this subproblem's edges
    std::unordered_map<int32_t, int32_t> vroot;   // vertex -> root
    std::unordered_map<int32_t, int32_t> comp_id; // root -> dense id
    std::vector<int32_t> roots;
    auto comp_of = [&](int32_t v) {
      auto it = vroot.find(v);
      if (it != vroot.end()) return it->second;
      int32_t r = uf.component_of(v, tag);
      vroot.emplace(v, r);
      return r;
    };
    auto id_of = [&](int32_t root) {
      auto it = comp_id.find(root);
      if (it != comp_id.end()) return it->second;
      int32_t id = static_cast<int32_t>(roots.size());
      comp_id.emplace(root, id);
      roots.push_back(root);
      return id;
    };
    struct CEdge {
      int32_t to;
      int64_t w;
    };
    std::vector<std::vector<CEdge>> cadj;
    for (size_t e = sp.edge_begin; e < sp.edge_end; ++e) {
      const auto& ed = plan.sorted_edges[e];
      int32_t cu = id_of(comp_of(ed.u));
      int32_t cv = id_of(comp_of(ed.v));
      if (static_cast<size_t>(std::max(cu, cv)) >= cadj.size())
        cadj.resize(std::max(cu, cv) + 1);
      if (cu == cv) continue;  // contracted-internal edge
      cadj[cu].push_back({cv, ed.w});
      cadj[cv].push_back({cu, ed.w});
    }
    int32_t nc = static_cast<int32_t>(roots.size());
    if (nc == 0) continue;
    cadj.resize(nc);
    // member lists and the minimum-priority member per component
    std::vector<std::vector<int32_t>> mem(nc);
    std::vector<int32_t> best_vertex(nc);
    for (int32_t c = 0; c < nc; ++c) {
      mem_buf.clear();
      uf.members(roots[c], tag, mem_buf);
      mem[c] = mem_buf;
      int32_t bv = mem_buf[0];
      for (int32_t v : mem_buf)
        if (pi.rank(v) < pi.rank(bv)) bv = v;
      best_vertex[c] = bv;
    }
    std::vector<int32_t> order(nc);
    for (int32_t c = 0; c < nc; ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      return pi.rank(best_vertex[a]) < pi.rank(best_vertex[b]);
    });
    std::vector<int64_t> delta(nc, kInfDist);
    std::vector<int32_t> settled_epoch(nc, -1);
    for (int32_t oi = 0; oi < nc; ++oi) {
      int32_t src = order[oi];
      int32_t p = best_vertex[src];
      BucketTree bt = BucketTree::lenient(nc);
      bt.seed_source(src);
      while (auto item = bt.extract_min()) {
        auto [c, dist] = *item;
        settled_epoch[c] = oi;
        if (dist < delta[c]) {
          delta[c] = dist;
          // Candidate entry. Computed distances can undershoot the output
          // range by the search slack (factor 4) plus the contraction
          // error (< n^i), so undershooting values are still emitted with
          // the stored value clamped up to 2*n^i; at the level matching
          // the pair's true distance both sides of the d <= stored <= 8*d
          // bracket survive the clamp, and the final dominance filter
          // discards over-clamped candidates from higher levels. Values
          // at or above n^(i+1) are dropped: they can only come from
          // detours around heavier absent edges, and the level matching
          // the true distance covers the pair exactly.
          if (c != src && static_cast<__int128>(dist) < sp.out_hi) {
            int64_t stored = std::max(
                8 * dist, static_cast<int64_t>(2 * sp.out_lo));
            for (int32_t u : mem[c]) seqs[u].push_back({p, stored});
          }
        }
        for (const auto& ce : cadj[c]) {
          if (settled_epoch[ce.to] == oi) continue;
          int64_t cand = dist + ce.w;
          if (cand < delta[ce.to] && cand < bt.tentative(ce.to))
            bt.decrease_key(ce.to, cand, ce.w);
        }
      }
      stats += bt.stats();
    }
  }
  // dominance filter: keep the strict running minimum in priority order
  for (int32_t x = 0; x < g.n; ++x) {
    auto& s = seqs[x];
    s.push_back({x, 0});
    std::sort(s.begin(), s.end(), [&](const DomEntry& a, const DomEntry& b) {
      if (a.p != b.p) return pi.rank(a.p) < pi.rank(b.p);
      return a.dist < b.dist;
    });
    size_t kept = 0;
    int64_t best = kInfDist;
    for (const auto& e : s) {
      if (e.dist >= best) continue;
      best = e.dist;
      s[kept++] = e;
    }
    s.resize(kept);
    assert(s.back().p == x && s.back().dist == 0);
  }
  if (stats_out) *stats_out = stats;
  return seqs;
}

bool domseq_shape_ok(const DomSeqs& seqs, const Permutation& pi) {
  int32_t top = pi.vertex_at(1);
  for (int32_t x = 0; x < static_cast<int32_t>(seqs.size()); ++x) {
    const auto& s = seqs[x];
    if (s.empty()) return false;
    if (s.back().p != x || s.back().dist != 0) return false;
    if (s.front().p != top) return false;
    for (size_t j = 1; j < s.size(); ++j) {
      if (pi.rank(s[j].p) <= pi.rank(s[j - 1].p)) return false;
      if (s[j].dist >= s[j - 1].dist) return false;
    }
  }
  return true;
}

}  // namespace treembed
