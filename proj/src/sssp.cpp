#include "treembed/sssp.hpp"

#include <cassert>

#include "treembed/errors.hpp"

namespace treembed {

DirectedAdj DirectedAdj::from_graph(const Graph& g) {
  DirectedAdj a;
  a.n = g.n;
  a.off.assign(g.n + 1, 0);
  for (const auto& e : g.edges) {
    ++a.off[e.u + 1];
    ++a.off[e.v + 1];
  }
  for (int32_t i = 0; i < g.n; ++i) a.off[i + 1] += a.off[i];
  a.to.resize(2 * g.edges.size());
  a.w.resize(2 * g.edges.size());
  std::vector<size_t> pos(a.off.begin(), a.off.end() - 1);
  for (const auto& e : g.edges) {
    a.to[pos[e.u]] = e.v;
    a.w[pos[e.u]++] = e.w;
    a.to[pos[e.v]] = e.u;
    a.w[pos[e.v]++] = e.w;
  }
  return a;
}

namespace {

ApproxDistances run_loop(BucketTree& bt, const DirectedAdj& a, int32_t s) {
  ApproxDistances res;
  res.source = s;
  res.d.assign(a.n, kInfDist);
  std::vector<char> settled(a.n, 0);
  bt.seed_source(s);
  while (auto item = bt.extract_min()) {
    auto [v, dist] = *item;
    settled[v] = 1;
    res.d[v] = dist;
    res.visit_order.push_back(v);
    for (size_t i = a.off[v]; i < a.off[v + 1]; ++i) {
      int32_t x = a.to[i];
      if (settled[x]) continue;
      int64_t cand = dist + a.w[i];
      if (cand < bt.tentative(x)) bt.decrease_key(x, cand, a.w[i]);
    }
  }
  res.stats = bt.stats();
  return res;
}

}  // namespace

ApproxDistances approx_sssp(const Graph& g, int32_t s, int k) {
  if (s < 0 || s >= g.n) throw ArgError("source out of range");
  if (k < 1) throw ArgError("weight exponent k must be >= 1");
  __int128 bound = 1;
  for (int i = 0; i < k; ++i) bound *= g.n;
  for (const auto& e : g.edges)
    if (static_cast<__int128>(e.w) > bound)
      throw ArgError("edge weight exceeds n^k");
  DirectedAdj a = DirectedAdj::from_graph(g);
  BucketTree bt(g.n, k);
  return run_loop(bt, a, s);
}

ApproxDistances approx_sssp_directed(const DirectedAdj& a, int32_t s) {
  if (s < 0 || s >= a.n) throw ArgError("source out of range");
  BucketTree bt = BucketTree::lenient(a.n);
  return run_loop(bt, a, s);
}

int gabow_rounds(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ArgError("eps must be in (0,1)");
  int rounds = 0;
  double resid = 1.0;
  while (resid > eps) {
    resid *= 0.75;
    ++rounds;
  }
  return rounds;
}

std::vector<int64_t> refine_gabow(const Graph& g, int32_t s, double eps,
                                  int* rounds_out) {
  int rounds = gabow_rounds(eps);
  if (rounds_out) *rounds_out = rounds;
  if (s < 0 || s >= g.n) throw ArgError("source out of range");
  DirectedAdj base = DirectedAdj::from_graph(g);
  std::vector<int64_t> acc(g.n, 0);
  std::vector<char> reachable(g.n, 0);
  DirectedAdj cur = base;
  for (int round = 0; round < rounds; ++round) {
    for (int32_t u = 0; u < g.n; ++u) {
      if (round > 0 && !reachable[u]) continue;
      for (size_t i = base.off[u]; i < base.off[u + 1]; ++i) {
        int32_t v = base.to[i];
        if (round > 0 && !reachable[v]) continue;
        int64_t wr = base.w[i] + acc[u] - acc[v];
        assert(wr >= 0);
        cur.w[i] = wr;
      }
    }
    ApproxDistances di = approx_sssp_directed(cur, s);
    for (int32_t v = 0; v < g.n; ++v) {
      if (di.d[v] == kInfDist) continue;
      if (round == 0) reachable[v] = 1;
      acc[v] += di.d[v];
    }
  }
  for (int32_t v = 0; v < g.n; ++v)
    if (!reachable[v]) acc[v] = kInfDist;
  return acc;
}

}  // namespace treembed
