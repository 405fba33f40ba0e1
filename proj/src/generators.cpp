#include "treembed/generators.hpp"

#include <algorithm>
#include <unordered_set>

#include "treembed/errors.hpp"
#include "treembed/rng.hpp"

namespace treembed {

namespace {

uint64_t pair_key(int32_t u, int32_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
}

}  // namespace

Graph gen_grid(const std::vector<int64_t>& dims, bool weighted, uint64_t seed) {
  if (dims.empty() || dims.size() > 3)
    throw ArgError("grid needs 1 to 3 extents");
  int64_t total = 1;
  for (int64_t d : dims) {
    if (d < 1) throw ArgError("grid extent must be >= 1");
    total *= d;
    if (total > 10'000'000) throw ArgError("grid too large (> 1e7 vertices)");
  }
  std::vector<int64_t> ext(dims);
  ext.resize(3, 1);
  auto id = [&](int64_t x, int64_t y, int64_t z) {
    return static_cast<int32_t>(x + ext[0] * (y + ext[1] * z));
  };
  Rng rng(seed);
  std::vector<Graph::Edge> edges;
  for (int64_t z = 0; z < ext[2]; ++z)
    for (int64_t y = 0; y < ext[1]; ++y)
      for (int64_t x = 0; x < ext[0]; ++x) {
        int32_t u = id(x, y, z);
        auto add = [&](int32_t v) {
          int64_t w = weighted ? rng.range(1, 1000) : 1;
          edges.push_back({u, v, w});
        };
        if (x + 1 < ext[0]) add(id(x + 1, y, z));
        if (y + 1 < ext[1]) add(id(x, y + 1, z));
        if (z + 1 < ext[2]) add(id(x, y, z + 1));
      }
  return Graph::from_edges(static_cast<int32_t>(total), std::move(edges));
}

Graph gen_power_law(int64_t n, int64_t m, uint64_t seed) {
  if (n < 1) throw ArgError("n must be >= 1");
  if (m < n - 1) throw ArgError("need m >= n-1 for connectivity");
  Rng rng(seed);
  int64_t arity = (m + n - 1) / n;
  std::vector<Graph::Edge> edges;
  std::vector<int32_t> bag;  // one entry per edge endpoint
  std::unordered_set<uint64_t> present;
  for (int64_t vi = 1; vi < n; ++vi) {
    int32_t v = static_cast<int32_t>(vi);
    int64_t want = std::min<int64_t>(arity, vi);
    int64_t attached = 0;
    int64_t attempts = 0;
    while (attached < want && attempts < 64 * want) {
      ++attempts;
      int32_t t = bag.empty()
                      ? static_cast<int32_t>(rng.below(vi))
                      : bag[rng.below(bag.size())];
      if (t == v || present.count(pair_key(v, t))) continue;
      present.insert(pair_key(v, t));
      edges.push_back({v, t, 1});
      bag.push_back(v);
      bag.push_back(t);
      ++attached;
    }
    if (attached == 0) {
      // degenerate fallback so the graph stays connected
      int32_t t = static_cast<int32_t>(rng.below(vi));
      if (!present.count(pair_key(v, t))) {
        present.insert(pair_key(v, t));
        edges.push_back({v, t, 1});
        bag.push_back(v);
        bag.push_back(t);
      }
    }
  }
  return Graph::from_edges(static_cast<int32_t>(n), std::move(edges));
}

Graph gen_slim(int64_t n, int64_t m, int64_t diameter, uint64_t seed) {
  if (n < 2) throw ArgError("n must be >= 2");
  if (m < n - 1) throw ArgError("need m >= n-1 for connectivity");
  if (diameter < 1 || diameter >= n) throw ArgError("need 1 <= diameter < n");
  Rng rng(seed);
  std::vector<Graph::Edge> edges;
  std::unordered_set<uint64_t> present;
  auto add = [&](int32_t u, int32_t v) {
    if (u == v || present.count(pair_key(u, v))) return false;
    present.insert(pair_key(u, v));
    edges.push_back({u, v, 1});
    return true;
  };
  // backbone: vertices 0..diameter form a path
  for (int64_t i = 0; i < diameter; ++i)
    add(static_cast<int32_t>(i), static_cast<int32_t>(i + 1));
  // hang remaining vertices off random backbone positions
  std::vector<int64_t> pos(n);
  for (int64_t i = 0; i <= diameter; ++i) pos[i] = i;
  std::vector<std::vector<int32_t>> at_pos(diameter + 1);
  for (int64_t i = 0; i <= diameter; ++i)
    at_pos[i].push_back(static_cast<int32_t>(i));
  for (int64_t i = diameter + 1; i < n; ++i) {
    int64_t p = static_cast<int64_t>(rng.below(diameter + 1));
    pos[i] = p;
    at_pos[p].push_back(static_cast<int32_t>(i));
    add(static_cast<int32_t>(i), static_cast<int32_t>(p));
  }
  // chords between vertices at most one backbone step apart
  int64_t extra = m - static_cast<int64_t>(edges.size());
  int64_t stuck = 0;
  while (extra > 0 && stuck < 200 * m) {
    int64_t p = diameter == 1 ? 0 : static_cast<int64_t>(rng.below(diameter));
    const auto& a = at_pos[p];
    const auto& b = at_pos[p + 1];
    size_t total = a.size() + b.size();
    size_t i = rng.below(total);
    size_t j = rng.below(total);
    int32_t u = i < a.size() ? a[i] : b[i - a.size()];
    int32_t v = j < a.size() ? a[j] : b[j - a.size()];
    if (add(u, v)) {
      --extra;
      stuck = 0;
    } else {
      ++stuck;
    }
  }
  if (extra > 0)
    throw ArgError("slim graph parameters infeasible: cannot place " +
                   std::to_string(extra) + " more chords");
  return Graph::from_edges(static_cast<int32_t>(n), std::move(edges));
}

Graph gen_random_connected(int64_t n, int64_t m, int64_t max_w, uint64_t seed) {
  if (n < 1) throw ArgError("n must be >= 1");
  if (m < n - 1) throw ArgError("need m >= n-1 for connectivity");
  if (max_w < 1) throw ArgError("max_w must be >= 1");
  Rng rng(seed);
  std::vector<Graph::Edge> edges;
  std::unordered_set<uint64_t> present;
  auto add = [&](int32_t u, int32_t v) {
    if (u == v || present.count(pair_key(u, v))) return false;
    present.insert(pair_key(u, v));
    edges.push_back({u, v, rng.range(1, max_w)});
    return true;
  };
  for (int64_t i = 1; i < n; ++i)
    add(static_cast<int32_t>(i), static_cast<int32_t>(rng.below(i)));
  int64_t extra = m - (n - 1);
  int64_t max_extra = n * (n - 1) / 2 - (n - 1);
  extra = std::min(extra, max_extra);
  while (extra > 0) {
    int32_t u = static_cast<int32_t>(rng.below(n));
    int32_t v = static_cast<int32_t>(rng.below(n));
    if (add(u, v)) --extra;
  }
  return Graph::from_edges(static_cast<int32_t>(n), std::move(edges));
}

Graph with_random_weights(const Graph& g, uint64_t seed) {
  Rng rng(seed);
  std::vector<Graph::Edge> edges = g.edges;
  for (auto& e : edges) e.w = rng.range(1, 1000);
  return Graph::from_edges(g.n, std::move(edges));
}

}  // namespace treembed
