#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace treembed {

constexpr int64_t kInfDist = std::numeric_limits<int64_t>::max();

// Undirected graph with positive integer weights. Parallel edges are
// collapsed to the minimum weight and self-loops are rejected, so the
// shortest-path metric is well defined with min distance >= 1.
struct Graph {
  struct Edge {
    int32_t u, v;
    int64_t w;
  };

  int32_t n = 0;
  std::vector<Edge> edges;  // normalized u < v, sorted by (u, v)
  std::vector<std::vector<std::pair<int32_t, int64_t>>> adj;

  // Validates, normalizes, deduplicates and builds adjacency.
  static Graph from_edges(int32_t n, std::vector<Edge> raw);

  size_t m() const { return edges.size(); }
  int64_t max_weight() const;
  bool connected() const;
};

struct Permutation {
  std::vector<int32_t> pi;   // vertex -> rank in [1..n]
  std::vector<int32_t> inv;  // inv[r-1] = vertex with rank r

  int32_t n() const { return static_cast<int32_t>(pi.size()); }
  int32_t rank(int32_t v) const { return pi[v]; }
  int32_t vertex_at(int32_t r) const { return inv[r - 1]; }
};

struct ExactDistances {
  int32_t source = 0;
  std::vector<int64_t> d;  // kInfDist for unreachable
};

// Text format: line 1 "n m", then m lines "u v w" (0-based ids, w >= 1).
// Lines starting with '#' are ignored. Throws ParseError with line number.
Graph parse_graph(const std::string& text);
std::string write_graph(const Graph& g);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

ExactDistances dijkstra_exact(const Graph& g, int32_t s);

Permutation random_permutation(int32_t n, uint64_t seed);
Permutation identity_permutation(int32_t n);

}  // namespace treembed
