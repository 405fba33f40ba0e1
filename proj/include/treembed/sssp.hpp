#pragma once

#include <cstdint>
#include <vector>

#include "treembed/bucket_tree.hpp"
#include "treembed/graph.hpp"

namespace treembed {

struct ApproxDistances {
  int32_t source = 0;
  std::vector<int64_t> d;  // kInfDist for unreachable
  std::vector<int32_t> visit_order;
  double alpha = 0.25;
  BucketTree::Stats stats;
};

// Directed adjacency in CSR form; weights >= 0 (zero allowed, used by the
// reweighted refinement rounds).
struct DirectedAdj {
  int32_t n = 0;
  std::vector<size_t> off;  // size n+1
  std::vector<int32_t> to;
  std::vector<int64_t> w;

  static DirectedAdj from_graph(const Graph& g);
};

// One bucket-tree Dijkstra pass; 1/4-distance-preserving. Validates all
// weights lie in [1, n^k].
ApproxDistances approx_sssp(const Graph& g, int32_t s, int k);

// Core loop on directed adjacency with the full-range structure.
ApproxDistances approx_sssp_directed(const DirectedAdj& a, int32_t s);

// Iterative refinement: ceil(log_{4/3}(1/eps)) rounds of approx_sssp on
// potential-reweighted edges; returns accumulated distances within
// [(1-eps)*d_G, d_G].
std::vector<int64_t> refine_gabow(const Graph& g, int32_t s, double eps,
                                  int* rounds_out = nullptr);

int gabow_rounds(double eps);

}  // namespace treembed
