#pragma once

#include <cstdint>
#include <vector>

#include "treembed/graph.hpp"

namespace treembed {

// Axis-neighbor lattice over 1 to 3 extents. Weights are 1 when
// weighted=false, else uniform integers in [1, 1000].
Graph gen_grid(const std::vector<int64_t>& dims, bool weighted, uint64_t seed);

// Preferential attachment: each new vertex attaches ceil(m/n) edges to
// existing vertices with probability proportional to degree. Connected by
// construction; final edge count may differ from m by < n.
Graph gen_power_law(int64_t n, int64_t m, uint64_t seed);

// Backbone path of `diameter` edges; remaining vertices hang off uniformly
// random backbone positions; extra edges are chords between vertices whose
// backbone positions differ by at most 1, keeping the hop diameter near
// `diameter`. Unit weights.
Graph gen_slim(int64_t n, int64_t m, int64_t diameter, uint64_t seed);

// Random connected graph: random attachment spanning tree plus uniform
// extra edges, weights uniform in [1, max_w]. Test and bench helper.
Graph gen_random_connected(int64_t n, int64_t m, int64_t max_w, uint64_t seed);

// Re-roll all edge weights uniformly in [1, 1000], keeping the topology.
Graph with_random_weights(const Graph& g, uint64_t seed);

}  // namespace treembed
