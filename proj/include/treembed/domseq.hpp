#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "treembed/bucket_tree.hpp"
#include "treembed/graph.hpp"

namespace treembed {

// One dominance-sequence entry: dominator p at stored distance dist.
// Lists have strictly increasing priority, strictly decreasing distance,
// and end with the self entry (x, 0).
struct DomEntry {
  int32_t p;
  int64_t dist;
  bool operator==(const DomEntry& o) const {
    return p == o.p && dist == o.dist;
  }
};

using DomSeqs = std::vector<std::vector<DomEntry>>;

// Definitional oracle: all-pairs Dijkstra, then keep each vertex whose
// distance is a strict running minimum in priority order.
DomSeqs brute_force_domseq(const Graph& g, const Permutation& pi);

// Sources in increasing priority over a shared, never reset delta array;
// matches the brute force output exactly.
DomSeqs build_domseq_exact(const Graph& g, const Permutation& pi);

// Union-find with union by rank, no path compression; each parent link is
// tagged with the subproblem index of the merge, so the component of v at
// level i is recovered by walking links with tag <= i.
struct PriorityUnionFind {
  std::vector<int32_t> parent;     // parent[v] == v for roots
  std::vector<int32_t> rnk;
  std::vector<int32_t> link_tag;   // tag on the link to parent; -1 at roots
  std::vector<std::vector<std::pair<int32_t, int32_t>>> kids;  // (child, tag)
  std::vector<int32_t> merge_tags;  // one entry per executed merge

  int32_t component_of(int32_t v, int32_t i) const;
  void members(int32_t root, int32_t i, std::vector<int32_t>& out) const;
  size_t root_path_len(int32_t v) const;
};

// Subproblem i covers edges with weight in [n^(i-1), n^(i+1)) and emits
// entries with distance in [n^i, n^(i+1)); edges below n^(i-1) are
// contracted (links tagged <= i-2). Empty exponent classes are elided.
struct Subproblem {
  int32_t idx;
  size_t edge_begin, edge_end;  // range into sorted_edges
  __int128 out_lo, out_hi;
};

struct SubproblemPlan {
  std::vector<Graph::Edge> sorted_edges;  // ascending weight
  std::vector<int32_t> pw;                // floor(log_n w) per sorted edge
  std::vector<Subproblem> subs;           // descending idx
};

std::pair<PriorityUnionFind, SubproblemPlan> build_priority_union_find(
    const Graph& g);

// Approximate construction: per subproblem, bucket-tree SSSP over the
// contracted component graph from each component in increasing priority,
// storing 8*delta with each dominated component's members. Entries
// bracket truth: d_G <= dist <= 8*d_G.
DomSeqs build_domseq_approx(const Graph& g, const Permutation& pi,
                            BucketTree::Stats* stats_out = nullptr);

// Shape check shared by tests: strictly increasing priority, strictly
// decreasing distance, terminal (x, 0), first dominator = rank-1 vertex.
bool domseq_shape_ok(const DomSeqs& seqs, const Permutation& pi);

}  // namespace treembed
