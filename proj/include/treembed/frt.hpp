#pragma once

#include <cstdint>
#include <vector>

#include "treembed/domseq.hpp"
#include "treembed/graph.hpp"
#include "treembed/rng.hpp"

namespace treembed {

// Scale factor beta in [1, 2), stored as a Q52 fixed-point numerator so
// all level-radius comparisons are exact integer comparisons and trees
// are bit-reproducible across platforms.
struct Beta {
  uint64_t num = uint64_t{1} << 52;
  double value() const { return static_cast<double>(num) * 0x1p-52; }
};

// beta = 2^U with U = u52 / 2^52; log2(beta) uniform, i.e. density
// 1/(x ln 2) on [1, 2].
Beta beta_from_u52(uint64_t u52);
Beta sample_beta(Rng& rng);

struct CpsEntry {
  int32_t p;      // dominator
  int32_t level;  // highest level at which p covers the vertex
  bool operator==(const CpsEntry& o) const {
    return p == o.p && level == o.level;
  }
};

using CpsList = std::vector<CpsEntry>;

// delta = ceil(log2 of the max stored distance), clamped >= 1, so that
// 2^delta bounds the metric's diameter estimate used for level radii.
int32_t choose_delta(const DomSeqs& seqs);

// Compress one dominance sequence: entry j is kept with level
// m_j = max{i : d_j <= beta * 2^(delta-i)} iff m_j exceeds the previous
// kept level. Non-self entries are capped at level delta-1; the self
// entry always closes the list at level delta.
CpsList domseq_to_cps(const std::vector<DomEntry>& seq, Beta beta,
                      int32_t delta);

enum class WeightMode : uint8_t { kLevel = 0, kActual = 1 };

// Compressed FRT tree: a Patricia trie over partition sequences. Node i
// spans levels [end_level(parent)+1, end_level(i)] all labeled with the
// same dominator. Distances are served in Q52 fixed point.
struct FrtTree {
  struct Node {
    int32_t parent;  // -1 at root
    int32_t label;
    int32_t end_level;
  };

  std::vector<Node> nodes;
  std::vector<int32_t> depth;
  std::vector<int32_t> leaf_of;  // vertex -> node
  Beta beta;
  int32_t delta = 1;
  WeightMode mode = WeightMode::kLevel;
  // actual mode: distance from vertex to the label of its depth-d ancestor
  std::vector<std::vector<int64_t>> anc_dist;

  int32_t n() const { return static_cast<int32_t>(leaf_of.size()); }
  int32_t lca(int32_t node_a, int32_t node_b) const;

  // level mode: root-path weight of a node ending at level e is
  // beta * (2^delta - 2^(delta-e)); pairwise distance telescopes to
  // 2*beta*(2^(delta-b) - 1) with b the LCA end level.
  unsigned __int128 root_weight_fixed(int32_t node) const;
  unsigned __int128 distance_fixed(int32_t u, int32_t v) const;
  double distance(int32_t u, int32_t v) const;

  void build_lca();  // called by builders and deserialization

 private:
  std::vector<int32_t> first_pos_;
  std::vector<int32_t> euler_node_;
  std::vector<int32_t> euler_depth_;
  std::vector<std::vector<int32_t>> sparse_;  // index of min depth
  std::vector<int32_t> log2_;
};

// dist_map supplies the stored dominance distances; required for actual
// mode (per-leaf ancestor distances are taken from it).
FrtTree build_frt_tree(const std::vector<CpsList>& cps, WeightMode mode,
                       const DomSeqs* dist_map, Beta beta, int32_t delta);

}  // namespace treembed
