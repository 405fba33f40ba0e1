#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treembed/frt.hpp"
#include "treembed/graph.hpp"

namespace treembed {

enum class DomseqMode : uint8_t { kExact = 0, kApprox = 1 };

// k independent FRT trees; a query is the minimum tree distance. With
// exact sequences every tree dominates the graph metric, so queries never
// underestimate.
struct DistanceOracle {
  int32_t n = 0;
  uint64_t seed = 0;
  WeightMode mode = WeightMode::kActual;
  DomseqMode domseq_mode = DomseqMode::kExact;
  std::vector<FrtTree> trees;
  BucketTree::Stats build_stats;  // bucket ops (approx sequences only)

  unsigned __int128 query_fixed(int32_t u, int32_t v) const;
  // minimum over the first k trees only (nested-sweep evaluation)
  unsigned __int128 query_fixed_prefix(size_t k, int32_t u, int32_t v) const;
  double query(int32_t u, int32_t v) const;
};

DistanceOracle build_oracle(const Graph& g, int k, WeightMode mode,
                            DomseqMode domseq_mode, uint64_t seed,
                            int threads = 1);

struct StretchReport {
  int64_t requested = 0;
  int64_t evaluated = 0;
  int64_t skipped = 0;  // disconnected pairs
  double avg = 0, worst = 0, geomean = 0;
  struct Row {
    int32_t u, v;
    int64_t d_g;
    double d_t, stretch;
  };
  std::vector<Row> rows;
};

StretchReport eval_stretch(const DistanceOracle& o, const Graph& g,
                           int64_t pairs, uint64_t seed,
                           bool keep_rows = false);

// One pass over the sampled pairs evaluating every prefix size in `ks`
// (ascending); exact distances are computed once per distinct source.
std::vector<StretchReport> eval_stretch_sweep(const DistanceOracle& o,
                                              const Graph& g,
                                              const std::vector<int>& ks,
                                              int64_t pairs, uint64_t seed);

std::string serialize_oracle(const DistanceOracle& o);
DistanceOracle deserialize_oracle(const std::string& bytes);
void save_oracle(const DistanceOracle& o, const std::string& path);
DistanceOracle load_oracle(const std::string& path);

}  // namespace treembed
