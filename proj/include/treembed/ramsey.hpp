#pragma once

#include <cstdint>
#include <vector>

#include "treembed/graph.hpp"

namespace treembed {

// Exact metric snapshot for the Monte-Carlo estimators. Validated on
// construction: zero diagonal, symmetry, triangle inequality.
struct MetricView {
  int32_t n = 0;
  std::vector<int64_t> d;  // row-major n*n
  int64_t diameter = 0;
  int64_t min_positive = 0;
  std::vector<std::vector<int32_t>> order;  // per x: all vertices by distance

  int64_t at(int32_t i, int32_t j) const { return d[static_cast<size_t>(i) * n + j]; }

  static MetricView from_graph(const Graph& g);
  static MetricView from_matrix(int32_t n, std::vector<int64_t> dist);
};

struct PaddingEstimate {
  std::vector<double> freq;    // per-vertex padded-trial frequency
  std::vector<double> se;      // binomial standard error
  int64_t trials = 0;
  double bound = 0;            // 0.5 * n^(-2/a)
  double alpha = 0;            // padding constant 1 - 2^(-1/2a)
};

double padding_alpha(int a);

// Per trial: draw (permutation, beta), form the level-i partition by
// sigma-prefix agreement with cluster radii beta*2^(-i)*diameter; x is
// padded iff at every level its ball of radius alpha*2^(-i)*beta*diameter
// stays inside its cluster. beta_in_radius=false drops beta from the
// padding radius (the statement-form reading).
PaddingEstimate estimate_padding(const MetricView& mv, int a, int64_t trials,
                                 uint64_t seed, bool beta_in_radius = true);

// Values live in buckets 1..a; value j is selected with probability p[j].
// Estimates Pr[a uniformly chosen bucket contains no selected value].
double simulate_bucket_lemma(const std::vector<int>& values,
                             const std::vector<double>& p, int a,
                             int64_t trials, uint64_t seed,
                             double* stderr_out = nullptr);

// Points in [0,1); per trial draw uniform b and independent selections;
// success iff no selected point falls in [b - 1/2a, b + 1/2a) mod 1.
// eps must be j/a for integer j in [1, a-1].
double simulate_range_lemma(const std::vector<double>& points,
                            const std::vector<double>& p, int a, double eps,
                            int64_t trials, uint64_t seed,
                            double* stderr_out = nullptr);

}  // namespace treembed
