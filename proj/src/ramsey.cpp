#include "treembed/ramsey.hpp"

#include <algorithm>
#include <cmath>

#include "treembed/errors.hpp"
#include "treembed/frt.hpp"
#include "treembed/rng.hpp"

namespace treembed {

namespace {

void finish_metric(MetricView& mv) {
  int32_t n = mv.n;
  mv.diameter = 0;
  mv.min_positive = kInfDist;
  for (int32_t i = 0; i < n; ++i) {
    if (mv.at(i, i) != 0) throw ArgError("nonzero diagonal");
    for (int32_t j = 0; j < n; ++j) {
      int64_t v = mv.at(i, j);
      if (v < 0 || v == kInfDist) throw ArgError("metric must be finite");
      if (v != mv.at(j, i)) throw ArgError("metric not symmetric");
      mv.diameter = std::max(mv.diameter, v);
      if (v > 0) mv.min_positive = std::min(mv.min_positive, v);
    }
  }
  if (mv.min_positive == kInfDist) mv.min_positive = 1;
  // triangle inequality; O(n^3) but metric views are small by design
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = 0; j < n; ++j)
      for (int32_t k = 0; k < n; ++k)
        if (mv.at(i, j) > mv.at(i, k) + mv.at(k, j))
          throw ArgError("triangle inequality violated");
  mv.order.assign(n, {});
  for (int32_t i = 0; i < n; ++i) {
    auto& ord = mv.order[i];
    ord.resize(n);
    for (int32_t j = 0; j < n; ++j) ord[j] = j;
    std::stable_sort(ord.begin(), ord.end(), [&](int32_t a, int32_t b) {
      return mv.at(i, a) < mv.at(i, b);
    });
  }
}

}  // namespace

MetricView MetricView::from_graph(const Graph& g) {
  if (!g.connected()) throw ArgError("metric view needs a connected graph");
  MetricView mv;
  mv.n = g.n;
  mv.d.resize(static_cast<size_t>(g.n) * g.n);
  for (int32_t s = 0; s < g.n; ++s) {
    ExactDistances ex = dijkstra_exact(g, s);
    for (int32_t v = 0; v < g.n; ++v)
      mv.d[static_cast<size_t>(s) * g.n + v] = ex.d[v];
  }
  finish_metric(mv);
  return mv;
}

MetricView MetricView::from_matrix(int32_t n, std::vector<int64_t> dist) {
  if (n < 1) throw ArgError("metric needs n >= 1");
  if (dist.size() != static_cast<size_t>(n) * n)
    throw ArgError("matrix size mismatch");
  MetricView mv;
  mv.n = n;
  mv.d = std::move(dist);
  finish_metric(mv);
  return mv;
}

double padding_alpha(int a) {
  if (a < 2) throw ArgError("a must be >= 2");
  return 1.0 - std::exp2(-1.0 / (2.0 * a));
}

PaddingEstimate estimate_padding(const MetricView& mv, int a, int64_t trials,
                                 uint64_t seed, bool beta_in_radius) {
  if (a < 2) throw ArgError("a must be >= 2");
  if (trials < 1) throw ArgError("trials must be >= 1");
  int32_t n = mv.n;
  double alpha = padding_alpha(a);
  PaddingEstimate est;
  est.trials = trials;
  est.alpha = alpha;
  est.bound = 0.5 * std::pow(static_cast<double>(n), -2.0 / a);
  std::vector<int64_t> wins(n, 0);

  // levels beyond L have singleton clusters and singleton padding balls
  int levels_cap = 2;
  {
    double r = 2.0 * static_cast<double>(mv.diameter);
    while (r >= static_cast<double>(mv.min_positive) && levels_cap < 64) {
      r /= 2;
      ++levels_cap;
    }
  }

  std::vector<std::vector<int32_t>> sig(n);  // per vertex, per level
  std::vector<int32_t> pmin(n);
  std::vector<char> agreed(static_cast<size_t>(n) * n);
  for (int64_t t = 0; t < trials; ++t) {
    Permutation pi = random_permutation(n, mix_seed(seed, t, 1));
    Rng beta_rng(mix_seed(seed, t, 2));
    double beta = sample_beta(beta_rng).value();
    double dia = static_cast<double>(mv.diameter);
    // sig[y][i] = min rank within the level-i cluster radius around y;
    // computed from the running prefix minimum over the distance order
    for (int32_t y = 0; y < n; ++y) {
      const auto& ord = mv.order[y];
      int32_t running = pi.rank(ord[0]);
      for (int32_t j = 0; j < n; ++j) {
        running = std::min(running, pi.rank(ord[j]));
        pmin[j] = running;
      }
      sig[y].assign(levels_cap, 0);
      double radius = beta * dia;
      for (int i = 0; i < levels_cap; ++i) {
        // last index whose distance is within the radius
        int32_t lo = 0, hi = n - 1;
        while (lo < hi) {
          int32_t mid = (lo + hi + 1) / 2;
          if (static_cast<double>(mv.at(y, ord[mid])) <= radius)
            lo = mid;
          else
            hi = mid - 1;
        }
        sig[y][i] = pmin[lo];  // ord[0] = y itself, always within
        radius /= 2;
      }
    }
    std::fill(agreed.begin(), agreed.end(), 1);
    for (int32_t x = 0; x < n; ++x) {
      bool ok = true;
      double pr = alpha * (beta_in_radius ? beta : 1.0) * dia;
      char* ag = agreed.data() + static_cast<size_t>(x) * n;
      for (int i = 0; i < levels_cap && ok; ++i) {
        for (int32_t y : mv.order[x]) {
          if (static_cast<double>(mv.at(x, y)) > pr) break;
          if (sig[y][i] != sig[x][i]) ag[y] = 0;
          if (!ag[y]) {
            ok = false;
            break;
          }
        }
        pr /= 2;
      }
      if (ok) ++wins[x];
    }
  }
  est.freq.resize(n);
  est.se.resize(n);
  for (int32_t x = 0; x < n; ++x) {
    double f = static_cast<double>(wins[x]) / static_cast<double>(trials);
    est.freq[x] = f;
    est.se[x] = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  }
  return est;
}

double simulate_bucket_lemma(const std::vector<int>& values,
                             const std::vector<double>& p, int a,
                             int64_t trials, uint64_t seed,
                             double* stderr_out) {
  if (a < 1) throw ArgError("a must be >= 1");
  if (values.size() != p.size()) throw ArgError("values/probs size mismatch");
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1 || values[i] > a) throw ArgError("value out of [1,a]");
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw ArgError("probability out of range");
  }
  if (trials < 1) throw ArgError("trials must be >= 1");
  Rng rng(seed);
  int64_t wins = 0;
  for (int64_t t = 0; t < trials; ++t) {
    int bucket = 1 + static_cast<int>(rng.below(a));
    bool clean = true;
    for (size_t i = 0; i < values.size(); ++i) {
      bool selected = rng.unit() < p[i];
      if (selected && values[i] == bucket) clean = false;
    }
    if (clean) ++wins;
  }
  double f = static_cast<double>(wins) / static_cast<double>(trials);
  if (stderr_out)
    *stderr_out = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  return f;
}

double simulate_range_lemma(const std::vector<double>& points,
                            const std::vector<double>& p, int a, double eps,
                            int64_t trials, uint64_t seed,
                            double* stderr_out) {
  if (a < 2) throw ArgError("a must be >= 2");
  if (points.size() != p.size()) throw ArgError("points/probs size mismatch");
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0 && points[i] < 1.0))
      throw ArgError("point outside [0,1)");
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      throw ArgError("probability out of range");
  }
  double scaled = eps * a;
  if (std::abs(scaled - std::round(scaled)) > 1e-9 || scaled < 1 - 1e-9 ||
      scaled > a - 1 + 1e-9)
    throw ArgError("eps must be j/a for integer j in [1, a-1]");
  if (trials < 1) throw ArgError("trials must be >= 1");
  Rng rng(seed);
  double half = 1.0 / (2.0 * a);
  double width = 1.0 / a;
  int64_t wins = 0;
  for (int64_t t = 0; t < trials; ++t) {
    double b = rng.unit();
    bool clean = true;
    for (size_t i = 0; i < points.size(); ++i) {
      bool selected = rng.unit() < p[i];
      if (!selected) continue;
      double rel = points[i] - b + half;
      rel -= std::floor(rel);
      if (rel < width) clean = false;
    }
    if (clean) ++wins;
  }
  double f = static_cast<double>(wins) / static_cast<double>(trials);
  if (stderr_out)
    *stderr_out = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  return f;
}

}  // namespace treembed
