#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "treembed/errors.hpp"
#include "treembed/generators.hpp"
#include "treembed/ramsey.hpp"

using namespace treembed;

TEST_CASE("metric view from a path graph") {
  Graph g = parse_graph("3 2\n0 1 2\n1 2 3\n");
  MetricView mv = MetricView::from_graph(g);
  CHECK(mv.at(0, 2) == 5);
  CHECK(mv.at(2, 0) == 5);
  CHECK(mv.diameter == 5);
  CHECK(mv.min_positive == 2);
  CHECK(mv.order[0] == std::vector<int32_t>{0, 1, 2});
  CHECK(mv.order[2] == std::vector<int32_t>{2, 1, 0});

  Graph disc = parse_graph("3 1\n0 1 1\n");
  CHECK_THROWS_AS(MetricView::from_graph(disc), ArgError);
}

TEST_CASE("metric view validates matrices") {
  CHECK_NOTHROW(MetricView::from_matrix(2, {0, 3, 3, 0}));
  CHECK_THROWS_AS(MetricView::from_matrix(2, {1, 3, 3, 0}), ArgError);
  CHECK_THROWS_AS(MetricView::from_matrix(2, {0, 3, 4, 0}), ArgError);
  // 0-1 distance 1, 1-2 distance 1, but 0-2 distance 5 breaks the triangle
  CHECK_THROWS_AS(
      MetricView::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}), ArgError);
  CHECK_THROWS_AS(MetricView::from_matrix(2, {0, 3, 3}), ArgError);
  CHECK_THROWS_AS(MetricView::from_matrix(0, {}), ArgError);
}

TEST_CASE("padding constant") {
  CHECK(padding_alpha(2) == doctest::Approx(1.0 - std::exp2(-0.25)));
  CHECK(padding_alpha(3) == doctest::Approx(1.0 - std::exp2(-1.0 / 6.0)));
  CHECK_THROWS_AS(padding_alpha(1), ArgError);
}

TEST_CASE("padding estimate fields and determinism") {
  Graph g = gen_random_connected(24, 60, 40, 6);
  MetricView mv = MetricView::from_graph(g);
  auto est = estimate_padding(mv, 3, 400, 9);
  CHECK(est.trials == 400);
  CHECK(est.alpha == doctest::Approx(padding_alpha(3)));
  CHECK(est.bound ==
        doctest::Approx(0.5 * std::pow(24.0, -2.0 / 3.0)));
  REQUIRE(est.freq.size() == 24);
  REQUIRE(est.se.size() == 24);
  for (int32_t x = 0; x < 24; ++x) {
    CHECK(est.freq[x] >= 0.0);
    CHECK(est.freq[x] <= 1.0);
    CHECK(est.se[x] <= 0.5 / std::sqrt(400.0));
  }
  auto est2 = estimate_padding(mv, 3, 400, 9);
  CHECK(est2.freq == est.freq);
  auto est3 = estimate_padding(mv, 3, 400, 10);
  CHECK(est3.freq != est.freq);

  CHECK_THROWS_AS(estimate_padding(mv, 1, 10, 1), ArgError);
  CHECK_THROWS_AS(estimate_padding(mv, 3, 0, 1), ArgError);
}

TEST_CASE("padded frequency clears the guarantee on small metrics") {
  // two far-apart unit cliques: clusters separate early, so padding
  // should succeed far more often than the generic lower bound
  const int32_t n = 8;
  std::vector<int64_t> d(n * n, 0);
  for (int32_t i = 0; i < n; ++i)
    for (int32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool same = (i < 4) == (j < 4);
      d[i * n + j] = same ? 1 : 100;
    }
  MetricView mv = MetricView::from_matrix(n, d);
  auto est = estimate_padding(mv, 4, 4000, 3);
  double bound = 0.5 * std::pow(8.0, -0.5);
  for (int32_t x = 0; x < n; ++x)
    CHECK(est.freq[x] + 3 * est.se[x] >= bound);
}

TEST_CASE("statement-form padding radius is never easier") {
  Graph g = gen_random_connected(20, 50, 30, 2);
  MetricView mv = MetricView::from_graph(g);
  auto with_beta = estimate_padding(mv, 3, 2000, 4, true);
  auto without = estimate_padding(mv, 3, 2000, 4, false);
  // beta >= 1 only grows the required radius, so dropping it can only
  // make trials succeed more often
  for (int32_t x = 0; x < 20; ++x)
    CHECK(without.freq[x] >= with_beta.freq[x]);
}

TEST_CASE("bucket lemma on analytic cases") {
  // one value always selected: a uniformly random bucket misses it
  // with probability (a-1)/a
  double se = 0;
  double f = simulate_bucket_lemma({2}, {1.0}, 4, 50000, 7, &se);
  CHECK(std::abs(f - 0.75) < 5 * se + 1e-9);

  // never-selected values cannot collide
  CHECK(simulate_bucket_lemma({1, 2, 3}, {0.0, 0.0, 0.0}, 3, 100, 1) == 1.0);

  // all buckets occupied with certainty
  CHECK(simulate_bucket_lemma({1, 2}, {1.0, 1.0}, 2, 100, 1) == 0.0);

  // independent selections: miss probability factors
  f = simulate_bucket_lemma({1, 1}, {0.5, 0.5}, 2, 100000, 11, &se);
  double want = 0.5 + 0.5 * 0.25;  // bucket 2 always clean; bucket 1 w.p. 1/4
  CHECK(std::abs(f - want) < 5 * se + 1e-9);

  CHECK_THROWS_AS(simulate_bucket_lemma({0}, {0.5}, 3, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_bucket_lemma({4}, {0.5}, 3, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_bucket_lemma({1}, {1.5}, 3, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_bucket_lemma({1, 2}, {0.5}, 3, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_bucket_lemma({1}, {0.5}, 0, 10, 1), ArgError);
}

TEST_CASE("range lemma on analytic cases") {
  // single point always selected: the wrapped window has width 1/a
  double se = 0;
  double f = simulate_range_lemma({0.5}, {1.0}, 2, 0.5, 50000, 3, &se);
  CHECK(std::abs(f - 0.5) < 5 * se + 1e-9);

  f = simulate_range_lemma({0.1}, {1.0}, 4, 0.25, 50000, 5, &se);
  CHECK(std::abs(f - 0.75) < 5 * se + 1e-9);

  CHECK(simulate_range_lemma({}, {}, 4, 0.25, 100, 1) == 1.0);
  CHECK(simulate_range_lemma({0.3}, {0.0}, 4, 0.25, 100, 1) == 1.0);

  CHECK_THROWS_AS(simulate_range_lemma({0.5}, {1.0}, 4, 0.3, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_range_lemma({0.5}, {1.0}, 4, 1.0, 10, 1), ArgError);
  CHECK_THROWS_AS(simulate_range_lemma({1.5}, {1.0}, 4, 0.25, 10, 1),
                  ArgError);
  CHECK_THROWS_AS(simulate_range_lemma({0.5}, {1.0}, 1, 0.25, 10, 1),
                  ArgError);
}
