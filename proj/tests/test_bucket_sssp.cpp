#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "treembed/errors.hpp"
#include "treembed/generators.hpp"
#include "treembed/rng.hpp"
#include "treembed/sssp.hpp"

using namespace treembed;

namespace {

// level-L bucket label for index j
int64_t label_of(int L, int64_t j) {
  return j * (int64_t{1} << L) + (int64_t{1} << (L - 1)) - 1;
}

// smallest level-L label strictly greater than v
int64_t frontier(int L, int64_t v) {
  int64_t base = (int64_t{1} << (L - 1)) - 1;  // label at index 0
  int64_t j = v < base ? 0 : (v - base) / (int64_t{1} << L) + 1;
  REQUIRE(label_of(L, j) > v);
  if (j > 0) REQUIRE(label_of(L, j - 1) <= v);
  return label_of(L, j);
}

std::vector<int32_t> bfs_levels(const Graph& g, int32_t s) {
  std::vector<int32_t> d(g.n, -1);
  std::queue<int32_t> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int32_t u = q.front();
    q.pop();
    for (auto [v, w] : g.adj[u])
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push(v);
      }
  }
  return d;
}

}  // namespace

TEST_CASE("level counts follow ceil((1+k) log2 n)") {
  CHECK(BucketTree(16, 1).levels() == 8);
  CHECK(BucketTree(2, 1).levels() == 2);
  CHECK(BucketTree(1024, 2).levels() == 30);
  CHECK_THROWS_AS(BucketTree(0, 1), ArgError);
  CHECK_THROWS_AS(BucketTree(4, 0), ArgError);
}

TEST_CASE("insert level case split on crafted states") {
  // current bucket at level 5 (label 15 = index 0), heavy history irrelevant
  CHECK(BucketTree::insert_level_for(15, 5, 3) == 3);
  // b == r == 3, label 3 = index 0 (even, left child)
  CHECK(BucketTree::insert_level_for(3, 3, 3) == 4);
  // b=2, r=4: label 9 has bit4=0, bit3=1 (left-then-right)
  CHECK(BucketTree::insert_level_for(9, 2, 4) == 4);
}

TEST_CASE("insert level always lands on a frontier offset in [2^(r-1), 2^r-1]") {
  Rng rng(123);
  for (int iter = 0; iter < 20000; ++iter) {
    int b = 1 + static_cast<int>(rng.below(20));
    int64_t j = static_cast<int64_t>(rng.below(1 << 18));
    int64_t v = label_of(b, j);  // any valid level-b current label
    int r = 1 + static_cast<int>(rng.below(24));
    int L = BucketTree::insert_level_for(v, b, r);
    REQUIRE(L >= 1);
    REQUIRE(L != b);
    int64_t offset = frontier(L, v) - v;
    int64_t half = int64_t{1} << (r - 1);
    CHECK(offset >= half);
    CHECK(offset <= 2 * half - 1);
  }
}

TEST_CASE("decrease_key offsets realize the Lemma bounds") {
  // w=1 forces offset exactly 1; w=7 gives offset in [2,7]
  Rng rng(9);
  for (int iter = 0; iter < 5000; ++iter) {
    int b = 1 + static_cast<int>(rng.below(12));
    int64_t v = label_of(b, static_cast<int64_t>(rng.below(1 << 12)));
    for (int64_t w : {int64_t{1}, int64_t{7}}) {
      int r = 0;
      while ((int64_t{1} << (r + 1)) <= w + 1) ++r;
      int L = BucketTree::insert_level_for(v, b, r);
      int64_t offset = frontier(L, v) - v;
      CHECK(offset * 4 > w);
      CHECK(offset <= w);
      if (w == 1) CHECK(offset == 1);
    }
  }
}

TEST_CASE("FIFO order within a bucket and re-insert updates the handle") {
  BucketTree t(16, 1);
  t.seed_source(0);
  auto s = t.extract_min();
  REQUIRE(s.has_value());
  CHECK(s->first == 0);
  CHECK(s->second == 0);
  t.decrease_key(1, 3, 3);
  t.decrease_key(2, 3, 3);
  t.decrease_key(3, 9, 9);
  CHECK(t.size() == 3);
  t.decrease_key(3, 3, 3);  // re-insert at a closer bucket
  CHECK(t.size() == 3);
  auto a = t.extract_min();
  auto b = t.extract_min();
  auto c = t.extract_min();
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  REQUIRE(c.has_value());
  CHECK(a->first == 1);
  CHECK(b->first == 2);
  CHECK(c->first == 3);
  CHECK(a->second == b->second);
  CHECK(b->second == c->second);
  CHECK(!t.extract_min().has_value());
}

TEST_CASE("extract_min is empty on a fresh structure") {
  BucketTree t(8, 1);
  CHECK(!t.extract_min().has_value());
}

TEST_CASE("random operations extract nondecreasing distances") {
  BucketTree t = BucketTree::lenient(2000);
  Rng rng(77);
  t.seed_source(0);
  int64_t last = -1;
  int32_t next_vertex = 1;
  int ops = 0;
  while (ops < 10000) {
    bool do_insert = next_vertex < 2000 && (t.empty() || rng.below(3) > 0);
    if (do_insert) {
      int64_t w = 1 + static_cast<int64_t>(rng.below(1000));
      int64_t base = std::max<int64_t>(t.current_distance(), 0);
      t.decrease_key(next_vertex++, base + w, w);
    } else {
      auto item = t.extract_min();
      if (!item) break;
      CHECK(item->second >= last);
      last = item->second;
    }
    ++ops;
  }
  while (auto item = t.extract_min()) {
    CHECK(item->second >= last);
    last = item->second;
  }
}

TEST_CASE("decrease_key contract violations throw") {
  BucketTree t(16, 1);
  CHECK_THROWS_AS(t.decrease_key(0, -1, 1), std::logic_error);
  CHECK_THROWS_AS(t.decrease_key(99, 1, 1), ArgError);
  t.seed_source(0);
  CHECK_THROWS_AS(t.decrease_key(0, 5, 5), std::logic_error);
}

TEST_CASE("path string length matches levels") {
  BucketTree t(1024, 2);
  CHECK(t.path_string().size() == 30);
}

TEST_CASE("approx_sssp singleton and single edge") {
  Graph single = parse_graph("1 0\n");
  auto r = approx_sssp(single, 0, 1);
  CHECK(r.d[0] == 0);
  CHECK(r.visit_order == std::vector<int32_t>{0});

  for (int64_t w : {1, 2, 3, 4, 7, 16, 100, 255}) {
    Graph g = Graph::from_edges(2, {{0, 1, w}});
    auto res = approx_sssp(g, 0, 8);  // 2^8 covers every weight here
    CHECK(res.d[1] >= (w + 3) / 4);
    CHECK(res.d[1] <= w);
  }
}

TEST_CASE("approx_sssp rejects out-of-range weights") {
  Graph g = Graph::from_edges(3, {{0, 1, 100}, {1, 2, 1}});
  CHECK_THROWS_AS(approx_sssp(g, 0, 1), ArgError);
  CHECK_THROWS_AS(approx_sssp(g, 0, 2), ArgError);  // 3^2 = 9 < 100
  CHECK_NOTHROW(approx_sssp(g, 0, 5));              // 3^5 = 243
}

TEST_CASE("approx_sssp quarter-preservation on random graphs") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int64_t n = 20 + static_cast<int64_t>(seed) * 4;
    Graph g = gen_random_connected(n, 3 * n, n * n, seed);
    auto res = approx_sssp(g, 0, 2);
    auto ex = dijkstra_exact(g, 0);
    int64_t prev = -1;
    for (int32_t v : res.visit_order) {
      CHECK(res.d[v] >= prev);
      prev = res.d[v];
    }
    for (int32_t v = 0; v < g.n; ++v) {
      CHECK(res.d[v] <= ex.d[v]);
      CHECK(4 * res.d[v] >= ex.d[v]);
    }
    for (const auto& e : g.edges) {
      CHECK(res.d[e.v] - res.d[e.u] <= e.w);
      CHECK(res.d[e.u] - res.d[e.v] <= e.w);
    }
  }
}

TEST_CASE("approx_sssp is exact BFS on unweighted graphs") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen_random_connected(150, 400, 1, seed);
    auto res = approx_sssp(g, 5, 1);
    auto bfs = bfs_levels(g, 5);
    for (int32_t v = 0; v < g.n; ++v) CHECK(res.d[v] == bfs[v]);
  }
}

TEST_CASE("gabow round counts") {
  CHECK(gabow_rounds(0.75) == 1);
  CHECK(gabow_rounds(0.01) == 17);
  CHECK_THROWS_AS(gabow_rounds(0.0), ArgError);
  CHECK_THROWS_AS(gabow_rounds(1.0), ArgError);
}

TEST_CASE("gabow refinement reaches (1-eps) of exact") {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    Graph g = gen_random_connected(80, 200, 5000, seed);
    auto ex = dijkstra_exact(g, 3);
    auto acc = refine_gabow(g, 3, 0.01);
    for (int32_t v = 0; v < g.n; ++v) {
      CHECK(acc[v] <= ex.d[v]);
      CHECK(100 * acc[v] >= 99 * ex.d[v]);
    }
  }
}

TEST_CASE("gabow later rounds are all-zero once exact") {
  // unweighted: round 1 is exact BFS, so every residual round returns zeros
  Graph g = gen_random_connected(60, 150, 1, 4);
  auto ex = dijkstra_exact(g, 0);
  int rounds = 0;
  auto acc = refine_gabow(g, 0, 0.2, &rounds);
  CHECK(rounds == 6);
  for (int32_t v = 0; v < g.n; ++v) CHECK(acc[v] == ex.d[v]);
}

TEST_CASE("gabow residual shrinks by at least 3/4 per round") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = gen_random_connected(60, 150, 2000, seed);
    auto ex = dijkstra_exact(g, 0);
    double prev_resid = 1.0;
    for (int rounds = 1; rounds <= 6; ++rounds) {
      double eps = std::pow(0.75, rounds) * 1.0000001;
      auto acc = refine_gabow(g, 0, eps);
      double resid = 0;
      for (int32_t v = 0; v < g.n; ++v) {
        if (ex.d[v] == 0) continue;
        resid = std::max(resid, static_cast<double>(ex.d[v] - acc[v]) /
                                    static_cast<double>(ex.d[v]));
      }
      CHECK(resid <= prev_resid * 0.75 + 1e-12);
      prev_resid = std::pow(0.75, rounds);
    }
  }
}
