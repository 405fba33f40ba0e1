#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "treembed/domseq.hpp"
#include "treembed/errors.hpp"
#include "treembed/frt.hpp"
#include "treembed/generators.hpp"
#include "treembed/rng.hpp"

using namespace treembed;

namespace {

// expanded label sequence: label at level i is the first kept entry
// whose level covers i
std::vector<int32_t> expand_labels(const CpsList& cps, int32_t delta) {
  std::vector<int32_t> labels(delta + 1, -1);
  size_t j = 0;
  for (int32_t i = 0; i <= delta; ++i) {
    while (j < cps.size() && cps[j].level < i) ++j;
    REQUIRE(j < cps.size());
    labels[i] = cps[j].p;
  }
  return labels;
}

// definitional tree distance on the expanded trie (level weights)
unsigned __int128 brute_level_distance(const std::vector<int32_t>& lu,
                                       const std::vector<int32_t>& lv,
                                       Beta beta, int32_t delta) {
  int32_t b = 0;
  while (b < delta && lu[b + 1] == lv[b + 1]) ++b;
  if (b == delta) return 0;
  unsigned __int128 steps =
      ((static_cast<unsigned __int128>(1)) << (delta - b)) - 1;
  return 2 * static_cast<unsigned __int128>(beta.num) * steps;
}

int64_t stored_dist(const std::vector<DomEntry>& seq, int32_t p) {
  for (const auto& e : seq)
    if (e.p == p) return e.dist;
  REQUIRE(false);
  return -1;
}

int32_t naive_lca(const FrtTree& t, int32_t a, int32_t b) {
  while (a != b) {
    if (t.depth[a] >= t.depth[b])
      a = t.nodes[a].parent;
    else
      b = t.nodes[b].parent;
  }
  return a;
}

}  // namespace

TEST_CASE("beta fixed point endpoints and square root") {
  CHECK(beta_from_u52(0).num == uint64_t{1} << 52);
  CHECK(beta_from_u52(0).value() == 1.0);

  double hi = beta_from_u52((uint64_t{1} << 52) - 1).value();
  CHECK(hi < 2.0);
  CHECK(hi > 1.999999);

  double root = beta_from_u52(uint64_t{1} << 51).value();
  CHECK(std::abs(root * root - 2.0) < 1e-12);

  double q = beta_from_u52(uint64_t{1} << 50).value();
  CHECK(std::abs(q * q * q * q - 2.0) < 1e-12);

  uint64_t prev = 0;
  for (uint64_t u = 0; u < (uint64_t{1} << 52); u += uint64_t{1} << 44) {
    uint64_t num = beta_from_u52(u).num;
    CHECK(num >= prev);
    prev = num;
  }
}

TEST_CASE("sampled beta has log-uniform mean") {
  Rng rng(42);
  double total = 0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) total += std::log2(sample_beta(rng).value());
  double mean = total / reps;
  CHECK(mean > 0.48);
  CHECK(mean < 0.52);
}

TEST_CASE("choose_delta rounds the max distance up to a power of two") {
  DomSeqs seqs = {{{1, 8}, {0, 0}}, {{1, 0}}};
  CHECK(choose_delta(seqs) == 3);
  seqs[0][0].dist = 9;
  CHECK(choose_delta(seqs) == 4);
  seqs[0][0].dist = 1;
  CHECK(choose_delta(seqs) == 1);
  DomSeqs lone = {{{0, 0}}};
  CHECK(choose_delta(lone) == 1);
}

TEST_CASE("cps compression on hand-checked sequences") {
  Beta one;  // beta = 1
  // delta=3: radii 8,4,2,1 at levels 0..3
  std::vector<DomEntry> seq = {{7, 8}, {4, 2}, {2, 0}};
  CpsList cps = domseq_to_cps(seq, one, 3);
  REQUIRE(cps.size() == 3);
  CHECK(cps[0] == CpsEntry{7, 0});
  CHECK(cps[1] == CpsEntry{4, 2});
  CHECK(cps[2] == CpsEntry{2, 3});

  // dominated level is elided: the d=1 entry caps at delta-1 = 2,
  // no higher than the d=2 entry before it
  std::vector<DomEntry> seq2 = {{7, 2}, {4, 1}, {2, 0}};
  CpsList cps2 = domseq_to_cps(seq2, one, 3);
  REQUIRE(cps2.size() == 2);
  CHECK(cps2[0] == CpsEntry{7, 2});
  CHECK(cps2[1] == CpsEntry{2, 3});

  // distance beyond beta * 2^delta is a contract violation
  std::vector<DomEntry> big = {{7, 9}, {2, 0}};
  CHECK_THROWS_AS(domseq_to_cps(big, one, 3), std::logic_error);
}

TEST_CASE("cps levels are strictly increasing and end at delta") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = gen_random_connected(50, 120, 500, seed);
    Permutation pi = random_permutation(g.n, seed + 9);
    auto seqs = build_domseq_exact(g, pi);
    Rng rng(seed);
    Beta beta = sample_beta(rng);
    int32_t delta = choose_delta(seqs);
    for (int32_t x = 0; x < g.n; ++x) {
      CpsList cps = domseq_to_cps(seqs[x], beta, delta);
      REQUIRE(!cps.empty());
      CHECK(cps.back().p == x);
      CHECK(cps.back().level == delta);
      for (size_t j = 1; j < cps.size(); ++j)
        CHECK(cps[j].level > cps[j - 1].level);
      for (size_t j = 0; j + 1 < cps.size(); ++j)
        CHECK(cps[j].level <= delta - 1);
    }
  }
}

TEST_CASE("compressed tree equals the expanded trie on small instances") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    int64_t n = 2 + static_cast<int64_t>(seed % 31);
    Graph g = gen_random_connected(n, 2 * n, 30, seed);  // keeps delta <= 10
    Permutation pi = random_permutation(g.n, seed * 13 + 1);
    auto seqs = build_domseq_exact(g, pi);
    Rng rng(seed + 500);
    Beta beta = sample_beta(rng);
    int32_t delta = choose_delta(seqs);
    REQUIRE(delta <= 10);

    std::vector<CpsList> cps(g.n);
    std::vector<std::vector<int32_t>> labels(g.n);
    for (int32_t x = 0; x < g.n; ++x) {
      cps[x] = domseq_to_cps(seqs[x], beta, delta);
      labels[x] = expand_labels(cps[x], delta);
    }
    FrtTree t = build_frt_tree(cps, WeightMode::kLevel, &seqs, beta, delta);

    // each insertion adds at most its chain of kept entries plus one split
    size_t entry_total = 0;
    for (int32_t x = 0; x < g.n; ++x) entry_total += cps[x].size();
    CHECK(t.nodes.size() <= entry_total + static_cast<size_t>(g.n));
    CHECK(t.nodes[0].parent == -1);
    for (size_t i = 1; i < t.nodes.size(); ++i)
      CHECK(t.nodes[i].parent < static_cast<int32_t>(i));
    for (int32_t x = 0; x < g.n; ++x)
      CHECK(t.nodes[t.leaf_of[x]].end_level == delta);

    for (int32_t u = 0; u < g.n; ++u)
      for (int32_t v = u; v < g.n; ++v) {
        auto want = brute_level_distance(labels[u], labels[v], beta, delta);
        CHECK(t.distance_fixed(u, v) == want);
        CHECK(t.distance_fixed(v, u) == want);
      }
  }
}

TEST_CASE("lca matches a naive parent walk") {
  Graph g = gen_random_connected(120, 300, 1000, 8);
  Permutation pi = random_permutation(g.n, 3);
  auto seqs = build_domseq_exact(g, pi);
  Rng rng(1);
  Beta beta = sample_beta(rng);
  int32_t delta = choose_delta(seqs);
  std::vector<CpsList> cps(g.n);
  for (int32_t x = 0; x < g.n; ++x)
    cps[x] = domseq_to_cps(seqs[x], beta, delta);
  FrtTree t = build_frt_tree(cps, WeightMode::kLevel, &seqs, beta, delta);
  Rng pick(7);
  for (int it = 0; it < 3000; ++it) {
    int32_t a = static_cast<int32_t>(pick.below(t.nodes.size()));
    int32_t b = static_cast<int32_t>(pick.below(t.nodes.size()));
    CHECK(t.lca(a, b) == naive_lca(t, a, b));
  }
}

TEST_CASE("level-mode distances dominate the graph metric") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    int64_t n = 10 + static_cast<int64_t>(seed) * 6;
    Graph g = gen_random_connected(n, 3 * n, 2000, seed);
    Permutation pi = random_permutation(g.n, seed + 31);
    auto seqs = build_domseq_exact(g, pi);
    Rng rng(seed);
    Beta beta = sample_beta(rng);
    int32_t delta = choose_delta(seqs);
    std::vector<CpsList> cps(g.n);
    for (int32_t x = 0; x < g.n; ++x)
      cps[x] = domseq_to_cps(seqs[x], beta, delta);
    FrtTree t = build_frt_tree(cps, WeightMode::kLevel, &seqs, beta, delta);
    for (int32_t u = 0; u < g.n; ++u) {
      auto ex = dijkstra_exact(g, u);
      CHECK(t.distance_fixed(u, u) == 0);
      for (int32_t v = u + 1; v < g.n; ++v) {
        unsigned __int128 lhs = t.distance_fixed(u, v);
        unsigned __int128 rhs =
            (static_cast<unsigned __int128>(ex.d[v]) << 52);
        CHECK(lhs >= rhs);
        CHECK(std::abs(t.distance(u, v) -
                       static_cast<double>(lhs) * 0x1p-52) < 1e-6);
      }
    }
  }
}

TEST_CASE("actual mode charges stored ancestor distances") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    int64_t n = 5 + static_cast<int64_t>(seed % 10) * 8;
    Graph g = gen_random_connected(n, 2 * n, 300, seed);
    Permutation pi = random_permutation(g.n, seed + 4);
    auto seqs = build_domseq_exact(g, pi);
    Rng rng(seed + 77);
    Beta beta = sample_beta(rng);
    int32_t delta = choose_delta(seqs);
    std::vector<CpsList> cps(g.n);
    for (int32_t x = 0; x < g.n; ++x)
      cps[x] = domseq_to_cps(seqs[x], beta, delta);
    FrtTree t = build_frt_tree(cps, WeightMode::kActual, &seqs, beta, delta);
    for (int32_t u = 0; u < g.n; ++u) {
      auto ex = dijkstra_exact(g, u);
      for (int32_t v = u; v < g.n; ++v) {
        int32_t anc = t.lca(t.leaf_of[u], t.leaf_of[v]);
        int32_t p = t.nodes[anc].label;
        unsigned __int128 want =
            (static_cast<unsigned __int128>(stored_dist(seqs[u], p) +
                                            stored_dist(seqs[v], p))
             << 52);
        CHECK(t.distance_fixed(u, v) == want);
        if (v > u)
          CHECK(t.distance_fixed(u, v) >=
                (static_cast<unsigned __int128>(ex.d[v]) << 52));
      }
    }
  }
}

TEST_CASE("single vertex tree") {
  DomSeqs seqs = {{{0, 0}}};
  Beta beta;
  std::vector<CpsList> cps = {domseq_to_cps(seqs[0], beta, 1)};
  FrtTree t = build_frt_tree(cps, WeightMode::kLevel, &seqs, beta, 1);
  CHECK(t.n() == 1);
  CHECK(t.distance_fixed(0, 0) == 0);
}
