#include "treembed/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <thread>

#include "treembed/errors.hpp"
#include "treembed/rng.hpp"

namespace treembed {

unsigned __int128 DistanceOracle::query_fixed_prefix(size_t k, int32_t u,
                                                     int32_t v) const {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw ArgError("vertex out of range");
  if (k < 1 || k > trees.size()) throw ArgError("bad tree prefix count");
  unsigned __int128 best = trees[0].distance_fixed(u, v);
  for (size_t t = 1; t < k; ++t)
    best = std::min(best, trees[t].distance_fixed(u, v));
  return best;
}

unsigned __int128 DistanceOracle::query_fixed(int32_t u, int32_t v) const {
  return query_fixed_prefix(trees.size(), u, v);
}

double DistanceOracle::query(int32_t u, int32_t v) const {
  return static_cast<double>(query_fixed(u, v)) * 0x1p-52;
}

DistanceOracle build_oracle(const Graph& g, int k, WeightMode mode,
                            DomseqMode domseq_mode, uint64_t seed,
                            int threads) {
  if (k < 1) throw ArgError("need at least one tree");
  if (threads < 0) throw ArgError("bad thread count");
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  DistanceOracle o;
  o.n = g.n;
  o.seed = seed;
  o.mode = mode;
  o.domseq_mode = domseq_mode;
  o.trees.resize(k);
  std::vector<BucketTree::Stats> stats(k);

  auto build_one = [&](int t) {
    Permutation pi = random_permutation(g.n, mix_seed(seed, t, 1));
    Rng beta_rng(mix_seed(seed, t, 2));
    Beta beta = sample_beta(beta_rng);
    DomSeqs seqs = domseq_mode == DomseqMode::kExact
                       ? build_domseq_exact(g, pi)
                       : build_domseq_approx(g, pi, &stats[t]);
    int32_t delta = choose_delta(seqs);
    std::vector<CpsList> cps(g.n);
    for (int32_t x = 0; x < g.n; ++x)
      cps[x] = domseq_to_cps(seqs[x], beta, delta);
    o.trees[t] = build_frt_tree(cps, mode, &seqs, beta, delta);
  };

  if (threads <= 1 || k == 1) {
    for (int t = 0; t < k; ++t) build_one(t);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < std::min(threads, k); ++w)
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < k; t = next.fetch_add(1))
          build_one(t);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& s : stats) o.build_stats += s;
  return o;
}

std::vector<StretchReport> eval_stretch_sweep(const DistanceOracle& o,
                                              const Graph& g,
                                              const std::vector<int>& ks,
                                              int64_t pairs, uint64_t seed) {
  if (pairs < 1) throw ArgError("pair count must be >= 1");
  if (g.n < 2) throw ArgError("need at least two vertices");
  if (g.n != o.n) throw ArgError("oracle/graph vertex count mismatch");
  for (size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || static_cast<size_t>(ks[i]) > o.trees.size())
      throw ArgError("tree count outside oracle range");
    if (i > 0 && ks[i] <= ks[i - 1]) throw ArgError("tree counts must ascend");
  }
  Rng rng(seed);
  std::vector<std::pair<int32_t, int32_t>> sampled(pairs);
  for (auto& [u, v] : sampled) {
    u = static_cast<int32_t>(rng.below(g.n));
    v = static_cast<int32_t>(rng.below(g.n - 1));
    if (v >= u) ++v;
  }
  std::vector<int64_t> order(pairs);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int64_t a, int64_t b) {
    return sampled[a].first < sampled[b].first;
  });

  std::vector<StretchReport> reports(ks.size());
  for (auto& r : reports) r.requested = pairs;
  std::vector<std::vector<StretchReport::Row>> rows(
      ks.size(), std::vector<StretchReport::Row>(pairs));
  std::vector<double> log_sum(ks.size(), 0.0);

  ExactDistances ex;
  ex.source = -1;
  for (int64_t oi = 0; oi < pairs; ++oi) {
    auto [u, v] = sampled[order[oi]];
    if (ex.source != u) ex = dijkstra_exact(g, u);
    int64_t dg = ex.d[v];
    for (size_t ki = 0; ki < ks.size(); ++ki) {
      auto& rep = reports[ki];
      auto& row = rows[ki][order[oi]];
      row.u = u;
      row.v = v;
      row.d_g = dg;
      if (dg == kInfDist) {
        row.d_t = row.stretch = -1;
        continue;
      }
      double dt = static_cast<double>(o.query_fixed_prefix(ks[ki], u, v)) *
                  0x1p-52;
      row.d_t = dt;
      row.stretch = dt / static_cast<double>(dg);
      rep.avg += row.stretch;
      rep.worst = std::max(rep.worst, row.stretch);
      log_sum[ki] += std::log(row.stretch);
      ++rep.evaluated;
    }
    if (ex.d[v] == kInfDist)
      for (auto& rep : reports) ++rep.skipped;
  }
  for (size_t ki = 0; ki < ks.size(); ++ki) {
    auto& rep = reports[ki];
    if (rep.evaluated > 0) {
      rep.avg /= static_cast<double>(rep.evaluated);
      rep.geomean = std::exp(log_sum[ki] / static_cast<double>(rep.evaluated));
    }
    rep.rows = std::move(rows[ki]);
  }
  return reports;
}

StretchReport eval_stretch(const DistanceOracle& o, const Graph& g,
                           int64_t pairs, uint64_t seed, bool keep_rows) {
  auto reports = eval_stretch_sweep(
      o, g, {static_cast<int>(o.trees.size())}, pairs, seed);
  if (!keep_rows) reports[0].rows.clear();
  return reports[0];
}

namespace {

void put_u16(std::string& out, uint16_t v) {
  for (int i = 0; i < 2; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}
void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

struct Reader {
  const std::string& b;
  size_t at = 0;
  uint64_t take(int bytes) {
    if (at + bytes > b.size()) throw FormatError("truncated oracle file");
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i)
      v |= static_cast<uint64_t>(static_cast<uint8_t>(b[at++])) << (8 * i);
    return v;
  }
};

}  // namespace

std::string serialize_oracle(const DistanceOracle& o) {
  std::string out;
  out += "FRTO";
  put_u16(out, 1);
  put_u64(out, static_cast<uint64_t>(o.n));
  put_u16(out, static_cast<uint16_t>(o.trees.size()));
  out.push_back(static_cast<char>(o.mode));
  out.push_back(static_cast<char>(o.domseq_mode));
  put_u64(out, o.seed);
  for (const auto& t : o.trees) {
    put_u64(out, t.beta.num);
    put_u32(out, static_cast<uint32_t>(t.delta));
    put_u64(out, t.nodes.size());
    for (size_t i = 0; i < t.nodes.size(); ++i) {
      const auto& nd = t.nodes[i];
      put_u64(out, nd.parent < 0 ? ~uint64_t{0}
                                 : static_cast<uint64_t>(nd.parent));
      put_u64(out, static_cast<uint64_t>(nd.label));
      put_u32(out, static_cast<uint32_t>(nd.end_level));
      uint64_t wbits = 0;
      if (o.mode == WeightMode::kLevel && nd.parent >= 0) {
        double w = static_cast<double>(t.root_weight_fixed(
                       static_cast<int32_t>(i)) -
                   t.root_weight_fixed(nd.parent)) *
                   0x1p-52;
        std::memcpy(&wbits, &w, 8);
      }
      put_u64(out, wbits);
    }
    for (int32_t leaf : t.leaf_of)
      put_u64(out, static_cast<uint64_t>(leaf));
    if (o.mode == WeightMode::kActual) {
      for (const auto& path : t.anc_dist) {
        put_u32(out, static_cast<uint32_t>(path.size()));
        for (int64_t d : path) put_u64(out, static_cast<uint64_t>(d));
      }
    }
  }
  return out;
}

DistanceOracle deserialize_oracle(const std::string& bytes) {
  Reader r{bytes};
  if (bytes.size() < 4 || bytes.compare(0, 4, "FRTO") != 0)
    throw FormatError("bad magic");
  r.at = 4;
  uint64_t version = r.take(2);
  if (version != 1)
    throw FormatError("unsupported version " + std::to_string(version));
  DistanceOracle o;
  o.n = static_cast<int32_t>(r.take(8));
  uint16_t k = static_cast<uint16_t>(r.take(2));
  uint8_t mode = static_cast<uint8_t>(r.take(1));
  uint8_t dmode = static_cast<uint8_t>(r.take(1));
  if (mode > 1 || dmode > 1) throw FormatError("bad mode byte");
  if (o.n < 1 || k < 1) throw FormatError("bad header counts");
  o.mode = static_cast<WeightMode>(mode);
  o.domseq_mode = static_cast<DomseqMode>(dmode);
  o.seed = r.take(8);
  o.trees.resize(k);
  for (auto& t : o.trees) {
    t.beta.num = r.take(8);
    t.delta = static_cast<int32_t>(r.take(4));
    if (t.delta < 1 || t.delta > 61) throw FormatError("bad delta");
    t.mode = o.mode;
    uint64_t count = r.take(8);
    if (count < 1 || count > (1ull << 32)) throw FormatError("bad node count");
    t.nodes.resize(count);
    for (uint64_t i = 0; i < count; ++i) {
      uint64_t parent = r.take(8);
      auto& nd = t.nodes[i];
      if (parent == ~uint64_t{0}) {
        if (i != 0) throw FormatError("non-first root node");
        nd.parent = -1;
      } else {
        if (parent >= i) throw FormatError("parent must precede child");
        nd.parent = static_cast<int32_t>(parent);
      }
      nd.label = static_cast<int32_t>(r.take(8));
      nd.end_level = static_cast<int32_t>(r.take(4));
      r.take(8);  // stored edge weight; recomputed from (beta, delta)
      if (nd.label < 0 || nd.label >= o.n || nd.end_level < 0 ||
          nd.end_level > t.delta)
        throw FormatError("bad node fields");
    }
    t.leaf_of.resize(o.n);
    for (int32_t v = 0; v < o.n; ++v) {
      uint64_t leaf = r.take(8);
      if (leaf >= count) throw FormatError("leaf index out of range");
      t.leaf_of[v] = static_cast<int32_t>(leaf);
      if (t.nodes[t.leaf_of[v]].end_level != t.delta)
        throw FormatError("leaf not at level delta");
    }
    if (o.mode == WeightMode::kActual) {
      t.anc_dist.resize(o.n);
      for (int32_t v = 0; v < o.n; ++v) {
        uint64_t cnt = r.take(4);
        t.anc_dist[v].resize(cnt);
        for (uint64_t i = 0; i < cnt; ++i)
          t.anc_dist[v][i] = static_cast<int64_t>(r.take(8));
      }
    }
    t.build_lca();
    if (o.mode == WeightMode::kActual) {
      for (int32_t v = 0; v < o.n; ++v)
        if (static_cast<int32_t>(t.anc_dist[v].size()) !=
            t.depth[t.leaf_of[v]] + 1)
          throw FormatError("ancestor table length mismatch");
    }
  }
  if (r.at != bytes.size()) throw FormatError("trailing bytes");
  return o;
}

void save_oracle(const DistanceOracle& o, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write oracle file: " + path);
  std::string bytes = serialize_oracle(o);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

DistanceOracle load_oracle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open oracle file: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return deserialize_oracle(bytes);
}

}  // namespace treembed
