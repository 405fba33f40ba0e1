#include "treembed/frt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "treembed/errors.hpp"

namespace treembed {

namespace {

uint64_t isqrt128(unsigned __int128 x) {
  auto r = static_cast<uint64_t>(sqrtl(static_cast<long double>(x)));
  while (static_cast<unsigned __int128>(r) * r > x) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

// c[j] = 2^(2^-j) in Q52, derived by repeated integer square roots so the
// table is identical on every platform.
const uint64_t* exp2_table() {
  static uint64_t c[53];
  static bool ready = false;
  if (!ready) {
    c[0] = uint64_t{1} << 53;  // 2.0
    for (int j = 1; j <= 52; ++j)
      c[j] = isqrt128(static_cast<unsigned __int128>(c[j - 1]) << 52);
    ready = true;
  }
  return c;
}

}  // namespace

Beta beta_from_u52(uint64_t u52) {
  u52 &= (uint64_t{1} << 52) - 1;
  const uint64_t* c = exp2_table();
  unsigned __int128 acc = uint64_t{1} << 52;
  for (int j = 1; j <= 52; ++j)
    if ((u52 >> (52 - j)) & 1)
      acc = (acc * c[j]) >> 52;
  Beta b;
  b.num = static_cast<uint64_t>(acc);
  return b;
}

Beta sample_beta(Rng& rng) { return beta_from_u52(rng.next() >> 12); }

int32_t choose_delta(const DomSeqs& seqs) {
  int64_t mx = 1;
  for (const auto& s : seqs)
    for (const auto& e : s) mx = std::max(mx, e.dist);
  int32_t delta = 0;
  while ((int64_t{1} << delta) < mx) ++delta;
  return std::max<int32_t>(delta, 1);
}

CpsList domseq_to_cps(const std::vector<DomEntry>& seq, Beta beta,
                      int32_t delta) {
  if (delta < 1 || delta > 61) throw ArgError("delta out of range");
  CpsList out;
  int32_t prev = -1;
  for (size_t j = 0; j + 1 < seq.size(); ++j) {
    int64_t d = seq[j].dist;
    // exact test d <= beta * 2^(delta - i)
    auto covered = [&](int32_t i) {
      return (static_cast<unsigned __int128>(d) << 52) <=
             (static_cast<unsigned __int128>(beta.num) << (delta - i));
    };
    if (!covered(0))
      throw std::logic_error("stored distance exceeds beta * 2^delta");
    int32_t lo = 0, hi = delta;  // max i with covered(i); covered monotone
    while (lo < hi) {
      int32_t mid = (lo + hi + 1) / 2;
      if (covered(mid))
        lo = mid;
      else
        hi = mid - 1;
    }
    int32_t m = std::min(lo, delta - 1);  // level delta is the self entry's
    if (m > prev) {
      out.push_back({seq[j].p, m});
      prev = m;
    }
  }
  out.push_back({seq.back().p, delta});
  return out;
}

FrtTree build_frt_tree(const std::vector<CpsList>& cps, WeightMode mode,
                       const DomSeqs* dist_map, Beta beta, int32_t delta) {
  int32_t n = static_cast<int32_t>(cps.size());
  if (n < 1) throw ArgError("need at least one sequence");
  if (mode == WeightMode::kActual && !dist_map)
    throw ArgError("actual mode needs the distance map");
  for (const auto& c : cps) {
    if (c.empty() || c.back().level != delta)
      throw ArgError("sequence does not end at level delta");
  }
  FrtTree t;
  t.beta = beta;
  t.delta = delta;
  t.mode = mode;
  t.leaf_of.assign(n, -1);
  std::vector<std::unordered_map<int32_t, int32_t>> kid;

  auto new_node = [&](int32_t parent, int32_t label, int32_t end) {
    int32_t id = static_cast<int32_t>(t.nodes.size());
    t.nodes.push_back({parent, label, end});
    kid.emplace_back();
    if (parent >= 0) kid[parent].emplace(label, id);
    return id;
  };
  auto seg_start = [&](int32_t node) {
    return t.nodes[node].parent < 0
               ? 0
               : t.nodes[t.nodes[node].parent].end_level + 1;
  };
  auto chain_from = [&](int32_t parent, const CpsList& c, size_t j,
                        int32_t x) {
    for (; j < c.size(); ++j) parent = new_node(parent, c[j].p, c[j].level);
    t.leaf_of[x] = parent;
  };

  for (int32_t x = 0; x < n; ++x) {
    const CpsList& c = cps[x];
    if (t.nodes.empty()) {
      chain_from(-1, c, 0, x);
      continue;
    }
    if (c[0].p != t.nodes[0].label)
      throw ArgError("sequences disagree on the level-0 dominator");
    int32_t cur = 0;
    size_t j = 0;
    for (;;) {
      // invariant: c[j].p == label(cur) and entry j covers seg_start(cur)
      int32_t e = t.nodes[cur].end_level;
      if (c[j].level >= e) {
        size_t nj = (c[j].level == e) ? j + 1 : j;
        if (nj == c.size()) {
          // full match: cur is x's leaf (e == delta, label == x)
          assert(e == delta && t.nodes[cur].label == x);
          t.leaf_of[x] = cur;
          break;
        }
        auto it = kid[cur].find(c[nj].p);
        if (it == kid[cur].end()) {
          chain_from(cur, c, nj, x);
          break;
        }
        cur = it->second;
        j = nj;
        continue;
      }
      // divergence inside cur's segment: split at level c[j].level
      int32_t low = static_cast<int32_t>(t.nodes.size());
      t.nodes.push_back({cur, t.nodes[cur].label, e});
      kid.emplace_back();
      std::swap(kid[low], kid[cur]);
      for (auto& [lbl, child] : kid[low]) t.nodes[child].parent = low;
      if (e == delta) t.leaf_of[t.nodes[cur].label] = low;
      t.nodes[cur].end_level = c[j].level;
      kid[cur].emplace(t.nodes[low].label, low);
      chain_from(cur, c, j + 1, x);
      break;
    }
  }

  // segment splits append the upper half after nodes that already point at
  // it, so renumber in BFS order to restore parent-before-child indices
  {
    int32_t nn = static_cast<int32_t>(t.nodes.size());
    std::vector<std::vector<int32_t>> children(nn);
    for (int32_t i = 0; i < nn; ++i)
      if (t.nodes[i].parent >= 0) children[t.nodes[i].parent].push_back(i);
    std::vector<int32_t> order;
    order.reserve(nn);
    order.push_back(0);
    for (size_t at = 0; at < order.size(); ++at)
      for (int32_t c : children[order[at]]) order.push_back(c);
    std::vector<int32_t> newid(nn);
    for (int32_t i = 0; i < nn; ++i) newid[order[i]] = i;
    std::vector<FrtTree::Node> renum(nn);
    for (int32_t i = 0; i < nn; ++i) {
      FrtTree::Node nd = t.nodes[i];
      if (nd.parent >= 0) nd.parent = newid[nd.parent];
      renum[newid[i]] = nd;
    }
    t.nodes = std::move(renum);
    for (int32_t x = 0; x < n; ++x) t.leaf_of[x] = newid[t.leaf_of[x]];
  }

  if (mode == WeightMode::kActual) {
    t.anc_dist.assign(n, {});
    std::unordered_map<int32_t, int64_t> dist_of;
    for (int32_t x = 0; x < n; ++x) {
      dist_of.clear();
      for (const auto& e : (*dist_map)[x]) dist_of[e.p] = e.dist;
      std::vector<int64_t> path;
      for (int32_t nd = t.leaf_of[x]; nd >= 0; nd = t.nodes[nd].parent) {
        auto it = dist_of.find(t.nodes[nd].label);
        if (it == dist_of.end())
          throw ArgError("tree label missing from distance map");
        path.push_back(it->second);
      }
      std::reverse(path.begin(), path.end());
      t.anc_dist[x] = std::move(path);
    }
  }

  t.build_lca();
  return t;
}

void FrtTree::build_lca() {
  int32_t nn = static_cast<int32_t>(nodes.size());
  depth.assign(nn, 0);
  std::vector<std::vector<int32_t>> children(nn);
  for (int32_t i = 1; i < nn; ++i) children[nodes[i].parent].push_back(i);
  // iterative euler tour
  euler_node_.clear();
  euler_depth_.clear();
  first_pos_.assign(nn, -1);
  std::vector<std::pair<int32_t, size_t>> stack;
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto& [nd, ci] = stack.back();
    if (ci == 0) {
      depth[nd] = static_cast<int32_t>(stack.size()) - 1;
      first_pos_[nd] = static_cast<int32_t>(euler_node_.size());
    }
    euler_node_.push_back(nd);
    euler_depth_.push_back(depth[nd]);
    if (ci < children[nd].size()) {
      int32_t child = children[nd][ci++];
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        // re-emit the parent after returning from the child
        continue;
      }
    }
  }
  int32_t m = static_cast<int32_t>(euler_node_.size());
  log2_.assign(m + 1, 0);
  for (int32_t i = 2; i <= m; ++i) log2_[i] = log2_[i / 2] + 1;
  int32_t levels = log2_[m] + 1;
  sparse_.assign(levels, std::vector<int32_t>(m));
  for (int32_t i = 0; i < m; ++i) sparse_[0][i] = i;
  for (int32_t l = 1; l < levels; ++l) {
    int32_t span = 1 << l;
    for (int32_t i = 0; i + span <= m; ++i) {
      int32_t a = sparse_[l - 1][i];
      int32_t b = sparse_[l - 1][i + span / 2];
      sparse_[l][i] = euler_depth_[a] <= euler_depth_[b] ? a : b;
    }
  }
}

int32_t FrtTree::lca(int32_t a, int32_t b) const {
  int32_t lo = first_pos_[a], hi = first_pos_[b];
  if (lo > hi) std::swap(lo, hi);
  int32_t len = hi - lo + 1;
  int32_t l = log2_[len];
  int32_t x = sparse_[l][lo];
  int32_t y = sparse_[l][hi - (1 << l) + 1];
  return euler_node_[euler_depth_[x] <= euler_depth_[y] ? x : y];
}

unsigned __int128 FrtTree::root_weight_fixed(int32_t node) const {
  int32_t e = nodes[node].end_level;
  unsigned __int128 span = (static_cast<unsigned __int128>(1) << delta) -
                           (static_cast<unsigned __int128>(1) << (delta - e));
  return static_cast<unsigned __int128>(beta.num) * span;
}

unsigned __int128 FrtTree::distance_fixed(int32_t u, int32_t v) const {
  if (u < 0 || u >= n() || v < 0 || v >= n())
    throw ArgError("vertex out of range");
  if (u == v) return 0;
  int32_t z = lca(leaf_of[u], leaf_of[v]);
  if (mode == WeightMode::kActual) {
    int32_t dz = depth[z];
    unsigned __int128 sum =
        static_cast<unsigned __int128>(anc_dist[u][dz]) + anc_dist[v][dz];
    return sum << 52;
  }
  int32_t b = nodes[z].end_level;
  unsigned __int128 span =
      (static_cast<unsigned __int128>(1) << (delta - b)) - 1;
  return 2 * static_cast<unsigned __int128>(beta.num) * span;
}

double FrtTree::distance(int32_t u, int32_t v) const {
  return static_cast<double>(distance_fixed(u, v)) * 0x1p-52;
}

}  // namespace treembed
