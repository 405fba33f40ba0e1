#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace treembed {

// Leveled bucket priority queue. Level r holds buckets with labels
// j*2^r + 2^(r-1) - 1 (level 1: even labels), so adjacent buckets at level
// r are 2^r apart. At most one bucket per level is active: the frontier
// bucket, the first one strictly ahead of the current distance. The
// current bucket drains in place at its own level.
//
// An insert triggered by relaxing an edge of weight w lands at the level
// chosen by the Algorithm-1 case split; the realized forward offset w'
// (bucket label minus current distance) satisfies w/4 <= w' <= w.
class BucketTree {
 public:
  struct Stats {
    uint64_t inserts = 0;
    uint64_t deletes = 0;
    uint64_t extracts = 0;
    uint64_t advances = 0;
    uint64_t total() const { return inserts + deletes + extracts + advances; }
    Stats& operator+=(const Stats& o) {
      inserts += o.inserts;
      deletes += o.deletes;
      extracts += o.extracts;
      advances += o.advances;
      return *this;
    }
  };

  // Structure for weights in [1, n^k]: l = ceil((1+k)*log2 n) levels.
  BucketTree(int64_t n, int k);

  // Internal-use structure with the full 62-level range, for subproblem
  // graphs and reweighted rounds where weights are only bounded by 2^62.
  static BucketTree lenient(int32_t capacity);

  int levels() const { return levels_; }
  int64_t current_distance() const { return cur_; }
  int current_level() const { return cur_level_; }
  bool empty() const { return size_ == 0; }
  size_t size() const { return size_; }
  const Stats& stats() const { return stats_; }

  // Bit per level: is the current bucket's level-t ancestor a right child.
  std::vector<bool> path_string() const;

  // The Algorithm-1 case split as a pure function of the current bucket
  // label, its level, and the rounded edge exponent r.
  static int insert_level_for(int64_t current_label, int current_level, int r);

  int find_insert_level(int r) const;

  // Tentative distance (containing bucket label), or kInfDist if absent.
  int64_t tentative(int32_t v) const;

  // Relax v via an edge of weight w_e; new_distance = extraction distance
  // of the relaxing endpoint plus w_e. w_e = 0 appends v to the current
  // bucket. Requires new_distance >= current_distance and, if v is
  // present, new_distance < tentative(v).
  void decrease_key(int32_t v, int64_t new_distance, int64_t w_e);

  // Place the source in the initial current bucket at distance 0.
  void seed_source(int32_t v);

  std::optional<std::pair<int32_t, int64_t>> extract_min();

 private:
  BucketTree() = default;
  void init(int32_t capacity, int levels);
  void ensure_vertex(int32_t v);
  void unlink(int32_t v);
  void push_slot(int slot, int32_t v);
  int64_t frontier_label(int level) const;

  int levels_ = 0;  // advertised level count
  int slots_ = 0;   // allocated level slots (index 1..slots_-1)
  std::vector<int32_t> head_, tail_;
  std::vector<int64_t> label_;
  std::vector<int32_t> next_, prev_;
  std::vector<int16_t> slot_of_;  // -1 = absent
  std::vector<int64_t> tent_;
  int64_t cur_ = 0;
  int cur_level_ = 1;
  size_t size_ = 0;
  Stats stats_;
};

}  // namespace treembed
