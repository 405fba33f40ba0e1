#include "treembed/bucket_tree.hpp"

#include <cassert>
#include <stdexcept>

#include "treembed/errors.hpp"
#include "treembed/graph.hpp"

namespace treembed {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  // b > 0
  int64_t q = a / b;
  if ((a % b) != 0 && a < 0) --q;
  return q;
}

}  // namespace

BucketTree::BucketTree(int64_t n, int k) {
  if (n < 1) throw ArgError("bucket tree needs n >= 1");
  if (k < 1) throw ArgError("bucket tree needs k >= 1");
  // smallest l with 2^l >= n^(1+k)
  int l = 0;
  __int128 pw = 1;
  __int128 target = 1;
  for (int i = 0; i < 1 + k; ++i) {
    target *= n;
    if (target > (static_cast<__int128>(1) << 100))
      throw ArgError("weight range too large for one bucket tree");
  }
  while (pw < target) {
    pw <<= 1;
    ++l;
  }
  if (l < 1) l = 1;
  init(static_cast<int32_t>(n), l);
}

BucketTree BucketTree::lenient(int32_t capacity) {
  BucketTree t;
  t.init(capacity, 62);
  return t;
}

void BucketTree::init(int32_t capacity, int levels) {
  levels_ = levels;
  slots_ = levels + 3;  // insert level can exceed `levels` by one, plus slack
  head_.assign(slots_, -1);
  tail_.assign(slots_, -1);
  label_.assign(slots_, -1);
  next_.assign(capacity, -1);
  prev_.assign(capacity, -1);
  slot_of_.assign(capacity, -1);
  tent_.assign(capacity, kInfDist);
  cur_ = 0;
  cur_level_ = 1;
}

std::vector<bool> BucketTree::path_string() const {
  std::vector<bool> bits(levels_);
  for (int t = 1; t <= levels_; ++t)
    bits[t - 1] = ((cur_ >> t) & 1) != 0;
  return bits;
}

int64_t BucketTree::frontier_label(int level) const {
  // smallest level-`level` bucket label strictly greater than cur_
  int64_t half = int64_t{1} << (level - 1);
  int64_t step = int64_t{1} << level;
  int64_t j = floor_div(cur_ - half + 1, step) + 1;
  return j * step + half - 1;
}

int BucketTree::insert_level_for(int64_t v, int b, int r) {
  auto bit = [v](int t) { return (v >> t) & 1; };
  auto rprime = [&](void) {
    // lowest ancestor level above r whose bucket is a left child; always
    // exists below 63 since v < 2^62
    for (int t = r + 1; t < 63; ++t)
      if (bit(t) == 0) return t;
    return 63;
  };
  if (b > r) return r;
  if (b == r) return bit(r) == 0 ? r + 1 : rprime() + 1;
  // b < r: branch pattern from the (r+1)-level ancestor down to level r-1
  if (bit(r - 1)) return r;          // left-then-right / right-then-right
  if (bit(r) == 0) return r + 1;     // left-then-left
  return rprime() + 1;               // right-then-left
}

int BucketTree::find_insert_level(int r) const {
  if (r < 1 || r > levels_)
    throw std::logic_error("edge exponent outside structure range");
  return insert_level_for(cur_, cur_level_, r);
}

int64_t BucketTree::tentative(int32_t v) const {
  return slot_of_[v] < 0 ? kInfDist : tent_[v];
}

void BucketTree::ensure_vertex(int32_t v) {
  if (v < 0 || v >= static_cast<int32_t>(slot_of_.size()))
    throw ArgError("vertex out of range");
}

void BucketTree::unlink(int32_t v) {
  int slot = slot_of_[v];
  if (prev_[v] >= 0)
    next_[prev_[v]] = next_[v];
  else
    head_[slot] = next_[v];
  if (next_[v] >= 0)
    prev_[next_[v]] = prev_[v];
  else
    tail_[slot] = prev_[v];
  slot_of_[v] = -1;
  --size_;
}

void BucketTree::push_slot(int slot, int32_t v) {
  prev_[v] = tail_[slot];
  next_[v] = -1;
  if (tail_[slot] >= 0)
    next_[tail_[slot]] = v;
  else
    head_[slot] = v;
  tail_[slot] = v;
  slot_of_[v] = static_cast<int16_t>(slot);
  ++size_;
}

void BucketTree::seed_source(int32_t v) {
  ensure_vertex(v);
  push_slot(cur_level_, v);
  label_[cur_level_] = cur_;
  tent_[v] = cur_;
  ++stats_.inserts;
}

void BucketTree::decrease_key(int32_t v, int64_t new_distance, int64_t w_e) {
  ensure_vertex(v);
  if (w_e < 0) throw ArgError("negative edge weight");
  if (new_distance < cur_)
    throw std::logic_error("decrease_key below current distance");
  if (slot_of_[v] >= 0) {
    if (new_distance >= tent_[v])
      throw std::logic_error("decrease_key must decrease the key");
    unlink(v);
    ++stats_.deletes;
  }
  if (w_e == 0) {
    // zero-weight relaxation: joins the bucket being drained
    push_slot(cur_level_, v);
    tent_[v] = cur_;
    ++stats_.inserts;
    return;
  }
  int r = 0;
  while ((int64_t{1} << (r + 1)) <= w_e + 1) ++r;  // r = floor(log2(w_e+1))
  if (r < 1) r = 1;
  int level = find_insert_level(r);
  int64_t label = frontier_label(level);
  assert(label > cur_ || (label == cur_ && level == cur_level_));
  assert(head_[level] < 0 || label_[level] == label || level == cur_level_);
  int64_t offset = label - cur_;
  assert(offset <= w_e && 4 * offset > w_e);
  assert(label <= new_distance);
  (void)offset;
  push_slot(level, v);
  label_[level] = label;
  tent_[v] = label;
  ++stats_.inserts;
}

std::optional<std::pair<int32_t, int64_t>> BucketTree::extract_min() {
  if (head_[cur_level_] < 0) {
    if (size_ == 0) return std::nullopt;
    int best = -1;
    for (int s = 1; s < slots_; ++s) {
      if (head_[s] < 0) continue;
      if (best < 0 || label_[s] < label_[best]) best = s;
    }
    cur_level_ = best;
    cur_ = label_[best];
    ++stats_.advances;
  }
  int32_t v = head_[cur_level_];
  unlink(v);
  ++stats_.extracts;
  return std::make_pair(v, cur_);
}

}  // namespace treembed
