/*
 * Copyright 2026 The dkd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/definition_oracle.hpp"

#include <vector>

namespace dkd {

namespace {

class Ring {
 public:
  Ring(const Occupancy& occ, std::optional<EdgeIndex> missing)
      : n_(occ.size()), missing_(missing) {
    for (Node v = 0; v < n_; ++v) counts_.push_back(occ[v]);
  }

  std::uint32_t n() const { return n_; }
  bool occupied(Node v) const { return counts_[v] > 0; }
  bool multiple(Node v) const { return counts_[v] > 1; }

  Node hop(Node v, Direction d) const {
    return d == Direction::kCw ? (v + 1 == n_ ? 0 : v + 1) : (v == 0 ? n_ - 1 : v - 1);
  }

  // Every node from `from` to `to` inclusive, walking in `d`.
  std::vector<Node> arc(Node from, Node to, Direction d) const {
    std::vector<Node> out{from};
    while (out.back() != to) out.push_back(hop(out.back(), d));
    return out;
  }

  std::uint32_t dist(Node from, Node to, Direction d) const {
    return static_cast<std::uint32_t>(arc(from, to, d).size()) - 1;
  }

  // Distance to the nearest other occupied node in `d`; n when there is none.
  std::uint32_t gap_after(Node from, Direction d) const {
    Node v = from;
    for (std::uint32_t i = 1; i < n_; ++i) {
      v = hop(v, d);
      if (occupied(v)) return i;
    }
    return n_;
  }

  // Positions (indices into the arc) that hold robots.
  std::vector<std::size_t> occupied_positions(const std::vector<Node>& a) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (occupied(a[i])) out.push_back(i);
    }
    return out;
  }

  bool missing_inside(const std::vector<Node>& a, Direction d) const {
    if (!missing_) return false;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      // Walking cw from x crosses edge x; walking ccw into y crosses edge y.
      const Node crossed = d == Direction::kCw ? a[i] : a[i + 1];
      if (crossed == *missing_) return true;
    }
    return false;
  }

 private:
  std::uint32_t n_;
  std::optional<EdgeIndex> missing_;
  std::vector<std::uint32_t> counts_;
};

std::optional<Chain> chain_by_definition(const Ring& r, std::uint32_t k, Direction d) {
  std::optional<Chain> best;
  std::size_t best_len = 0;
  for (Node i = 0; i < r.n(); ++i) {
    if (!r.multiple(i)) continue;
    const Node start = r.hop(i, d == Direction::kCw ? Direction::kCcw : Direction::kCw);
    for (Node j = 0; j < r.n(); ++j) {
      const auto a = r.arc(start, j, d);
      if (a.size() < 3) continue;  // must hold start, v_i and v_j
      const Node before_j = a[a.size() - 2];
      if (r.occupied(j) || !r.occupied(before_j)) continue;
      const auto pos = r.occupied_positions(a);
      bool spaced = true;
      for (std::size_t p = 0; p + 1 < pos.size(); ++p) spaced &= (pos[p + 1] - pos[p] == k);
      if (!spaced) continue;
      if (r.gap_after(before_j, d) <= k) continue;
      if (a.size() <= best_len) continue;
      Chain c;
      c.direction = d;
      c.anchor = start;
      c.terminal = j;
      for (std::size_t p : pos) {
        if (p > 0) c.occupied_nodes.push_back(a[p]);
      }
      c.good = !r.missing_inside(a, d);
      best = std::move(c);
      best_len = a.size();
    }
  }
  return best;
}

std::optional<Block> block_by_definition(const Ring& r, std::uint32_t k, Node head,
                                         Direction d) {
  std::optional<Block> best;
  std::size_t best_len = 0;
  for (Node j = 0; j < r.n(); ++j) {
    const auto a = r.arc(head, j, d);
    if (a.size() < 2) continue;
    const Node before_j = a[a.size() - 2];
    if (r.occupied(j) || !r.occupied(before_j)) continue;
    const auto pos = r.occupied_positions(a);
    bool all_k = true;
    bool rest_k = true;
    for (std::size_t p = 0; p + 1 < pos.size(); ++p) {
      const bool eq = pos[p + 1] - pos[p] == k;
      all_k &= eq;
      if (p > 0) rest_k &= eq;
    }
    const bool short_first = pos.size() >= 2 && pos[1] - pos[0] < k && rest_k;
    if (!all_k && !short_first) continue;
    if (r.gap_after(before_j, d) <= k) continue;
    if (a.size() <= best_len) continue;
    Block b;
    b.direction = d;
    b.head = head;
    b.terminal = j;
    for (std::size_t p : pos) b.occupied_nodes.push_back(a[p]);
    b.kind = all_k ? BlockKind::kChainBlock : BlockKind::kNonChainBlock;
    b.contains_missing_edge = r.missing_inside(a, d);
    best = std::move(b);
    best_len = a.size();
  }
  return best;
}

bool target_by_definition(const Ring& r, std::uint32_t k) {
  bool any = false;
  for (Node x = 0; x < r.n(); ++x) {
    if (r.multiple(x)) return false;
    any |= r.occupied(x);
  }
  if (!any) return false;
  for (Node x = 0; x < r.n(); ++x) {
    for (Node y = 0; y < r.n(); ++y) {
      if (x == y || !r.occupied(x) || !r.occupied(y)) continue;
      for (Direction d : {Direction::kCw, Direction::kCcw}) {
        const auto a = r.arc(x, y, d);
        if (r.occupied_positions(a).size() != 2) continue;  // not consecutive this way
        if (a.size() - 1 < k) return false;
      }
    }
  }
  return true;
}

std::uint32_t range_by_definition(const Ring& r, const Chain& a, const Chain& b) {
  std::vector<bool> covered(r.n(), false);
  for (const auto* c : {&a, &b}) {
    for (Node v : r.arc(c->anchor, c->terminal, c->direction)) covered[v] = true;
  }
  for (std::uint32_t len = r.n(); len > 0; --len) {
    for (Node s = 0; s < r.n(); ++s) {
      bool all = true;
      Node v = s;
      for (std::uint32_t i = 0; i < len && all; ++i, v = r.hop(v, Direction::kCw)) all = covered[v];
      if (all) return len;
    }
  }
  return 0;
}

}  // namespace

ClassifiedConfiguration classify_by_definition(const Occupancy& occ,
                                               std::optional<EdgeIndex> missing,
                                               std::uint32_t k) {
  const Ring r(occ, missing);
  std::vector<Node> multiples;
  std::vector<Node> occupied;
  for (Node v = 0; v < r.n(); ++v) {
    if (r.multiple(v)) multiples.push_back(v);
    if (r.occupied(v)) occupied.push_back(v);
  }
  if (occupied.empty()) return Invalid{"no robots"};
  if (multiples.size() > 1) return Invalid{"several multiplicity nodes"};

  std::optional<Node> head;
  if (multiples.size() == 1) {
    auto cw = chain_by_definition(r, k, Direction::kCw);
    auto ccw = chain_by_definition(r, k, Direction::kCcw);
    if (cw && ccw) {
      const auto range = range_by_definition(r, *cw, *ccw);
      return ChainConfig{std::move(*cw), std::move(*ccw), range};
    }
    head = multiples.front();
  } else {
    if (target_by_definition(r, k)) return Target{};
    int pairs = 0;
    for (Node x : occupied) {
      for (Node y : occupied) {
        if (x != y && r.dist(x, y, Direction::kCw) < k) {
          ++pairs;
          head = x;
        }
      }
    }
    if (pairs != 1) return Invalid{"no head"};
  }

  auto cw = block_by_definition(r, k, *head, Direction::kCw);
  auto ccw = block_by_definition(r, k, *head, Direction::kCcw);
  if (!cw || !ccw || cw->kind == ccw->kind) return Invalid{"no chain/non-chain block pair"};
  if (cw->kind == BlockKind::kChainBlock) return TwoBlocks{std::move(*cw), std::move(*ccw)};
  return TwoBlocks{std::move(*ccw), std::move(*cw)};
}

}  // namespace dkd
