// Copyright 2026 The pifotree authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pifotree/errors.hpp"
#include "pifotree/packet.hpp"
#include "pifotree/pifo.hpp"
#include "pifotree/rational.hpp"
#include "pifotree/topology.hpp"

namespace pifotree {

struct PathStep {
  std::size_t child = 1;  // 1-based
  Rank rank;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

// Insertion directive for one push: the child to descend into and the rank
// of the index enqueued at each internal node on the way down, then the rank
// of the packet in the leaf it reaches.
struct Path {
  std::vector<PathStep> steps;
  Rank leaf_rank;

  friend bool operator==(const Path&, const Path&) = default;
};

// A path is valid for `t` when its indices descend `t` to a leaf exactly.
inline bool is_valid_path(const Topo& t, const Path& pt) {
  const Topo* cur = &t;
  for (const PathStep& s : pt.steps) {
    if (cur->is_leaf() || s.child < 1 || s.child > cur->arity()) return false;
    cur = &cur->children()[s.child - 1];
  }
  return cur->is_leaf();
}

// Address of the leaf a valid path reaches.
inline Addr path_target(const Path& pt) {
  std::vector<std::size_t> idx;
  idx.reserve(pt.steps.size());
  for (const PathStep& s : pt.steps) idx.push_back(s.child);
  return Addr(std::move(idx));
}

// "(2, 5) :: (1, 5) :: 7"
inline std::string to_string(const Path& pt) {
  std::string out;
  for (const PathStep& s : pt.steps) {
    out += "(" + std::to_string(s.child) + ", " + s.rank.to_string() + ") :: ";
  }
  return out + pt.leaf_rank.to_string();
}

inline std::ostream& operator<<(std::ostream& os, const Path& pt) {
  return os << to_string(pt);
}

// A tree of PIFOs. Leaves queue packets; internal nodes queue 1-based indices
// of their children. Popping follows the popped indices from the root down to
// a leaf and releases that leaf's head packet.
//
// Trees are values. Mutating members are all-or-nothing: a push with a bad
// path or a pop that would get stuck leaves the tree untouched.
class PifoTree {
 public:
  // The empty tree of the given shape.
  explicit PifoTree(const Topo& shape) {
    if (!shape.is_leaf()) {
      leaf_ = false;
      children_.reserve(shape.arity());
      for (const Topo& c : shape.children()) children_.emplace_back(c);
    }
  }

  static PifoTree leaf(Pifo<Packet> packets) {
    PifoTree t{Topo::leaf()};
    t.packets_ = std::move(packets);
    return t;
  }

  // Throws StructureError if `children` is empty or `indices` refers to a
  // child that does not exist.
  static PifoTree internal(std::vector<PifoTree> children,
                           Pifo<std::size_t> indices) {
    if (children.empty()) {
      throw StructureError("internal PIFO tree node needs at least one child");
    }
    for (const auto& e : indices.entries()) {
      if (e.value < 1 || e.value > children.size()) {
        throw StructureError("index " + std::to_string(e.value) +
                             " out of range in internal PIFO");
      }
    }
    PifoTree t{Topo::leaf()};
    t.leaf_ = false;
    t.children_ = std::move(children);
    t.indices_ = std::move(indices);
    return t;
  }

  bool is_leaf() const { return leaf_; }

  // Leaf queue; empty for internal nodes.
  const Pifo<Packet>& packets() const { return packets_; }
  // Index queue; empty for leaves.
  const Pifo<std::size_t>& indices() const { return indices_; }
  const std::vector<PifoTree>& children() const { return children_; }
  const PifoTree& child(std::size_t i) const { return children_.at(i - 1); }

  Topo shape() const {
    if (leaf_) return Topo::leaf();
    std::vector<Topo> cs;
    cs.reserve(children_.size());
    for (const PifoTree& c : children_) cs.push_back(c.shape());
    return Topo::node(std::move(cs));
  }

  // Number of packets held at the leaves.
  std::size_t size() const {
    if (leaf_) return packets_.size();
    std::size_t n = 0;
    for (const PifoTree& c : children_) n += c.size();
    return n;
  }

  bool empty() const { return size() == 0; }

  // At every internal node, index i occurs exactly as often as child i holds
  // packets.
  bool is_well_formed() const { return well_formed_size().has_value(); }

  // Throws StructureError if `pt` is not a valid path for this tree's shape;
  // the tree is unchanged in that case.
  void push(Packet pkt, const Path& pt) {
    check_path(pt, 0);
    push_unchecked(std::move(pkt), pt, 0);
  }

  // Whether pop() would release a packet.
  bool can_pop() const {
    if (leaf_) return !packets_.empty();
    const std::size_t* head = indices_.peek();
    return head != nullptr && children_[*head - 1].can_pop();
  }

  // Releases the packet reached by following popped indices, or returns
  // nothing (tree unchanged) if some PIFO on that route is empty.
  std::optional<Packet> pop() {
    if (!can_pop()) return std::nullopt;
    return pop_unchecked();
  }

  // Packets in pop order. Throws ContractError on an ill-formed tree.
  std::vector<Packet> flush() const {
    if (!is_well_formed()) {
      throw ContractError("flush requires a well-formed PIFO tree");
    }
    PifoTree copy = *this;
    std::vector<Packet> out;
    out.reserve(copy.size());
    while (auto pkt = copy.pop()) out.push_back(std::move(*pkt));
    return out;
  }

  // Per-leaf contents, leaves left to right, each in pop order.
  std::vector<std::vector<Packet>> snap() const {
    std::vector<std::vector<Packet>> out;
    collect_snap(out);
    return out;
  }

  // Same shape and, node by node, the same (element, rank) sequences.
  friend bool operator==(const PifoTree& a, const PifoTree& b) {
    return a.leaf_ == b.leaf_ && a.packets_ == b.packets_ &&
           a.indices_ == b.indices_ && a.children_ == b.children_;
  }

 private:
  std::optional<std::size_t> well_formed_size() const {
    if (leaf_) return packets_.size();
    std::size_t total = 0;
    for (std::size_t i = 1; i <= children_.size(); ++i) {
      const auto n = children_[i - 1].well_formed_size();
      if (!n || indices_.count(i) != *n) return std::nullopt;
      total += *n;
    }
    return total;
  }

  void check_path(const Path& pt, std::size_t depth) const {
    if (leaf_) {
      if (depth != pt.steps.size()) {
        throw StructureError("path " + to_string(pt) +
                             " is longer than the tree is deep");
      }
      return;
    }
    if (depth >= pt.steps.size()) {
      throw StructureError("path " + to_string(pt) +
                           " ends above a leaf");
    }
    const std::size_t i = pt.steps[depth].child;
    if (i < 1 || i > children_.size()) {
      throw StructureError("path " + to_string(pt) + " uses child index " +
                           std::to_string(i) + " at depth " +
                           std::to_string(depth) + " (arity " +
                           std::to_string(children_.size()) + ")");
    }
    children_[i - 1].check_path(pt, depth + 1);
  }

  void push_unchecked(Packet pkt, const Path& pt, std::size_t depth) {
    if (leaf_) {
      packets_.push(std::move(pkt), pt.leaf_rank);
      return;
    }
    const PathStep& s = pt.steps[depth];
    indices_.push(s.child, s.rank);
    children_[s.child - 1].push_unchecked(std::move(pkt), pt, depth + 1);
  }

  Packet pop_unchecked() {
    if (leaf_) return *packets_.pop();
    const std::size_t i = *indices_.pop();
    return children_[i - 1].pop_unchecked();
  }

  void collect_snap(std::vector<std::vector<Packet>>& out) const {
    if (leaf_) {
      out.push_back(packets_.flush());
      return;
    }
    for (const PifoTree& c : children_) c.collect_snap(out);
  }

  bool leaf_ = true;
  Pifo<Packet> packets_;
  Pifo<std::size_t> indices_;
  std::vector<PifoTree> children_;
};

// Value-returning forms of the tree operations.

inline PifoTree push(PifoTree q, Packet pkt, const Path& pt) {
  q.push(std::move(pkt), pt);
  return q;
}

inline std::optional<std::pair<Packet, PifoTree>> pop(PifoTree q) {
  auto pkt = q.pop();
  if (!pkt) return std::nullopt;
  return std::make_pair(std::move(*pkt), std::move(q));
}

// Appends the contents of every node of `second` behind the contents of the
// corresponding node of `first`, shifting ranks up by the largest rank already
// present there. On well-formed inputs the result flushes to flush(first)
// followed by flush(second). Throws StructureError on a shape mismatch.
inline PifoTree concat(const PifoTree& first, const PifoTree& second) {
  if (first.is_leaf() != second.is_leaf() ||
      first.children().size() != second.children().size()) {
    throw StructureError("concat: PIFO trees have different shapes");
  }
  if (first.is_leaf()) {
    Pifo<Packet> p = first.packets();
    const Rank shift = p.max_rank().value_or(Rank(0));
    for (const auto& e : second.packets().entries()) p.push(e.value, e.rank + shift);
    return PifoTree::leaf(std::move(p));
  }
  std::vector<PifoTree> children;
  children.reserve(first.children().size());
  for (std::size_t i = 0; i < first.children().size(); ++i) {
    children.push_back(concat(first.children()[i], second.children()[i]));
  }
  Pifo<std::size_t> p = first.indices();
  const Rank shift = p.max_rank().value_or(Rank(0));
  for (const auto& e : second.indices().entries()) p.push(e.value, e.rank + shift);
  return PifoTree::internal(std::move(children), std::move(p));
}

}  // namespace pifotree
