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

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pifotree/errors.hpp"
#include "pifotree/tree.hpp"

// Constructions that show any ordering of one-packet-per-leaf contents is
// reachable, and that a tree can be re-permuted using only a dummy packet.
// They serve mostly as test generators.

namespace pifotree {

// A permutation of {1..n}, given as the release order: order[k-1] is the
// (1-based) index of the packet released k-th.
struct Permutation {
  std::vector<std::size_t> order;

  std::size_t size() const { return order.size(); }
  std::size_t operator()(std::size_t k) const { return order.at(k - 1); }

  bool is_bijection() const {
    std::vector<bool> seen(order.size() + 1, false);
    for (std::size_t v : order) {
      if (v < 1 || v > order.size() || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.order.resize(n);
    std::iota(p.order.begin(), p.order.end(), std::size_t{1});
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

// All n! permutations in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.order.begin(), p.order.end()));
  return out;
}

// Well-formed tree with packets[i] alone in the (i+1)-th leaf from the left,
// releasing packets[pi(1)-1], packets[pi(2)-1], ... in that order.
//
// Leaf packets get rank 1. Each internal node ranks its indices 1, 2, ... in
// release order. Throws StructureError unless |packets| = |pi| = leaf_count(t)
// and pi is a bijection.
inline PifoTree build_permutation_tree(const Topo& t,
                                       const std::vector<Packet>& packets,
                                       const Permutation& pi) {
  const std::size_t n = leaf_count(t);
  if (packets.size() != n || pi.size() != n) {
    throw StructureError("permutation tree needs exactly " + std::to_string(n) +
                         " packets and a permutation of that size");
  }
  if (!pi.is_bijection()) throw StructureError("not a permutation");
  const std::vector<Addr> leaves = leaf_addresses(t);
  std::map<Addr, std::int64_t> counters;
  PifoTree q(t);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t which = pi(k);
    const Addr& leaf = leaves[which - 1];
    Path pt;
    pt.leaf_rank = Rank(1);
    for (std::size_t j = 0; j < leaf.depth(); ++j) {
      const Addr node(std::vector<std::size_t>(leaf.indices().begin(),
                                               leaf.indices().begin() + j));
      pt.steps.push_back({leaf[j], Rank(++counters[node])});
    }
    q.push(packets[which - 1], pt);
  }
  return q;
}

struct ScriptOp {
  enum class Kind { kPush, kPop };
  Kind kind = Kind::kPop;
  Path path;  // meaningful for pushes only
};

struct PermutationScript {
  std::vector<ScriptOp> ops;      // |t| pushes of the dummy, then |t| pops
  std::vector<Packet> popped;     // what the pops released
  PifoTree result;                // the tree after the script
};

// Applies `ops` to `q`, pushing `dummy` at each push. Returns the packets
// released by the pops.
inline std::vector<Packet> replay(PifoTree& q, const Packet& dummy,
                                  const std::vector<ScriptOp>& ops) {
  std::vector<Packet> popped;
  for (const ScriptOp& op : ops) {
    if (op.kind == ScriptOp::Kind::kPush) {
      q.push(dummy, op.path);
    } else if (auto p = q.pop()) {
      popped.push_back(std::move(*p));
    } else {
      throw ContractError("script pop on a tree that cannot pop");
    }
  }
  return popped;
}

namespace detail {
inline void internal_max_ranks(const PifoTree& q, const Addr& at,
                               std::map<Addr, Rank>& out) {
  if (q.is_leaf()) return;
  out[at] = q.indices().max_rank().value_or(Rank(0));
  for (std::size_t i = 1; i <= q.children().size(); ++i) {
    internal_max_ranks(q.children()[i - 1], at.child(i), out);
  }
}
}  // namespace detail

// Re-permutes a tree built by build_permutation_tree so that it releases in
// the order `pi_new`, using |t| pushes of `dummy` followed by |t| pops.
//
// The pushes append, behind the existing contents of every internal PIFO, the
// indices that a permutation tree for `pi_new` would hold, and place the dummy
// at the head of every leaf (rank 0). The pops then consume all original
// internal contents together with the dummies. Leaf contents are not moved.
//
// Throws ContractError if `dummy` shares an id with a packet in the tree, if
// some leaf does not hold exactly one packet, or if a leaf rank is 0.
inline PermutationScript permute_by_dummy(const PifoTree& q_pi,
                                          const Permutation& pi_new,
                                          const Packet& dummy) {
  const Topo t = q_pi.shape();
  const std::size_t n = leaf_count(t);
  if (pi_new.size() != n || !pi_new.is_bijection()) {
    throw StructureError("permutation does not match the tree's leaf count");
  }
  for (const auto& leaf : q_pi.snap()) {
    if (leaf.size() != 1) {
      throw ContractError("permute_by_dummy expects one packet per leaf");
    }
    if (leaf.front().id == dummy.id) {
      throw ContractError("dummy packet id " + std::to_string(dummy.id) +
                          " collides with a packet in the tree");
    }
  }
  if (!q_pi.is_well_formed()) {
    throw ContractError("permute_by_dummy expects a well-formed tree");
  }

  std::map<Addr, Rank> base;
  detail::internal_max_ranks(q_pi, Addr(), base);
  std::map<Addr, std::int64_t> counters;
  const std::vector<Addr> leaves = leaf_addresses(t);

  PermutationScript script{{}, {}, q_pi};
  for (std::size_t k = 1; k <= n; ++k) {
    const Addr& leaf = leaves[pi_new(k) - 1];
    ScriptOp op;
    op.kind = ScriptOp::Kind::kPush;
    op.path.leaf_rank = Rank(0);
    for (std::size_t j = 0; j < leaf.depth(); ++j) {
      const Addr node(std::vector<std::size_t>(leaf.indices().begin(),
                                               leaf.indices().begin() + j));
      op.path.steps.push_back({leaf[j], base[node] + Rank(++counters[node])});
    }
    script.ops.push_back(std::move(op));
  }
  for (std::size_t k = 0; k < n; ++k) script.ops.push_back(ScriptOp{});

  // Leaf ranks must be strictly above the dummy's rank 0.
  std::vector<const PifoTree*> stack{&q_pi};
  while (!stack.empty()) {
    const PifoTree* cur = stack.back();
    stack.pop_back();
    if (cur->is_leaf()) {
      if (*cur->packets().peek_rank() == Rank(0)) {
        throw ContractError("permute_by_dummy needs leaf ranks above 0");
      }
    } else {
      for (const PifoTree& c : cur->children()) stack.push_back(&c);
    }
  }

  script.popped = replay(script.result, dummy, script.ops);
  return script;
}

}  // namespace pifotree
