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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pifotree/embedding.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/pifo.hpp"
#include "pifotree/topology.hpp"

namespace pifotree {

struct DaryEmbedding {
  Embedding embedding;  // target is complete_dary(d, height)
  std::size_t height;
};

namespace detail {

// A node of the intermediate layout built by the greedy pass. `level` is the
// height of the complete d-ary subtree reserved for it; `source` is set when
// the node is the image of a source node, and unset for transit nodes.
struct Gadget {
  std::size_t level = 0;
  std::optional<Addr> source;
  std::vector<Gadget> children;
};

inline Gadget greedy_layout(const Topo& t, const Addr& at, std::size_t d) {
  if (t.is_leaf()) return Gadget{0, at, {}};
  if (t.arity() == 1) {
    Gadget only = greedy_layout(t.child(1), at.child(1), d);
    const std::size_t level = only.level + 1;
    return Gadget{level, at, {std::move(only)}};
  }
  // Min-queue of gadgets keyed by height; equal heights leave in insertion
  // order, which makes the choice among equal-height subtrees deterministic.
  std::vector<Gadget> pool;
  Pifo<std::size_t> queue;
  for (std::size_t i = 1; i <= t.arity(); ++i) {
    pool.push_back(greedy_layout(t.child(i), at.child(i), d));
    queue.push(pool.size() - 1, Rank(static_cast<std::int64_t>(pool.back().level)));
  }
  while (queue.size() > 1) {
    const Rank m = *queue.peek_rank();
    std::vector<std::size_t> group;
    while (group.size() < d && !queue.empty() && *queue.peek_rank() == m) {
      group.push_back(*queue.pop());
    }
    const std::size_t next = static_cast<std::size_t>(m.num()) + 1;
    if (group.size() == 1) {
      // Alone at the minimum: it will need a taller sibling anyway.
      queue.push(group.front(), Rank(static_cast<std::int64_t>(next)));
      continue;
    }
    Gadget merged{next, std::nullopt, {}};
    for (std::size_t g : group) merged.children.push_back(std::move(pool[g]));
    pool.push_back(std::move(merged));
    queue.push(pool.size() - 1, Rank(static_cast<std::int64_t>(next)));
  }
  Gadget root = std::move(pool[*queue.pop()]);
  root.source = at;
  return root;
}

inline void place(const Gadget& g, Addr at, std::size_t avail,
                  std::map<Addr, Addr>& out) {
  // A gadget shorter than its slot hangs below a chain of first children.
  while (avail > g.level) {
    at = at.child(1);
    --avail;
  }
  if (g.source) out.emplace(*g.source, at);
  for (std::size_t j = 0; j < g.children.size(); ++j) {
    place(g.children[j], at.child(j + 1), g.level - 1, out);
  }
}

}  // namespace detail

// Embeds `source` into a complete d-ary topology of minimum height. Works
// bottom-up: the children of each node are merged d at a time, lowest first,
// in the manner of Huffman code construction; a lone lowest subtree is
// promoted one level instead of receiving a unary parent.
inline DaryEmbedding embed_into_dary(const Topo& source, std::size_t d) {
  if (d < 2) throw StructureError("embed_into_dary needs d >= 2");
  const detail::Gadget root = detail::greedy_layout(source, Addr(), d);
  std::map<Addr, Addr> m;
  detail::place(root, Addr(), root.level, m);
  return DaryEmbedding{Embedding(source, complete_dary(d, root.level), std::move(m)),
                       root.level};
}

namespace detail {

struct AddrIndex {
  explicit AddrIndex(const Topo& t) : addrs(addresses(t)) {
    for (std::size_t k = 0; k < addrs.size(); ++k) {
      index.emplace(addrs[k], k);
      leaf.push_back(subtree(t, addrs[k]).is_leaf());
    }
  }
  std::vector<Addr> addrs;  // pre-order
  std::map<Addr, std::size_t> index;
  std::vector<bool> leaf;
};

}  // namespace detail

// Decides by dynamic programming whether `source` embeds in `target` and, if
// so, returns an embedding.
//
// table[a1][a2] records whether the subtree at a1 can be embedded with a1
// sent to a2. For an internal a1 it holds when a2 has pairwise incomparable
// descendants that can host a1's children. A candidate host is skipped when
// one of its own descendants can host the same child. The choice of hosts is
// searched exhaustively; nodes with more than `arity_cap` children raise a
// StructureError.
inline std::optional<Embedding> embed_into_arbitrary(const Topo& source,
                                                     const Topo& target,
                                                     std::size_t arity_cap = 6) {
  if (max_arity(source) > arity_cap) {
    throw StructureError("source arity " + std::to_string(max_arity(source)) +
                         " exceeds the search cap of " + std::to_string(arity_cap));
  }
  const detail::AddrIndex src(source);
  const detail::AddrIndex tgt(target);
  const std::size_t n = src.addrs.size();
  const std::size_t m = tgt.addrs.size();

  // strict_desc[a2] lists the proper descendants of a2.
  std::vector<std::vector<std::size_t>> strict_desc(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b && tgt.addrs[a].is_prefix_of(tgt.addrs[b])) {
        strict_desc[a].push_back(b);
      }
    }
  }
  const auto comparable = [&](std::size_t a, std::size_t b) {
    return tgt.addrs[a].is_prefix_of(tgt.addrs[b]) ||
           tgt.addrs[b].is_prefix_of(tgt.addrs[a]);
  };

  std::vector<std::vector<bool>> table(n, std::vector<bool>(m, false));
  std::vector<std::vector<std::vector<std::size_t>>> witness(
      n, std::vector<std::vector<std::size_t>>(m));

  for (std::size_t s = n; s-- > 0;) {
    const Addr& a1 = src.addrs[s];
    const Topo& here = subtree(source, a1);
    if (here.is_leaf()) {
      for (std::size_t t = 0; t < m; ++t) table[s][t] = tgt.leaf[t];
      continue;
    }
    std::vector<std::size_t> kids;
    for (std::size_t i = 1; i <= here.arity(); ++i) {
      kids.push_back(src.index.at(a1.child(i)));
    }
    for (std::size_t t = 0; t < m; ++t) {
      if (tgt.leaf[t]) continue;
      std::vector<std::vector<std::size_t>> candidates(kids.size());
      bool hopeless = false;
      for (std::size_t c = 0; c < kids.size() && !hopeless; ++c) {
        for (std::size_t host : strict_desc[t]) {
          if (!table[kids[c]][host]) continue;
          bool dominated = false;
          for (std::size_t deeper : strict_desc[host]) {
            if (table[kids[c]][deeper]) {
              dominated = true;
              break;
            }
          }
          if (!dominated) candidates[c].push_back(host);
        }
        hopeless = candidates[c].empty();
      }
      if (hopeless) continue;
      std::vector<std::size_t> chosen;
      const std::function<bool(std::size_t)> search = [&](std::size_t c) {
        if (c == kids.size()) return true;
        for (std::size_t host : candidates[c]) {
          bool clash = false;
          for (std::size_t prev : chosen) clash = clash || comparable(prev, host);
          if (clash) continue;
          chosen.push_back(host);
          if (search(c + 1)) return true;
          chosen.pop_back();
        }
        return false;
      };
      if (search(0)) {
        table[s][t] = true;
        witness[s][t] = chosen;
      }
    }
  }

  if (!table[0][0]) return std::nullopt;
  std::map<Addr, Addr> out;
  const std::function<void(std::size_t, std::size_t)> rebuild =
      [&](std::size_t s, std::size_t t) {
        out.emplace(src.addrs[s], tgt.addrs[t]);
        const Topo& here = subtree(source, src.addrs[s]);
        for (std::size_t i = 1; i <= here.arity(); ++i) {
          rebuild(src.index.at(src.addrs[s].child(i)), witness[s][t][i - 1]);
        }
      };
  rebuild(0, 0);
  return Embedding(source, target, std::move(out));
}

struct BruteForceLimits {
  std::size_t max_source_nodes = 8;
  std::size_t max_target_nodes = 10;
};

// Exhaustive search over injective address maps, pruning a partial map as
// soon as some pair of assigned nodes violates a defining condition. Intended
// as a test oracle; throws StructureError when the inputs exceed `limits`.
inline std::optional<Embedding> brute_force_embed(const Topo& source,
                                                  const Topo& target,
                                                  BruteForceLimits limits = {}) {
  const detail::AddrIndex src(source);
  const detail::AddrIndex tgt(target);
  if (src.addrs.size() > limits.max_source_nodes ||
      tgt.addrs.size() > limits.max_target_nodes) {
    throw StructureError("brute_force_embed: instance exceeds size guard (" +
                         std::to_string(src.addrs.size()) + " source nodes, " +
                         std::to_string(tgt.addrs.size()) + " target nodes)");
  }
  const std::size_t n = src.addrs.size();
  std::vector<std::size_t> image(n);
  std::vector<bool> used(tgt.addrs.size(), false);

  const auto consistent = [&](std::size_t s, std::size_t t) {
    if (used[t]) return false;
    if (src.addrs[s].is_root() != tgt.addrs[t].is_root()) return false;
    if (src.leaf[s] && !tgt.leaf[t]) return false;
    for (std::size_t p = 0; p < s; ++p) {
      const Addr& a = src.addrs[p];
      const Addr& b = src.addrs[s];
      const Addr& fa = tgt.addrs[image[p]];
      const Addr& fb = tgt.addrs[t];
      if (a.is_prefix_of(b) != fa.is_prefix_of(fb)) return false;
      if (b.is_prefix_of(a) != fb.is_prefix_of(fa)) return false;
    }
    return true;
  };

  const std::function<bool(std::size_t)> search = [&](std::size_t s) {
    if (s == n) return true;
    for (std::size_t t = 0; t < tgt.addrs.size(); ++t) {
      if (!consistent(s, t)) continue;
      image[s] = t;
      used[t] = true;
      if (search(s + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;

  std::map<Addr, Addr> out;
  for (std::size_t s = 0; s < n; ++s) out.emplace(src.addrs[s], tgt.addrs[image[s]]);
  Embedding e(source, target, std::move(out));
  if (!validate(e)) {
    throw ContractError("brute_force_embed produced an invalid embedding: " +
                        *embedding_violation(e));
  }
  return e;
}

}  // namespace pifotree
