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

// Hand-rolled random generators for property tests.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pifotree/pifotree.hpp"

namespace pifotree::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

// A random topology with exactly `nodes` nodes and arity at most `max_arity`.
inline Topo random_topo_exact(Rng& rng, std::size_t nodes, std::size_t max_arity = 3) {
  if (nodes <= 1) return Topo::leaf();
  const std::size_t rest = nodes - 1;
  const std::size_t k = uniform(rng, 1, std::min(max_arity, rest));
  // Split `rest` into k positive parts.
  std::vector<std::size_t> parts(k, 1);
  for (std::size_t extra = rest - k; extra > 0; --extra) ++parts[uniform(rng, 0, k - 1)];
  std::vector<Topo> kids;
  for (std::size_t p : parts) kids.push_back(random_topo_exact(rng, p, max_arity));
  return Topo::node(std::move(kids));
}

inline Topo random_topo(Rng& rng, std::size_t max_nodes, std::size_t max_arity = 3) {
  return random_topo_exact(rng, uniform(rng, 1, max_nodes), max_arity);
}

// Every topology with exactly `nodes` nodes.
inline std::vector<Topo> all_topos_exact(std::size_t nodes);

// Every ordered forest with exactly `nodes` nodes in total.
inline std::vector<std::vector<Topo>> all_forests(std::size_t nodes) {
  if (nodes == 0) return {{}};
  std::vector<std::vector<Topo>> out;
  for (std::size_t first = 1; first <= nodes; ++first) {
    for (const Topo& head : all_topos_exact(first)) {
      for (auto& tail : all_forests(nodes - first)) {
        std::vector<Topo> f{head};
        f.insert(f.end(), tail.begin(), tail.end());
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

inline std::vector<Topo> all_topos_exact(std::size_t nodes) {
  if (nodes == 0) return {};
  if (nodes == 1) return {Topo::leaf()};
  std::vector<Topo> out;
  for (auto& f : all_forests(nodes - 1)) out.push_back(Topo::node(std::move(f)));
  return out;
}

inline std::vector<Topo> all_topos_up_to(std::size_t max_nodes) {
  std::vector<Topo> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (Topo& t : all_topos_exact(n)) out.push_back(std::move(t));
  }
  return out;
}

// Ranks drawn from a small pool of integers and halves so ties are common.
inline Rank random_rank(Rng& rng, std::size_t max = 6) {
  return Rank(static_cast<std::int64_t>(uniform(rng, 0, 2 * max)), 2);
}

inline Path random_path(Rng& rng, const Topo& t, std::size_t max_rank = 6) {
  Path pt;
  const Topo* cur = &t;
  while (!cur->is_leaf()) {
    const std::size_t i = uniform(rng, 1, cur->arity());
    pt.steps.push_back({i, random_rank(rng, max_rank)});
    cur = &cur->child(i);
  }
  pt.leaf_rank = random_rank(rng, max_rank);
  return pt;
}

class PacketFactory {
 public:
  Packet next(const std::string& flow = "P") {
    ++id_;
    return Packet{id_, flow, Time(static_cast<std::int64_t>(id_)), 1};
  }

 private:
  std::uint64_t id_ = 0;
};

// A well-formed tree reached from empty by `ops` random pushes and pops.
inline PifoTree random_tree(Rng& rng, const Topo& t, std::size_t ops,
                            PacketFactory& packets, double push_bias = 0.7) {
  PifoTree q(t);
  for (std::size_t k = 0; k < ops; ++k) {
    if (q.empty() || coin(rng, push_bias)) {
      q.push(packets.next(), random_path(rng, t));
    } else {
      q.pop();
    }
  }
  return q;
}

// A tree of shape t whose leaves and index PIFOs are filled independently, so
// the index counts need not match the leaves.
inline PifoTree random_unchecked_tree(Rng& rng, const Topo& t, PacketFactory& packets,
                                      std::size_t max_per_node = 3) {
  if (t.is_leaf()) {
    Pifo<Packet> p;
    for (std::size_t k = uniform(rng, 0, max_per_node); k > 0; --k) {
      p.push(packets.next(), random_rank(rng));
    }
    return PifoTree::leaf(std::move(p));
  }
  std::vector<PifoTree> kids;
  for (const Topo& c : t.children()) {
    kids.push_back(random_unchecked_tree(rng, c, packets, max_per_node));
  }
  Pifo<std::size_t> idx;
  for (std::size_t k = uniform(rng, 0, max_per_node + 1); k > 0; --k) {
    idx.push(uniform(rng, 1, t.arity()), random_rank(rng));
  }
  return PifoTree::internal(std::move(kids), std::move(idx));
}

// A valid embedding with source `s`, produced by one of the search
// algorithms into a random target that admits one.
inline Embedding random_embedding(Rng& rng, const Topo& s) {
  switch (uniform(rng, 0, 3)) {
    case 0:
      return Embedding::identity(s);
    case 1:
      return embed_into_dary(s, 2).embedding;
    case 2:
      return embed_into_dary(s, 3).embedding;
    default: {
      for (int attempt = 0; attempt < 20; ++attempt) {
        const Topo target = random_topo(rng, 2 * node_count(s) + 2);
        if (auto e = embed_into_arbitrary(s, target)) return *e;
      }
      return embed_into_dary(s, 2).embedding;
    }
  }
}

// A policy for every internal node of `t`, drawn uniformly from the four
// disciplines; each leaf gets a flow named after its address.
inline PolicySpec random_policy_spec(Rng& rng, const Topo& t) {
  PolicySpec spec;
  for (const Addr& a : addresses(t)) {
    const Topo& here = subtree(t, a);
    if (here.is_leaf()) {
      spec.flows["f" + a.to_string()] = a;
      continue;
    }
    switch (uniform(rng, 0, 3)) {
      case 0:
        spec.nodes[a] = NodePolicy::fcfs();
        break;
      case 1: {
        std::vector<std::size_t> order(here.arity());
        std::iota(order.begin(), order.end(), std::size_t{1});
        std::shuffle(order.begin(), order.end(), rng);
        spec.nodes[a] = NodePolicy::strict(order);
        break;
      }
      case 2:
        spec.nodes[a] = NodePolicy::round_robin();
        break;
      default: {
        std::vector<Rational> w;
        for (std::size_t i = 0; i < here.arity(); ++i) {
          w.emplace_back(static_cast<std::int64_t>(uniform(rng, 1, 9)));
        }
        spec.nodes[a] = NodePolicy::wfq(w);
      }
    }
  }
  return spec;
}

// A trace over `flows` with `n` packets; arrivals advance by 0 to 3 tenths
// of a second.
inline std::vector<TraceRecord> random_trace(Rng& rng, const std::vector<std::string>& flows,
                                             std::size_t n) {
  std::vector<TraceRecord> trace;
  Rational now;
  for (std::size_t k = 0; k < n; ++k) {
    now = now + Rational(static_cast<std::int64_t>(uniform(rng, 0, 3)), 10);
    trace.push_back({now, flows[uniform(rng, 0, flows.size() - 1)],
                     static_cast<std::uint64_t>(uniform(rng, 1, 3)), k + 1});
  }
  return trace;
}

}  // namespace pifotree::testing
