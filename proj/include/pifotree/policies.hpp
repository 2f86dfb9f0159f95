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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pifotree/control.hpp"
#include "pifotree/embed_algorithms.hpp"
#include "pifotree/embedding.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/rational.hpp"
#include "pifotree/topology.hpp"
#include "pifotree/tree.hpp"

namespace pifotree {

enum class PolicyKind { kFcfs, kStrict, kRoundRobin, kWfq };

inline std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::kFcfs: return "fcfs";
    case PolicyKind::kStrict: return "strict";
    case PolicyKind::kRoundRobin: return "rr";
    case PolicyKind::kWfq: return "wfq";
  }
  return "?";
}

// Scheduling policy of one internal node.
struct NodePolicy {
  PolicyKind kind = PolicyKind::kFcfs;
  std::vector<std::size_t> priority;  // strict: child indices, most preferred first
  std::vector<Rational> weights;      // wfq: one weight per child

  static NodePolicy fcfs() { return {}; }
  static NodePolicy strict(std::vector<std::size_t> order) {
    return {PolicyKind::kStrict, std::move(order), {}};
  }
  static NodePolicy round_robin() { return {PolicyKind::kRoundRobin, {}, {}}; }
  static NodePolicy wfq(std::vector<Rational> weights) {
    return {PolicyKind::kWfq, {}, std::move(weights)};
  }

  friend bool operator==(const NodePolicy&, const NodePolicy&) = default;
};

// A policy for every internal node, plus the leaf each flow is queued at.
struct PolicySpec {
  std::map<Addr, NodePolicy> nodes;
  std::map<std::string, Addr> flows;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

inline std::optional<std::string> spec_violation(const Topo& t,
                                                 const PolicySpec& spec) {
  for (const Addr& a : addresses(t)) {
    const Topo& here = subtree(t, a);
    if (here.is_leaf()) continue;
    const auto it = spec.nodes.find(a);
    if (it == spec.nodes.end()) return "no policy for internal node " + a.to_string();
    const NodePolicy& p = it->second;
    if (p.kind == PolicyKind::kStrict) {
      std::vector<std::size_t> sorted = p.priority;
      std::sort(sorted.begin(), sorted.end());
      bool ok = sorted.size() == here.arity();
      for (std::size_t i = 0; ok && i < sorted.size(); ++i) ok = sorted[i] == i + 1;
      if (!ok) {
        return "strict priority at " + a.to_string() +
               " must order each of its " + std::to_string(here.arity()) +
               " children exactly once";
      }
    }
    if (p.kind == PolicyKind::kWfq) {
      if (p.weights.size() != here.arity()) {
        return "wfq at " + a.to_string() + " needs " +
               std::to_string(here.arity()) + " weights";
      }
      for (const Rational& w : p.weights) {
        if (w.is_zero()) return "wfq weight at " + a.to_string() + " must be positive";
      }
    }
  }
  for (const auto& [a, p] : spec.nodes) {
    if (!is_valid_addr(t, a) || subtree(t, a).is_leaf()) {
      return "policy given for " + a.to_string() + ", which is not an internal node";
    }
  }
  std::set<Addr> leaves;
  for (const auto& [flow, leaf] : spec.flows) {
    if (!is_valid_addr(t, leaf) || !subtree(t, leaf).is_leaf()) {
      return "flow " + flow + " maps to " + leaf.to_string() + ", which is not a leaf";
    }
    if (!leaves.insert(leaf).second) {
      return "two flows share leaf " + leaf.to_string();
    }
  }
  return std::nullopt;
}

// Per-node scheduling state.
struct NodeState {
  std::int64_t arrivals = 0;        // fcfs counter
  std::vector<Rational> last;       // rr: next round per child; wfq: last finish tag
  Rational virtual_time;            // tag of the last packet released through this node
};

struct PolicyState {
  std::map<Addr, NodeState> nodes;
  std::map<Addr, std::int64_t> leaf_arrivals;
  // Tags assigned to packets still in the tree, per node on their route.
  std::map<std::uint64_t, std::vector<std::pair<Addr, Rational>>> in_flight;
};

// First come, first served: ranks 0, 1, 2, ... in arrival order.
inline Rank rank_fcfs(NodeState& s) { return Rank(s.arrivals++); }

// Constant rank per child: its position in `priority` (most preferred = 0).
inline Rank rank_strict(std::size_t child,
                        const std::vector<std::size_t>& priority) {
  const auto it = std::find(priority.begin(), priority.end(), child);
  if (it == priority.end()) {
    throw StructureError("strict priority has no entry for child " +
                         std::to_string(child));
  }
  return Rank(static_cast<std::int64_t>(it - priority.begin()));
}

// Round-robin: each child's packets take successive round numbers. A child
// returning from idle starts at the round currently being served rather than
// at its stale counter.
inline Rank rank_rr(NodeState& s, std::size_t child) {
  Rational& next = s.last.at(child - 1);
  const Rank r = std::max(next, s.virtual_time);
  next = r + Rational(1);
  return r;
}

// Weighted fair queueing by virtual finish time:
//   F_child <- max(F_child, V) + size / weight_child,  rank = F_child
// where V is the finish tag of the last packet released through the node.
inline Rank rank_wfq(NodeState& s, std::size_t child,
                     const std::vector<Rational>& weights, std::uint64_t size) {
  const Rational& w = weights.at(child - 1);
  if (w.is_zero()) throw StructureError("wfq weight must be positive");
  Rational& finish = s.last.at(child - 1);
  finish = std::max(finish, s.virtual_time) +
           Rational(static_cast<std::int64_t>(size)) / w;
  return finish;
}

// Glues the per-node policies into a single control over `t`. Each packet is
// routed to the leaf of its flow; the leaf itself is FIFO.
inline Control<PolicyState> build_control(const Topo& t, const PolicySpec& spec) {
  if (auto why = spec_violation(t, spec)) throw StructureError(*why);
  Control<PolicyState> c{PolicyState{}, PifoTree(t), {}, {}};
  for (const Addr& a : addresses(t)) {
    const Topo& here = subtree(t, a);
    if (here.is_leaf()) {
      c.state.leaf_arrivals[a] = 0;
    } else {
      c.state.nodes[a].last.assign(here.arity(), Rational(0));
    }
  }
  c.transaction = [spec](const PolicyState& in, const Packet& pkt) {
    const auto flow = spec.flows.find(pkt.flow);
    if (flow == spec.flows.end()) {
      throw StructureError("no leaf configured for flow '" + pkt.flow + "'");
    }
    PolicyState s = in;
    const Addr& leaf = flow->second;
    Path pt;
    std::vector<std::pair<Addr, Rational>> tags;
    for (std::size_t j = 0; j < leaf.depth(); ++j) {
      const Addr node(std::vector<std::size_t>(leaf.indices().begin(),
                                               leaf.indices().begin() + j));
      const std::size_t child = leaf[j];
      const NodePolicy& policy = spec.nodes.at(node);
      NodeState& ns = s.nodes.at(node);
      Rank r;
      switch (policy.kind) {
        case PolicyKind::kFcfs:
          r = rank_fcfs(ns);
          break;
        case PolicyKind::kStrict:
          r = rank_strict(child, policy.priority);
          break;
        case PolicyKind::kRoundRobin:
          r = rank_rr(ns, child);
          tags.emplace_back(node, r);
          break;
        case PolicyKind::kWfq:
          r = rank_wfq(ns, child, policy.weights, pkt.size);
          tags.emplace_back(node, r);
          break;
      }
      pt.steps.push_back({child, r});
    }
    pt.leaf_rank = Rank(s.leaf_arrivals[leaf]++);
    if (!tags.empty()) s.in_flight[pkt.id] = std::move(tags);
    return std::make_pair(std::move(pt), std::move(s));
  };
  c.on_pop = [](const PolicyState& in, const Packet& pkt) {
    const auto it = in.in_flight.find(pkt.id);
    if (it == in.in_flight.end()) return in;
    PolicyState s = in;
    for (const auto& [node, tag] : it->second) {
      Rational& v = s.nodes.at(node).virtual_time;
      v = std::max(v, tag);
    }
    s.in_flight.erase(pkt.id);
    return s;
  };
  return c;
}

// A policy configuration file. When `compiled` is set the policy runs on the
// embedding's target topology through the embedding.
struct PolicyFile {
  Topo topology;
  PolicySpec spec;
  std::optional<Embedding> compiled;
};

// Control for a policy file, compiled through its embedding when present.
inline Control<PolicyState> make_control(const PolicyFile& f) {
  Control<PolicyState> c = build_control(f.topology, f.spec);
  if (!f.compiled) return c;
  if (f.compiled->source() != f.topology) {
    throw StructureError("embedding source does not match the policy topology");
  }
  return compile_control(*f.compiled, c);
}

// Attaches a minimum-height embedding into a complete d-ary topology.
inline PolicyFile compile_policy(const PolicyFile& f, std::size_t d) {
  PolicyFile out = f;
  out.compiled = embed_into_dary(f.topology, d).embedding;
  return out;
}

// Policy file format (one directive per line, '#' starts a comment):
//
//   topology [*, [*, *], *]
//   node <addr> fcfs
//   node <addr> strict <child> <child> ...     most preferred first
//   node <addr> rr
//   node <addr> wfq <weight> <weight> ...      one per child, e.g. 10 or 1/3
//   flow <label> <leaf addr>
//
// Compiled files additionally carry
//
//   target <topology>
//   map <source addr> -> <target addr>
//
// Addresses are dot-joined 1-based child indices; "." is the root.
inline PolicyFile parse_policy(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::optional<Topo> topology;
  std::optional<Topo> target;
  std::map<Addr, Addr> mapping;
  PolicySpec spec;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = detail::trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    try {
      std::istringstream ls(line);
      std::string keyword;
      ls >> keyword;
      std::string rest;
      std::getline(ls, rest);
      rest = detail::trim(rest);
      if (keyword == "topology") {
        if (topology) throw ParseError("duplicate 'topology'", lineno);
        topology = parse_topo(rest);
      } else if (keyword == "target") {
        if (target) throw ParseError("duplicate 'target'", lineno);
        target = parse_topo(rest);
      } else if (keyword == "map") {
        if (!detail::parse_mapping_line(rest, lineno, mapping)) {
          throw ParseError("expected 'map <addr> -> <addr>'", lineno);
        }
      } else if (keyword == "node") {
        std::istringstream ns(rest);
        std::string addr_text;
        std::string kind;
        ns >> addr_text >> kind;
        if (addr_text.empty() || kind.empty()) {
          throw ParseError("expected 'node <addr> <policy> ...'", lineno);
        }
        const Addr addr = Addr::parse(addr_text);
        NodePolicy p;
        std::string arg;
        if (kind == "fcfs") {
          p = NodePolicy::fcfs();
        } else if (kind == "rr") {
          p = NodePolicy::round_robin();
        } else if (kind == "strict") {
          p.kind = PolicyKind::kStrict;
          while (ns >> arg) {
            const Rational v = Rational::parse(arg);
            if (!v.is_integer() || v.is_zero()) {
              throw ParseError("strict priority entries are child indices", lineno);
            }
            p.priority.push_back(static_cast<std::size_t>(v.num()));
          }
        } else if (kind == "wfq") {
          p.kind = PolicyKind::kWfq;
          while (ns >> arg) p.weights.push_back(Rational::parse(arg));
        } else {
          throw ParseError("unknown policy '" + kind + "'", lineno);
        }
        if (kind == "fcfs" || kind == "rr") {
          if (ns >> arg) throw ParseError(kind + " takes no arguments", lineno);
        }
        if (!spec.nodes.emplace(addr, std::move(p)).second) {
          throw ParseError("duplicate policy for node " + addr.to_string(), lineno);
        }
      } else if (keyword == "flow") {
        std::istringstream fs(rest);
        std::string label;
        std::string addr_text;
        std::string extra;
        fs >> label >> addr_text;
        if (label.empty() || addr_text.empty() || (fs >> extra)) {
          throw ParseError("expected 'flow <label> <leaf addr>'", lineno);
        }
        if (!spec.flows.emplace(label, Addr::parse(addr_text)).second) {
          throw ParseError("duplicate flow " + label, lineno);
        }
      } else {
        throw ParseError("unknown directive '" + keyword + "'", lineno);
      }
    } catch (const ParseError& err) {
      if (err.line() > 0) throw;
      throw ParseError(err.what(), lineno);
    }
  }
  if (!topology) throw ParseError("policy file has no 'topology' line");
  if (auto why = spec_violation(*topology, spec)) throw ParseError(*why);
  PolicyFile f{*topology, std::move(spec), std::nullopt};
  if (target || !mapping.empty()) {
    if (!target) throw ParseError("'map' lines need a 'target' line");
    Embedding e(*topology, *target, std::move(mapping));
    if (auto why = embedding_violation(e)) {
      throw ParseError("invalid embedding: " + *why);
    }
    f.compiled = std::move(e);
  }
  return f;
}

inline std::string serialize(const PolicyFile& f) {
  std::ostringstream os;
  os << "# pifotree-policy v1\n";
  os << "topology " << to_string(f.topology) << "\n";
  for (const auto& [addr, p] : f.spec.nodes) {
    os << "node " << addr << " " << to_string(p.kind);
    for (std::size_t c : p.priority) os << " " << c;
    for (const Rational& w : p.weights) os << " " << w;
    os << "\n";
  }
  for (const auto& [label, leaf] : f.spec.flows) {
    os << "flow " << label << " " << leaf << "\n";
  }
  if (f.compiled) {
    os << "target " << to_string(f.compiled->target()) << "\n";
    for (const Addr& a : addresses(f.topology)) {
      os << "map " << a << " -> " << (*f.compiled)(a) << "\n";
    }
  }
  return os.str();
}

}  // namespace pifotree
