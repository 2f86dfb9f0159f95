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
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pifotree/control.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/topology.hpp"
#include "pifotree/tree.hpp"

namespace pifotree {

// A homomorphic embedding of `source` into `target`: an injective map on node
// addresses that sends the root to the root and leaves to leaves, and under
// which `a` is a prefix of `b` exactly when f(a) is a prefix of f(b).
//
// Construction does not check these conditions; use validate().
class Embedding {
 public:
  Embedding(Topo source, Topo target, std::map<Addr, Addr> map)
      : source_(std::move(source)),
        target_(std::move(target)),
        map_(std::move(map)) {}

  static Embedding identity(const Topo& t) {
    std::map<Addr, Addr> m;
    for (const Addr& a : addresses(t)) m.emplace(a, a);
    return Embedding(t, t, std::move(m));
  }

  const Topo& source() const { return source_; }
  const Topo& target() const { return target_; }
  const std::map<Addr, Addr>& map() const { return map_; }

  const Addr& operator()(const Addr& a) const {
    const auto it = map_.find(a);
    if (it == map_.end()) {
      throw AddressError("embedding has no image for " + a.to_string());
    }
    return it->second;
  }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  Topo source_;
  Topo target_;
  std::map<Addr, Addr> map_;
};

// Why `e` is not an embedding, or nothing if it is one.
inline std::optional<std::string> embedding_violation(const Embedding& e) {
  const std::vector<Addr> src = addresses(e.source());
  if (e.map().size() != src.size()) {
    return "map has " + std::to_string(e.map().size()) + " entries, source has " +
           std::to_string(src.size()) + " nodes";
  }
  std::set<Addr> images;
  for (const Addr& a : src) {
    const auto it = e.map().find(a);
    if (it == e.map().end()) return "no image for " + a.to_string();
    if (!is_valid_addr(e.target(), it->second)) {
      return "image " + it->second.to_string() + " of " + a.to_string() +
             " is not a target node";
    }
    if (!images.insert(it->second).second) {
      return "not injective at " + it->second.to_string();
    }
  }
  if (!e(Addr()).is_root()) return "root does not map to root";
  for (const Addr& a : src) {
    if (subtree(e.source(), a).is_leaf() &&
        !subtree(e.target(), e(a)).is_leaf()) {
      return "leaf " + a.to_string() + " maps to internal node " +
             e(a).to_string();
    }
  }
  for (const Addr& a : src) {
    for (const Addr& b : src) {
      if (a.is_prefix_of(b) != e(a).is_prefix_of(e(b))) {
        return "ancestry not respected between " + a.to_string() + " and " +
               b.to_string();
      }
    }
  }
  return std::nullopt;
}

inline bool validate(const Embedding& e) {
  return !embedding_violation(e).has_value();
}

// The embedding of source/i into target/e(i) induced by `e`, satisfying
// e(i.a) = e(i).f_i(a). Throws StructureError on a leaf source or bad index.
inline Embedding decompose(const Embedding& e, std::size_t i) {
  if (e.source().is_leaf()) {
    throw StructureError("cannot decompose an embedding of a leaf");
  }
  if (i < 1 || i > e.source().arity()) {
    throw StructureError("child index " + std::to_string(i) + " out of range");
  }
  const Addr base = e(Addr{i});
  std::map<Addr, Addr> m;
  for (const auto& [a, img] : e.map()) {
    if (a.is_root() || a[0] != i) continue;
    if (!base.is_prefix_of(img)) {
      throw StructureError("embedding does not respect ancestry below " +
                           Addr{i}.to_string());
    }
    m.emplace(a.drop_prefix(1), img.drop_prefix(base.depth()));
  }
  return Embedding(e.source().child(i), subtree(e.target(), base), std::move(m));
}

namespace detail {

// Builds the lifted node at `at` (relative to the target root of the current
// outer step) by inverse recursion from the children's images up to the root.
inline PifoTree lift_prefix(const Topo& target, const Addr& at,
                            const std::vector<Addr>& images,
                            std::vector<std::optional<PifoTree>>& lifted,
                            const Pifo<std::size_t>& source_pifo) {
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] == at) return std::move(*lifted[i]);
  }
  const Topo& here = subtree(target, at);
  std::vector<PifoTree> children;
  children.reserve(here.arity());
  for (std::size_t j = 1; j <= here.arity(); ++j) {
    const Addr next = at.child(j);
    bool used = false;
    for (const Addr& img : images) used = used || next.is_prefix_of(img);
    if (used) {
      children.push_back(lift_prefix(target, next, images, lifted, source_pifo));
    } else {
      children.emplace_back(here.child(j));
    }
  }
  // Keep the source entries whose child lies below `at`, renumbered to the
  // child of `at` on the way there. Pushing in pop order keeps equal-rank
  // entries in their original relative order.
  Pifo<std::size_t> p;
  for (const auto& entry : source_pifo.entries()) {
    const Addr& img = images[entry.value - 1];
    if (at.depth() < img.depth() && at.is_prefix_of(img)) {
      p.push(img[at.depth()], entry.rank);
    }
  }
  return PifoTree::internal(std::move(children), std::move(p));
}

inline PifoTree lift(const Embedding& e, const PifoTree& q) {
  if (e.source().is_leaf()) return q;
  const std::size_t n = e.source().arity();
  std::vector<Addr> images;
  std::vector<std::optional<PifoTree>> lifted;
  for (std::size_t i = 1; i <= n; ++i) {
    images.push_back(e(Addr{i}));
    lifted.emplace_back(lift(decompose(e, i), q.child(i)));
  }
  return lift_prefix(e.target(), Addr(), images, lifted, q.indices());
}

}  // namespace detail

// Lifts `e` to trees: packets go to the image leaves and each target node's
// PIFO is derived from the nearest source node above it. Target nodes outside
// the image stay empty. Throws StructureError if q's shape is not e's source.
inline PifoTree lift_tree(const Embedding& e, const PifoTree& q) {
  if (q.shape() != e.source()) {
    throw StructureError("lift_tree: tree shape " + to_string(q.shape()) +
                         " is not the embedding source " +
                         to_string(e.source()));
  }
  return detail::lift(e, q);
}

// Translates an insertion path over the source into one over the target,
// repeating a step's rank at every intermediate node the target inserts.
// Throws StructureError if `pt` is not valid for the source.
inline Path translate_path(const Embedding& e, const Path& pt) {
  if (!is_valid_path(e.source(), pt)) {
    throw StructureError("translate_path: " + to_string(pt) +
                         " is not a path of " + to_string(e.source()));
  }
  Path out;
  out.leaf_rank = pt.leaf_rank;
  Embedding cur = e;
  for (const PathStep& s : pt.steps) {
    for (std::size_t k : cur(Addr{s.child}).indices()) {
      out.steps.push_back({k, s.rank});
    }
    cur = decompose(cur, s.child);
  }
  return out;
}

// Runs `c` on the target topology: same state, lifted tree, and a
// transaction whose paths are translated through `e`.
template <typename State>
Control<State> compile_control(const Embedding& e, const Control<State>& c) {
  if (!validate(e)) {
    throw StructureError("compile_control: " + *embedding_violation(e));
  }
  Control<State> out{c.state, lift_tree(e, c.tree), {}, c.on_pop};
  out.transaction = [e, z = c.transaction](const State& s, const Packet& pkt) {
    auto [pt, next] = z(s, pkt);
    return std::make_pair(translate_path(e, pt), std::move(next));
  };
  return out;
}

// Text form:
//   # pifotree-embedding v1
//   source [*, *, *]
//   target [*, [*, *]]
//   . -> .
//   1 -> 1
//   2 -> 2.1
inline std::string serialize(const Embedding& e) {
  std::ostringstream os;
  os << "# pifotree-embedding v1\n";
  os << "source " << to_string(e.source()) << "\n";
  os << "target " << to_string(e.target()) << "\n";
  for (const Addr& a : addresses(e.source())) {
    const auto it = e.map().find(a);
    if (it != e.map().end()) os << a << " -> " << it->second << "\n";
  }
  return os.str();
}

namespace detail {
inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t en = s.size();
  while (b < en && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (en > b && (s[en - 1] == ' ' || s[en - 1] == '\t' || s[en - 1] == '\r')) --en;
  return std::string(s.substr(b, en - b));
}

// Parses one "a -> b" line into the map; returns false if the line is not a
// mapping line.
inline bool parse_mapping_line(const std::string& line, int lineno,
                               std::map<Addr, Addr>& m) {
  const auto arrow = line.find("->");
  if (arrow == std::string::npos) return false;
  const Addr from = Addr::parse(trim(line.substr(0, arrow)));
  const Addr to = Addr::parse(trim(line.substr(arrow + 2)));
  if (!m.emplace(from, to).second) {
    throw ParseError("duplicate mapping for " + from.to_string(), lineno);
  }
  return true;
}
}  // namespace detail

// Inverse of serialize(). Does not validate the embedding.
inline Embedding parse_embedding(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::optional<Topo> source;
  std::optional<Topo> target;
  std::map<Addr, Addr> m;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.rfind("source ", 0) == 0) {
        source = parse_topo(line.substr(7));
      } else if (line.rfind("target ", 0) == 0) {
        target = parse_topo(line.substr(7));
      } else if (!detail::parse_mapping_line(line, lineno, m)) {
        throw ParseError("expected 'source', 'target' or 'a -> b'", lineno);
      }
    } catch (const ParseError& err) {
      if (err.line() > 0) throw;
      throw ParseError(err.what(), lineno);
    }
  }
  if (!source || !target) {
    throw ParseError("embedding needs 'source' and 'target' lines");
  }
  return Embedding(std::move(*source), std::move(*target), std::move(m));
}

}  // namespace pifotree
