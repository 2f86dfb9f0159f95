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
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pifotree/errors.hpp"

namespace pifotree {

// Shape of a PIFO tree, without data. A leaf is written `*`; an internal node
// is written as the bracketed list of its children, e.g. `[*, [*, *]]`.
// Internal nodes have at least one child.
class Topo {
 public:
  // The default topology is a single leaf.
  Topo() = default;

  static Topo leaf() { return Topo(); }
  static Topo node(std::vector<Topo> children) {
    if (children.empty()) {
      throw StructureError("internal topology node needs at least one child");
    }
    Topo t;
    t.children_ = std::move(children);
    return t;
  }

  bool is_leaf() const { return children_.empty(); }
  std::size_t arity() const { return children_.size(); }
  const std::vector<Topo>& children() const { return children_; }

  // 1-based child access.
  const Topo& child(std::size_t i) const {
    if (i < 1 || i > children_.size()) {
      throw AddressError("child index " + std::to_string(i) +
                         " out of range for arity " +
                         std::to_string(children_.size()));
    }
    return children_[i - 1];
  }

  friend bool operator==(const Topo&, const Topo&) = default;

 private:
  std::vector<Topo> children_;
};

// Position of a node: the 1-based child indices followed from the root.
// The empty address names the root.
class Addr {
 public:
  Addr() = default;
  Addr(std::initializer_list<std::size_t> indices) : indices_(indices) {}
  explicit Addr(std::vector<std::size_t> indices)
      : indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t depth() const { return indices_.size(); }
  bool is_root() const { return indices_.empty(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }

  Addr child(std::size_t i) const {
    Addr a = *this;
    a.indices_.push_back(i);
    return a;
  }

  Addr concat(const Addr& suffix) const {
    Addr a = *this;
    a.indices_.insert(a.indices_.end(), suffix.indices_.begin(),
                      suffix.indices_.end());
    return a;
  }

  // Address with the first `n` indices removed.
  Addr drop_prefix(std::size_t n) const {
    return Addr(std::vector<std::size_t>(indices_.begin() + n, indices_.end()));
  }

  // Prefix (non-strict): the root is a prefix of every address.
  bool is_prefix_of(const Addr& other) const {
    return indices_.size() <= other.indices_.size() &&
           std::equal(indices_.begin(), indices_.end(),
                      other.indices_.begin());
  }

  // Dot-joined indices, "." for the root.
  std::string to_string() const {
    if (indices_.empty()) return ".";
    std::string out;
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k > 0) out.push_back('.');
      out += std::to_string(indices_[k]);
    }
    return out;
  }

  static Addr parse(std::string_view text) {
    if (text == "." || text == "") return Addr();
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t dot = std::min(text.find('.', start), text.size());
      const std::string_view part = text.substr(start, dot - start);
      std::size_t v = 0;
      if (part.empty()) throw ParseError("invalid address '" + std::string(text) + "'");
      for (char c : part) {
        if (c < '0' || c > '9') {
          throw ParseError("invalid address '" + std::string(text) + "'");
        }
        v = v * 10 + static_cast<std::size_t>(c - '0');
      }
      if (v == 0) throw ParseError("address indices are 1-based: '" + std::string(text) + "'");
      out.push_back(v);
      start = dot + 1;
    }
    return Addr(std::move(out));
  }

  friend auto operator<=>(const Addr&, const Addr&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Addr& a) {
    return os << a.to_string();
  }

 private:
  std::vector<std::size_t> indices_;
};

inline bool is_valid_addr(const Topo& t, const Addr& a) {
  const Topo* cur = &t;
  for (std::size_t i : a.indices()) {
    if (i < 1 || i > cur->arity()) return false;
    cur = &cur->children()[i - 1];
  }
  return true;
}

// The sub-topology rooted at `a`. Throws AddressError if `a` is not in `t`.
inline const Topo& subtree(const Topo& t, const Addr& a) {
  const Topo* cur = &t;
  for (std::size_t i : a.indices()) {
    if (i < 1 || i > cur->arity()) {
      throw AddressError("address " + a.to_string() + " not in topology");
    }
    cur = &cur->children()[i - 1];
  }
  return *cur;
}

inline std::size_t leaf_count(const Topo& t) {
  if (t.is_leaf()) return 1;
  std::size_t n = 0;
  for (const Topo& c : t.children()) n += leaf_count(c);
  return n;
}

inline std::size_t node_count(const Topo& t) {
  std::size_t n = 1;
  for (const Topo& c : t.children()) n += node_count(c);
  return n;
}

// Number of edges on the longest root-to-leaf path.
inline std::size_t height(const Topo& t) {
  std::size_t h = 0;
  for (const Topo& c : t.children()) h = std::max(h, height(c) + 1);
  return h;
}

inline std::size_t max_arity(const Topo& t) {
  std::size_t d = t.arity();
  for (const Topo& c : t.children()) d = std::max(d, max_arity(c));
  return d;
}

namespace detail {
inline void collect_addresses(const Topo& t, const Addr& at, bool leaves_only,
                              std::vector<Addr>& out) {
  if (!leaves_only || t.is_leaf()) out.push_back(at);
  for (std::size_t i = 1; i <= t.arity(); ++i) {
    collect_addresses(t.children()[i - 1], at.child(i), leaves_only, out);
  }
}
}  // namespace detail

// Every node address, in pre-order (parents before children, children left to
// right). Prefix-closed by construction.
inline std::vector<Addr> addresses(const Topo& t) {
  std::vector<Addr> out;
  detail::collect_addresses(t, Addr(), false, out);
  return out;
}

// Leaf addresses, left to right.
inline std::vector<Addr> leaf_addresses(const Topo& t) {
  std::vector<Addr> out;
  detail::collect_addresses(t, Addr(), true, out);
  return out;
}

inline bool is_leaf_addr(const Topo& t, const Addr& a) {
  return subtree(t, a).is_leaf();
}

// Every internal node has `d` children and every leaf sits at depth `levels`.
inline Topo complete_dary(std::size_t d, std::size_t levels) {
  if (d < 2) throw StructureError("complete d-ary topology needs d >= 2");
  if (levels == 0) return Topo::leaf();
  return Topo::node(std::vector<Topo>(d, complete_dary(d, levels - 1)));
}

inline std::string to_string(const Topo& t) {
  if (t.is_leaf()) return "*";
  std::string out = "[";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(t.children()[i]);
  }
  return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Topo& t) {
  return os << to_string(t);
}

namespace detail {
class TopoParser {
 public:
  explicit TopoParser(std::string_view text) : text_(text) {}

  Topo parse_all() {
    Topo t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  Topo parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '*') {
      ++pos_;
      return Topo::leaf();
    }
    if (text_[pos_] != '[') fail("expected '*' or '['");
    ++pos_;
    std::vector<Topo> children;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      fail("internal node with no children");
    }
    while (true) {
      children.push_back(parse());
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated '['");
      if (text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (text_[pos_] == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']'");
    }
    return Topo::node(std::move(children));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("topology: " + why + " at offset " + std::to_string(pos_) +
                     " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};
}  // namespace detail

// Parses `*` | `[t1, t2, ...]`.
inline Topo parse_topo(std::string_view text) {
  return detail::TopoParser(text).parse_all();
}

}  // namespace pifotree
