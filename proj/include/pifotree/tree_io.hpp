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
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/tree.hpp"

namespace pifotree {

using PacketLabeler = std::function<std::string(const Packet&)>;

inline std::string default_label(const Packet& p) {
  return p.flow + std::to_string(p.id);
}

// Figure-style rendering: each PIFO is listed with its head on the right,
// e.g. `[2,2,1,2,1]([P2,P1],[B3,B2,B1])`.
inline std::string to_debug_string(const PifoTree& q,
                                   const PacketLabeler& label = default_label) {
  std::string out = "[";
  if (q.is_leaf()) {
    auto entries = q.packets().entries();
    std::reverse(entries.begin(), entries.end());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k > 0) out += ",";
      out += label(entries[k].value);
    }
    return out + "]";
  }
  auto entries = q.indices().entries();
  std::reverse(entries.begin(), entries.end());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (k > 0) out += ",";
    out += std::to_string(entries[k].value);
  }
  out += "](";
  for (std::size_t i = 0; i < q.children().size(); ++i) {
    if (i > 0) out += ",";
    out += to_debug_string(q.children()[i], label);
  }
  return out + ")";
}

// Figure-style rendering of a packet sequence given in pop order: the first
// popped element is written rightmost.
inline std::string head_right(const std::vector<Packet>& pop_order,
                              const PacketLabeler& label = default_label) {
  std::string out;
  for (auto it = pop_order.rbegin(); it != pop_order.rend(); ++it) {
    if (!out.empty()) out += ",";
    out += label(*it);
  }
  return out;
}

// JSON tree dump. Queue contents are listed head first:
//   leaf:     {"leaf": [{"id": 1, "flow": "A", "arrival": "0", "size": 1,
//                        "rank": "3/2"}, ...]}
//   internal: {"pifo": [{"index": 2, "rank": "1"}, ...],
//              "children": [<tree>, ...]}
inline nlohmann::json tree_to_json(const PifoTree& q) {
  nlohmann::json j;
  if (q.is_leaf()) {
    j["leaf"] = nlohmann::json::array();
    for (const auto& e : q.packets().entries()) {
      j["leaf"].push_back({{"id", e.value.id},
                           {"flow", e.value.flow},
                           {"arrival", e.value.arrival.to_string()},
                           {"size", e.value.size},
                           {"rank", e.rank.to_string()}});
    }
    return j;
  }
  j["pifo"] = nlohmann::json::array();
  for (const auto& e : q.indices().entries()) {
    j["pifo"].push_back({{"index", e.value}, {"rank", e.rank.to_string()}});
  }
  j["children"] = nlohmann::json::array();
  for (const PifoTree& c : q.children()) j["children"].push_back(tree_to_json(c));
  return j;
}

namespace detail {
inline Rank json_rank(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Rank(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw ParseError("tree dump: rank must be a string or non-negative integer");
}
}  // namespace detail

// Inverse of tree_to_json. Entries are pushed in listed order, so equal ranks
// keep their listed order. "arrival", "size" and "flow" are optional.
inline PifoTree tree_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("tree dump: expected an object");
  if (j.contains("leaf")) {
    Pifo<Packet> p;
    for (const auto& e : j.at("leaf")) {
      Packet pkt;
      pkt.id = e.at("id").get<std::uint64_t>();
      pkt.flow = e.value("flow", std::string());
      if (e.contains("arrival")) pkt.arrival = detail::json_rank(e.at("arrival"));
      pkt.size = e.value("size", std::uint64_t{1});
      p.push(std::move(pkt), detail::json_rank(e.at("rank")));
    }
    return PifoTree::leaf(std::move(p));
  }
  if (!j.contains("children")) {
    throw ParseError("tree dump: node needs \"leaf\" or \"children\"");
  }
  std::vector<PifoTree> children;
  for (const auto& c : j.at("children")) children.push_back(tree_from_json(c));
  Pifo<std::size_t> p;
  if (j.contains("pifo")) {
    for (const auto& e : j.at("pifo")) {
      p.push(e.at("index").get<std::size_t>(), detail::json_rank(e.at("rank")));
    }
  }
  return PifoTree::internal(std::move(children), std::move(p));
}

inline PifoTree parse_tree_dump(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree dump: ") + e.what());
  }
  try {
    return tree_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree dump: ") + e.what());
  }
}

// Human-readable well-formedness / snapshot / flush summary used by the
// `check` command.
inline std::string check_report(const PifoTree& q) {
  std::ostringstream os;
  const bool wf = q.is_well_formed();
  os << "topology: " << to_string(q.shape()) << "\n";
  os << "size: " << q.size() << "\n";
  os << "well-formed: " << (wf ? "yes" : "no") << "\n";
  os << "tree (head right): " << to_debug_string(q) << "\n";
  os << "snap (pop order per leaf):";
  for (const auto& leaf : q.snap()) {
    os << " [";
    for (std::size_t k = 0; k < leaf.size(); ++k) {
      os << (k > 0 ? "," : "") << default_label(leaf[k]);
    }
    os << "]";
  }
  os << "\n";
  if (wf) {
    os << "flush (pop order):";
    for (const Packet& p : q.flush()) os << " " << default_label(p);
    os << "\n";
  } else {
    os << "flush: undefined (tree is not well-formed)\n";
  }
  return os.str();
}

}  // namespace pifotree
