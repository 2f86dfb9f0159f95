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

#include <functional>
#include <optional>
#include <utility>

#include "pifotree/packet.hpp"
#include "pifotree/tree.hpp"

namespace pifotree {

// A scheduling policy running on a tree: the current state, the tree, and a
// scheduling transaction that picks an insertion path for every arriving
// packet (possibly updating the state).
//
// `on_pop` is an optional state update run after each successful pop. It sees
// only the released packet, so it behaves identically on any tree that
// releases the same packets.
template <typename State>
struct Control {
  using Transaction =
      std::function<std::pair<Path, State>(const State&, const Packet&)>;
  using PopHook = std::function<State(const State&, const Packet&)>;

  State state;
  PifoTree tree;
  Transaction transaction;
  PopHook on_pop;

  // Runs the transaction and pushes along the path it returns. If the path
  // does not fit the tree a StructureError is thrown and neither the state
  // nor the tree changes.
  void push(const Packet& pkt) {
    auto [path, next] = transaction(state, pkt);
    tree.push(pkt, path);
    state = std::move(next);
  }

  std::optional<Packet> pop() {
    auto pkt = tree.pop();
    if (pkt && on_pop) state = on_pop(state, *pkt);
    return pkt;
  }

  std::size_t size() const { return tree.size(); }
};

}  // namespace pifotree
