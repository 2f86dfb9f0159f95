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
#include <utility>
#include <vector>

#include "pifotree/rational.hpp"

namespace pifotree {

// A push-in-first-out queue: elements leave in increasing rank order, and
// elements of equal rank leave in the order they were pushed.
//
// Ties are resolved by a private insertion counter composed lexicographically
// with the rank. The counter is not part of the queue's value: two queues
// compare equal when they would release the same (element, rank) sequence.
//
// All sequences returned by this class are in pop order (head first).
template <typename T>
class Pifo {
 public:
  struct Entry {
    T value;
    Rank rank;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Pifo() = default;

  // Builds a queue holding `entries`, pushed in the given order.
  static Pifo from_entries(const std::vector<Entry>& entries) {
    Pifo p;
    for (const Entry& e : entries) p.push(e.value, e.rank);
    return p;
  }

  // O(log n). `value` is placed after every entry with rank <= `rank` and
  // before every entry with rank > `rank`.
  void push(T value, Rank rank) {
    queue_.emplace(Key{rank, next_seq_++}, std::move(value));
  }

  // Removes and returns the head, or nothing if the queue is empty.
  std::optional<T> pop() {
    if (queue_.empty()) return std::nullopt;
    auto node = queue_.extract(queue_.begin());
    return std::move(node.mapped());
  }

  const T* peek() const {
    return queue_.empty() ? nullptr : &queue_.begin()->second;
  }
  std::optional<Rank> peek_rank() const {
    if (queue_.empty()) return std::nullopt;
    return queue_.begin()->first.rank;
  }

  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }

  // Number of occurrences of `value`.
  std::size_t count(const T& value) const {
    return static_cast<std::size_t>(
        std::count_if(queue_.begin(), queue_.end(),
                      [&](const auto& kv) { return kv.second == value; }));
  }

  // Largest rank held, if any.
  std::optional<Rank> max_rank() const {
    if (queue_.empty()) return std::nullopt;
    Rank best = queue_.begin()->first.rank;
    for (const auto& [key, value] : queue_) best = std::max(best, key.rank);
    return best;
  }

  // Elements in pop order, without modifying the queue.
  std::vector<T> flush() const {
    std::vector<T> out;
    out.reserve(queue_.size());
    for (const auto& [key, value] : queue_) out.push_back(value);
    return out;
  }

  // (element, rank) pairs in pop order.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(queue_.size());
    for (const auto& [key, value] : queue_) out.push_back({value, key.rank});
    return out;
  }

  friend bool operator==(const Pifo& a, const Pifo& b) {
    return a.size() == b.size() &&
           std::equal(a.queue_.begin(), a.queue_.end(), b.queue_.begin(),
                      [](const auto& x, const auto& y) {
                        return x.first.rank == y.first.rank &&
                               x.second == y.second;
                      });
  }

 private:
  struct Key {
    Rank rank;
    std::uint64_t seq;

    friend auto operator<=>(const Key&, const Key&) = default;
  };

  std::map<Key, T> queue_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace pifotree
