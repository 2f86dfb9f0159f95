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
#include <optional>
#include <string>
#include <vector>

#include "pifotree/pifotree.hpp"

namespace pifotree::testing {

// Departures inside the saturated window: from the first tick after which a
// packet is still waiting, up to and including the last arrival. Returned in
// departure order.
inline std::vector<DepartureRecord> saturated_departures(
    const std::vector<DepartureRecord>& records) {
  std::vector<DepartureRecord> out;
  if (records.empty()) return out;
  Time last_arrival = records.front().arrival;
  for (const DepartureRecord& r : records) last_arrival = std::max(last_arrival, r.arrival);
  std::optional<Time> start;
  for (const DepartureRecord& pop : records) {
    for (const DepartureRecord& q : records) {
      if (q.arrival <= pop.departure && pop.departure < q.departure) {
        start = pop.departure;
        break;
      }
    }
    if (start) break;
  }
  if (!start) return out;
  for (const DepartureRecord& r : records) {
    if (*start <= r.departure && r.departure <= last_arrival) out.push_back(r);
  }
  return out;
}

// Per-flow counts over consecutive full windows of `width` departures.
inline std::vector<std::map<std::string, int>> window_counts(
    const std::vector<DepartureRecord>& records, std::size_t width) {
  std::vector<std::map<std::string, int>> out;
  for (std::size_t k = 0; k + width <= records.size(); k += width) {
    std::map<std::string, int> counts;
    for (std::size_t i = k; i < k + width; ++i) ++counts[records[i].flow];
    out.push_back(std::move(counts));
  }
  return out;
}

// True when every count in every window is within `slack` of `expected`.
inline bool windows_within(const std::vector<std::map<std::string, int>>& windows,
                           const std::map<std::string, int>& expected, int slack) {
  for (const auto& w : windows) {
    for (const auto& [flow, want] : expected) {
      const auto it = w.find(flow);
      const int got = it == w.end() ? 0 : it->second;
      if (got < want - slack || got > want + slack) return false;
    }
  }
  return true;
}

// Checks that no packet departed while a packet of a strictly preferred flow
// was waiting. `preference` lists flows from most to least preferred.
inline bool respects_priority(const std::vector<DepartureRecord>& records,
                              const std::vector<std::string>& preference) {
  std::map<std::string, std::size_t> level;
  for (std::size_t i = 0; i < preference.size(); ++i) level[preference[i]] = i;
  for (const DepartureRecord& pop : records) {
    for (const DepartureRecord& q : records) {
      if (q.arrival <= pop.departure && pop.departure < q.departure &&
          level.at(q.flow) < level.at(pop.flow)) {
        return false;
      }
    }
  }
  return true;
}

// Every trace packet departs exactly once, never before it arrives, and
// departures are at least one tick apart.
inline bool conserves(const std::vector<TraceRecord>& trace,
                      const std::vector<DepartureRecord>& records, const Rational& rate) {
  if (trace.size() != records.size()) return false;
  std::map<std::uint64_t, const TraceRecord*> by_id;
  for (const TraceRecord& r : trace) by_id[r.id] = &r;
  const Rational tick = Rational(1) / rate;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DepartureRecord& d = records[i];
    const auto it = by_id.find(d.id);
    if (it == by_id.end()) return false;
    if (it->second->flow != d.flow || it->second->arrival != d.arrival) return false;
    if (d.departure < d.arrival) return false;
    if (i > 0 && d.departure < records[i - 1].departure + tick) return false;
    by_id.erase(it);
  }
  return by_id.empty();
}

}  // namespace pifotree::testing
