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

#include <cstdint>
#include <ostream>
#include <string>

#include "pifotree/rational.hpp"

namespace pifotree {

// The scheduler treats packets as opaque; these fields exist for the
// simulator and for classification by flow.
struct Packet {
  std::uint64_t id = 0;  // unique within a run
  std::string flow;      // source label, e.g. "A"
  Time arrival;          // seconds
  std::uint64_t size = 1;

  friend bool operator==(const Packet&, const Packet&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Packet& p) {
    return os << p.flow << "#" << p.id;
  }
};

}  // namespace pifotree
