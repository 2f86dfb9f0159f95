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
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pifotree/control.hpp"
#include "pifotree/embedding.hpp"
#include "pifotree/errors.hpp"
#include "pifotree/packet.hpp"
#include "pifotree/policies.hpp"
#include "pifotree/rational.hpp"

namespace pifotree {

struct TraceRecord {
  Time arrival;
  std::string flow;
  std::uint64_t size = 1;
  std::uint64_t id = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Trace CSV: `arrival_s,flow,size[,id]` per line. Lines starting with '#' are
// comments and an optional `arrival_s,...` column header is skipped. Missing
// ids are assigned 1, 2, ... in file order; explicit ids must be unique.
// Arrivals must be non-decreasing.
inline std::vector<TraceRecord> parse_trace(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::vector<TraceRecord> out;
  std::set<std::uint64_t> ids;
  int lineno = 0;
  bool explicit_ids = false;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("arrival_s", 0) == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(detail::trim(col));
    if (cols.size() < 3 || cols.size() > 4) {
      throw ParseError("expected 'arrival_s,flow,size[,id]'", lineno);
    }
    TraceRecord r;
    try {
      r.arrival = Rational::parse(cols[0]);
      const Rational size = Rational::parse(cols[2]);
      if (!size.is_integer() || size.is_zero()) {
        throw ParseError("size must be a positive integer");
      }
      r.size = static_cast<std::uint64_t>(size.num());
      if (cols.size() == 4) {
        const Rational id = Rational::parse(cols[3]);
        if (!id.is_integer()) throw ParseError("id must be an integer");
        r.id = static_cast<std::uint64_t>(id.num());
      }
    } catch (const ParseError& err) {
      throw ParseError(err.what(), lineno);
    }
    if (cols[1].empty()) throw ParseError("empty flow label", lineno);
    r.flow = cols[1];
    if (out.empty()) {
      explicit_ids = cols.size() == 4;
    } else if (explicit_ids != (cols.size() == 4)) {
      throw ParseError("either every record carries an id or none does", lineno);
    }
    if (!explicit_ids) r.id = out.size() + 1;
    if (!out.empty() && r.arrival < out.back().arrival) {
      throw ParseError("arrival times must be non-decreasing", lineno);
    }
    if (!ids.insert(r.id).second) {
      throw ParseError("duplicate packet id " + std::to_string(r.id), lineno);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string serialize(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  os << "# pifotree-trace v1\n";
  os << "arrival_s,flow,size,id\n";
  for (const TraceRecord& r : trace) {
    os << r.arrival.to_decimal() << "," << r.flow << "," << r.size << ","
       << r.id << "\n";
  }
  return os.str();
}

struct DepartureRecord {
  std::uint64_t id = 0;
  std::string flow;
  Time arrival;
  Time departure;

  friend bool operator==(const DepartureRecord&, const DepartureRecord&) = default;
};

// Runs `c` against `trace` in virtual time. Pops happen at k / line_rate for
// k = 1, 2, ... whenever the tree is non-empty; a push due at the same
// instant as a pop is processed first. Records are in departure order.
template <typename State>
std::vector<DepartureRecord> run_simulation(Control<State> c,
                                            const std::vector<TraceRecord>& trace,
                                            const Rational& line_rate) {
  if (line_rate.is_zero()) throw ContractError("line rate must be positive");
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].arrival < trace[i - 1].arrival) {
      throw ContractError("trace arrivals must be non-decreasing");
    }
  }
  std::vector<DepartureRecord> out;
  out.reserve(trace.size());
  std::size_t next = 0;
  std::int64_t tick = 0;
  while (next < trace.size() || c.size() > 0) {
    if (c.size() == 0) {
      // Idle: jump to the first tick at or after the next arrival.
      const std::int64_t due = (trace[next].arrival * line_rate).ceil();
      tick = std::max(tick + 1, due);
    } else {
      ++tick;
    }
    const Time now = Rational(tick) / line_rate;
    while (next < trace.size() && trace[next].arrival <= now) {
      const TraceRecord& r = trace[next++];
      c.push(Packet{r.id, r.flow, r.arrival, r.size});
    }
    if (auto pkt = c.pop()) {
      out.push_back({pkt->id, pkt->flow, pkt->arrival, now});
    }
  }
  return out;
}

inline std::vector<DepartureRecord> run_simulation(const PolicyFile& policy,
                                                   const std::vector<TraceRecord>& trace,
                                                   const Rational& line_rate) {
  for (const TraceRecord& r : trace) {
    if (!policy.spec.flows.count(r.flow)) {
      throw StructureError("trace packet " + std::to_string(r.id) +
                           " has unknown flow '" + r.flow + "'");
    }
  }
  return run_simulation(make_control(policy), trace, line_rate);
}

inline std::string departures_csv(const std::vector<DepartureRecord>& records) {
  std::ostringstream os;
  os << "# pifotree-departures v1\n";
  os << "id,flow,arrival_s,departure_s\n";
  for (const DepartureRecord& r : records) {
    os << r.id << "," << r.flow << "," << r.arrival.to_decimal() << ","
       << r.departure.to_decimal() << "\n";
  }
  return os.str();
}

inline std::vector<DepartureRecord> parse_departures(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  std::vector<DepartureRecord> out;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line.rfind("id,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(detail::trim(col));
    if (cols.size() != 4) {
      throw ParseError("expected 'id,flow,arrival_s,departure_s'", lineno);
    }
    try {
      const Rational id = Rational::parse(cols[0]);
      out.push_back({static_cast<std::uint64_t>(id.num()), cols[1],
                     Rational::parse(cols[2]), Rational::parse(cols[3])});
    } catch (const ParseError& err) {
      throw ParseError(err.what(), lineno);
    }
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace pifotree
