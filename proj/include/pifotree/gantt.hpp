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
#include <array>
#include <cstddef>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pifotree/simulator.hpp"

namespace pifotree {

struct GanttStyle {
  double px_per_second = 40.0;
  double row_height = 8.0;
  double margin = 20.0;
  double label_width = 60.0;
};

inline constexpr std::array<std::string_view, 7> kFlowPalette = {
    "red", "skyblue", "forestgreen", "lightsalmon",
    "dodgerblue", "darkseagreen", "orchid"};

// Single capital letters map to fixed colors (A is red, B sky blue, ...);
// other labels take the remaining slots in sorted order.
inline std::map<std::string, std::string> flow_colors(
    const std::vector<DepartureRecord>& records) {
  std::map<std::string, std::string> colors;
  std::size_t next = 0;
  for (const DepartureRecord& r : records) colors.emplace(r.flow, "");
  for (auto& [flow, color] : colors) {
    if (flow.size() == 1 && flow[0] >= 'A' && flow[0] <= 'Z') {
      color = kFlowPalette[static_cast<std::size_t>(flow[0] - 'A') % kFlowPalette.size()];
    } else {
      color = kFlowPalette[next++ % kFlowPalette.size()];
    }
  }
  return colors;
}

// One bar per packet, from arrival to departure, one row per packet in
// arrival order. Each bar is a `rect.pkt` carrying its record as data-*
// attributes.
inline std::string render_gantt(const std::vector<DepartureRecord>& records,
                                const GanttStyle& style = {}) {
  std::vector<DepartureRecord> rows = records;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const DepartureRecord& a, const DepartureRecord& b) {
                     if (a.arrival != b.arrival) return a.arrival < b.arrival;
                     return a.id < b.id;
                   });
  Time end;
  for (const DepartureRecord& r : rows) end = std::max(end, r.departure);
  const double plot_w = end.to_double() * style.px_per_second;
  const double width = 2 * style.margin + style.label_width + plot_w;
  const double height = 2 * style.margin + style.row_height * static_cast<double>(rows.size());
  const auto colors = flow_colors(rows);

  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- pifotree-gantt v1 -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << width
     << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  const double x0 = style.margin + style.label_width;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const DepartureRecord& r = rows[k];
    const double x = x0 + r.arrival.to_double() * style.px_per_second;
    const double w = (r.departure - r.arrival).to_double() * style.px_per_second;
    const double y = style.margin + style.row_height * static_cast<double>(k);
    os << "<rect class=\"pkt\" data-id=\"" << r.id << "\" data-flow=\"" << r.flow
       << "\" data-arrival=\"" << r.arrival.to_decimal() << "\" data-departure=\""
       << r.departure.to_decimal() << "\" x=\"" << x << "\" y=\"" << y
       << "\" width=\"" << w << "\" height=\"" << style.row_height * 0.8
       << "\" fill=\"" << colors.at(r.flow) << "\"/>\n";
  }
  if (!rows.empty()) {
    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"10\">\n";
    double y = style.margin;
    for (const auto& [flow, color] : colors) {
      os << "<rect x=\"" << style.margin << "\" y=\"" << y
         << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>";
      os << "<text x=\"" << style.margin + 14 << "\" y=\"" << y + 9 << "\">"
         << flow << "</text>\n";
      y += 14;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_gantt(const std::vector<DepartureRecord>& records,
                       const std::string& path, const GanttStyle& style = {}) {
  write_file(path, render_gantt(records, style));
}

}  // namespace pifotree
