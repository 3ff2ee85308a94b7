// Copyright 2026 The ldpbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Result serialization (CSV and JSON), CSV parse-back, and win tables: for
// every (dataset, protocol, epsilon, metric) group, which post-processing
// method wins the most runs and how often.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ldpbench/engine.hpp"
#include "ldpbench/error.hpp"
#include "ldpbench/types.hpp"

namespace ldpbench {

using Cells = std::vector<std::pair<CellKey, CellResult>>;

namespace internal {

// 17 significant digits round-trip any double exactly.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline Cells sorted_cells(const Cells& cells) {
  Cells out = cells;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return cell_key_less(a.first, b.first);
  });
  return out;
}

}  // namespace internal

constexpr const char* kResultsCsvHeader =
    "dataset,protocol,epsilon,pp,metric,run,value";

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

// One row per (cell, run), ordered by cell key then run index.
inline void emit_results_csv(const Cells& cells, std::ostream& out) {
  const Cells sorted = internal::sorted_cells(cells);
  out << kResultsCsvHeader << '\n';
  for (const auto& [key, cell] : sorted) {
    for (size_t run = 0; run < cell.per_run_values.size(); ++run) {
      out << key.dataset << ',' << protocol_name(key.protocol) << ','
          << internal::format_double(key.epsilon) << ',' << pp_name(key.pp)
          << ',' << metric_name(key.metric) << ',' << run << ','
          << internal::format_double(cell.per_run_values[run]) << '\n';
    }
  }
}

// Same records as the CSV plus per-cell mean and sample std.
inline void emit_results_json(const Cells& cells, std::ostream& out) {
  const Cells sorted = internal::sorted_cells(cells);
  out << "{\n  \"cells\": [";
  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto& [key, cell] = sorted[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\"dataset\": \"" << internal::json_escape(key.dataset)
        << "\", \"protocol\": \"" << protocol_name(key.protocol)
        << "\", \"epsilon\": " << internal::format_double(key.epsilon)
        << ", \"pp\": \"" << pp_name(key.pp) << "\", \"metric\": \""
        << metric_name(key.metric)
        << "\", \"mean\": " << internal::format_double(cell.mean)
        << ", \"std\": " << internal::format_double(cell.std)
        << ", \"values\": [";
    for (size_t run = 0; run < cell.per_run_values.size(); ++run) {
      if (run > 0) out << ", ";
      out << internal::format_double(cell.per_run_values[run]);
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
}

inline void write_results_csv(const Cells& cells, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("results: cannot open " + path);
  emit_results_csv(cells, out);
  if (!out) throw IoError("results: write failed for " + path);
}

inline void write_results_json(const Cells& cells, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("results: cannot open " + path);
  emit_results_json(cells, out);
  if (!out) throw IoError("results: write failed for " + path);
}

// ---------------------------------------------------------------------------
// CSV parse-back
// ---------------------------------------------------------------------------

// Reconstructs cells from an emitted CSV. Runs of a cell must form a
// contiguous 0..R-1 index range; mean and std are recomputed.
inline Cells parse_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("results: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsCsvHeader)
    throw InputError("results: unexpected header: " + line);
  // Key: dataset, protocol, epsilon, pp, metric (strings keep the exact
  // spelling; epsilon compares numerically).
  using GroupKey = std::tuple<std::string, std::string, double, std::string,
                              std::string>;
  std::map<GroupKey, std::vector<std::pair<int64_t, double>>> rows;
  int64_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = internal::split(line, ',');
    if (fields.size() != 7)
      throw InputError("results: expected 7 fields on line " +
                       std::to_string(line_number));
    double epsilon = 0;
    double value = 0;
    int64_t run = 0;
    try {
      epsilon = std::stod(fields[2]);
      value = std::stod(fields[6]);
    } catch (const std::exception&) {
      throw InputError("results: bad number on line " +
                       std::to_string(line_number));
    }
    if (!internal::parse_int64(fields[5], &run) || run < 0)
      throw InputError("results: bad run index on line " +
                       std::to_string(line_number));
    rows[{fields[0], fields[1], epsilon, fields[3], fields[4]}].emplace_back(
        run, value);
  }
  Cells cells;
  for (auto& [key, runs] : rows) {
    std::sort(runs.begin(), runs.end());
    for (size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].first != static_cast<int64_t>(i))
        throw InputError("results: runs of a cell must be 0..R-1 without "
                         "gaps or duplicates");
    }
    CellKey cell_key;
    cell_key.dataset = std::get<0>(key);
    cell_key.epsilon = std::get<2>(key);
    try {
      cell_key.protocol = parse_protocol(std::get<1>(key));
      cell_key.pp = parse_pp(std::get<3>(key));
      cell_key.metric = parse_metric(std::get<4>(key));
    } catch (const ParameterError& e) {
      // Unknown names in a results file are bad input, not a bad argument.
      throw InputError(std::string("results: ") + e.what());
    }
    CellResult cell;
    cell.per_run_values.reserve(runs.size());
    for (const auto& [run, value] : runs) cell.per_run_values.push_back(value);
    internal::cell_statistics(cell);
    cells.emplace_back(std::move(cell_key), std::move(cell));
  }
  return internal::sorted_cells(cells);
}

inline Cells load_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("results: cannot open " + path);
  return parse_results_csv(in);
}

// ---------------------------------------------------------------------------
// Win tables
// ---------------------------------------------------------------------------

struct WinTableEntry {
  std::string dataset;
  ProtocolKind protocol = ProtocolKind::kGrr;
  double epsilon = 0;
  MetricKind metric = MetricKind::kL1;
  PPKind best_pp = PPKind::kNoPP;
  int64_t wins = 0;           // win count of best_pp
  int64_t runs = 0;
  double win_fraction = 0;    // wins / runs
  double best_mean = 0;       // mean metric value of best_pp
  // Per-method win counts and means, ordered by method name.
  std::vector<std::tuple<PPKind, int64_t, double>> methods;
};

// Computes, per (dataset, protocol, epsilon, metric) group, the method
// that wins the most runs. A run's winner is the method with the strictly
// smallest value; exact ties all get the win. best_pp breaks win-count
// ties alphabetically; with by_mean the label goes to the lowest mean
// instead (ties alphabetical).
inline std::vector<WinTableEntry> win_table(const Cells& cells,
                                            bool by_mean = false) {
  using GroupKey = std::tuple<std::string, std::string, double, std::string>;
  std::map<GroupKey, std::vector<const std::pair<CellKey, CellResult>*>>
      groups;
  for (const auto& entry : cells) {
    const CellKey& key = entry.first;
    groups[{key.dataset, protocol_name(key.protocol), key.epsilon,
            metric_name(key.metric)}]
        .push_back(&entry);
  }
  std::vector<WinTableEntry> table;
  for (auto& [group_key, members] : groups) {
    std::sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return std::string(pp_name(a->first.pp)) < pp_name(b->first.pp);
    });
    for (size_t i = 1; i < members.size(); ++i) {
      if (members[i]->first.pp == members[i - 1]->first.pp)
        throw InputError("win_table: duplicate method in a group");
      if (members[i]->second.per_run_values.size() !=
          members[0]->second.per_run_values.size())
        throw InputError("win_table: ragged group (unequal run counts)");
    }
    const int64_t runs =
        static_cast<int64_t>(members[0]->second.per_run_values.size());
    if (runs == 0) throw InputError("win_table: group with zero runs");
    std::vector<int64_t> wins(members.size(), 0);
    for (int64_t run = 0; run < runs; ++run) {
      double best_value = members[0]->second.per_run_values[run];
      for (size_t i = 1; i < members.size(); ++i) {
        best_value =
            std::min(best_value, members[i]->second.per_run_values[run]);
      }
      for (size_t i = 0; i < members.size(); ++i) {
        if (members[i]->second.per_run_values[run] == best_value) ++wins[i];
      }
    }
    size_t best = 0;
    for (size_t i = 1; i < members.size(); ++i) {
      if (by_mean) {
        if (members[i]->second.mean < members[best]->second.mean) best = i;
      } else {
        if (wins[i] > wins[best]) best = i;
      }
    }
    WinTableEntry entry;
    entry.dataset = std::get<0>(group_key);
    entry.protocol = members[0]->first.protocol;
    entry.epsilon = std::get<2>(group_key);
    entry.metric = members[0]->first.metric;
    entry.best_pp = members[best]->first.pp;
    entry.wins = wins[best];
    entry.runs = runs;
    entry.win_fraction =
        static_cast<double>(wins[best]) / static_cast<double>(runs);
    entry.best_mean = members[best]->second.mean;
    for (size_t i = 0; i < members.size(); ++i) {
      entry.methods.emplace_back(members[i]->first.pp, wins[i],
                                 members[i]->second.mean);
    }
    table.push_back(std::move(entry));
  }
  return table;
}

// Plain text rendering, one line per group.
inline std::string render_win_table(const std::vector<WinTableEntry>& table) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "dataset" << std::setw(10)
      << "protocol" << std::setw(10) << "epsilon" << std::setw(8) << "metric"
      << std::setw(10) << "best" << std::setw(10) << "wins"
      << "mean\n";
  for (const WinTableEntry& entry : table) {
    std::ostringstream eps;
    eps << entry.epsilon;
    std::ostringstream frac;
    frac << entry.wins << "/" << entry.runs;
    out << std::left << std::setw(16) << entry.dataset << std::setw(10)
        << protocol_name(entry.protocol) << std::setw(10) << eps.str()
        << std::setw(8) << metric_name(entry.metric) << std::setw(10)
        << pp_name(entry.best_pp) << std::setw(10) << frac.str()
        << internal::format_double(entry.best_mean) << '\n';
  }
  return out.str();
}

}  // namespace ldpbench
