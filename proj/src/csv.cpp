// Copyright 2026 The cslab Authors
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

#include "cslab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cslab/config.hpp"

namespace cslab {

std::string format_cell(const CsvCell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", std::get<double>(cell));
  return buf;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows,
               const std::vector<std::string>& schema) {
  if (schema.empty()) throw SchemaError("csv schema has no columns");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema.size()) {
      throw SchemaError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                        " cells, schema has " + std::to_string(schema.size()));
    }
  }
  for (std::size_t c = 0; c < schema.size(); ++c) out << (c ? "," : "") << schema[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
}

void emit_csv(const std::vector<CsvRow>& rows, const std::vector<std::string>& schema,
              const std::string& path) {
  std::ostringstream buf;
  write_csv(buf, rows, schema);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << buf.str();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv out;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      out.header = std::move(cells);
      first = false;
    } else {
      out.rows.push_back(std::move(cells));
    }
  }
  return out;
}

const std::vector<std::string>& sweep_schema() {
  static const std::vector<std::string> cols{
      "point-id", "m",       "l",           "n",       "beta",            "nu",
      "power",    "metric",  "alpha",       "gamma",   "zeta",            "policy",
      "trials",   "rate-m1", "rate-m2",     "rate-m3", "wilson-low",      "wilson-high",
      "emp-atypicality", "bound-atypicality", "mean-typical-sets", "wall-ms"};
  return cols;
}

CsvRow sweep_row(const AggregateRow& r) {
  auto i = [](auto v) { return CsvCell{static_cast<std::int64_t>(v)}; };
  return {i(r.point.id),
          i(r.point.m),
          i(r.point.l),
          i(r.point.n),
          r.beta,
          r.nu,
          r.power,
          i(metric_to_int(r.metric)),
          r.alpha,
          r.gamma,
          r.zeta,
          policy_name(r.policy),
          i(r.trials),
          r.rate_m1,
          r.rate_m2,
          r.rate_m3,
          r.wilson_low,
          r.wilson_high,
          r.emp_atypicality,
          r.bound_atypicality,
          r.mean_typical_sets,
          r.wall_ms};
}

const std::vector<std::string>& tail_schema() {
  static const std::vector<std::string> cols{"k",     "lambda",    "lower-threshold",
                                             "upper-threshold", "bound", "emp-lower",
                                             "emp-upper", "trials"};
  return cols;
}

CsvRow tail_row(const TailRow& r) {
  return {static_cast<std::int64_t>(r.k), r.lambda,    r.lower_threshold, r.upper_threshold,
          r.bound,                        r.emp_lower, r.emp_upper,       static_cast<std::int64_t>(r.trials)};
}

}  // namespace cslab
