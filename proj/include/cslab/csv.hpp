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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cslab/experiments.hpp"

namespace cslab {

using CsvCell = std::variant<std::int64_t, double, std::string>;
using CsvRow = std::vector<CsvCell>;

/// Raised when a row does not fit the declared schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Doubles print with 6 significant digits; integers and strings verbatim.
std::string format_cell(const CsvCell& cell);

/// Writes the header line then one line per row. Every row must have one
/// cell per schema column.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows,
               const std::vector<std::string>& schema);
void emit_csv(const std::vector<CsvRow>& rows, const std::vector<std::string>& schema,
              const std::string& path);

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
ParsedCsv parse_csv(const std::string& text);

const std::vector<std::string>& sweep_schema();
CsvRow sweep_row(const AggregateRow& row);

const std::vector<std::string>& tail_schema();
CsvRow tail_row(const TailRow& row);

}  // namespace cslab
