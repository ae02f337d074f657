// Copyright 2026 The thzlink Authors
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

#ifndef THZLINK_SWEEP_HPP
#define THZLINK_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "thzlink/config.hpp"

namespace thzlink {
namespace cli {

struct ResultTable {
  std::vector<std::string> columns;                       // first column is the grid variable
  std::vector<std::vector<std::optional<double>>> rows;   // nullopt renders as NA
  std::vector<std::string> na_reasons;                    // one per row, may be empty
};

/// Evaluates every requested (metric, method) pair on the grid.  Grid points
/// are dispatched to a worker pool; rows are emitted in grid order.
/// Unsupported combinations become NA cells with the reason recorded.
ResultTable run_sweep(const ScenarioInputs& inputs, const SweepSpec& sweep);

enum class EmitFormat { csv, json };

std::string emit(const ResultTable& table, EmitFormat format);
void emit_to_file(const ResultTable& table, EmitFormat format, const std::string& path);

/// Parses tables produced by emit(); used by the round-trip tests.
ResultTable parse_table_csv(const std::string& text);
ResultTable parse_table_json(const std::string& text);

}  // namespace cli
}  // namespace thzlink

#endif  // THZLINK_SWEEP_HPP
