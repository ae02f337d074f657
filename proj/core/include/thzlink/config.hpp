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
//
// Flat dotted key-value configuration (diff-friendly, trivially parseable).
// Unknown keys are rejected by name.

#ifndef THZLINK_CONFIG_HPP
#define THZLINK_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "thzlink/analytic.hpp"
#include "thzlink/channel.hpp"

namespace thzlink {
namespace cli {

enum class Metric { outage, avg_snr, aof, capacity, ber };
enum class Method { closed, quadrature, mc };

struct SweepSpec {
  enum class Variable { tx_power_dbm, gamma_th_db, distance_split, normalized_beamwidth };

  Variable variable = Variable::tx_power_dbm;
  std::vector<double> grid;  // non-empty, strictly increasing
  std::vector<Metric> metrics = {Metric::outage};
  std::vector<Method> methods = {Method::closed};
  std::uint64_t mc_samples = 1000000;
  std::uint64_t seed = 1;
  int mc_streams = 16;
  int threads = 0;
  double gamma_th_db = 4.0;
  double total_distance_m = 80.0;  // for distance_split sweeps
  bool include_direct = false;     // adds direct-link comparison columns
  analytic::Modulation mod = analytic::Modulation::dbpsk();

  void validate() const;
};

/// Everything needed to rebuild the scenario at any grid point.
struct ScenarioInputs {
  channel::ThzLinkBudget thz;
  channel::RfLinkBudget rf;
  channel::FadingParams thz_fading;
  channel::FadingParams rf_fading;
  channel::PointingConfig pointing;

  channel::Scenario scenario() const;
  /// Applies one sweep variable; distance_split sets the THz distance to
  /// `value` and the RF distance to `total - value`.
  channel::Scenario at(SweepSpec::Variable var, double value, double total_distance) const;
};

struct ParsedConfig {
  ScenarioInputs inputs;
  SweepSpec sweep;
};

/// Parses a key = value file; '#' starts a comment.  Unknown keys and
/// malformed values raise std::runtime_error naming the key; geometry
/// violations raise std::domain_error.
ParsedConfig parse_config(const std::string& path);

/// Same from an in-memory string (used by the preset table and tests).
ParsedConfig parse_config_text(const std::string& text);

/// Table-III-style default configuration text.
std::string default_config_text();

/// Named figure presets (fig2a ... fig5b); throws std::out_of_range for
/// unknown names.
std::string preset_config_text(const std::string& name);
std::vector<std::string> preset_names();

std::string metric_name(Metric m);
std::string method_name(Method m);

}  // namespace cli
}  // namespace thzlink

#endif  // THZLINK_CONFIG_HPP
