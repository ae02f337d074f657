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

#include "thzlink/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace thzlink {
namespace cli {
namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "thz.alpha", "thz.mu", "thz.omega", "thz.freq_ghz", "thz.distance_m", "thz.gain_tx_dbi",
      "thz.gain_rx_dbi", "thz.bandwidth_ghz",
      "rf.alpha", "rf.mu", "rf.omega", "rf.freq_ghz", "rf.distance_m", "rf.gain_tx_dbi",
      "rf.gain_rx_dbi", "rf.bandwidth_mhz",
      "atmosphere.temperature_k", "atmosphere.humidity_percent", "atmosphere.pressure_pa",
      "pointing.aperture_radius_cm", "pointing.normalized_beamwidth", "pointing.sigma_s_cm",
      "power.tx_dbm",
      "noise.mode", "noise.thz_dbm", "noise.rf_dbm", "noise.psd_dbm_hz", "noise.figure_db",
      "modulation.p", "modulation.q",
      "metric.gamma_th_db",
      "link.total_distance_m",
      "sweep.variable", "sweep.from", "sweep.to", "sweep.points", "sweep.grid", "sweep.metrics",
      "sweep.methods", "sweep.include_direct",
      "mc.samples", "mc.seed", "mc.streams", "mc.threads",
  };
  return keys;
}

struct KvMap {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  std::string str(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double num(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    try {
      size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("config: malformed number for key '" + k + "': " + it->second);
    }
  }
  std::uint64_t u64(const std::string& k, std::uint64_t dflt) const {
    auto it = kv.find(k);
    if (it == kv.end()) return dflt;
    try {
      return std::stoull(it->second);
    } catch (const std::exception&) {
      throw std::runtime_error("config: malformed integer for key '" + k + "': " + it->second);
    }
  }
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

KvMap parse_kv(const std::string& text) {
  KvMap out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + " is not 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) throw std::runtime_error("config: unknown key '" + key + "'");
    out.kv[key] = val;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

ParsedConfig from_kv(const KvMap& m) {
  ParsedConfig out;
  auto& in = out.inputs;
  in.thz_fading = {m.num("thz.alpha", 2.0), m.num("thz.mu", 1.0), m.num("thz.omega", 1.0)};
  in.rf_fading = {m.num("rf.alpha", 2.0), m.num("rf.mu", 1.0), m.num("rf.omega", 1.0)};

  double r1 = m.num("pointing.aperture_radius_cm", 10.0) / 100.0;
  double ratio = m.num("pointing.normalized_beamwidth", 6.0);
  in.pointing = {ratio * r1, r1, m.num("pointing.sigma_s_cm", 8.0) / 100.0};
  in.pointing.validate();  // cites the w_z / r_1 >= 6 bound

  double p_dbm = m.num("power.tx_dbm", 10.0);
  in.thz.f_hz = m.num("thz.freq_ghz", 275.0) * 1e9;
  in.thz.d_m = m.num("thz.distance_m", 30.0);
  in.thz.g_t_dbi = m.num("thz.gain_tx_dbi", 55.0);
  in.thz.g_r_dbi = m.num("thz.gain_rx_dbi", 55.0);
  in.thz.temperature_k = m.num("atmosphere.temperature_k", 296.0);
  in.thz.humidity_percent = m.num("atmosphere.humidity_percent", 50.0);
  in.thz.pressure_pa = m.num("atmosphere.pressure_pa", 101325.0);
  in.thz.tx_power_dbm = p_dbm;

  in.rf.f_hz = m.num("rf.freq_ghz", 6.0) * 1e9;
  in.rf.d_m = m.num("rf.distance_m", 30.0);
  in.rf.g_t_dbi = m.num("rf.gain_tx_dbi", 25.0);
  in.rf.g_r_dbi = m.num("rf.gain_rx_dbi", 25.0);
  in.rf.tx_power_dbm = p_dbm;

  std::string mode = m.str("noise.mode", "stated");
  if (mode == "stated") {
    in.thz.noise_power_dbm = m.num("noise.thz_dbm", -69.4);
    in.rf.noise_power_dbm = m.num("noise.rf_dbm", -104.4);
  } else if (mode == "computed") {
    double psd = m.num("noise.psd_dbm_hz", -174.0);
    double nf = m.num("noise.figure_db", 5.0);
    double bw1 = m.num("thz.bandwidth_ghz", 10.0) * 1e9;
    double bw2 = m.num("rf.bandwidth_mhz", 20.0) * 1e6;
    in.thz.noise_power_dbm = psd + 10.0 * std::log10(bw1) + nf;
    in.rf.noise_power_dbm = psd + 10.0 * std::log10(bw2) + nf;
  } else {
    throw std::runtime_error("config: noise.mode must be 'stated' or 'computed'");
  }

  auto& sw = out.sweep;
  std::string var = m.str("sweep.variable", "tx_power_dbm");
  if (var == "tx_power_dbm") sw.variable = SweepSpec::Variable::tx_power_dbm;
  else if (var == "gamma_th_db") sw.variable = SweepSpec::Variable::gamma_th_db;
  else if (var == "distance_split") sw.variable = SweepSpec::Variable::distance_split;
  else if (var == "normalized_beamwidth") sw.variable = SweepSpec::Variable::normalized_beamwidth;
  else throw std::runtime_error("config: unknown sweep.variable '" + var + "'");

  if (m.has("sweep.grid")) {
    for (const auto& tok : split_list(m.str("sweep.grid", ""))) {
      try {
        sw.grid.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("config: malformed number in sweep.grid: " + tok);
      }
    }
  } else {
    double from = m.num("sweep.from", 0.0), to = m.num("sweep.to", 20.0);
    int points = static_cast<int>(m.num("sweep.points", 5.0));
    if (points < 1) throw std::runtime_error("config: sweep.points must be >= 1");
    for (int i = 0; i < points; ++i)
      sw.grid.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
  }

  sw.metrics.clear();
  for (const auto& tok : split_list(m.str("sweep.metrics", "outage"))) {
    if (tok == "outage") sw.metrics.push_back(Metric::outage);
    else if (tok == "avg_snr") sw.metrics.push_back(Metric::avg_snr);
    else if (tok == "aof") sw.metrics.push_back(Metric::aof);
    else if (tok == "capacity") sw.metrics.push_back(Metric::capacity);
    else if (tok == "ber") sw.metrics.push_back(Metric::ber);
    else throw std::runtime_error("config: unknown metric '" + tok + "'");
  }
  sw.methods.clear();
  for (const auto& tok : split_list(m.str("sweep.methods", "closed"))) {
    if (tok == "closed") sw.methods.push_back(Method::closed);
    else if (tok == "quadrature") sw.methods.push_back(Method::quadrature);
    else if (tok == "mc") sw.methods.push_back(Method::mc);
    else throw std::runtime_error("config: unknown method '" + tok + "'");
  }

  sw.mc_samples = m.u64("mc.samples", 1000000);
  sw.seed = m.u64("mc.seed", 1);
  sw.mc_streams = static_cast<int>(m.u64("mc.streams", 16));
  sw.threads = static_cast<int>(m.u64("mc.threads", 0));
  sw.gamma_th_db = m.num("metric.gamma_th_db", 4.0);
  sw.total_distance_m = m.num("link.total_distance_m", 80.0);
  sw.include_direct = m.str("sweep.include_direct", "false") == "true";
  sw.mod = {m.num("modulation.p", 1.0), m.num("modulation.q", 1.0)};
  sw.validate();
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (grid.empty()) throw std::runtime_error("sweep: grid must be non-empty");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::runtime_error("sweep: grid must be strictly increasing");
  if (metrics.empty()) throw std::runtime_error("sweep: no metrics selected");
  if (methods.empty()) throw std::runtime_error("sweep: no methods selected");
  mod.validate();
}

channel::Scenario ScenarioInputs::scenario() const {
  return channel::make_scenario(thz, thz_fading, pointing, rf, rf_fading);
}

channel::Scenario ScenarioInputs::at(SweepSpec::Variable var, double value,
                                     double total_distance) const {
  ScenarioInputs tmp = *this;
  switch (var) {
    case SweepSpec::Variable::tx_power_dbm:
      tmp.thz.tx_power_dbm = value;
      tmp.rf.tx_power_dbm = value;
      break;
    case SweepSpec::Variable::gamma_th_db:
      break;  // threshold is applied by the metric, not the channel
    case SweepSpec::Variable::distance_split:
      if (!(value > 0.0) || !(value < total_distance))
        throw std::domain_error("distance_split: point must lie inside (0, total)");
      tmp.thz.d_m = value;
      tmp.rf.d_m = total_distance - value;
      break;
    case SweepSpec::Variable::normalized_beamwidth:
      tmp.pointing.w_z = value * tmp.pointing.r_1;
      break;
  }
  return tmp.scenario();
}

ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ParsedConfig parse_config_text(const std::string& text) { return from_kv(parse_kv(text)); }

std::string default_config_text() {
  return R"(# thzlink default configuration
thz.alpha = 2
thz.mu = 1
thz.omega = 1
thz.freq_ghz = 275
thz.distance_m = 30
thz.gain_tx_dbi = 55
thz.gain_rx_dbi = 55
thz.bandwidth_ghz = 10
rf.alpha = 2
rf.mu = 1
rf.omega = 1
rf.freq_ghz = 6
rf.distance_m = 30
rf.gain_tx_dbi = 25
rf.gain_rx_dbi = 25
rf.bandwidth_mhz = 20
atmosphere.temperature_k = 296
atmosphere.humidity_percent = 50
atmosphere.pressure_pa = 101325
pointing.aperture_radius_cm = 10
pointing.normalized_beamwidth = 6
pointing.sigma_s_cm = 8
power.tx_dbm = 10
noise.mode = stated
noise.thz_dbm = -69.4
noise.rf_dbm = -104.4
noise.psd_dbm_hz = -174
noise.figure_db = 5
modulation.p = 1
modulation.q = 1
metric.gamma_th_db = 4
)";
}

std::string preset_config_text(const std::string& name) {
  // Geometry shared by the relay-versus-direct comparisons: 45 m THz hop,
  // 35 m RF hop (80 m end to end, inside the 30-50 m THz design range).
  static const std::map<std::string, std::string> presets = {
      {"fig2a", R"(# outage vs transmit power; sub-unity clustering on the THz hop
thz.alpha = 2
thz.mu = 0.5
rf.alpha = 2
rf.mu = 1
pointing.sigma_s_cm = 8
thz.distance_m = 30
rf.distance_m = 30
metric.gamma_th_db = 4
sweep.variable = tx_power_dbm
sweep.from = -10
sweep.to = 20
sweep.points = 7
sweep.metrics = outage
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
      {"fig2b", R"(# outage vs transmit power; strongly non-linear THz fading
thz.alpha = 1
thz.mu = 1
rf.alpha = 2
rf.mu = 4
pointing.sigma_s_cm = 8
thz.distance_m = 30
rf.distance_m = 30
metric.gamma_th_db = 4
sweep.variable = tx_power_dbm
sweep.from = -10
sweep.to = 20
sweep.points = 7
sweep.metrics = outage
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
      {"fig3a", R"(# average SNR vs transmit power
thz.alpha = 2
thz.mu = 4
rf.alpha = 2
rf.mu = 1
pointing.sigma_s_cm = 15
thz.distance_m = 45
rf.distance_m = 35
sweep.variable = tx_power_dbm
sweep.from = 0
sweep.to = 30
sweep.points = 7
sweep.metrics = avg_snr,aof
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
      {"fig3b", R"(# relay vs direct links, average SNR
thz.alpha = 2
thz.mu = 4
rf.alpha = 2
rf.mu = 1
pointing.sigma_s_cm = 15
thz.distance_m = 45
rf.distance_m = 35
link.total_distance_m = 80
sweep.variable = tx_power_dbm
sweep.from = 0
sweep.to = 30
sweep.points = 7
sweep.metrics = avg_snr
sweep.methods = closed,quadrature,mc
sweep.include_direct = true
mc.samples = 1000000
)"},
      {"fig4a", R"(# ergodic capacity vs transmit power
thz.alpha = 2
thz.mu = 4
rf.alpha = 2
rf.mu = 1
pointing.sigma_s_cm = 15
thz.distance_m = 45
rf.distance_m = 35
sweep.variable = tx_power_dbm
sweep.from = 0
sweep.to = 30
sweep.points = 7
sweep.metrics = capacity
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
      {"fig4b", R"(# relay vs direct links, capacity and average SNR
thz.alpha = 2
thz.mu = 1
rf.alpha = 2
rf.mu = 4
pointing.sigma_s_cm = 15
thz.distance_m = 45
rf.distance_m = 35
link.total_distance_m = 80
sweep.variable = tx_power_dbm
sweep.from = 0
sweep.to = 30
sweep.points = 7
sweep.metrics = capacity,avg_snr
sweep.methods = closed,quadrature,mc
sweep.include_direct = true
mc.samples = 1000000
)"},
      {"fig5a", R"(# average BER vs transmit power
thz.alpha = 2
thz.mu = 1
rf.alpha = 2
rf.mu = 4
pointing.sigma_s_cm = 15
thz.distance_m = 45
rf.distance_m = 35
sweep.variable = tx_power_dbm
sweep.from = -20
sweep.to = 10
sweep.points = 7
sweep.metrics = ber
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
      {"fig5b", R"(# average BER vs relay position, 80 m end to end
thz.alpha = 2
thz.mu = 1
rf.alpha = 2
rf.mu = 4
pointing.sigma_s_cm = 15
link.total_distance_m = 80
power.tx_dbm = 0
sweep.variable = distance_split
sweep.grid = 10,20,30,40,50,60,70
sweep.metrics = ber
sweep.methods = closed,quadrature,mc
mc.samples = 1000000
)"},
  };
  auto it = presets.find(name);
  if (it == presets.end()) throw std::out_of_range("unknown preset '" + name + "'");
  return it->second;
}

std::vector<std::string> preset_names() {
  return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b"};
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::outage: return "outage";
    case Metric::avg_snr: return "avg_snr";
    case Metric::aof: return "aof";
    case Metric::capacity: return "capacity";
    case Metric::ber: return "ber";
  }
  return "?";
}

std::string method_name(Method m) {
  switch (m) {
    case Method::closed: return "closed";
    case Method::quadrature: return "quadrature";
    case Method::mc: return "mc";
  }
  return "?";
}

}  // namespace cli
}  // namespace thzlink
