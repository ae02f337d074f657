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

#include "thzlink/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "thzlink/mc.hpp"
#include "thzlink/quadrature.hpp"

namespace thzlink {
namespace cli {
namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Cell {
  std::optional<double> value;
};

struct RowBuild {
  std::vector<std::optional<double>> cells;
  std::string na_reason;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double outage_by_quadrature(const channel::Scenario& s, double gamma_th) {
  if (gamma_th <= 0.0) return 0.0;
  // gamma = u^2 keeps the integrand bounded at the origin
  auto f = [&](double u) { return channel::e2e_pdf(u * u, s) * 2.0 * u; };
  return quad::integrate(f, 0.0, std::sqrt(gamma_th), 1e-9).value;
}

}  // namespace

ResultTable run_sweep(const ScenarioInputs& inputs, const SweepSpec& sweep) {
  sweep.validate();
  ResultTable table;
  std::string var_name;
  switch (sweep.variable) {
    case SweepSpec::Variable::tx_power_dbm: var_name = "tx_power_dbm"; break;
    case SweepSpec::Variable::gamma_th_db: var_name = "gamma_th_db"; break;
    case SweepSpec::Variable::distance_split: var_name = "thz_distance_m"; break;
    case SweepSpec::Variable::normalized_beamwidth: var_name = "normalized_beamwidth"; break;
  }
  table.columns.push_back(var_name);
  for (Metric m : sweep.metrics) {
    for (Method meth : sweep.methods) {
      table.columns.push_back(metric_name(m) + "_" + method_name(meth));
      if (meth == Method::mc) {
        table.columns.push_back(metric_name(m) + "_mc_ci_low");
        table.columns.push_back(metric_name(m) + "_mc_ci_high");
      }
    }
  }
  bool direct_snr = false, direct_cap = false;
  if (sweep.include_direct) {
    for (Metric m : sweep.metrics) {
      if (m == Metric::avg_snr) direct_snr = true;
      if (m == Metric::capacity) direct_cap = true;
    }
    if (direct_snr) {
      table.columns.push_back("avg_snr_direct_thz");
      table.columns.push_back("avg_snr_direct_rf");
    }
    if (direct_cap) {
      table.columns.push_back("capacity_direct_thz");
      table.columns.push_back("capacity_direct_rf");
    }
  }

  size_t n_points = sweep.grid.size();
  std::vector<RowBuild> rows(n_points);

  auto eval_point = [&](size_t idx) {
    double x = sweep.grid[idx];
    RowBuild& row = rows[idx];
    row.cells.push_back(x);
    auto note = [&](const std::string& col, const std::string& why) {
      if (!row.na_reason.empty()) row.na_reason += "; ";
      row.na_reason += col + ": " + why;
    };

    channel::Scenario s = inputs.at(sweep.variable, x, sweep.total_distance_m);
    double gamma_th = std::pow(10.0, (sweep.variable == SweepSpec::Variable::gamma_th_db
                                          ? x
                                          : sweep.gamma_th_db) /
                                         10.0);
    mc::McOptions mc_opts;
    mc_opts.n_streams = sweep.mc_streams;
    mc_opts.threads = 1;  // point-level pool carries the parallelism

    for (size_t mi = 0; mi < sweep.metrics.size(); ++mi) {
      Metric m = sweep.metrics[mi];
      for (Method meth : sweep.methods) {
        std::string col = metric_name(m) + "_" + method_name(meth);
        std::uint64_t pseed = mix_seed(sweep.seed, idx * 8 + mi);
        try {
          switch (m) {
            case Metric::outage: {
              if (meth == Method::closed) {
                row.cells.push_back(analytic::outage_exact(s, gamma_th));
              } else if (meth == Method::quadrature) {
                row.cells.push_back(outage_by_quadrature(s, gamma_th));
              } else {
                auto e = mc::mc_outage(s, gamma_th, sweep.mc_samples, pseed, mc_opts);
                row.cells.push_back(e.mean);
                row.cells.push_back(e.ci_low);
                row.cells.push_back(e.ci_high);
              }
              break;
            }
            case Metric::avg_snr: {
              if (meth == Method::closed) {
                double v;
                try {
                  v = analytic::moment_inid(s, 1.0).total;
                } catch (const std::domain_error&) {
                  v = analytic::moment_iid(s, 1.0).total;
                }
                row.cells.push_back(v);
              } else if (meth == Method::quadrature) {
                row.cells.push_back(analytic::moment_by_quadrature(s, 1.0));
              } else {
                auto e = mc::mc_mean_snr(s, sweep.mc_samples, pseed, mc_opts);
                row.cells.push_back(e.mean);
                row.cells.push_back(e.ci_low);
                row.cells.push_back(e.ci_high);
              }
              break;
            }
            case Metric::aof: {
              if (meth == Method::closed) {
                row.cells.push_back(analytic::amount_of_fading(s));
              } else if (meth == Method::quadrature) {
                row.cells.push_back(analytic::amount_of_fading_by_quadrature(s));
              } else {
                row.cells.push_back(std::nullopt);
                row.cells.push_back(std::nullopt);
                row.cells.push_back(std::nullopt);
                note(col, "mc estimator not provided for aof; use closed or quadrature");
              }
              break;
            }
            case Metric::capacity: {
              if (meth == Method::closed) {
                double v;
                try {
                  v = analytic::capacity_relay_inid(s);
                } catch (const std::domain_error&) {
                  v = analytic::capacity_relay_iid(s);
                }
                row.cells.push_back(v);
              } else if (meth == Method::quadrature) {
                row.cells.push_back(analytic::capacity_by_quadrature(s));
              } else {
                auto e = mc::mc_capacity(s, sweep.mc_samples, pseed, mc_opts);
                row.cells.push_back(e.mean);
                row.cells.push_back(e.ci_low);
                row.cells.push_back(e.ci_high);
              }
              break;
            }
            case Metric::ber: {
              if (meth == Method::closed) {
                row.cells.push_back(analytic::ber_relay_inid(s, sweep.mod));
              } else if (meth == Method::quadrature) {
                row.cells.push_back(analytic::ber_by_quadrature(s, sweep.mod));
              } else {
                auto e = mc::mc_ber(s, sweep.mod, sweep.mc_samples, pseed, mc_opts);
                row.cells.push_back(e.mean);
                row.cells.push_back(e.ci_low);
                row.cells.push_back(e.ci_high);
              }
              break;
            }
          }
        } catch (const std::exception& ex) {
          row.cells.push_back(std::nullopt);
          if (meth == Method::mc) {
            row.cells.push_back(std::nullopt);
            row.cells.push_back(std::nullopt);
          }
          note(col, ex.what());
        }
      }
    }

    if (direct_snr || direct_cap) {
      ScenarioInputs direct = inputs;
      if (sweep.variable == SweepSpec::Variable::tx_power_dbm) {
        direct.thz.tx_power_dbm = x;
        direct.rf.tx_power_dbm = x;
      }
      direct.thz.d_m = sweep.total_distance_m;
      direct.rf.d_m = sweep.total_distance_m;
      channel::Scenario ds = direct.scenario();
      if (direct_snr) {
        try {
          row.cells.push_back(analytic::avg_snr_thz_closed(ds));
        } catch (const std::exception& ex) {
          row.cells.push_back(std::nullopt);
          note("avg_snr_direct_thz", ex.what());
        }
        try {
          row.cells.push_back(analytic::avg_snr_rf_closed(ds));
        } catch (const std::exception& ex) {
          row.cells.push_back(std::nullopt);
          note("avg_snr_direct_rf", ex.what());
        }
      }
      if (direct_cap) {
        try {
          row.cells.push_back(analytic::capacity_thz_closed(ds));
        } catch (const std::exception& ex) {
          row.cells.push_back(std::nullopt);
          note("capacity_direct_thz", ex.what());
        }
        try {
          row.cells.push_back(analytic::capacity_rf_closed(ds));
        } catch (const std::exception& ex) {
          row.cells.push_back(std::nullopt);
          note("capacity_direct_rf", ex.what());
        }
      }
    }
  };

  int threads = sweep.threads > 0 ? sweep.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n_points)));
  if (threads <= 1) {
    for (size_t i = 0; i < n_points; ++i) eval_point(i);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n_points) return;
        eval_point(i);
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& r : rows) {
    table.rows.push_back(std::move(r.cells));
    table.na_reasons.push_back(std::move(r.na_reason));
  }
  return table;
}

std::string emit(const ResultTable& table, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      out += table.columns[i];
    }
    out += ",na_reason\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
      for (size_t i = 0; i < table.rows[r].size(); ++i) {
        if (i) out += ',';
        out += table.rows[r][i] ? fmt_double(*table.rows[r][i]) : "NA";
      }
      out += ",\"" + table.na_reasons[r] + "\"\n";
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (c)
        jr.push_back(*c);
      else
        jr.push_back(nullptr);
    }
    j["rows"].push_back(jr);
  }
  j["na_reasons"] = table.na_reasons;
  return j.dump(2) + "\n";
}

void emit_to_file(const ResultTable& table, EmitFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
  out << emit(table, format);
}

ResultTable parse_table_csv(const std::string& text) {
  ResultTable t;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (quoted) {
        if (ch == '"')
          quoted = false;
        else
          cur += ch;
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(cur);
    if (header) {
      header = false;
      t.columns.assign(fields.begin(), fields.end() - 1);
      continue;
    }
    std::vector<std::optional<double>> row;
    for (size_t i = 0; i + 1 < fields.size(); ++i) {
      if (fields[i] == "NA")
        row.push_back(std::nullopt);
      else
        row.push_back(std::stod(fields[i]));
    }
    t.rows.push_back(std::move(row));
    t.na_reasons.push_back(fields.back());
  }
  return t;
}

ResultTable parse_table_json(const std::string& text) {
  ResultTable t;
  auto j = nlohmann::json::parse(text);
  for (const auto& c : j.at("columns")) t.columns.push_back(c.get<std::string>());
  for (const auto& row : j.at("rows")) {
    std::vector<std::optional<double>> r;
    for (const auto& c : row) {
      if (c.is_null())
        r.push_back(std::nullopt);
      else
        r.push_back(c.get<double>());
    }
    t.rows.push_back(std::move(r));
  }
  for (const auto& s : j.at("na_reasons")) t.na_reasons.push_back(s.get<std::string>());
  return t;
}

}  // namespace cli
}  // namespace thzlink
