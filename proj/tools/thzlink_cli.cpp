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

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thzlink/analytic.hpp"
#include "thzlink/channel.hpp"
#include "thzlink/config.hpp"
#include "thzlink/mc.hpp"
#include "thzlink/meijer.hpp"
#include "thzlink/quadrature.hpp"
#include "thzlink/specfun.hpp"
#include "thzlink/sweep.hpp"

namespace {

using namespace thzlink;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> threads;
};

cli::ParsedConfig load_config(const CommonOpts& o) {
  cli::ParsedConfig cfg = o.config_path.empty() ? cli::parse_config_text(cli::default_config_text())
                                                : cli::parse_config(o.config_path);
  if (o.seed) cfg.sweep.seed = *o.seed;
  if (o.samples) cfg.sweep.mc_samples = *o.samples;
  if (o.threads) cfg.sweep.threads = *o.threads;
  return cfg;
}

void write_table(const cli::ResultTable& table, const CommonOpts& o) {
  cli::EmitFormat fmt = o.format == "json" ? cli::EmitFormat::json : cli::EmitFormat::csv;
  if (o.out_path.empty())
    std::cout << cli::emit(table, fmt);
  else
    cli::emit_to_file(table, fmt, o.out_path);
}

int cmd_absorption(const CommonOpts& o) {
  auto cfg = load_config(o);
  const auto& b = cfg.inputs.thz;
  double k = channel::absorption_coefficient(b.f_hz, b.temperature_k, b.humidity_percent,
                                             b.pressure_pa);
  double hl = channel::thz_path_gain(b);
  std::printf("frequency_ghz,%.17g\n", b.f_hz * 1e-9);
  std::printf("temperature_k,%.17g\n", b.temperature_k);
  std::printf("humidity_percent,%.17g\n", b.humidity_percent);
  std::printf("pressure_pa,%.17g\n", b.pressure_pa);
  std::printf("absorption_per_m,%.17g\n", k);
  std::printf("absorption_db_per_km,%.17g\n", 10.0 * k * 1000.0 / std::log(10.0));
  std::printf("path_gain_amplitude,%.17g\n", hl);
  std::printf("path_gain_db,%.17g\n", 20.0 * std::log10(hl));
  return 0;
}

int cmd_derive(const CommonOpts& o) {
  auto cfg = load_config(o);
  channel::Scenario s = cfg.inputs.scenario();
  std::printf("s0,%.17g\n", s.pointing.s0);
  std::printf("phi,%.17g\n", s.pointing.phi);
  std::printf("w_zeq_m,%.17g\n", s.pointing.w_zeq);
  std::printf("a1,%.17g\n", s.consts.a1);
  std::printf("b1,%.17g\n", s.consts.b1);
  std::printf("c1,%.17g\n", s.consts.c1);
  std::printf("a2,%.17g\n", s.consts.a2);
  std::printf("b2,%.17g\n", s.consts.b2);
  std::printf("gamma0_1,%.17g\n", s.consts.gamma0_1);
  std::printf("gamma0_2,%.17g\n", s.consts.gamma0_2);
  std::printf("gamma0_1_db,%.17g\n", 10.0 * std::log10(s.consts.gamma0_1));
  std::printf("gamma0_2_db,%.17g\n", 10.0 * std::log10(s.consts.gamma0_2));
  std::printf("epsilon,%.17g\n", s.epsilon);
  std::printf("diversity_order,%.17g\n", analytic::diversity_order(s));
  return 0;
}

int cmd_sweep(const CommonOpts& o) {
  auto cfg = load_config(o);
  write_table(cli::run_sweep(cfg.inputs, cfg.sweep), o);
  return 0;
}

int cmd_preset(const std::string& name, const CommonOpts& o) {
  auto cfg = cli::parse_config_text(cli::preset_config_text(name));
  if (o.seed) cfg.sweep.seed = *o.seed;
  if (o.samples) cfg.sweep.mc_samples = *o.samples;
  if (o.threads) cfg.sweep.threads = *o.threads;
  write_table(cli::run_sweep(cfg.inputs, cfg.sweep), o);
  return 0;
}

int cmd_mc(const CommonOpts& o) {
  auto cfg = load_config(o);
  channel::Scenario s = cfg.inputs.scenario();
  mc::McOptions opts;
  opts.n_streams = cfg.sweep.mc_streams;
  opts.threads = cfg.sweep.threads;
  double gth = std::pow(10.0, cfg.sweep.gamma_th_db / 10.0);
  auto out = mc::mc_outage(s, gth, cfg.sweep.mc_samples, cfg.sweep.seed, opts);
  auto snr = mc::mc_mean_snr(s, cfg.sweep.mc_samples, cfg.sweep.seed + 1, opts);
  auto cap = mc::mc_capacity(s, cfg.sweep.mc_samples, cfg.sweep.seed + 2, opts);
  auto ber = mc::mc_ber(s, cfg.sweep.mod, cfg.sweep.mc_samples, cfg.sweep.seed + 3, opts);
  std::printf("metric,mean,ci_low,ci_high,n,seed\n");
  std::printf("outage,%.17g,%.17g,%.17g,%llu,%llu\n", out.mean, out.ci_low, out.ci_high,
              static_cast<unsigned long long>(out.n_samples),
              static_cast<unsigned long long>(out.seed));
  std::printf("avg_snr,%.17g,%.17g,%.17g,%llu,%llu\n", snr.mean, snr.ci_low, snr.ci_high,
              static_cast<unsigned long long>(snr.n_samples),
              static_cast<unsigned long long>(snr.seed));
  std::printf("capacity,%.17g,%.17g,%.17g,%llu,%llu\n", cap.mean, cap.ci_low, cap.ci_high,
              static_cast<unsigned long long>(cap.n_samples),
              static_cast<unsigned long long>(cap.seed));
  std::printf("ber,%.17g,%.17g,%.17g,%llu,%llu\n", ber.mean, ber.ci_low, ber.ci_high,
              static_cast<unsigned long long>(ber.n_samples),
              static_cast<unsigned long long>(ber.seed));
  return 0;
}

int selftest_status = 0;

void st_check(const char* name, bool ok) {
  std::printf("%-52s %s\n", name, ok ? "PASS" : "FAIL");
  if (!ok) selftest_status = 1;
}

int cmd_selftest() {
  using namespace thzlink::sf;
  // special-function identities
  st_check("gamma(1) == 1", std::fabs(gamma_fn(1.0) - 1.0) < 1e-14);
  st_check("gamma(0.5) == sqrt(pi)",
           std::fabs(gamma_fn(0.5) - 1.7724538509055160273) < 1e-13);
  st_check("igamma split", std::fabs(upper_gamma(2.3, 1.1) + lower_gamma(2.3, 1.1) -
                                     gamma_fn(2.3)) < 1e-13);
  {
    MeijerSpec s;
    s.m = 1;
    s.b = {0.0};
    bool ok = true;
    for (double z : {0.1, 1.0, 10.0})
      ok = ok && std::fabs(meijer_g(s, z).value - std::exp(-z)) < 1e-10 * std::exp(-z) + 1e-12;
    st_check("meijer exp identity", ok);
  }
  {
    MeijerSpec s;
    s.m = 2;
    s.a = {1.0};
    s.b = {1.4, 0.0};
    bool ok = true;
    for (double z : {0.1, 1.0, 10.0})
      ok = ok && std::fabs(meijer_g(s, z).value - upper_gamma(1.4, z)) < 1e-10;
    st_check("meijer igamma identity", ok);
  }
  // channel normalization at the default scenario
  auto cfg = cli::parse_config_text(cli::default_config_text());
  channel::Scenario s = cfg.inputs.scenario();
  auto f = [&](double g) { return channel::e2e_pdf(g, s); };
  double knee = std::max(s.consts.gamma0_1 * s.pointing.s0 * s.pointing.s0, 1.0);
  auto n = quad::integrate_semi_infinite([&](double u) { return f(u * u) * 2.0 * u; },
                                         std::sqrt(knee), 1e-9);
  st_check("e2e pdf normalization", std::fabs(n.value - 1.0) < 1e-7);
  double cq = analytic::capacity_by_quadrature(s);
  double cc = analytic::capacity_relay_inid(s);
  st_check("capacity closed vs quadrature", std::fabs(cq - cc) < 1e-6 * std::fabs(cq));
  double bq = analytic::ber_by_quadrature(s, analytic::Modulation::dbpsk());
  double bc = analytic::ber_relay_inid(s, analytic::Modulation::dbpsk());
  st_check("ber closed vs quadrature", std::fabs(bq - bc) < 1e-6 * std::max(bq, 1e-12));
  std::printf("%s\n", selftest_status == 0 ? "selftest: all checks passed"
                                           : "selftest: FAILURES present");
  return selftest_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thzlink: dual-hop THz-RF link performance calculator"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string preset_name;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "configuration file (key = value)");
    sub->add_option("--out", common.out_path, "output path (default: stdout)");
    sub->add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", common.seed, "Monte Carlo seed");
    sub->add_option("--samples", common.samples, "Monte Carlo sample count");
    sub->add_option("--threads", common.threads, "worker threads (0 = hardware)");
  };

  auto* absorption = app.add_subcommand("absorption", "molecular absorption and THz path gain");
  add_common(absorption);
  auto* derive = app.add_subcommand("derive", "print the derived scenario constants");
  add_common(derive);
  auto* sweep = app.add_subcommand("sweep", "run the configured metric sweep");
  add_common(sweep);
  auto* preset = app.add_subcommand("preset", "run a named figure preset");
  preset->add_option("name", preset_name, "preset name (fig2a .. fig5b)")->required();
  add_common(preset);
  auto* mc_cmd = app.add_subcommand("mc", "single-point Monte Carlo estimates");
  add_common(mc_cmd);
  app.add_subcommand("selftest", "quick numerical self checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (absorption->parsed()) return cmd_absorption(common);
    if (derive->parsed()) return cmd_derive(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (preset->parsed()) return cmd_preset(preset_name, common);
    if (mc_cmd->parsed()) return cmd_mc(common);
    return cmd_selftest();
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
