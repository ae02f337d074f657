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

#include "thzlink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thzlink/specfun.hpp"

namespace thzlink {
namespace channel {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSpeedOfLight = 299792458.0;

// Absorption fit coefficients (first two water-vapor resonances plus a cubic
// background in f).
constexpr double kQ1 = 0.2205, kQ2 = 0.1303, kQ3 = 0.0294, kQ4 = 0.4093, kQ5 = 0.0925;
constexpr double kQ6 = 2.014, kQ7 = 0.1702, kQ8 = 0.0303, kQ9 = 0.537, kQ10 = 0.0956;
constexpr double kC1 = 5.54e-37, kC2 = -3.94e-25, kC3 = 9.06e-14, kC4 = -6.36e-3;
constexpr double kP1 = 10.835, kP2 = 12.664;  // [1/cm]

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

}  // namespace

void FadingParams::validate() const {
  if (!(alpha > 0.0) || !(mu > 0.0) || !(omega > 0.0))
    throw std::domain_error("FadingParams: alpha, mu, omega must be positive");
}

void PointingConfig::validate() const {
  if (!(w_z > 0.0) || !(r_1 > 0.0) || !(sigma_s > 0.0))
    throw std::domain_error("PointingConfig: dimensions must be positive");
  if (w_z / r_1 < 6.0 * (1.0 - 1e-12))
    throw std::domain_error("PointingConfig: pointing model requires w_z / r_1 >= 6");
}

void ThzLinkBudget::validate() const {
  if (!(d_m > 0.0)) throw std::domain_error("ThzLinkBudget: distance must be positive");
  if (humidity_percent < 0.0 || humidity_percent > 100.0)
    throw std::domain_error("ThzLinkBudget: humidity must be within [0, 100]");
  if (!(pressure_pa > 0.0)) throw std::domain_error("ThzLinkBudget: pressure must be positive");
}

void RfLinkBudget::validate() const {
  if (!(d_m > 0.0)) throw std::domain_error("RfLinkBudget: distance must be positive");
}

double buck_saturation_pressure(double temperature_k, double /*pressure_pa*/) {
  if (temperature_k < 240.0 || temperature_k > 330.0)
    throw std::domain_error("buck_saturation_pressure: temperature outside [240, 330] K");
  double tc = temperature_k - 273.15;
  return 611.21 * std::exp((18.678 - tc / 234.5) * (tc / (257.14 + tc)));
}

double absorption_coefficient(double f_hz, double temperature_k, double humidity_percent,
                              double pressure_pa) {
  if (!(pressure_pa > 0.0)) throw std::domain_error("absorption_coefficient: pressure must be positive");
  if (humidity_percent < 0.0 || humidity_percent > 100.0)
    throw std::domain_error("absorption_coefficient: humidity must be within [0, 100]");
  double pw = buck_saturation_pressure(temperature_k, pressure_pa);
  double v = humidity_percent / 100.0 * pw / pressure_pa;
  double g = f_hz / (100.0 * kSpeedOfLight);  // [1/cm]
  double t1 = kQ1 * v * (kQ2 * v + kQ3) / ((kQ4 * v + kQ5) * (kQ4 * v + kQ5) + (g - kP1) * (g - kP1));
  double t2 = kQ6 * v * (kQ7 * v + kQ8) / ((kQ9 * v + kQ10) * (kQ9 * v + kQ10) + (g - kP2) * (g - kP2));
  double poly = ((kC1 * f_hz + kC2) * f_hz + kC3) * f_hz + kC4;
  return t1 + t2 + poly;
}

double thz_path_gain(const ThzLinkBudget& budget) {
  budget.validate();
  double k = absorption_coefficient(budget.f_hz, budget.temperature_k, budget.humidity_percent,
                                    budget.pressure_pa);
  double gains = std::pow(10.0, (budget.g_t_dbi + budget.g_r_dbi) / 20.0);
  return kSpeedOfLight * gains / (4.0 * kPi * budget.f_hz * budget.d_m) *
         std::exp(-0.5 * k * budget.d_m);
}

double rf_path_gain_db(double d_m, double f_hz) {
  if (!(d_m > 0.0) || !(f_hz > 0.0)) throw std::domain_error("rf_path_gain_db: bad arguments");
  return -(32.4 + 17.3 * std::log10(d_m) + 20.0 * std::log10(f_hz * 1e-9));
}

PointingParams pointing_params(const PointingConfig& cfg) {
  cfg.validate();
  double upsilon = std::sqrt(kPi / 2.0) * cfg.r_1 / cfg.w_z;
  double erf_u = sf::erf_fn(upsilon);
  PointingParams out;
  out.s0 = erf_u * erf_u;
  double w_zeq_sq = cfg.w_z * cfg.w_z * std::sqrt(kPi) * erf_u / (2.0 * upsilon * std::exp(-upsilon * upsilon));
  out.w_zeq = std::sqrt(w_zeq_sq);
  // Calibrated convention: phi = w_zeq^2 / (2 sigma_s^2).
  out.phi = w_zeq_sq / (2.0 * cfg.sigma_s * cfg.sigma_s);
  return out;
}

DerivedConstants make_derived_constants(const FadingParams& thz_fading,
                                        const PointingParams& pointing,
                                        const FadingParams& rf_fading, double gamma0_1,
                                        double gamma0_2) {
  thz_fading.validate();
  rf_fading.validate();
  DerivedConstants c;
  double al1 = thz_fading.alpha, mu1 = thz_fading.mu, om1 = thz_fading.omega;
  double al2 = rf_fading.alpha, mu2 = rf_fading.mu, om2 = rf_fading.omega;
  double phi = pointing.phi, s0 = pointing.s0;
  c.b1 = mu1 - phi / al1;
  c.c1 = mu1 * std::pow(s0, -al1) / std::pow(om1, al1);
  // a1 carries Omega^{-phi}; this is the unique choice with F1(inf) = 1.
  c.a1 = phi * std::pow(s0, -phi) * std::pow(mu1, phi / al1) /
         (std::pow(om1, phi) * sf::gamma_fn(mu1));
  c.b2 = mu2 / std::pow(om2, al2);
  c.a2 = std::pow(mu2, mu2) / std::pow(om2, al2 * mu2);
  c.gamma0_1 = gamma0_1;
  c.gamma0_2 = gamma0_2;
  return c;
}

namespace {

// phi is recoverable from the stored constants: b1 = mu1 - phi/alpha1.
double phi_of(const DerivedConstants& c, const FadingParams& fading) {
  return (fading.mu - c.b1) * fading.alpha;
}

}  // namespace

double snr_pdf_thz(double gamma, const DerivedConstants& c, const FadingParams& fading) {
  if (gamma < 0.0) throw std::domain_error("snr_pdf_thz: requires gamma >= 0");
  if (gamma == 0.0) return 0.0;  // density limit; diverges only for phi < 2
  double al1 = fading.alpha, phi = phi_of(c, fading);
  double x = std::sqrt(gamma / c.gamma0_1);
  // log-space assembly; the tail involves Gamma(b1, large argument) far
  // below the underflow threshold of a plain product.
  sf::SignedLog g = sf::upper_gamma_ln(c.b1, c.c1 * std::pow(x, al1));
  if (g.sign <= 0) return 0.0;
  double ln = std::log(c.a1) - std::log(2.0 * std::sqrt(gamma * c.gamma0_1)) +
              (phi - 1.0) * std::log(x) + g.log_abs;
  return ln < -745.0 ? 0.0 : std::exp(ln);
}

double snr_cdf_thz(double gamma, const DerivedConstants& c, const FadingParams& fading) {
  if (gamma < 0.0) throw std::domain_error("snr_cdf_thz: requires gamma >= 0");
  if (gamma == 0.0) return 0.0;
  double al1 = fading.alpha, mu1 = fading.mu;
  double phi = phi_of(c, fading);
  double x = std::sqrt(gamma / c.gamma0_1);
  double t = c.c1 * std::pow(x, al1);
  double low = sf::lower_gamma(mu1, t);
  // power-term in logs: c1^{phi/al1} x^{phi} Gamma(b1, t)
  sf::SignedLog g = sf::upper_gamma_ln(c.b1, t);
  double powterm = 0.0;
  if (g.sign != 0) {
    double ln = (phi / al1) * std::log(c.c1) + phi * std::log(x) + g.log_abs;
    powterm = g.sign * (ln < -745.0 ? 0.0 : std::exp(ln));
  }
  double pref = c.a1 * std::pow(c.c1, -phi / al1) / phi;
  double v = pref * (low + powterm);
  return std::min(1.0, std::max(0.0, v));
}

double snr_pdf_rf(double gamma, const DerivedConstants& c, const FadingParams& fading) {
  if (gamma < 0.0) throw std::domain_error("snr_pdf_rf: requires gamma >= 0");
  double al2 = fading.alpha, mu2 = fading.mu;
  if (gamma == 0.0) {
    // finite limit only when al2*mu2 == 1
    if (al2 * mu2 > 1.0) return 0.0;
  }
  double x = std::sqrt(gamma / c.gamma0_2);
  double ln = std::log(c.a2 * al2 / (2.0 * sf::gamma_fn(mu2))) -
              std::log(std::sqrt(gamma * c.gamma0_2)) + (al2 * mu2 - 1.0) * std::log(x) -
              c.b2 * std::pow(x, al2);
  return ln < -745.0 ? 0.0 : std::exp(ln);
}

double snr_cdf_rf(double gamma, const DerivedConstants& c, const FadingParams& fading) {
  if (gamma < 0.0) throw std::domain_error("snr_cdf_rf: requires gamma >= 0");
  if (gamma == 0.0) return 0.0;
  double x = std::sqrt(gamma / c.gamma0_2);
  return sf::gamma_p(fading.mu, c.b2 * std::pow(x, fading.alpha));
}

Scenario make_scenario(const ThzLinkBudget& thz, const FadingParams& thz_fading,
                       const PointingConfig& pointing, const RfLinkBudget& rf,
                       const FadingParams& rf_fading) {
  thz.validate();
  rf.validate();
  Scenario s;
  s.thz_fading = thz_fading;
  s.rf_fading = rf_fading;
  s.pointing_cfg = pointing;
  s.thz_budget = thz;
  s.rf_budget = rf;
  s.pointing = pointing_params(pointing);

  double hl1 = thz_path_gain(thz);
  double g1 = dbm_to_mw(thz.tx_power_dbm) * hl1 * hl1 / dbm_to_mw(thz.noise_power_dbm);

  double pl_db = rf_path_gain_db(rf.d_m, rf.f_hz);
  double rx_dbm = rf.tx_power_dbm + rf.g_t_dbi + rf.g_r_dbi + pl_db;
  double g2 = dbm_to_mw(rx_dbm) / dbm_to_mw(rf.noise_power_dbm);

  s.consts = make_derived_constants(thz_fading, s.pointing, rf_fading, g1, g2);
  s.epsilon = rf_fading.alpha / thz_fading.alpha;
  return s;
}

Scenario make_scenario_from_snrs(double gamma0_1, double gamma0_2, const FadingParams& thz_fading,
                                 const PointingConfig& pointing, const FadingParams& rf_fading) {
  Scenario s;
  s.thz_fading = thz_fading;
  s.rf_fading = rf_fading;
  s.pointing_cfg = pointing;
  s.pointing = pointing_params(pointing);
  s.consts = make_derived_constants(thz_fading, s.pointing, rf_fading, gamma0_1, gamma0_2);
  s.epsilon = rf_fading.alpha / thz_fading.alpha;
  return s;
}

Scenario make_scenario_with_pointing(double gamma0_1, double gamma0_2,
                                     const FadingParams& thz_fading, const PointingParams& pointing,
                                     const FadingParams& rf_fading) {
  if (!(pointing.s0 > 0.0) || pointing.s0 > 1.0 || !(pointing.phi > 0.0))
    throw std::domain_error("make_scenario_with_pointing: require s0 in (0, 1] and phi > 0");
  Scenario s;
  s.thz_fading = thz_fading;
  s.rf_fading = rf_fading;
  s.pointing = pointing;
  if (!(s.pointing.w_zeq > 0.0)) s.pointing.w_zeq = 1.0;
  s.pointing_cfg.r_1 = s.pointing.w_zeq / 6.0;
  s.pointing_cfg.w_z = s.pointing.w_zeq;
  s.pointing_cfg.sigma_s = s.pointing.w_zeq / std::sqrt(2.0 * pointing.phi);
  s.consts = make_derived_constants(thz_fading, s.pointing, rf_fading, gamma0_1, gamma0_2);
  s.epsilon = rf_fading.alpha / thz_fading.alpha;
  return s;
}

double e2e_cdf(double gamma, const Scenario& s) {
  if (gamma < 0.0) throw std::domain_error("e2e_cdf: requires gamma >= 0");
  double F1 = s.F1(gamma), F2 = s.F2(gamma);
  return F1 + F2 - F1 * F2;
}

double e2e_pdf(double gamma, const Scenario& s) {
  if (gamma < 0.0) throw std::domain_error("e2e_pdf: requires gamma >= 0");
  double F1 = s.F1(gamma), F2 = s.F2(gamma);
  double f1 = s.f1(gamma), f2 = s.f2(gamma);
  return f1 + f2 - f1 * F2 - F1 * f2;
}

}  // namespace channel
}  // namespace thzlink
