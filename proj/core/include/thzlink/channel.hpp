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
// Dual-hop THz-RF channel model: deterministic path gains with molecular
// absorption, pointing-error statistics, alpha-mu short-term fading, and the
// SNR-domain distribution functions of both hops and of the decode-and-
// forward end-to-end link.

#ifndef THZLINK_CHANNEL_HPP
#define THZLINK_CHANNEL_HPP

namespace thzlink {
namespace channel {

/// alpha-mu short-term fading of one hop.  alpha is the non-linearity,
/// mu the clustering parameter (non-integer values allowed), omega the
/// alpha-root mean value of the envelope.
struct FadingParams {
  double alpha = 2.0;
  double mu = 1.0;
  double omega = 1.0;

  void validate() const;
};

/// Beam geometry of the THz hop.  The pointing model is valid for
/// beam-width to aperture ratios w_z / r_1 >= 6.
struct PointingConfig {
  double w_z = 0.6;      // beam-width at the receiver [m]
  double r_1 = 0.10;     // effective aperture radius [m]
  double sigma_s = 0.08; // jitter displacement standard deviation [m]

  void validate() const;
};

/// Derived pointing quantities.
struct PointingParams {
  double s0 = 0.0;     // peak collected fraction, erf(upsilon)^2
  double phi = 0.0;    // jitter-to-beamwidth ratio (SNR-domain convention)
  double w_zeq = 0.0;  // equivalent beam-width [m]
};

/// THz hop link budget.
struct ThzLinkBudget {
  double f_hz = 275e9;
  double d_m = 30.0;
  double g_t_dbi = 55.0;
  double g_r_dbi = 55.0;
  double temperature_k = 296.0;
  double humidity_percent = 50.0;
  double pressure_pa = 101325.0;
  double tx_power_dbm = 10.0;
  double noise_power_dbm = -69.4;

  void validate() const;
};

/// RF hop link budget (3GPP-style path loss).
struct RfLinkBudget {
  double f_hz = 6e9;
  double d_m = 30.0;
  double g_t_dbi = 25.0;
  double g_r_dbi = 25.0;
  double tx_power_dbm = 10.0;
  double noise_power_dbm = -104.4;

  void validate() const;
};

/// Constants reused by every closed-form expression, plus the faded-free
/// SNRs of the two hops (linear scale).
struct DerivedConstants {
  double a1 = 0.0;
  double b1 = 0.0;
  double c1 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  double gamma0_1 = 0.0;
  double gamma0_2 = 0.0;
};

/// Saturated water vapor partial pressure [Pa], Arden Buck fit.
/// Valid for temperatures in [240, 330] K.
double buck_saturation_pressure(double temperature_k, double pressure_pa);

/// Molecular absorption coefficient [1/m] in the 0.1-1 THz window.
double absorption_coefficient(double f_hz, double temperature_k, double humidity_percent,
                              double pressure_pa);

/// Deterministic THz amplitude path gain (antenna gains folded in).
double thz_path_gain(const ThzLinkBudget& budget);

/// RF path loss in dB (negative), gains not included.
double rf_path_gain_db(double d_m, double f_hz);

/// Pointing statistics derived from the beam geometry.
PointingParams pointing_params(const PointingConfig& cfg);

/// Closed-form constants for the two hops.  `omega` enters through the
/// fading records; the normalization a1 * c1^{-phi/alpha1} * Gamma(mu1) / phi
/// = 1 is enforced by construction.
DerivedConstants make_derived_constants(const FadingParams& thz_fading,
                                        const PointingParams& pointing,
                                        const FadingParams& rf_fading, double gamma0_1,
                                        double gamma0_2);

/// SNR-domain PDF of the THz hop (combined fading and pointing).
double snr_pdf_thz(double gamma, const DerivedConstants& c, const FadingParams& fading);

/// SNR-domain CDF of the THz hop; valid for continuous (non-integer) mu.
double snr_cdf_thz(double gamma, const DerivedConstants& c, const FadingParams& fading);

/// SNR-domain PDF / CDF of the RF hop.
double snr_pdf_rf(double gamma, const DerivedConstants& c, const FadingParams& fading);
double snr_cdf_rf(double gamma, const DerivedConstants& c, const FadingParams& fading);

/// Fully resolved scenario: both hops plus derived constants.
struct Scenario {
  FadingParams thz_fading;
  FadingParams rf_fading;
  PointingConfig pointing_cfg;
  PointingParams pointing;
  ThzLinkBudget thz_budget;
  RfLinkBudget rf_budget;
  DerivedConstants consts;
  double epsilon = 1.0;  // alpha2 / alpha1, stored once at build time

  double f1(double gamma) const { return snr_pdf_thz(gamma, consts, thz_fading); }
  double F1(double gamma) const { return snr_cdf_thz(gamma, consts, thz_fading); }
  double f2(double gamma) const { return snr_pdf_rf(gamma, consts, rf_fading); }
  double F2(double gamma) const { return snr_cdf_rf(gamma, consts, rf_fading); }
};

/// Builds a scenario from budgets, geometry and fading records.
Scenario make_scenario(const ThzLinkBudget& thz, const FadingParams& thz_fading,
                       const PointingConfig& pointing, const RfLinkBudget& rf,
                       const FadingParams& rf_fading);

/// Same, but with the faded-free SNRs given directly (no budget evaluation).
Scenario make_scenario_from_snrs(double gamma0_1, double gamma0_2, const FadingParams& thz_fading,
                                 const PointingConfig& pointing, const FadingParams& rf_fading);

/// Scenario with explicitly chosen pointing statistics (no geometry).  The
/// jitter is back-solved as sigma_s = w_zeq / sqrt(2 phi) so that sampling
/// stays consistent with the analytic convention.
Scenario make_scenario_with_pointing(double gamma0_1, double gamma0_2,
                                     const FadingParams& thz_fading, const PointingParams& pointing,
                                     const FadingParams& rf_fading);

/// End-to-end DF distribution functions, gamma = min(gamma1, gamma2).
double e2e_cdf(double gamma, const Scenario& s);
double e2e_pdf(double gamma, const Scenario& s);

}  // namespace channel
}  // namespace thzlink

#endif  // THZLINK_CHANNEL_HPP
