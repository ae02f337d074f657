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
// Closed-form and quadrature evaluation of the end-to-end link metrics:
// outage, diversity order, SNR moments, ergodic capacity and average BER.
// Every closed form has an independent quadrature oracle next to it.

#ifndef THZLINK_ANALYTIC_HPP
#define THZLINK_ANALYTIC_HPP

#include "thzlink/channel.hpp"
#include "thzlink/meijer.hpp"

namespace thzlink {
namespace analytic {

using channel::Scenario;

/// Conditional-BER shape/rate pair; p = q = 1 is DBPSK.
struct Modulation {
  double p = 1.0;
  double q = 1.0;

  static Modulation dbpsk() { return {1.0, 1.0}; }
  void validate() const;
};

// ---------------------------------------------------------------- outage --

/// Exact outage probability, P(min(gamma1, gamma2) < gamma_th).
double outage_exact(const Scenario& s, double gamma_th);

/// High-SNR power-law asymptote, term by term.
struct OutageAsymptote {
  double term_thz_fading = 0.0;  // (gamma_th / gamma0_1)^{alpha1 mu1 / 2}
  double term_pointing = 0.0;    // (gamma_th / gamma0_1)^{phi / 2}
  double term_rf = 0.0;          // (gamma_th / gamma0_2)^{alpha2 mu2 / 2}
  double total = 0.0;
};
OutageAsymptote outage_high_snr(const Scenario& s, double gamma_th);

/// Low-SNR (deep outage) asymptote; approaches 1 as the transmit power
/// vanishes.  Not clamped.
double outage_low_snr(const Scenario& s, double gamma_th);

/// min(alpha1 mu1, alpha2 mu2, phi) / 2.
double diversity_order(const Scenario& s);

// ---------------------------------------------------------------- moments --

struct MomentTerms {
  double gamma1 = 0.0;   // n-th moment of the THz hop SNR
  double gamma2 = 0.0;   // n-th moment of the RF hop SNR
  double gamma12 = 0.0;  // cross term int gamma^n f1 F2
  double gamma21 = 0.0;  // cross term int gamma^n f2 F1
  double total = 0.0;    // gamma1 + gamma2 - gamma12 - gamma21
};

/// n-th SNR moment, generally distributed hops.  Requires integer alpha on
/// both hops (the cross terms are Meijer-G closed forms with
/// alpha-fold parameter ladders); n >= 0 real.
MomentTerms moment_inid(const Scenario& s, double n);

/// n-th SNR moment for identically distributed short-term fading
/// (alpha1 == alpha2, mu1 == mu2); hypergeometric closed form, any real alpha.
MomentTerms moment_iid(const Scenario& s, double n);

/// Adaptive-quadrature oracle for the same moment.
double moment_by_quadrature(const Scenario& s, double n);

/// Single-hop average SNRs (the gamma1 / gamma2 moment terms at n = 1).
double avg_snr_thz_closed(const Scenario& s);
double avg_snr_rf_closed(const Scenario& s);

/// gamma^(2) / gamma^(1)^2 - 1 from the closed-form moments.
double amount_of_fading(const Scenario& s);

/// Same from the quadrature moments.
double amount_of_fading_by_quadrature(const Scenario& s);

/// Parameter-pattern special cases reported with a validity flag.
enum class SpecialCase { nakagami_rayleigh, weibull_rayleigh };

struct SpecialValue {
  double value = 0.0;
  bool valid = true;
};
SpecialValue avg_snr_special(const Scenario& s, SpecialCase sc);

// --------------------------------------------------------------- capacity --

/// Lower bound on the ergodic capacity of the direct THz hop [bits/s/Hz].
double capacity_lb_thz(const Scenario& s);

/// Lower bound for the RF hop.
double capacity_lb_rf(const Scenario& s);

/// Exact single-hop ergodic capacities (Meijer-G closed forms).
double capacity_thz_closed(const Scenario& s);
double capacity_rf_closed(const Scenario& s);

/// Relay ergodic capacity, generally distributed hops.  Requires integer
/// mu1, mu2; evaluated through Meijer-G kernels with a convergent
/// small-argument expansion of the dominated hop.
double capacity_relay_inid(const Scenario& s);

/// Relay ergodic capacity, i.i.d. fading (alpha1 == alpha2, mu1 == mu2,
/// integer mu).  The log/digamma bounds cover the single-hop terms; the two
/// cross terms are adaptive quadratures of their defining integrals.
double capacity_relay_iid(const Scenario& s);

/// CDF-form quadrature oracle: (1/ln 2) int (1 - F) / (1 + gamma).
double capacity_by_quadrature(const Scenario& s);

/// PDF-form cross-check: int log2(1 + gamma) f(gamma).
double capacity_by_pdf_quadrature(const Scenario& s);

/// Special-case closed forms with validity flag and quadrature discrepancy.
enum class SpecialMetric { capacity, ber };

struct CorollaryResult {
  double value = 0.0;
  bool valid = true;
  double quadrature = 0.0;
  double discrepancy = 0.0;  // |value - quadrature|
};
CorollaryResult metric_special_cases(const Scenario& s, SpecialMetric metric, SpecialCase sc);

// -------------------------------------------------------------------- BER --

/// Average BER of the direct THz hop (exact closed form).
double ber_thz(const Scenario& s, const Modulation& mod);

/// Average BER of the direct RF hop (exact closed form).
double ber_rf(const Scenario& s, const Modulation& mod);

/// Relay average BER, generally distributed hops.  Requires integer mu1,
/// mu2; exact up to series truncation for rational alpha.
double ber_relay_inid(const Scenario& s, const Modulation& mod);

/// Quadrature oracle: q^p/(2 Gamma(p)) int gamma^{p-1} e^{-q gamma} F.
double ber_by_quadrature(const Scenario& s, const Modulation& mod);

// --------------------------------------------------- Meijer-G spec builders --

/// Kernel of the gamma12 moment cross term: returns the G spec and argument
/// used by moment_inid (alpha-fold ladders of the two incomplete gammas).
struct GCall {
  sf::MeijerSpec spec;
  double z = 0.0;
};
GCall moment_cross12_gcall(int alpha1, int alpha2, double mu2, double b1, double c,
                           double b2_prime, double c1);
GCall moment_cross21_gcall(int alpha1, int alpha2, double mu1_or_b1, double rho, double c1_prime,
                           double b2);

}  // namespace analytic
}  // namespace thzlink

#endif  // THZLINK_ANALYTIC_HPP
