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
// The closed forms reduce to four Mellin-Barnes kernel families:
//   L(A; c, r, q)     = int t^{A-1} e^{-q t - c t^r} dt
//   V(nu, A; c, r, q) = int t^{A-1} e^{-q t} Gamma(nu, c t^r) dt
//   C(nu, A; c, r)    = int t^{A-1} (1+t)^{-1} Gamma(nu, c t^r) dt
//   J(s, nu; p, c)    = int t^{s-1} e^{-p t} Gamma(nu, c t) dt  (hypergeometric)
// with rational exponents r = P/Q.  Relay metrics whose integrands carry an
// incomplete gamma of each hop expand the hop with the higher SNR knee in a
// convergent small-argument series and keep the other hop exact inside the
// kernel, so the evaluation side adapts to the link imbalance.

#include "thzlink/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "thzlink/quadrature.hpp"
#include "thzlink/specfun.hpp"

namespace thzlink {
namespace analytic {
namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kLn2Pi = 1.8378770664093454835606594728112;

struct Frac {
  int p = 1;
  int q = 1;
};

Frac rational_half(double alpha) {
  for (int den = 1; den <= 64; ++den) {
    double num = alpha / 2.0 * den;
    if (std::fabs(num - std::round(num)) < 1e-9 * den && std::round(num) >= 1.0) {
      int p = static_cast<int>(std::lround(num));
      int g = std::gcd(p, den);
      return {p / g, den / g};
    }
  }
  throw std::domain_error("closed form requires a rational alpha/2 with a small denominator");
}

int require_integer(double x, const char* what) {
  if (std::fabs(x - std::round(x)) > 1e-9 || std::round(x) < 1.0)
    throw std::domain_error(std::string(what) +
                            "; use the *_by_quadrature oracle for this parameter set");
  return static_cast<int>(std::lround(x));
}

// Signed log-scale value.
struct SL {
  double lg = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(lg); }
};

SL sl_of(double v) {
  if (v > 0) return {std::log(v), 1};
  if (v < 0) return {std::log(-v), -1};
  return {};
}

// Unpacked scenario quantities shared by the closed forms.
struct Params {
  double al1, mu1, al2, mu2;
  double phi, s0;
  double A1, B1, C1, A2, B2;
  double g1, g2;
  double K;  // A1 C1^{-phi/al1} / phi
  double a;  // C1 g1^{-al1/2}, THz incomplete-gamma rate in the SNR domain
  double b;  // B2 g2^{-al2/2}
};

Params unpack(const Scenario& s) {
  Params p;
  p.al1 = s.thz_fading.alpha;
  p.mu1 = s.thz_fading.mu;
  p.al2 = s.rf_fading.alpha;
  p.mu2 = s.rf_fading.mu;
  p.phi = s.pointing.phi;
  p.s0 = s.pointing.s0;
  p.A1 = s.consts.a1;
  p.B1 = s.consts.b1;
  p.C1 = s.consts.c1;
  p.A2 = s.consts.a2;
  p.B2 = s.consts.b2;
  p.g1 = s.consts.gamma0_1;
  p.g2 = s.consts.gamma0_2;
  p.K = p.A1 * std::pow(p.C1, -p.phi / p.al1) / p.phi;
  p.a = p.C1 * std::pow(p.g1, -p.al1 / 2.0);
  p.b = p.B2 * std::pow(p.g2, -p.al2 / 2.0);
  return p;
}

// --------------------------------------------------------- kernel families --

// J(s, nu; p, c).  Branch keeps the hypergeometric argument within [-4, 0).
double laplace_igamma(double s, double nu, double p, double c) {
  if (std::fabs(nu - std::round(nu)) < 1e-9 && nu < 0.5) nu += 3e-8;
  if (p <= 4.0 * c) {
    // Gamma(s+nu) Gamma(s) c^{-s} 2F~1(s, s+nu; s+1; -p/c)
    double lg = sf::log_gamma(s + nu) + sf::log_gamma(s) - s * std::log(c);
    return std::exp(lg) * sf::regularized_2f1(s, s + nu, s + 1.0, -p / c);
  }
  double t1 = sf::gamma_fn(nu) * sf::gamma_fn(s) * std::pow(p, -s);
  double t2 = std::pow(c, nu) / nu * std::exp(sf::log_gamma(s + nu) - (s + nu) * std::log(p)) *
              sf::gauss_2f1(nu, s + nu, nu + 1.0, -c / p);
  return t1 - t2;
}

// V(nu, A; c, P/Q, q) as a signed-log value.
SL laplace_igamma_stretched(double nu, double A, double c, Frac r, double q) {
  if (r.p == r.q) return sl_of(laplace_igamma(A, nu, q, c));
  sf::MeijerSpec spec;
  spec.m = r.q + 1;
  spec.n = r.p;
  spec.a = sf::delta_params(r.p, 1.0 - A);
  spec.a.push_back(1.0);
  spec.b = sf::delta_params(r.q, nu);
  spec.b.push_back(0.0);
  double z = std::exp(r.q * std::log(c) + r.p * std::log(static_cast<double>(r.p)) -
                      r.p * std::log(q) - r.q * std::log(static_cast<double>(r.q)));
  auto g = sf::meijer_g_ln(spec, z);
  double pref = -A * std::log(q) + (nu - 0.5) * std::log(static_cast<double>(r.q)) +
                (A - 0.5) * std::log(static_cast<double>(r.p)) + 0.5 * (2.0 - r.p - r.q) * kLn2Pi;
  return {pref + g.log_abs, g.sign};
}

// C(nu, A; c, P/Q) as a signed-log value.
SL cap_igamma(double nu, double A, double c, Frac r) {
  sf::MeijerSpec spec;
  spec.m = r.q + r.p + 1;
  spec.n = r.p;
  auto d1a = sf::delta_params(r.p, 1.0 - A);
  spec.a = d1a;
  spec.a.push_back(1.0);
  spec.b = sf::delta_params(r.q, nu);
  spec.b.push_back(0.0);
  spec.b.insert(spec.b.end(), d1a.begin(), d1a.end());
  double z = std::exp(r.q * std::log(c) - r.q * std::log(static_cast<double>(r.q)));
  auto g = sf::meijer_g_ln(spec, z);
  double pref = (nu - 0.5) * std::log(static_cast<double>(r.q)) +
                (0.5 * (1.0 - r.q) + (1.0 - r.p)) * kLn2Pi;
  return {pref + g.log_abs, g.sign};
}

// ------------------------------------------------- two-sided pair expansion --

// Evaluates S with W(nu, A, c, r) = int t^{A-1} w(t) Gamma(nu, c t^r) dt for
// the metric's weight w(t):
//   S = Gamma(mu1) W(mu2, base) - a^{phi/al1} Gamma(B1) W(mu2, base + phi/2)
//       + sum_k rho_k a^{mu1+k} W(mu2, base + al1 (mu1+k)/2)        (THz side)
// or the role-swapped RF expansion; the Taylor side is the hop with the
// higher SNR knee, keeping the series argument at or below one.
struct PairSeries {
  const Params* prm;
  std::function<SL(double nu, double A, double c, Frac r)> W;
  double base;

  double eval() const {
    const Params& P = *prm;
    Frac r1 = rational_half(P.al1), r2 = rational_half(P.al2);
    double lna = std::log(P.a), lnb = std::log(P.b);
    double imbalance = lna - (P.al1 / P.al2) * lnb;  // ln of X1 at the RF knee
    double B1 = P.B1;
    if (std::fabs(B1 - std::round(B1)) < 1e-10) B1 += 3e-9;  // keeps 1/(B1+k) finite
    double sum = 0.0, max_term = 0.0;
    auto add = [&](double term) {
      sum += term;
      max_term = std::max(max_term, std::fabs(term));
    };
    int quiet = 0;
    if (imbalance <= 0.0) {
      add(sf::gamma_fn(P.mu1) * W(P.mu2, base, P.b, r2).value());
      add(-sf::gamma_fn(B1) * std::exp((P.phi / P.al1) * lna) *
          W(P.mu2, base + P.phi / 2.0, P.b, r2).value());
      for (int k = 0; k < 80; ++k) {
        double rho = ((k % 2 == 0) ? 1.0 : -1.0) / std::exp(sf::log_gamma(k + 1.0)) *
                     (1.0 / (B1 + k) - 1.0 / (P.mu1 + k));
        SL w = W(P.mu2, base + P.al1 * (P.mu1 + k) / 2.0, P.b, r2);
        double term = rho * w.sign * std::exp((P.mu1 + k) * lna + w.lg);
        add(term);
        if (std::fabs(term) < 1e-13 * std::fabs(sum) && k >= 2) {
          if (++quiet >= 2) break;
        } else {
          quiet = 0;
        }
      }
    } else {
      auto pair = [&](double A) {
        SL w1 = W(P.mu1, A, P.a, r1);
        SL w2 = W(B1, A + P.phi / 2.0, P.a, r1);
        return w1.value() - w2.sign * std::exp((P.phi / P.al1) * lna + w2.lg);
      };
      add(sf::gamma_fn(P.mu2) * pair(base));
      for (int j = 0; j < 80; ++j) {
        double sig = -((j % 2 == 0) ? 1.0 : -1.0) / std::exp(sf::log_gamma(j + 1.0)) / (P.mu2 + j);
        double term = sig * std::exp((P.mu2 + j) * lnb) * pair(base + P.al2 * (P.mu2 + j) / 2.0);
        add(term);
        if (std::fabs(term) < 1e-13 * std::fabs(sum) && j >= 2) {
          if (++quiet >= 2) break;
        } else {
          quiet = 0;
        }
      }
    }
    if (!(std::fabs(sum) > 1e-12 * max_term))
      throw EvalError("pair series lost all significant digits", sum, max_term * 1e-16);
    return sum;
  }
};

// Stable survival functions (products of these stay accurate in the deep
// tail where 1 - F would round to zero).
double survival_thz(const Scenario& s, double gamma) {
  const auto& c = s.consts;
  double al1 = s.thz_fading.alpha, mu1 = s.thz_fading.mu, phi = s.pointing.phi;
  if (gamma <= 0.0) return 1.0;
  double x = std::sqrt(gamma / c.gamma0_1);
  double t = c.c1 * std::pow(x, al1);
  double K = c.a1 * std::pow(c.c1, -phi / al1) / phi;
  sf::SignedLog gu = sf::upper_gamma_ln(mu1, t);
  sf::SignedLog gb = sf::upper_gamma_ln(c.b1, t);
  double term1 = (gu.sign == 0) ? 0.0 : gu.sign * std::exp(std::log(K) + gu.log_abs);
  double term2 = 0.0;
  if (gb.sign != 0) {
    double ln = std::log(K) + (phi / al1) * std::log(c.c1) + phi * std::log(x) + gb.log_abs;
    term2 = gb.sign * (ln < -745.0 ? 0.0 : std::exp(ln));
  }
  return std::max(0.0, term1 - term2);
}

double survival_rf(const Scenario& s, double gamma) {
  if (gamma <= 0.0) return 1.0;
  const auto& c = s.consts;
  double x = std::sqrt(gamma / c.gamma0_2);
  return sf::gamma_q(s.rf_fading.mu, c.b2 * std::pow(x, s.rf_fading.alpha));
}

double moment_hop1(const Params& p, double n) {
  double c = (p.phi + 2.0 * n) / p.al1;
  return std::exp(std::log(p.A1) - c * std::log(p.C1) + n * std::log(p.g1) +
                  sf::log_gamma(p.mu1 + 2.0 * n / p.al1)) /
         (2.0 * n + p.phi);
}

double moment_hop2(const Params& p, double n) {
  return std::exp(-2.0 * n / p.al2 * std::log(p.B2) + n * std::log(p.g2) +
                  sf::log_gamma(p.mu2 + 2.0 * n / p.al2) - sf::log_gamma(p.mu2));
}

}  // namespace

void Modulation::validate() const {
  if (!(p > 0.0) || !(q > 0.0)) throw std::domain_error("Modulation: p, q must be positive");
}

// ------------------------------------------------------------------ outage --

double outage_exact(const Scenario& s, double gamma_th) {
  if (gamma_th < 0.0) throw std::domain_error("outage_exact: requires gamma_th >= 0");
  return channel::e2e_cdf(gamma_th, s);
}

OutageAsymptote outage_high_snr(const Scenario& s, double gamma_th) {
  Params p = unpack(s);
  double B1 = p.B1;
  if (std::fabs(B1) < 1e-12) B1 = 1e-12;
  OutageAsymptote out;
  double k1 = std::pow(p.C1, p.mu1) * (1.0 / p.mu1 - 1.0 / B1) / sf::gamma_fn(p.mu1);
  double kphi = std::pow(p.C1, p.phi / p.al1) * sf::gamma_fn(B1) / sf::gamma_fn(p.mu1);
  double k2 = std::pow(p.B2, p.mu2) / sf::gamma_fn(p.mu2 + 1.0);
  out.term_thz_fading = k1 * std::pow(gamma_th / p.g1, p.al1 * p.mu1 / 2.0);
  out.term_pointing = kphi * std::pow(gamma_th / p.g1, p.phi / 2.0);
  out.term_rf = k2 * std::pow(gamma_th / p.g2, p.al2 * p.mu2 / 2.0);
  out.total = out.term_thz_fading + out.term_pointing + out.term_rf;
  return out;
}

double outage_low_snr(const Scenario& s, double gamma_th) {
  Params p = unpack(s);
  double t1 = std::pow(gamma_th / p.g1, p.al1 / 2.0);
  double t2 = std::pow(gamma_th / p.g2, p.al2 / 2.0);
  double lnX = -p.B2 * t2 + (p.mu2 - 1.0) * std::log(p.B2 * t2) - sf::log_gamma(p.mu2);
  double X = lnX < -745.0 ? 0.0 : std::exp(lnX);
  // Bracket with the undetermined exponent fixed to mu1; the two
  // Gamma(mu1) e^{-x} x^{mu1-1} pieces cancel algebraically, leaving the
  // collapsed product below.
  double lnY = std::log(p.K) - p.C1 * t1 + (p.mu1 - 1.0) * std::log(p.C1 * t1) +
               (p.phi / p.al1) * std::log(p.C1) + (p.phi / 2.0) * std::log(gamma_th / p.g1);
  double Y = lnY < -745.0 ? 0.0 : std::exp(lnY);
  return 1.0 - X * (1.0 - Y);
}

double diversity_order(const Scenario& s) {
  Params p = unpack(s);
  return std::min({p.al1 * p.mu1 / 2.0, p.al2 * p.mu2 / 2.0, p.phi / 2.0});
}

// ----------------------------------------------------------------- moments --

GCall moment_cross12_gcall(int alpha1, int alpha2, double mu2, double b1, double c,
                           double b2_prime, double c1) {
  GCall out;
  out.spec.m = 2 * alpha1;
  out.spec.n = 2 * alpha2;
  auto app = [](std::vector<double>* v, const std::vector<double>& w) {
    v->insert(v->end(), w.begin(), w.end());
  };
  app(&out.spec.a, sf::delta_params(alpha2, 1.0 - c - b1));
  app(&out.spec.a, sf::delta_params(alpha2, 1.0 - c));
  app(&out.spec.a, sf::delta_params(alpha1, 1.0));
  app(&out.spec.b, sf::delta_params(alpha1, mu2));
  app(&out.spec.b, sf::delta_params(alpha1, 0.0));
  app(&out.spec.b, sf::delta_params(alpha2, -c));
  out.z = std::exp(alpha1 * std::log(b2_prime) - alpha1 * std::log(static_cast<double>(alpha1)) -
                   alpha2 * std::log(c1) + alpha2 * std::log(static_cast<double>(alpha2)));
  return out;
}

GCall moment_cross21_gcall(int alpha1, int alpha2, double nu, double rho, double c1_prime,
                           double b2) {
  GCall out;
  out.spec.m = 2 * alpha2;
  out.spec.n = alpha1;
  auto app = [](std::vector<double>* v, const std::vector<double>& w) {
    v->insert(v->end(), w.begin(), w.end());
  };
  app(&out.spec.a, sf::delta_params(alpha1, 1.0 - rho));
  app(&out.spec.a, sf::delta_params(alpha2, 1.0));
  app(&out.spec.b, sf::delta_params(alpha2, nu));
  app(&out.spec.b, sf::delta_params(alpha2, 0.0));
  out.z = std::exp(alpha2 * std::log(c1_prime) + alpha1 * std::log(static_cast<double>(alpha1)) -
                   alpha1 * std::log(b2) - alpha2 * std::log(static_cast<double>(alpha2)));
  return out;
}

MomentTerms moment_inid(const Scenario& s, double n) {
  if (n < 0.0) throw std::domain_error("moment_inid: requires n >= 0");
  Params p = unpack(s);
  int a1 = require_integer(p.al1, "moment_inid: requires integer alpha1");
  int a2 = require_integer(p.al2, "moment_inid: requires integer alpha2");

  MomentTerms t;
  t.gamma1 = moment_hop1(p, n);
  t.gamma2 = moment_hop2(p, n);

  double c = (p.phi + 2.0 * n) / p.al1;
  double b2p = p.B2 * std::pow(p.g1 / p.g2, p.al2 / 2.0);
  double c1p = p.C1 * std::pow(p.g2 / p.g1, p.al1 / 2.0);

  GCall g12 = moment_cross12_gcall(a1, a2, p.mu2, p.B1, c, b2p, p.C1);
  auto G12 = sf::meijer_g_ln(g12.spec, g12.z);
  double lnpref12 = std::log(p.A1) + n * std::log(p.g1) - c * std::log(p.C1) +
                    (p.mu2 - 1.5) * std::log(p.al1) + (p.B1 + c - 1.5) * std::log(p.al2) +
                    0.5 * (2.0 - p.al1 - p.al2) * kLn2Pi - sf::log_gamma(p.mu2);
  t.gamma12 = t.gamma1 - G12.sign * std::exp(lnpref12 + G12.log_abs);

  double rho = p.mu2 + (2.0 * n + p.phi) / p.al2;
  double rho0 = p.mu2 + 2.0 * n / p.al2;
  auto JG = [&](double nu, double r) -> SL {
    GCall g = moment_cross21_gcall(a1, a2, nu, r, c1p, p.B2);
    auto G = sf::meijer_g_ln(g.spec, g.z);
    double lnpref = -r * std::log(p.B2) + (nu - 0.5) * std::log(p.al2) +
                    (r - 0.5) * std::log(p.al1) + 0.5 * (2.0 - p.al1 - p.al2) * kLn2Pi;
    return {lnpref + G.log_abs, G.sign};
  };
  SL j2 = JG(p.B1, rho);
  SL j3 = JG(p.mu1, rho0);
  double lnpref21 = std::log(p.A1) + std::log(p.A2) - (p.phi / p.al1) * std::log(p.C1) +
                    n * std::log(p.g2) - std::log(p.phi) - sf::log_gamma(p.mu2);
  double term_a = j2.sign * std::exp(lnpref21 + (p.phi / p.al1) * std::log(c1p) + j2.lg);
  double term_b = j3.sign * std::exp(lnpref21 + j3.lg);
  t.gamma21 = p.K * sf::gamma_fn(p.mu1) * t.gamma2 + (term_a - term_b);

  t.total = t.gamma1 + t.gamma2 - t.gamma12 - t.gamma21;
  return t;
}

MomentTerms moment_iid(const Scenario& s, double n) {
  if (n < 0.0) throw std::domain_error("moment_iid: requires n >= 0");
  Params p = unpack(s);
  if (std::fabs(p.al1 - p.al2) > 1e-12 || std::fabs(p.mu1 - p.mu2) > 1e-12)
    throw std::domain_error("moment_iid: requires alpha1 == alpha2 and mu1 == mu2");
  double al = p.al1, mu = p.mu1;

  MomentTerms t;
  t.gamma1 = moment_hop1(p, n);
  t.gamma2 = moment_hop2(p, n);

  double c = (p.phi + 2.0 * n) / al;
  double b2p = p.B2 * std::pow(p.g1 / p.g2, al / 2.0);
  double c1p = p.C1 * std::pow(p.g2 / p.g1, al / 2.0);

  // integration by parts: I2 = Gamma(mu) Gamma(mu + 2n/al) C1^{-c} / c
  //                           + (B2'^mu / c) [J(mu+c, B1) - C1^{-c} J(mu, B1+c)]
  double i2 =
      std::exp(sf::log_gamma(mu) + sf::log_gamma(mu + 2.0 * n / al) - c * std::log(p.C1)) / c;
  double jp = laplace_igamma(mu + c, p.B1, b2p, p.C1);
  double jq = laplace_igamma(mu, p.B1 + c, b2p, p.C1);
  i2 += std::exp(mu * std::log(b2p)) / c * (jp - std::exp(-c * std::log(p.C1)) * jq);
  t.gamma12 = t.gamma1 - p.A1 * std::exp(n * std::log(p.g1)) / (al * sf::gamma_fn(mu)) * i2;

  double rho = mu + (p.phi + 2.0 * n) / al;
  double rho0 = mu + 2.0 * n / al;
  double j2 = laplace_igamma(rho, p.B1, p.B2, c1p);
  double j3 = laplace_igamma(rho0, mu, p.B2, c1p);
  double pref21 = p.A1 * p.A2 * std::pow(p.C1, -p.phi / al) * std::exp(n * std::log(p.g2)) /
                  (p.phi * sf::gamma_fn(mu));
  t.gamma21 = p.K * sf::gamma_fn(mu) * t.gamma2 +
              pref21 * (std::exp((p.phi / al) * std::log(c1p)) * j2 - j3);

  t.total = t.gamma1 + t.gamma2 - t.gamma12 - t.gamma21;
  return t;
}

double moment_by_quadrature(const Scenario& s, double n) {
  if (n < 0.0) throw std::domain_error("moment_by_quadrature: requires n >= 0");
  Params p = unpack(s);
  // Amplitude-domain split; both integrands are smooth at the origin and
  // decay exponentially.
  auto term1 = [&](double x) {
    if (x <= 0.0) return 0.0;
    sf::SignedLog g = sf::upper_gamma_ln(p.B1, p.C1 * std::pow(x, p.al1));
    if (g.sign == 0) return 0.0;
    double ln = std::log(p.A1) + (2.0 * n + p.phi - 1.0) * std::log(x) + g.log_abs;
    if (ln < -700.0) return 0.0;
    return g.sign * std::exp(ln) * survival_rf(s, p.g1 * x * x);
  };
  auto term2 = [&](double x) {
    if (x <= 0.0) return 0.0;
    double ln = std::log(p.A2 * p.al2) - sf::log_gamma(p.mu2) +
                (2.0 * n + p.al2 * p.mu2 - 1.0) * std::log(x) - p.B2 * std::pow(x, p.al2);
    if (ln < -700.0) return 0.0;
    return std::exp(ln) * survival_thz(s, p.g2 * x * x);
  };
  double knee1 = std::pow((std::fabs(p.B1) + 6.0) / p.C1, 1.0 / p.al1) + 1.0;
  double knee2 = std::pow((p.mu2 + 6.0) / p.B2, 1.0 / p.al2) + 1.0;
  auto q1 = quad::integrate_semi_infinite(term1, knee1, 1e-11);
  auto q2 = quad::integrate_semi_infinite(term2, knee2, 1e-11);
  double v1 = q1.value * std::exp(n * std::log(p.g1));
  double v2 = q2.value * std::exp(n * std::log(p.g2));
  if (!q1.converged || !q2.converged)
    throw EvalError("moment_by_quadrature: did not reach tolerance", v1 + v2,
                    q1.abs_err + q2.abs_err);
  return v1 + v2;
}

double avg_snr_thz_closed(const Scenario& s) { return moment_hop1(unpack(s), 1.0); }

double avg_snr_rf_closed(const Scenario& s) { return moment_hop2(unpack(s), 1.0); }

double amount_of_fading(const Scenario& s) {
  double m1 = moment_inid(s, 1.0).total;
  double m2 = moment_inid(s, 2.0).total;
  return m2 / (m1 * m1) - 1.0;
}

double amount_of_fading_by_quadrature(const Scenario& s) {
  double m1 = moment_by_quadrature(s, 1.0);
  double m2 = moment_by_quadrature(s, 2.0);
  return m2 / (m1 * m1) - 1.0;
}

SpecialValue avg_snr_special(const Scenario& s, SpecialCase sc) {
  Params p = unpack(s);
  auto near = [](double x, double y) {
    return std::fabs(x - y) < 1e-6 * std::max(1.0, std::fabs(y));
  };
  SpecialValue out;
  if (sc == SpecialCase::nakagami_rayleigh) {
    if (!(near(p.al1, 2) && near(p.mu1, 2) && near(p.phi, 2) && near(p.al2, 2) && near(p.mu2, 1)))
      throw std::domain_error(
          "avg_snr_special: scenario does not match the nakagami_rayleigh pattern");
    double w = 2.0 / (p.s0 * p.s0);  // 2 S0^{-2}
    double u = 1.0 + w;
    out.value =
        p.g1 + 2.0 * p.g2 -
        w * p.g1 *
            (p.g1 - 1.0 / ((std::sqrt(p.g1 / p.g2) + w) * (std::sqrt(p.g1 / p.g2) + w))) -
        p.g2 * (2.0 * u * u * u * u + 6.0 - u * u) / (u * u * u * u);
    out.valid = out.value >= 0.0 && out.value <= p.g1 + p.g2;
    return out;
  }
  if (!(near(p.mu1, 1) && near(p.al2, 2) && near(p.mu2, 1)))
    throw std::domain_error("avg_snr_special: scenario does not match the weibull_rayleigh pattern");
  out.value = p.g2 - std::pow(p.s0, -p.phi) * p.g2 / p.phi;
  out.valid = out.value >= 0.0 && out.value <= p.g2;
  return out;
}

// ---------------------------------------------------------------- capacity --

double capacity_lb_thz(const Scenario& s) {
  Params p = unpack(s);
  return (std::log(p.g1) + (2.0 / p.al1) * (sf::digamma(p.mu1) - std::log(p.C1)) - 2.0 / p.phi) /
         kLn2;
}

double capacity_lb_rf(const Scenario& s) {
  Params p = unpack(s);
  return (std::log(p.g2) + (2.0 / p.al2) * (sf::digamma(p.mu2) - std::log(p.B2))) / kLn2;
}

double capacity_thz_closed(const Scenario& s) {
  Params p = unpack(s);
  Frac r1 = rational_half(p.al1);
  SL c1 = cap_igamma(p.mu1, 1.0, p.a, r1);
  SL c2 = cap_igamma(p.B1, 1.0 + p.phi / 2.0, p.a, r1);
  double v = c1.value() - c2.sign * std::exp((p.phi / p.al1) * std::log(p.a) + c2.lg);
  return p.K * v / kLn2;
}

double capacity_rf_closed(const Scenario& s) {
  Params p = unpack(s);
  Frac r2 = rational_half(p.al2);
  SL c = cap_igamma(p.mu2, 1.0, p.b, r2);
  return c.value() / (sf::gamma_fn(p.mu2) * kLn2);
}

double capacity_relay_inid(const Scenario& s) {
  Params p = unpack(s);
  require_integer(p.mu1, "capacity_relay_inid: requires integer mu1");
  require_integer(p.mu2, "capacity_relay_inid: requires integer mu2");
  PairSeries series{
      &p, [](double nu, double A, double c, Frac r) { return cap_igamma(nu, A, c, r); }, 1.0};
  return p.K / sf::gamma_fn(p.mu2) * series.eval() / kLn2;
}

double capacity_relay_iid(const Scenario& s) {
  Params p = unpack(s);
  if (std::fabs(p.al1 - p.al2) > 1e-12 || std::fabs(p.mu1 - p.mu2) > 1e-12)
    throw std::domain_error("capacity_relay_iid: requires alpha1 == alpha2 and mu1 == mu2");
  require_integer(p.mu1, "capacity_relay_iid: requires integer mu");

  double e1 = capacity_lb_thz(s);
  double e2 = capacity_lb_rf(s);

  // Cross terms by adaptive quadrature of their defining log-kernel
  // integrals in the amplitude domain (the two-variable closed form is out
  // of proportion to this single use).
  auto eta12 = [&](double x) {
    if (x <= 0.0) return 0.0;
    sf::SignedLog g = sf::upper_gamma_ln(p.B1, p.C1 * std::pow(x, p.al1));
    if (g.sign == 0) return 0.0;
    double ln = std::log(p.A1) + (p.phi - 1.0) * std::log(x) + g.log_abs;
    if (ln < -700.0) return 0.0;
    double gamma = p.g1 * x * x;
    return g.sign * std::exp(ln) * std::log(gamma) * (1.0 - survival_rf(s, gamma));
  };
  auto eta21 = [&](double x) {
    if (x <= 0.0) return 0.0;
    double ln = std::log(p.A2 * p.al2) - sf::log_gamma(p.mu2) +
                (p.al2 * p.mu2 - 1.0) * std::log(x) - p.B2 * std::pow(x, p.al2);
    if (ln < -700.0) return 0.0;
    double gamma = p.g2 * x * x;
    return std::exp(ln) * std::log(gamma) * (1.0 - survival_thz(s, gamma));
  };
  double knee1 = std::pow((std::fabs(p.B1) + 6.0) / p.C1, 1.0 / p.al1) + 1.0;
  double knee2 = std::pow((p.mu2 + 6.0) / p.B2, 1.0 / p.al2) + 1.0;
  double e12 = quad::integrate_semi_infinite(eta12, knee1, 1e-10).value / kLn2;
  double e21 = quad::integrate_semi_infinite(eta21, knee2, 1e-10).value / kLn2;
  return e1 + e2 - e12 - e21;
}

double capacity_by_quadrature(const Scenario& s) {
  auto f = [&](double g) { return survival_thz(s, g) * survival_rf(s, g) / (1.0 + g); };
  auto r = quad::integrate_semi_infinite(f, 1.0, 1e-10);
  if (!r.converged)
    throw EvalError("capacity_by_quadrature: did not reach tolerance", r.value / kLn2, r.abs_err);
  return r.value / kLn2;
}

double capacity_by_pdf_quadrature(const Scenario& s) {
  Params p = unpack(s);
  auto term1 = [&](double x) {
    if (x <= 0.0) return 0.0;
    sf::SignedLog g = sf::upper_gamma_ln(p.B1, p.C1 * std::pow(x, p.al1));
    if (g.sign == 0) return 0.0;
    double ln = std::log(p.A1) + (p.phi - 1.0) * std::log(x) + g.log_abs;
    if (ln < -700.0) return 0.0;
    double gamma = p.g1 * x * x;
    return g.sign * std::exp(ln) * std::log1p(gamma) * survival_rf(s, gamma);
  };
  auto term2 = [&](double x) {
    if (x <= 0.0) return 0.0;
    double ln = std::log(p.A2 * p.al2) - sf::log_gamma(p.mu2) +
                (p.al2 * p.mu2 - 1.0) * std::log(x) - p.B2 * std::pow(x, p.al2);
    if (ln < -700.0) return 0.0;
    double gamma = p.g2 * x * x;
    return std::exp(ln) * std::log1p(gamma) * survival_thz(s, gamma);
  };
  double knee1 = std::pow((std::fabs(p.B1) + 6.0) / p.C1, 1.0 / p.al1) + 1.0;
  double knee2 = std::pow((p.mu2 + 6.0) / p.B2, 1.0 / p.al2) + 1.0;
  double v = quad::integrate_semi_infinite(term1, knee1, 1e-10).value +
             quad::integrate_semi_infinite(term2, knee2, 1e-10).value;
  return v / kLn2;
}

CorollaryResult metric_special_cases(const Scenario& s, SpecialMetric metric, SpecialCase sc) {
  Params p = unpack(s);
  auto near = [](double x, double y) {
    return std::fabs(x - y) < 1e-6 * std::max(1.0, std::fabs(y));
  };
  if (sc == SpecialCase::nakagami_rayleigh) {
    if (!(near(p.al1, 2) && near(p.mu1, 2) && near(p.phi, 2) && near(p.al2, 2) && near(p.mu2, 1)))
      throw std::domain_error("metric_special_cases: pattern mismatch (nakagami_rayleigh)");
  } else {
    if (!(near(p.mu1, 1) && near(p.al2, 2) && near(p.mu2, 1)))
      throw std::domain_error("metric_special_cases: pattern mismatch (weibull_rayleigh)");
  }
  CorollaryResult out;
  if (metric == SpecialMetric::capacity) {
    double x = (sc == SpecialCase::nakagami_rayleigh) ? p.g2 + 2.0 / (p.s0 * p.s0) * p.g1 : p.g2;
    double e = sf::exp_scaled_e1(x);
    if (sc == SpecialCase::nakagami_rayleigh)
      out.value = -(1.0 - x * e) / (kLn2 * x) + e / kLn2;
    else
      out.value = e / kLn2;
    out.quadrature = capacity_by_quadrature(s);
    out.valid = std::isfinite(out.value) && out.value >= 0.0;
  } else {
    if (sc == SpecialCase::nakagami_rayleigh) {
      out.value = 1.0 - 1.0 / (1.0 + p.g2) + 1.0 / (2.0 * (1.0 + 2.0 / (p.s0 * p.s0) * p.g1 + p.g2)) -
                  (1.0 + 3.0 * p.g2) / ((1.0 + 2.0 * p.g2) * (1.0 + 2.0 * p.g2));
    } else {
      out.value = (p.g2 + 2.0 * std::pow(p.s0, -p.phi)) / (1.0 + p.g2);
    }
    out.quadrature = ber_by_quadrature(s, Modulation::dbpsk());
    out.valid = std::isfinite(out.value) && out.value >= 0.0 && out.value <= 0.5;
  }
  out.discrepancy = std::fabs(out.value - out.quadrature);
  return out;
}

// --------------------------------------------------------------------- BER --

double ber_thz(const Scenario& s, const Modulation& mod) {
  mod.validate();
  Params p = unpack(s);
  Frac r1 = rational_half(p.al1);
  SL v1 = laplace_igamma_stretched(p.mu1, mod.p, p.a, r1, mod.q);
  SL v2 = laplace_igamma_stretched(p.B1, mod.p + p.phi / 2.0, p.a, r1, mod.q);
  double S = v1.value() - v2.sign * std::exp((p.phi / p.al1) * std::log(p.a) + v2.lg);
  double pe = 0.5 - std::exp(mod.p * std::log(mod.q) - sf::log_gamma(mod.p)) * p.K / 2.0 * S;
  return std::clamp(pe, 0.0, 0.5);
}

double ber_rf(const Scenario& s, const Modulation& mod) {
  mod.validate();
  Params p = unpack(s);
  Frac r2 = rational_half(p.al2);
  SL v = laplace_igamma_stretched(p.mu2, mod.p, p.b, r2, mod.q);
  double pe =
      0.5 - std::exp(mod.p * std::log(mod.q) - sf::log_gamma(mod.p) - sf::log_gamma(p.mu2)) / 2.0 *
                v.value();
  return std::clamp(pe, 0.0, 0.5);
}

double ber_relay_inid(const Scenario& s, const Modulation& mod) {
  mod.validate();
  Params p = unpack(s);
  require_integer(p.mu1, "ber_relay_inid: requires integer mu1");
  require_integer(p.mu2, "ber_relay_inid: requires integer mu2");
  PairSeries series{&p,
                    [&](double nu, double A, double c, Frac r) {
                      return laplace_igamma_stretched(nu, A, c, r, mod.q);
                    },
                    mod.p};
  double S = series.eval();
  double pe = 0.5 - std::exp(mod.p * std::log(mod.q) - sf::log_gamma(mod.p) -
                             sf::log_gamma(p.mu2)) *
                        p.K / 2.0 * S;
  return std::clamp(pe, 0.0, 0.5);
}

double ber_by_quadrature(const Scenario& s, const Modulation& mod) {
  mod.validate();
  // gamma = u^2 removes the integrable endpoint singularity for p < 1
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    double g = u * u;
    double F = channel::e2e_cdf(g, s);
    if (F <= 0.0) return 0.0;
    double ln = (2.0 * mod.p - 1.0) * std::log(u) - mod.q * g;
    return ln < -700.0 ? 0.0 : 2.0 * std::exp(ln) * F;
  };
  double knee = 3.0 * std::sqrt(std::max(1.0, mod.p / mod.q));
  auto r = quad::integrate_semi_infinite(f, knee, 1e-11);
  double pe = std::exp(mod.p * std::log(mod.q) - sf::log_gamma(mod.p)) / 2.0 * r.value;
  if (!r.converged)
    throw EvalError("ber_by_quadrature: did not reach tolerance", pe, r.abs_err);
  return std::clamp(pe, 0.0, 0.5);
}

}  // namespace analytic
}  // namespace thzlink
