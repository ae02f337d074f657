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
// Mellin-Barnes evaluation of Meijer's G function on a vertical contour
// Re(s) = c0 chosen inside the strip separating the two pole ladders, with
// hooked (bent) contour ends as a fallback for kernels without exponential
// decay.  All parameters are real, so poles lie on the real axis and the
// integrand is conjugate-symmetric in t, so with the contour derivative
// folded in, G = (1/pi) Im int_0^inf F(s(t)) s'(t) dt.

#include "thzlink/meijer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "thzlink/specfun.hpp"

namespace thzlink {
namespace sf {
namespace {

constexpr double kPi = 3.14159265358979323846264338328;

using cplx = std::complex<double>;

// Gauss7-Kronrod15 nodes (positive half) and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Kernel {
  const MeijerSpec* spec;
  double c0;
  double log_z;
  // Bent-end configuration: for |t| > bend_t0 the contour leaves the
  // vertical with direction (bend_dre, 1) in (Re, Im) per unit t.
  double bend_t0 = std::numeric_limits<double>::infinity();
  double bend_dre = 0.0;

  cplx point(double t) const {
    if (t <= bend_t0) return {c0, t};
    return {c0 + (t - bend_t0) * bend_dre, t};
  }
  cplx derivative(double t) const {
    if (t <= bend_t0) return {0.0, 1.0};
    return {bend_dre, 1.0};
  }
  // log of the integrand F(s(t)) * s'(t) with s traversed by real t.
  cplx log_f(double t) const {
    cplx s = point(t);
    cplx acc = -s * log_z;
    const auto& a = spec->a;
    const auto& b = spec->b;
    for (int j = 0; j < spec->m; ++j) acc += log_gamma(b[static_cast<size_t>(j)] + s);
    for (int k = 0; k < spec->n; ++k) acc += log_gamma(1.0 - a[static_cast<size_t>(k)] - s);
    for (int j = spec->m; j < spec->q(); ++j) acc -= log_gamma(1.0 - b[static_cast<size_t>(j)] - s);
    for (int k = spec->n; k < spec->p(); ++k) acc -= log_gamma(a[static_cast<size_t>(k)] + s);
    return acc + std::log(derivative(t));
  }
};

struct ScaledEval {
  const Kernel* kern;
  double scale;  // subtracted from Re(log_f) before exponentiation
  cplx operator()(double t) const {
    cplx lf = kern->log_f(t);
    double re = lf.real() - scale;
    if (re < -745.0) return {0.0, 0.0};
    return std::exp(cplx(re, lf.imag()));
  }
};

struct PanelResult {
  cplx integral;
  double err;
};

PanelResult gk15(const ScaledEval& f, double lo, double hi) {
  double h = 0.5 * (hi - lo), mid = 0.5 * (lo + hi);
  cplx fk = 0.0, fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (i == 7) {
      cplx fc = f(mid);
      fk += kWgk[7] * fc;
      fg += kWg[3] * fc;
      break;
    }
    cplx fa = f(mid - h * kXgk[i]);
    cplx fb = f(mid + h * kXgk[i]);
    fk += kWgk[i] * (fa + fb);
    if (i % 2 == 1) fg += kWg[i / 2] * (fa + fb);
  }
  fk *= h;
  fg *= h;
  return {fk, std::abs(fk - fg)};
}

void adaptive(const ScaledEval& f, double lo, double hi, double tol, int depth, cplx* sum,
              double* err_acc) {
  PanelResult r = gk15(f, lo, hi);
  if (r.err <= tol || depth >= 28 || (hi - lo) < 1e-12) {
    *sum += r.integral;
    *err_acc += r.err;
    return;
  }
  double mid = 0.5 * (lo + hi);
  adaptive(f, lo, mid, tol * 0.5, depth + 1, sum, err_acc);
  adaptive(f, mid, hi, tol * 0.5, depth + 1, sum, err_acc);
}

}  // namespace

void MeijerSpec::validate_and_guard() {
  if (m < 0 || n < 0 || m > q() || n > p())
    throw std::domain_error("MeijerSpec: require 0 <= m <= q and 0 <= n <= p");
  // Numerator pole ladders collide when some a_k - b_j is a positive integer.
  for (int pass = 0; pass < 4; ++pass) {
    bool touched = false;
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) {
        double d = a[static_cast<size_t>(k)] - b[static_cast<size_t>(j)];
        if (d >= 0.5 && std::fabs(d - std::round(d)) < 1e-9) {
          b[static_cast<size_t>(j)] += 1e-8 * (j + 1);
          touched = true;
        }
      }
    }
    if (!touched) return;
  }
}

namespace {

MeijerLogResult evaluate(const MeijerSpec& spec_in, double z, const MeijerOptions& opts) {
  if (z <= 0.0) throw std::domain_error("meijer_g: requires z > 0");
  MeijerSpec spec = spec_in;
  spec.validate_and_guard();

  // Contour window between the numerator pole ladders.
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int j = 0; j < spec.m; ++j) lo = std::max(lo, -spec.b[static_cast<size_t>(j)]);
  for (int k = 0; k < spec.n; ++k) hi = std::min(hi, 1.0 - spec.a[static_cast<size_t>(k)]);
  if (!std::isfinite(lo) && !std::isfinite(hi)) {
    lo = -1.0;
    hi = 1.0;
  } else if (!std::isfinite(lo)) {
    lo = hi - 2.0;
  } else if (!std::isfinite(hi)) {
    hi = lo + 2.0;
  }
  if (!(lo < hi))
    throw EvalError("meijer_g: contour cannot separate the pole sets", 0.0,
                    std::numeric_limits<double>::infinity());

  // The integral is contour-independent but the cancellation scale is not:
  // z^{-c0} can dwarf the result when |ln z| is large.  Scan a few abscissas
  // and keep the one with the smallest kernel magnitude at t = 0.
  Kernel kern{&spec, 0.0, std::log(z)};
  {
    double best_c0 = 0.0, best_mag = std::numeric_limits<double>::infinity();
    for (double frac : {0.06, 0.2, 0.4, 0.6, 0.8, 0.94}) {
      double f2 = std::clamp(frac + opts.contour_shift, 0.04, 0.96);
      kern.c0 = lo + f2 * (hi - lo);
      double mag = kern.log_f(0.0).real();
      if (mag < best_mag) {
        best_mag = mag;
        best_c0 = kern.c0;
      }
    }
    kern.c0 = best_c0;
  }

  int delta = spec.delta();
  if (delta < 0)
    throw EvalError("meijer_g: kernel grows along every vertical contour", 0.0,
                    std::numeric_limits<double>::infinity());
  if (delta == 0) {
    if (std::fabs(kern.log_z) < 1e-12)
      throw EvalError("meijer_g: non-decaying kernel at |z| = 1", 0.0,
                      std::numeric_limits<double>::infinity());
    // Hooked contour: bend the ends by pi/3 toward the half-plane where
    // z^{-s} decays.
    double pmax = 1.0;
    for (double v : spec.a) pmax = std::max(pmax, std::fabs(v));
    for (double v : spec.b) pmax = std::max(pmax, std::fabs(v));
    kern.bend_t0 = 2.0 + pmax;
    double slope = std::tan(kPi / 3.0);
    kern.bend_dre = (kern.log_z > 0 ? 1.0 : -1.0) * slope;
  }

  // Scouting pass: fixed-rule panels to find the scale, truncation point and
  // a rough magnitude of the integral.
  double osc = 1.0 + std::fabs(kern.log_z) + std::fabs(kern.bend_dre) * (1.0 + std::fabs(kern.log_z));
  double h = std::min(2.0, 6.28 / osc) / std::max(0.25, opts.node_factor);

  double scale = kern.log_f(0.0).real();
  {
    double probe = scale;
    for (double t : {0.2 * h, 0.5 * h, h}) probe = std::max(probe, kern.log_f(t).real());
    scale = probe;
  }

  ScaledEval f{&kern, scale};
  cplx rough = 0.0;
  double t_end = 0.0;
  int quiet = 0;
  const int max_panels = 20000;
  for (int i = 0; i < max_panels; ++i) {
    double a0 = i * h, b0 = (i + 1) * h;
    PanelResult r = gk15(f, a0, b0);
    rough += r.integral;
    t_end = b0;
    double mag = std::abs(f(b0));
    double peak = std::max(1.0, std::abs(rough) / h);
    if (mag < 1e-18 * peak && std::abs(r.integral) < 1e-18 * std::max(1e-300, std::abs(rough))) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    if (i + 1 == max_panels)
      throw EvalError("meijer_g: contour tail did not decay", rough.real() * std::exp(scale) / kPi,
                      std::numeric_limits<double>::infinity());
  }

  // Refinement to the requested accuracy.  With the contour derivative
  // folded into the integrand and conjugate symmetry of the kernel,
  // G = (1/pi) * Im int_0^inf F(s(t)) s'(t) dt.
  double ref = std::max(std::abs(rough.imag()), 1e-280);
  double tol = std::max(opts.target_accuracy * ref, 1e-16 * ref) * 0.25;
  cplx sum = 0.0;
  double err = 0.0;
  int n_init = std::max(4, static_cast<int>(t_end / h / 4));
  double step = t_end / n_init;
  for (int i = 0; i < n_init; ++i)
    adaptive(f, i * step, (i + 1) * step, tol / n_init, 0, &sum, &err);

  double im_part = sum.imag();
  MeijerLogResult out;
  out.rel_err = (std::fabs(im_part) > 0) ? err / std::fabs(im_part) : err;
  if (im_part == 0.0) {
    out.sign = 0;
    out.log_abs = -std::numeric_limits<double>::infinity();
  } else {
    out.sign = im_part > 0 ? 1 : -1;
    out.log_abs = scale + std::log(std::fabs(im_part) / kPi);
  }
  return out;
}

}  // namespace

MeijerResult meijer_g(const MeijerSpec& spec, double z, const MeijerOptions& opts) {
  MeijerLogResult lg = evaluate(spec, z, opts);
  MeijerResult r;
  if (lg.sign == 0) {
    r.value = 0.0;
    r.abs_err = 0.0;
    return r;
  }
  r.value = lg.sign * std::exp(lg.log_abs);
  r.abs_err = std::fabs(r.value) * lg.rel_err;
  return r;
}

MeijerLogResult meijer_g_ln(const MeijerSpec& spec, double z, const MeijerOptions& opts) {
  return evaluate(spec, z, opts);
}

}  // namespace sf
}  // namespace thzlink
