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

#ifndef THZLINK_SPECFUN_HPP
#define THZLINK_SPECFUN_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace thzlink {

/// Raised when an iterative evaluation fails to reach its accuracy target.
/// Carries the best value reached and the estimated error at that point.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, double best, double err_estimate)
      : std::runtime_error(what), best_value(best), err_estimate(err_estimate) {}
  double best_value;
  double err_estimate;
};

namespace sf {

/// Gamma function for real argument, Lanczos approximation.
/// Poles at non-positive integers raise std::domain_error.
double gamma_fn(double x);

/// ln Gamma(x) for real x > 0.
double log_gamma(double x);

/// Principal log-gamma on the complex plane minus the poles.
/// exp(log_gamma(z)) == Gamma(z) up to branch multiples of 2*pi*i in the
/// imaginary part; callers that only exponentiate are unaffected.
std::complex<double> log_gamma(std::complex<double> z);

/// Digamma (psi) function for x > 0.
double digamma(double x);

/// Error function (odd, erf(inf) = 1).
double erf_fn(double x);

/// Upper incomplete gamma Gamma(a, x).
/// Supports any real a when x > 0, including negative non-integer a
/// (upward recurrence from the positive-shape region).  x == 0 requires a > 0.
double upper_gamma(double a, double x);

/// ln |Gamma(a, x)| with sign; usable where the plain value under/overflows.
struct SignedLog {
  double log_abs;
  int sign;  // -1, 0, +1
  double value() const;
};
SignedLog upper_gamma_ln(double a, double x);

/// Lower incomplete gamma gamma(a, x), a > 0, x >= 0.
double lower_gamma(double a, double x);

/// Regularized upper gamma Q(a, x) = Gamma(a, x) / Gamma(a), a > 0.
double gamma_q(double a, double x);

/// Regularized lower gamma P(a, x) = 1 - Q(a, x), a > 0.
double gamma_p(double a, double x);

/// e^x E1(x) = e^x Gamma(0, x); stable for arbitrarily large x.
double exp_scaled_e1(double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and z < 1.
/// A Pfaff transformation is applied for z < -0.6 and the Gauss
/// connection formula for z in (0.6, 1); c must not be a non-positive integer.
double gauss_2f1(double a, double b, double c, double z);

/// Regularized 2F1(a, b; c; z) / Gamma(c); defined for all real c including
/// non-positive integers.
double regularized_2f1(double a, double b, double c, double z);

/// Parameter ladder a/k, (a+1)/k, ..., (a+k-1)/k.
std::vector<double> delta_params(int k, double a);

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

}  // namespace sf
}  // namespace thzlink

#endif  // THZLINK_SPECFUN_HPP
