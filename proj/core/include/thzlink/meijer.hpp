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

#ifndef THZLINK_MEIJER_HPP
#define THZLINK_MEIJER_HPP

#include <cstddef>
#include <vector>

namespace thzlink {
namespace sf {

/// Order and parameter lists of G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q).
/// The first n entries of `a` and the first m entries of `b` are the
/// "numerator" parameters of the Mellin-Barnes kernel.
struct MeijerSpec {
  int m = 0;
  int n = 0;
  std::vector<double> a;  // size p
  std::vector<double> b;  // size q

  int p() const { return static_cast<int>(a.size()); }
  int q() const { return static_cast<int>(b.size()); }

  /// 2(m+n) - p - q; the vertical-line kernel decays like
  /// exp(-pi/2 * delta * |t|).
  int delta() const { return 2 * (m + n) - p() - q(); }

  /// Throws std::domain_error on invalid orders; perturbs numerator
  /// b-parameters that collide with numerator a-parameters minus a positive
  /// integer (the contour could not separate the pole sets otherwise).
  void validate_and_guard();
};

struct MeijerOptions {
  /// Extra shift applied to the automatically chosen contour abscissa,
  /// as a fraction of the admissible window (-0.5, 0.5).
  double contour_shift = 0.0;
  /// Multiplies the base panel count; 2.0 doubles the quadrature nodes.
  double node_factor = 1.0;
  /// Absolute-or-relative accuracy target.
  double target_accuracy = 1e-10;
};

struct MeijerResult {
  double value = 0.0;
  double abs_err = 0.0;  // achieved-accuracy estimate
};

/// Same as MeijerResult but in log scale, for prefactor-heavy closed forms
/// whose intermediate G values would overflow a double.
struct MeijerLogResult {
  double log_abs = 0.0;
  int sign = 0;
  double rel_err = 0.0;
};

/// Evaluates the Mellin-Barnes contour integral for z > 0.
/// Throws EvalError when the pole sets cannot be separated or the contour
/// quadrature fails to converge to the requested accuracy.
MeijerResult meijer_g(const MeijerSpec& spec, double z, const MeijerOptions& opts = {});

/// Log-scaled evaluation; exact same contour machinery.
MeijerLogResult meijer_g_ln(const MeijerSpec& spec, double z, const MeijerOptions& opts = {});

}  // namespace sf
}  // namespace thzlink

#endif  // THZLINK_MEIJER_HPP
