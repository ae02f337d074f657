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

#ifndef THZLINK_QUADRATURE_HPP
#define THZLINK_QUADRATURE_HPP

#include <functional>

namespace thzlink {
namespace quad {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  bool converged = true;

  operator double() const { return value; }
};

/// Adaptive Gauss7-Kronrod15 on [a, b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0);

/// Integral over [0, inf): adaptive panels on [0, knee] plus an
/// exponential-substitution tail on [knee, inf).
QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double knee,
                                   double rel_tol = 1e-10);

}  // namespace quad
}  // namespace thzlink

#endif  // THZLINK_QUADRATURE_HPP
