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

#ifndef THZLINK_TESTS_TEST_SUPPORT_HPP
#define THZLINK_TESTS_TEST_SUPPORT_HPP

#include <cmath>

#include "thzlink/channel.hpp"

namespace test_support {

// Pointing geometry used across the figure-style scenarios.
inline thzlink::channel::PointingConfig pointing_cm(double sigma_cm, double ratio = 6.0,
                                                    double r1_cm = 10.0) {
  thzlink::channel::PointingConfig cfg;
  cfg.r_1 = r1_cm / 100.0;
  cfg.w_z = ratio * cfg.r_1;
  cfg.sigma_s = sigma_cm / 100.0;
  return cfg;
}

// Scenario directly from faded-free SNRs.
inline thzlink::channel::Scenario scenario(double a1, double m1, double a2, double m2, double g1,
                                           double g2, double sigma_cm = 15.0) {
  thzlink::channel::FadingParams thz{a1, m1, 1.0}, rf{a2, m2, 1.0};
  return thzlink::channel::make_scenario_from_snrs(g1, g2, thz, pointing_cm(sigma_cm), rf);
}

// Scenario from the reference link budgets (defaults follow the simulation
// parameter table: 275 GHz / 6 GHz, 55 / 25 dBi, stated noise powers).
inline thzlink::channel::Scenario budget_scenario(double a1, double m1, double a2, double m2,
                                                  double p_dbm, double d1_m, double d2_m,
                                                  double sigma_cm = 15.0) {
  thzlink::channel::ThzLinkBudget thz;
  thz.d_m = d1_m;
  thz.tx_power_dbm = p_dbm;
  thzlink::channel::RfLinkBudget rf;
  rf.d_m = d2_m;
  rf.tx_power_dbm = p_dbm;
  thzlink::channel::FadingParams thz_fad{a1, m1, 1.0}, rf_fad{a2, m2, 1.0};
  return thzlink::channel::make_scenario(thz, thz_fad, pointing_cm(sigma_cm), rf, rf_fad);
}

inline bool close_rel(double got, double want, double rtol) {
  return std::fabs(got - want) <= rtol * std::fabs(want);
}

inline bool close_abs(double got, double want, double atol) {
  return std::fabs(got - want) <= atol;
}

}  // namespace test_support

#endif  // THZLINK_TESTS_TEST_SUPPORT_HPP
