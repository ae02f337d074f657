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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.hpp"
#include "thzlink/channel.hpp"
#include "thzlink/quadrature.hpp"

using namespace thzlink;
using namespace thzlink::channel;
using test_support::pointing_cm;

TEST_CASE("buck saturation pressure") {
  CHECK(buck_saturation_pressure(296.0, 101325.0) ==
        doctest::Approx(2784.4372230416720519).epsilon(1e-12));
  CHECK(buck_saturation_pressure(300.0, 101325.0) > buck_saturation_pressure(290.0, 101325.0));
  // smooth over the admissible range
  double prev = buck_saturation_pressure(240.0, 101325.0);
  for (double t = 240.01; t <= 330.0; t += 0.01) {
    double cur = buck_saturation_pressure(t, 101325.0);
    CHECK(std::fabs(cur - prev) / prev < 1e-3);
    prev = cur;
  }
  CHECK_THROWS_AS((void)buck_saturation_pressure(100.0, 101325.0), std::domain_error);
}

TEST_CASE("molecular absorption coefficient") {
  // dry air: only the cubic background survives
  double f = 275e9;
  double dry = absorption_coefficient(f, 296.0, 0.0, 101325.0);
  double poly = 5.54e-37 * f * f * f - 3.94e-25 * f * f + 9.06e-14 * f - 6.36e-3;
  CHECK(dry == doctest::Approx(poly).epsilon(1e-14));
  // 50-digit reference at the default atmosphere
  CHECK(absorption_coefficient(275e9, 296.0, 50.0, 101325.0) ==
        doctest::Approx(0.00038835772006764442019).epsilon(1e-12));
  // more water vapor absorbs more
  CHECK(absorption_coefficient(f, 296.0, 80.0, 101325.0) >
        absorption_coefficient(f, 296.0, 20.0, 101325.0));
  CHECK_THROWS_AS((void)absorption_coefficient(f, 296.0, 50.0, -1.0), std::domain_error);
  CHECK_THROWS_AS((void)absorption_coefficient(f, 296.0, 130.0, 101325.0), std::domain_error);
}

TEST_CASE("THz path gain") {
  ThzLinkBudget b;
  b.d_m = 50.0;
  CHECK(thz_path_gain(b) == doctest::Approx(0.54336492465673520816).epsilon(1e-12));
  // free-space law dominates when absorption is negligible: doubling the
  // distance halves the amplitude up to the absorption correction
  ThzLinkBudget b30 = b, b60 = b;
  b30.d_m = 30.0;
  b60.d_m = 60.0;
  double k = absorption_coefficient(b.f_hz, b.temperature_k, b.humidity_percent, b.pressure_pa);
  CHECK(thz_path_gain(b60) / thz_path_gain(b30) ==
        doctest::Approx(0.5 * std::exp(-0.5 * k * 30.0)).epsilon(1e-12));
  CHECK(thz_path_gain(b30) > thz_path_gain(b));
  CHECK(thz_path_gain(b) > 0.0);
  CHECK(thz_path_gain(b) < 1.0);
}

TEST_CASE("RF path gain in dB") {
  CHECK(rf_path_gain_db(1.0, 1e9) == doctest::Approx(-32.4).epsilon(1e-14));
  CHECK(rf_path_gain_db(10.0, 1e9) == doctest::Approx(-49.7).epsilon(1e-14));
  CHECK(rf_path_gain_db(50.0, 6e9) == doctest::Approx(-77.355206082685983).epsilon(1e-13));
  CHECK_THROWS_AS((void)rf_path_gain_db(0.0, 1e9), std::domain_error);
}

TEST_CASE("pointing parameters reproduce the calibration values") {
  auto p8 = pointing_params(pointing_cm(8.0));
  CHECK(p8.s0 == doctest::Approx(0.053971895709614674606).epsilon(1e-12));
  CHECK(p8.phi == doctest::Approx(28.957581778636355404).epsilon(1e-12));
  auto p15 = pointing_params(pointing_cm(15.0));
  CHECK(p15.s0 == doctest::Approx(p8.s0).epsilon(1e-14));  // s0 free of sigma
  CHECK(p15.phi == doctest::Approx(8.2368232614787855371).epsilon(1e-12));
  // phi ~ 1/sigma^2
  auto pbig = pointing_params(pointing_cm(1500.0));
  CHECK(pbig.phi == doctest::Approx(p15.phi * 1e-4).epsilon(1e-12));
  CHECK_THROWS_AS((void)pointing_params(pointing_cm(8.0, 4.0)), std::domain_error);
}

TEST_CASE("THz SNR distributions: normalization and Theorem-style CDF") {
  // 20 random-ish tuples spanning the admissible ranges
  std::uint64_t st = 99;
  auto rnd = [&]() {
    st = st * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(st >> 11) / 9007199254740992.0;
  };
  for (int i = 0; i < 20; ++i) {
    double a1 = 1.0 + 5.0 * rnd();
    double m1 = 0.5 + 3.5 * rnd();
    double sigma_cm = 8.0 + 7.0 * rnd();
    auto s = test_support::scenario(a1, m1, 2.0, 1.0, 50.0 + 1000.0 * rnd(), 100.0, sigma_cm);
    CAPTURE(i);
    CAPTURE(a1);
    CAPTURE(m1);
    auto pdf1 = [&](double u) { return s.f1(u * u) * 2.0 * u; };
    double knee = std::sqrt(s.consts.gamma0_1) * s.pointing.s0;
    auto n1 = quad::integrate_semi_infinite(pdf1, knee, 1e-10);
    CHECK(std::fabs(n1.value - 1.0) < 1e-8);
    auto pdf2 = [&](double u) { return s.f2(u * u) * 2.0 * u; };
    auto n2 = quad::integrate_semi_infinite(pdf2, std::sqrt(s.consts.gamma0_2), 1e-10);
    CHECK(std::fabs(n2.value - 1.0) < 1e-8);
    CHECK(std::fabs(s.F1(s.consts.gamma0_1 * 1e9) - 1.0) < 1e-8);
  }
}

TEST_CASE("CDF equals the quadrature of the density, non-integer mu included") {
  for (double mu1 : {0.5, 1.3, 2.7}) {
    auto s = test_support::scenario(2.0, mu1, 2.0, 1.0, 300.0, 200.0, 8.0);
    CAPTURE(mu1);
    for (int i = 0; i < 30; ++i) {
      double g = s.consts.gamma0_1 * std::pow(10.0, -6.0 + 6.5 * i / 29.0);
      auto q = quad::integrate(
          [&](double u) { return s.f1(u * u) * 2.0 * u; }, 0.0, std::sqrt(g), 1e-11);
      CHECK(std::fabs(s.F1(g) - q.value) < 1e-8);
    }
  }
}

TEST_CASE("CDFs are monotone and bounded") {
  auto s = test_support::scenario(2.0, 0.5, 2.4, 1.7, 1000.0, 800.0, 8.0);
  double prev1 = 0.0, prev2 = 0.0, preve = 0.0;
  CHECK(s.F1(0.0) == 0.0);
  CHECK(s.F2(0.0) == 0.0);
  for (int i = 0; i <= 60; ++i) {
    double g = std::pow(10.0, -6.0 + 10.0 * i / 60.0);
    double F1 = s.F1(g), F2 = s.F2(g), Fe = e2e_cdf(g, s);
    CHECK(F1 >= prev1 - 1e-12);
    CHECK(F2 >= prev2 - 1e-12);
    CHECK(Fe >= preve - 1e-12);
    CHECK(Fe >= std::max(F1, F2) - 1e-12);
    CHECK(Fe <= 1.0);
    // algebraic reformulation matches to machine precision
    CHECK(Fe == doctest::Approx(1.0 - (1.0 - F1) * (1.0 - F2)).epsilon(1e-14));
    prev1 = F1;
    prev2 = F2;
    preve = Fe;
  }
}

TEST_CASE("RF hop reduces to the exponential SNR law for Rayleigh fading") {
  auto s = test_support::scenario(2.0, 1.0, 2.0, 1.0, 100.0, 70.0);
  for (double g : {0.1, 7.0, 200.0}) {
    CHECK(s.F2(g) == doctest::Approx(1.0 - std::exp(-g / 70.0)).epsilon(1e-12));
  }
}

TEST_CASE("RF density is the derivative of the RF distribution") {
  auto s = test_support::scenario(2.0, 1.0, 2.4, 1.7, 100.0, 90.0);
  double g = 0.7 * s.consts.gamma0_2;
  double h = 1e-4 * g;
  double num = (s.F2(g + h) - s.F2(g - h)) / (2.0 * h);
  CHECK(std::fabs(num - s.f2(g)) / s.f2(g) < 1e-6);
}

TEST_CASE("degenerate RF hop: end-to-end collapses onto the THz CDF") {
  auto s = test_support::scenario(2.0, 1.3, 2.0, 1.0, 500.0, 1e30, 8.0);
  for (double g : {1.0, 50.0, 400.0}) {
    CHECK(e2e_cdf(g, s) == doctest::Approx(s.F1(g)).epsilon(1e-12));
  }
}

TEST_CASE("density at the faded-free point deep inside the pointing cut") {
  // reference value from the amplitude-domain density via change of
  // variables, evaluated at 50 digits; the value sits 294 orders below one
  FadingParams thz{2.0, 2.0, 1.0}, rf{2.0, 1.0, 1.0};
  PointingParams pp{0.054, 28.9576, 0.0};
  auto c = make_derived_constants(thz, pp, rf, 100.0, 100.0);
  CHECK(snr_pdf_thz(100.0, c, thz) * 100.0 ==
        doctest::Approx(1.313771825065558233e-294).epsilon(1e-9));
  CHECK(snr_cdf_thz(0.1, c, {2.0, 0.5, 1.0}) == doctest::Approx(0.0).epsilon(1.0));
}

TEST_CASE("scenario builder resolves budgets to faded-free SNRs") {
  auto s = test_support::budget_scenario(2.0, 4.0, 2.0, 1.0, 10.0, 30.0, 30.0);
  CHECK(s.consts.gamma0_1 == doctest::Approx(71986976.329525708628).epsilon(1e-12));
  CHECK(s.consts.gamma0_2 == doctest::Approx(1225399584.0183556975).epsilon(1e-12));
  CHECK(s.epsilon == 1.0);
  // stated noise default; computed mode shifts the THz noise to -69 dBm
  ThzLinkBudget thz;
  thz.noise_power_dbm = -174.0 + 10.0 * std::log10(10e9) + 5.0;
  CHECK(thz.noise_power_dbm == doctest::Approx(-69.0).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  auto s = test_support::scenario(2.0, 1.0, 2.0, 1.0, 10.0, 10.0);
  CHECK_THROWS_AS((void)s.f1(-1.0), std::domain_error);
  CHECK_THROWS_AS((void)s.F1(-1.0), std::domain_error);
  CHECK_THROWS_AS((void)s.f2(-1.0), std::domain_error);
  CHECK_THROWS_AS((void)s.F2(-1.0), std::domain_error);
  CHECK_THROWS_AS((void)e2e_cdf(-1.0, s), std::domain_error);
  CHECK_THROWS_AS((void)e2e_pdf(-1.0, s), std::domain_error);
  FadingParams bad{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
