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

#include "thzlink/analytic.hpp"
#include "thzlink/meijer.hpp"
#include "thzlink/specfun.hpp"

using namespace thzlink::sf;

namespace {

MeijerSpec exp_spec() {
  MeijerSpec s;
  s.m = 1;
  s.b = {0.0};
  return s;
}

MeijerSpec igamma_spec(double a) {
  MeijerSpec s;
  s.m = 2;
  s.a = {1.0};
  s.b = {a, 0.0};
  return s;
}

MeijerSpec binom_spec(double a) {
  MeijerSpec s;
  s.m = 1;
  s.n = 1;
  s.a = {1.0 - a};
  s.b = {0.0};
  return s;
}

}  // namespace

TEST_CASE("identity suite at z in {0.1, 1, 10}") {
  for (double z : {0.1, 1.0, 10.0}) {
    CAPTURE(z);
    auto e = meijer_g(exp_spec(), z);
    CHECK(e.value == doctest::Approx(std::exp(-z)).epsilon(1e-10));
    auto g = meijer_g(igamma_spec(1.5), z);
    CHECK(g.value == doctest::Approx(upper_gamma(1.5, z)).epsilon(1e-10));
    auto b = meijer_g(binom_spec(1.7), z);
    CHECK(b.value ==
          doctest::Approx(gamma_fn(1.7) * std::pow(1.0 + z, -1.7)).epsilon(1e-10));
  }
}

TEST_CASE("incomplete gamma identity at the spec example point") {
  auto g = meijer_g(igamma_spec(1.5), 0.6);
  CHECK(g.value == doctest::Approx(upper_gamma(1.5, 0.6)).epsilon(1e-10));
  CHECK(g.value == doctest::Approx(0.66733269597197314916).epsilon(1e-10));
  CHECK(g.abs_err < 1e-8);
}

TEST_CASE("cross-moment kernel value frozen from a 50-digit evaluation") {
  // order (4,4;6,6) kernel of the first moment cross term with
  // alpha1 = alpha2 = 2, mu1 = 4, mu2 = 1, n = 1, sigma_s = 15 cm pointing
  MeijerSpec s;
  s.m = 4;
  s.n = 4;
  s.a = {-2.0, -1.5, -2.0592058153696964, -1.5592058153696964, 0.5, 1.0};
  s.b = {0.5, 1.0, 0.0, 0.5, -2.5592058153696964, -2.0592058153696964};
  auto g = meijer_g(s, 0.7);
  CHECK(g.value == doctest::Approx(0.14177970158927729746).epsilon(1e-8));
}

TEST_CASE("node doubling changes the result by less than the error estimate") {
  MeijerSpec specs[3] = {exp_spec(), igamma_spec(0.8), binom_spec(2.3)};
  for (auto& s : specs) {
    for (double z : {0.3, 2.0}) {
      MeijerOptions base, fine;
      fine.node_factor = 2.0;
      auto r1 = meijer_g(s, z, base);
      auto r2 = meijer_g(s, z, fine);
      CHECK(std::fabs(r1.value - r2.value) <=
            std::max(r1.abs_err, 1e-14 * std::fabs(r1.value)) + 1e-15);
    }
  }
}

TEST_CASE("contour shift leaves the value unchanged") {
  MeijerSpec s = igamma_spec(1.2);
  MeijerOptions shifted;
  shifted.contour_shift = 0.17;
  auto a = meijer_g(s, 0.9);
  auto b = meijer_g(s, 0.9, shifted);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
}

TEST_CASE("pole collision guard perturbs duplicated ladders") {
  MeijerSpec s;
  s.m = 1;
  s.n = 1;
  s.a = {1.0};  // a - b = 1: the ladders touch at a single point
  s.b = {0.0};
  s.validate_and_guard();
  CHECK(s.b[0] != 0.0);  // nudged apart
  CHECK(std::fabs(s.b[0]) < 1e-6);
  // structurally interleaved ladders stay unseparable and must report it
  MeijerSpec bad;
  bad.m = 1;
  bad.n = 1;
  bad.a = {2.5};
  bad.b = {0.0};
  CHECK_THROWS_AS((void)meijer_g(bad, 0.5), thzlink::EvalError);
}

TEST_CASE("invalid orders and non-positive argument are rejected") {
  MeijerSpec bad;
  bad.m = 2;  // m > q
  bad.b = {0.0};
  CHECK_THROWS_AS((void)meijer_g(bad, 1.0), std::domain_error);
  CHECK_THROWS_AS((void)meijer_g(exp_spec(), 0.0), std::domain_error);
  CHECK_THROWS_AS((void)meijer_g(exp_spec(), -2.0), std::domain_error);
}

TEST_CASE("log-scaled evaluation matches the plain one") {
  MeijerSpec s = igamma_spec(2.5);
  auto plain = meijer_g(s, 0.4);
  auto logv = meijer_g_ln(s, 0.4);
  CHECK(logv.sign == 1);
  CHECK(std::exp(logv.log_abs) == doctest::Approx(plain.value).epsilon(1e-12));
}

TEST_CASE("randomized cross-moment-shaped calls match an independent contour") {
  // Same shapes as the moment closed form; the oracle re-runs the contour
  // integral with doubled node count and a shifted abscissa.
  std::uint64_t state = 12345;
  auto rnd = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) / 9007199254740992.0;
  };
  for (int i = 0; i < 10; ++i) {
    int a1 = 1 + static_cast<int>(rnd() * 3);
    int a2 = 1 + static_cast<int>(rnd() * 3);
    double mu2 = 0.5 + 2.5 * rnd();
    double c = 1.0 + 5.0 * rnd();
    double b1 = (0.2 + 3.0 * rnd()) - c;  // keeps c + b1 = mu1 + 2n/alpha1 > 0
    double b2p = 0.2 + 3.0 * rnd();
    double c1 = 0.5 + 3.0 * rnd();
    auto call = thzlink::analytic::moment_cross12_gcall(a1, a2, mu2, b1, c, b2p, c1);
    CAPTURE(i);
    CAPTURE(a1);
    CAPTURE(a2);
    MeijerOptions oracle;
    oracle.node_factor = 2.0;
    oracle.contour_shift = 0.13;
    oracle.target_accuracy = 1e-12;
    auto v = meijer_g(call.spec, call.z);
    auto w = meijer_g(call.spec, call.z, oracle);
    CHECK(v.value == doctest::Approx(w.value).epsilon(1e-8));
  }
}
