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
// Seeded Monte Carlo channel simulator.  Substreams are keyed by
// (seed, stream index) and merged in stream order, so estimates are
// bit-identical for a given (seed, n_streams, n) regardless of thread count.

#ifndef THZLINK_MC_HPP
#define THZLINK_MC_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "thzlink/analytic.hpp"
#include "thzlink/channel.hpp"

namespace thzlink {
namespace mc {

/// xoshiro256++ stream seeded through SplitMix64 from (seed, stream index).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on (0, 1).
  double next_double();
  /// Standard normal (Box-Muller, one value cached).
  double next_normal();
  /// Gamma(shape, 1) variate, any shape > 0 (Marsaglia-Tsang squeeze;
  /// boosted from shape + 1 when shape < 1).
  double next_gamma(double shape);

 private:
  std::uint64_t s_[4];
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// alpha-mu envelope: omega * (G / mu)^{1/alpha} with G ~ Gamma(mu, 1).
double sample_alpha_mu(const channel::FadingParams& fading, RngStream& rng);

/// Pointing gain in (0, s0]: physical radial-offset model.  The jitter
/// displacement r has E[r^2] = sigma_s^2 (two Gaussian axes), and the gain
/// is s0 * exp(-2 r^2 / w_zeq^2).
double sample_pointing(const channel::PointingParams& params, double sigma_s, RngStream& rng);

/// End-to-end DF SNR draw: min(g1 (hf1 hp)^2, g2 hf2^2).
double sample_e2e_snr(const channel::Scenario& s, RngStream& rng);

struct McEstimate {
  double mean = 0.0;
  double ci_low = 0.0;   // 95% normal-approximation interval
  double ci_high = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  int n_streams = 0;
};

struct McOptions {
  int n_streams = 16;
  int threads = 0;  // 0 = hardware concurrency capped by n_streams
};

McEstimate mc_outage(const channel::Scenario& s, double gamma_th, std::uint64_t n,
                     std::uint64_t seed, const McOptions& opts = {});
McEstimate mc_mean_snr(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                       const McOptions& opts = {});
McEstimate mc_capacity(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                       const McOptions& opts = {});
/// Conditional-error averaging: each draw contributes Gamma(p, q gamma) /
/// (2 Gamma(p)) instead of a bit flip.
McEstimate mc_ber(const channel::Scenario& s, const analytic::Modulation& mod, std::uint64_t n,
                  std::uint64_t seed, const McOptions& opts = {});

/// n end-to-end SNR draws in deterministic stream order.
std::vector<double> mc_draw_e2e(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                                const McOptions& opts = {});

/// Kolmogorov-Smirnov distance between samples and a reference CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace mc
}  // namespace thzlink

#endif  // THZLINK_MC_HPP
