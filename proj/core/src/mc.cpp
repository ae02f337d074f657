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

#include "thzlink/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "thzlink/specfun.hpp"

namespace thzlink {
namespace mc {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Kahan-compensated accumulator; summation order is fixed per stream.
struct Accum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct Partial {
  Accum sum, sum_sq;
};

McEstimate reduce(const std::vector<Partial>& partials, std::uint64_t n, std::uint64_t seed,
                  int n_streams) {
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& p : partials) {
    sum += p.sum.sum;
    sum_sq += p.sum_sq.sum;
  }
  McEstimate e;
  e.n_samples = n;
  e.seed = seed;
  e.n_streams = n_streams;
  e.mean = sum / static_cast<double>(n);
  double var = std::max(0.0, (sum_sq - static_cast<double>(n) * e.mean * e.mean) /
                                 (static_cast<double>(n) - 1.0));
  double half = 1.959963984540054 * std::sqrt(var / static_cast<double>(n));
  e.ci_low = e.mean - half;
  e.ci_high = e.mean + half;
  return e;
}

// Dispatches streams over a small thread pool; stream index assignment and
// per-stream draw counts are independent of the thread count.
template <typename PerDraw>
McEstimate run_estimator(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                         const McOptions& opts, PerDraw per_draw) {
  if (n < 10000) throw std::domain_error("mc: need at least 1e4 samples");
  int n_streams = std::max(1, opts.n_streams);
  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n_streams);

  std::vector<Partial> partials(static_cast<size_t>(n_streams));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= n_streams) return;
      std::uint64_t base = n / static_cast<std::uint64_t>(n_streams);
      std::uint64_t extra = n % static_cast<std::uint64_t>(n_streams);
      std::uint64_t count = base + (static_cast<std::uint64_t>(idx) < extra ? 1 : 0);
      RngStream rng(seed, static_cast<std::uint64_t>(idx));
      Partial& p = partials[static_cast<size_t>(idx)];
      for (std::uint64_t i = 0; i < count; ++i) {
        double v = per_draw(s, rng);
        p.sum.add(v);
        p.sum_sq.add(v * v);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reduce(partials, n, seed, n_streams);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t st = seed;
  (void)splitmix64(st);
  st ^= 0xA3C59AC2ULL + stream * 0x9E3779B97F4A7C15ULL;
  for (auto& word : s_) word = splitmix64(st);
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::next_double() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = next_double(), u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double c = std::cos(6.283185307179586476925286766559 * u2);
  double sn = std::sin(6.283185307179586476925286766559 * u2);
  cached_ = r * sn;
  has_cached_ = true;
  return r * c;
}

double RngStream::next_gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("next_gamma: shape must be positive");
  if (shape < 1.0) {
    double g = next_gamma(shape + 1.0);
    double u = next_double();
    return g * std::pow(u, 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = next_double();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_alpha_mu(const channel::FadingParams& fading, RngStream& rng) {
  double g = rng.next_gamma(fading.mu);
  return fading.omega * std::pow(g / fading.mu, 1.0 / fading.alpha);
}

double sample_pointing(const channel::PointingParams& params, double sigma_s, RngStream& rng) {
  double ax = sigma_s / std::sqrt(2.0);
  double x = ax * rng.next_normal();
  double y = ax * rng.next_normal();
  double r2 = x * x + y * y;
  return params.s0 * std::exp(-2.0 * r2 / (params.w_zeq * params.w_zeq));
}

double sample_e2e_snr(const channel::Scenario& s, RngStream& rng) {
  double hf1 = sample_alpha_mu(s.thz_fading, rng);
  double hp = sample_pointing(s.pointing, s.pointing_cfg.sigma_s, rng);
  double hf2 = sample_alpha_mu(s.rf_fading, rng);
  double g1 = s.consts.gamma0_1 * hf1 * hf1 * hp * hp;
  double g2 = s.consts.gamma0_2 * hf2 * hf2;
  return std::min(g1, g2);
}

McEstimate mc_outage(const channel::Scenario& s, double gamma_th, std::uint64_t n,
                     std::uint64_t seed, const McOptions& opts) {
  if (gamma_th < 0.0) throw std::domain_error("mc_outage: requires gamma_th >= 0");
  return run_estimator(s, n, seed, opts, [gamma_th](const channel::Scenario& sc, RngStream& rng) {
    return sample_e2e_snr(sc, rng) < gamma_th ? 1.0 : 0.0;
  });
}

McEstimate mc_mean_snr(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                       const McOptions& opts) {
  return run_estimator(s, n, seed, opts, [](const channel::Scenario& sc, RngStream& rng) {
    return sample_e2e_snr(sc, rng);
  });
}

McEstimate mc_capacity(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                       const McOptions& opts) {
  constexpr double inv_ln2 = 1.4426950408889634073599246810019;
  return run_estimator(s, n, seed, opts, [](const channel::Scenario& sc, RngStream& rng) {
    return std::log1p(sample_e2e_snr(sc, rng)) * inv_ln2;
  });
}

McEstimate mc_ber(const channel::Scenario& s, const analytic::Modulation& mod, std::uint64_t n,
                  std::uint64_t seed, const McOptions& opts) {
  mod.validate();
  bool dbpsk = mod.p == 1.0;
  double p = mod.p, q = mod.q;
  return run_estimator(s, n, seed, opts, [=](const channel::Scenario& sc, RngStream& rng) {
    double g = sample_e2e_snr(sc, rng);
    if (dbpsk) return 0.5 * std::exp(-q * g);
    return 0.5 * sf::gamma_q(p, q * g);
  });
}

std::vector<double> mc_draw_e2e(const channel::Scenario& s, std::uint64_t n, std::uint64_t seed,
                                const McOptions& opts) {
  int n_streams = std::max(1, opts.n_streams);
  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, n_streams);
  std::vector<double> out(n);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int idx = next.fetch_add(1);
      if (idx >= n_streams) return;
      std::uint64_t base = n / static_cast<std::uint64_t>(n_streams);
      std::uint64_t extra = n % static_cast<std::uint64_t>(n_streams);
      std::uint64_t count = base + (static_cast<std::uint64_t>(idx) < extra ? 1 : 0);
      std::uint64_t offset = static_cast<std::uint64_t>(idx) * base +
                             std::min<std::uint64_t>(static_cast<std::uint64_t>(idx), extra);
      RngStream rng(seed, static_cast<std::uint64_t>(idx));
      for (std::uint64_t i = 0; i < count; ++i) out[offset + i] = sample_e2e_snr(s, rng);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double F = cdf(samples[i]);
    d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - F));
    d = std::max(d, std::fabs(static_cast<double>(i) / n - F));
  }
  return d;
}

}  // namespace mc
}  // namespace thzlink
