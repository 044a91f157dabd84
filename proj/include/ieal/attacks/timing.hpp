#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ieal/cipher.hpp"

namespace ieal::attacks {

/// One instrumented-encryption observation: pixel count n and its duration
/// (abstract cost units; the model only needs proportionality).
struct TimingSample {
  std::uint64_t pixels = 0;
  double duration = 0.0;
};

struct TimingModel {
  double pixel_cost = 0.0;  // fitted per-pixel-per-round cost
  double overhead = 0.0;    // fitted intercept
  std::uint64_t estimated_t = 0;
  double residual = 0.0;  // rms residual of the linear fit
  bool clamped = false;   // negative raw estimate clamped to zero
};

/// Simulated instrumented oracle: encryption cost scales with n(T+1), the
/// dominant term of the cipher's running time. Noise is multiplicative and
/// uniform in [-noise_fraction, +noise_fraction]; seeded, so every trial is
/// reproducible. The hidden key enters only through T.
inline std::vector<TimingSample> simulate_timing_samples(
    const Key& hidden_key, const std::vector<std::uint64_t>& pixel_counts,
    double pixel_cost, double overhead, double noise_fraction,
    std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<TimingSample> samples;
  samples.reserve(pixel_counts.size());
  for (const std::uint64_t n : pixel_counts) {
    // rng() / 2^32 -> [0,1); mapped by hand so the stream is identical on
    // every platform, unlike the unspecified std distributions.
    const double u = static_cast<double>(rng()) * (1.0 / 4294967296.0);
    const double eps = (2.0 * u - 1.0) * noise_fraction;
    const double clean = pixel_cost * static_cast<double>(n) *
                         static_cast<double>(hidden_key.t + 1);
    samples.push_back({n, clean * (1.0 + eps) + overhead});
  }
  return samples;
}

namespace detail {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

inline LineFit least_squares(const std::vector<TimingSample>& samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("timing: need at least 2 samples");
  }
  double sx = 0, sy = 0;
  for (const auto& s : samples) {
    sx += static_cast<double>(s.pixels);
    sy += s.duration;
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& s : samples) {
    const double dx = static_cast<double>(s.pixels) - mx;
    sxx += dx * dx;
    sxy += dx * (s.duration - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("timing: need at least 2 distinct sizes");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double se = 0;
  for (const auto& s : samples) {
    const double r = s.duration -
                     (fit.slope * static_cast<double>(s.pixels) +
                      fit.intercept);
    se += r * r;
  }
  fit.rms_residual = std::sqrt(se / n);
  return fit;
}

}  // namespace detail

/// Calibration run: the attacker times their own instrumented encryption at
/// a T they chose, so slope / (T+1) is the per-pixel-per-round cost.
inline double calibrate_pixel_cost(const std::vector<TimingSample>& samples,
                                   std::uint64_t known_t) {
  return detail::least_squares(samples).slope /
         static_cast<double>(known_t + 1);
}

/// Fits duration = slope * n + overhead and reads T off the slope: the
/// duration scales with (T+1), so T = slope / reference - 1, rounded. Half a
/// key (T but not S) from timing alone.
inline TimingModel timing_estimate(const std::vector<TimingSample>& samples,
                                   double pixel_cost_reference) {
  if (pixel_cost_reference <= 0.0) {
    throw std::invalid_argument("timing: reference cost must be positive");
  }
  const detail::LineFit fit = detail::least_squares(samples);
  TimingModel model;
  model.overhead = fit.intercept;
  model.residual = fit.rms_residual;
  const double raw = fit.slope / pixel_cost_reference - 1.0;
  const double rounded = std::round(raw);
  if (rounded < 0.0) {
    model.estimated_t = 0;
    model.clamped = true;
  } else {
    model.estimated_t = static_cast<std::uint64_t>(rounded);
  }
  model.pixel_cost =
      fit.slope / static_cast<double>(model.estimated_t + 1);
  return model;
}

}  // namespace ieal::attacks
