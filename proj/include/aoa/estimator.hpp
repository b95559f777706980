#pragma once

// Monte-Carlo check of the bounds: draw detector outputs, estimate theta by
// maximum likelihood, and compare the empirical MSE with the CRLB.
//
// Two estimators run on the same observations:
//   * joint: the full signal model, so both spot energy and spot location
//     inform the estimate;
//   * location-only: the spot amplitude is an unknown nuisance that is
//     profiled out by least squares at every candidate theta.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "aoa/beam.hpp"
#include "aoa/fisher.hpp"
#include "aoa/focal_plane.hpp"
#include "aoa/numerics.hpp"
#include "aoa/pointing.hpp"

namespace aoa {

inline constexpr const char* kGeneratorName = "mt19937_64 (splitmix64-seeded per trial)";

struct Observation {
  std::vector<double> outputs;
  double truth_theta = 0.0;
  std::uint64_t seed = 0;
};

struct McReport {
  double theta = 0.0;
  int trials = 0;
  double mse_joint = 0.0;
  double mse_location_only = 0.0;
  double crlb_joint = 0.0;
  double crlb_location_only = 0.0;
  double mean_bias = 0.0;
};

struct EstimatorOptions {
  std::size_t grid_points = 512;
  double tolerance = 1e-10;    // golden-section bracket width, rad
  double edge_margin = 1e-3;   // search runs over (-pi/2 + margin, pi/2 - margin)
  unsigned threads = 0;        // 0: hardware concurrency
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the independent substream used by trial `index`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// One draw of Y_m = Lambda_m(theta + Theta_p) + X_m. The shifted spot uses
/// the exact model; Theta_p is only drawn when sigma_p > 0.
inline Observation sample_observation(const BeamParams& p, const ReceiverGeometry& g,
                                      const NoiseModel& n, double theta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  double shifted = theta;
  if (n.sigma_p > 0.0) shifted += n.sigma_p * unit(rng);
  Observation obs;
  obs.truth_theta = theta;
  obs.seed = seed;
  obs.outputs.reserve(static_cast<std::size_t>(g.detector_count));
  for (int m = 0; m < g.detector_count; ++m) {
    const double sd = std::sqrt(noise_variance(g, n, m));
    obs.outputs.push_back(detector_mean(p, g, shifted, m) + sd * unit(rng));
  }
  return obs;
}

namespace detail {

inline Interval search_interval(const EstimatorOptions& opts) {
  const double half = std::numbers::pi / 2.0 - opts.edge_margin;
  return {-half, half};
}

inline void check_observation(const Observation& obs, const ReceiverGeometry& g) {
  if (obs.outputs.size() != static_cast<std::size_t>(g.detector_count)) {
    throw std::invalid_argument("observation length does not match detector count");
  }
}

}  // namespace detail

/// Log-likelihood of theta under the full model (constant terms dropped when
/// sigma_p = 0).
inline double log_likelihood_joint(const Observation& obs, const BeamParams& p,
                                   const ReceiverGeometry& g, const NoiseModel& n, double theta) {
  double ll = 0.0;
  if (n.sigma_p > 0.0) {
    const PointingChannel ch{p, g, n};
    for (int m = 0; m < g.detector_count; ++m) {
      const double sigma = total_noise_sigma(ch, theta, m);
      const double r = obs.outputs[static_cast<std::size_t>(m)] - detector_mean(p, g, theta, m);
      ll -= std::log(sigma) + r * r / (2.0 * sigma * sigma);
    }
    return ll;
  }
  const double power = received_power(p, theta);
  const double x0 = spot_center(g, theta);
  for (int m = 0; m < g.detector_count; ++m) {
    const double mean = power * gauss_mass(detector_bounds(g, m), x0, g.spot_radius);
    const double r = obs.outputs[static_cast<std::size_t>(m)] - mean;
    ll -= r * r / (2.0 * noise_variance(g, n, m));
  }
  return ll;
}

/// Profile log-likelihood with the spot amplitude maximised out:
/// A*(theta) = <Y, s> / <s, s> in the noise-weighted inner product, where
/// s_m(theta) is the unit-mass spot integrated over detector m.
inline double log_likelihood_location_only(const Observation& obs, const ReceiverGeometry& g,
                                           const NoiseModel& n, double theta) {
  const double x0 = spot_center(g, theta);
  double ys = 0.0;
  double ss = 0.0;
  double yy = 0.0;
  for (int m = 0; m < g.detector_count; ++m) {
    const double w = 1.0 / noise_variance(g, n, m);
    const double s = gauss_mass(detector_bounds(g, m), x0, g.spot_radius);
    const double y = obs.outputs[static_cast<std::size_t>(m)];
    ys += w * y * s;
    ss += w * s * s;
    yy += w * y * y;
  }
  if (ss <= 0.0) return -0.5 * yy;
  return -0.5 * (yy - ys * ys / ss);
}

inline double ml_estimate_joint(const Observation& obs, const BeamParams& p,
                                const ReceiverGeometry& g, const NoiseModel& n,
                                const EstimatorOptions& opts = {}) {
  detail::check_observation(obs, g);
  const auto best = maximize_1d(
      [&](double t) { return log_likelihood_joint(obs, p, g, n, t); }, detail::search_interval(opts),
      opts.tolerance, MaximizeOptions{opts.grid_points});
  return best.argmax;
}

inline double ml_estimate_location_only(const Observation& obs, const BeamParams& /*p*/,
                                        const ReceiverGeometry& g, const NoiseModel& n,
                                        const EstimatorOptions& opts = {}) {
  detail::check_observation(obs, g);
  const auto best = maximize_1d(
      [&](double t) { return log_likelihood_location_only(obs, g, n, t); },
      detail::search_interval(opts), opts.tolerance, MaximizeOptions{opts.grid_points});
  return best.argmax;
}

/// Runs both estimators on `trials` common observations. Trials may run on
/// several threads; the per-trial seeds depend only on (seed, trial index) and
/// the reduction runs in trial order, so the report is independent of the
/// thread count.
inline McReport monte_carlo(const BeamParams& p, const ReceiverGeometry& g, const NoiseModel& n,
                            double theta, int trials, std::uint64_t seed,
                            const EstimatorOptions& opts = {}) {
  if (trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");

  const auto count = static_cast<std::size_t>(trials);
  std::vector<double> joint(count);
  std::vector<double> location(count);
  std::vector<std::exception_ptr> failures(count);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        const Observation obs = sample_observation(p, g, n, theta, trial_seed(seed, i));
        joint[i] = ml_estimate_joint(obs, p, g, n, opts);
        location[i] = ml_estimate_location_only(obs, p, g, n, opts);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned workers = opts.threads == 0 ? std::thread::hardware_concurrency() : opts.threads;
  workers = std::clamp(workers, 1U, static_cast<unsigned>(count));
  if (workers == 1) {
    run(0, count);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, chunk * w);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  McReport r;
  r.theta = theta;
  r.trials = trials;
  double sj = 0.0;
  double sl = 0.0;
  double bias = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double ej = joint[i] - theta;
    const double el = location[i] - theta;
    sj += ej * ej;
    sl += el * el;
    bias += ej;
  }
  r.mse_joint = sj / static_cast<double>(count);
  r.mse_location_only = sl / static_cast<double>(count);
  r.mean_bias = bias / static_cast<double>(count);
  if (n.sigma_p > 0.0) {
    r.crlb_joint = crlb_general(PointingChannel{p, g, n}, theta);
  } else {
    r.crlb_joint = crlb(p, g, n, theta);
  }
  r.crlb_location_only = crlb_location_only(p, g, n, theta);
  return r;
}

}  // namespace aoa
