#pragma once

// One-dimensional focal-plane array: M equal strips spanning
// [-D/2, D/2], D = sqrt(array area), with a Gaussian spot of radius rho
// centred at F sin(theta).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoa/beam.hpp"
#include "aoa/numerics.hpp"

namespace aoa {

struct ReceiverGeometry {
  double focal_length = 0.0;  // m, F
  double array_area = 0.0;    // m^2
  int detector_count = 1;     // M
  double spot_radius = 0.0;   // m, rho

  /// Side length D of the array along x.
  [[nodiscard]] double extent() const { return std::sqrt(array_area); }

  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite and positive");
      }
    };
    check(focal_length, "focal_length");
    check(array_area, "array_area");
    check(spot_radius, "spot_radius");
    if (detector_count < 1) throw std::invalid_argument("detector_count must be >= 1");
  }
};

enum class NoiseMode {
  constant,           // sigma_n^2 on every detector
  area_proportional,  // sigma_n^2 scaled by detector area / array area
};

inline std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::constant:
      return "constant";
    case NoiseMode::area_proportional:
      return "area_proportional";
  }
  throw std::invalid_argument("unknown noise mode");
}

inline NoiseMode parse_noise_mode(const std::string& s) {
  if (s == "constant") return NoiseMode::constant;
  if (s == "area_proportional") return NoiseMode::area_proportional;
  throw std::invalid_argument("unknown noise mode '" + s + "'");
}

struct NoiseModel {
  double sigma_n = 1e-6;  // thermal standard deviation (reference detector)
  NoiseMode mode = NoiseMode::constant;
  double sigma_p = 0.0;  // rad, pointing-error standard deviation

  void validate() const {
    if (!(sigma_n > 0.0) || !std::isfinite(sigma_n)) {
      throw std::invalid_argument("sigma_n must be finite and positive");
    }
    if (!(sigma_p >= 0.0) || !std::isfinite(sigma_p)) {
      throw std::invalid_argument("sigma_p must be finite and non-negative");
    }
  }
};

/// Per-detector mean signal and its theta-derivative split into the
/// energy part (alpha) and the location part (beta).
struct DetectorSignal {
  int index = 0;
  double mean = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  [[nodiscard]] double derivative() const { return alpha + beta; }
};

inline double spot_center(const ReceiverGeometry& g, double theta) {
  return g.focal_length * std::sin(theta);
}

inline double spot_center_deriv(const ReceiverGeometry& g, double theta) {
  return g.focal_length * std::cos(theta);
}

namespace detail {
inline void check_index(const ReceiverGeometry& g, int m) {
  if (m < 0 || m >= g.detector_count) {
    throw std::out_of_range("detector index " + std::to_string(m) + " outside [0, " +
                            std::to_string(g.detector_count) + ")");
  }
}
}  // namespace detail

inline Interval detector_bounds(const ReceiverGeometry& g, int m) {
  detail::check_index(g, m);
  const double d = g.extent();
  const double cell = d / static_cast<double>(g.detector_count);
  const double lo = -0.5 * d + cell * static_cast<double>(m);
  const double hi = m + 1 == g.detector_count ? 0.5 * d : -0.5 * d + cell * static_cast<double>(m + 1);
  return {lo, hi};
}

/// Whole-array region [-D/2, D/2].
inline Interval array_bounds(const ReceiverGeometry& g) {
  const double d = g.extent();
  return {-0.5 * d, 0.5 * d};
}

/// Unnormalised spot kernel exp(-u^2 / 2 rho^2).
inline double spot_kernel(double u, double rho) { return std::exp(-u * u / (2.0 * rho * rho)); }

inline double detector_mean(const BeamParams& p, const ReceiverGeometry& g, double theta, int m) {
  detail::check_index(g, m);
  return received_power(p, theta) *
         gauss_mass(detector_bounds(g, m), spot_center(g, theta), g.spot_radius);
}

namespace detail {

// d/dx0 of the unit-mass spot integrated over [lo, hi].
inline double mass_slope(const Interval& iv, double x0, double rho) {
  return (spot_kernel(iv.lo - x0, rho) - spot_kernel(iv.hi - x0, rho)) /
         (std::sqrt(2.0 * std::numbers::pi) * rho);
}

inline DetectorSignal signal_from(double power, double power_deriv, double x0, double x0_deriv,
                                  const Interval& iv, double rho, int m) {
  const double mass = gauss_mass(iv, x0, rho);
  return {m, power * mass, power_deriv * mass, power * x0_deriv * mass_slope(iv, x0, rho)};
}

}  // namespace detail

inline DetectorSignal detector_mean_deriv(const BeamParams& p, const ReceiverGeometry& g,
                                          double theta, int m) {
  detail::check_index(g, m);
  return detail::signal_from(received_power(p, theta), received_power_deriv(p, theta),
                             spot_center(g, theta), spot_center_deriv(g, theta),
                             detector_bounds(g, m), g.spot_radius, m);
}

/// All M detector signals at theta; Lambda0 and its derivative are evaluated once.
inline std::vector<DetectorSignal> detector_signals(const BeamParams& p, const ReceiverGeometry& g,
                                                    double theta) {
  const double power = received_power(p, theta);
  const double power_deriv = received_power_deriv(p, theta);
  const double x0 = spot_center(g, theta);
  const double x0_deriv = spot_center_deriv(g, theta);
  std::vector<DetectorSignal> out;
  out.reserve(static_cast<std::size_t>(g.detector_count));
  for (int m = 0; m < g.detector_count; ++m) {
    out.push_back(detail::signal_from(power, power_deriv, x0, x0_deriv, detector_bounds(g, m),
                                      g.spot_radius, m));
  }
  return out;
}

/// Thermal noise variance of detector m.
inline double noise_variance(const ReceiverGeometry& g, const NoiseModel& n, int m) {
  detail::check_index(g, m);
  const double base = n.sigma_n * n.sigma_n;
  switch (n.mode) {
    case NoiseMode::constant:
      return base;
    case NoiseMode::area_proportional:
      return base * detector_bounds(g, m).width() / g.extent();
  }
  throw std::invalid_argument("unknown noise mode");
}

}  // namespace aoa
