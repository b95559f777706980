#pragma once

// Receiver with Gaussian angular pointing jitter Theta_p ~ N(0, sigma_p^2).
//
// To first order in Theta_p each detector sees S_m(theta) + gamma_m(theta)
// Theta_p + X_m, so the total noise on detector m is Gaussian with variance
// sigma_m^2 = gamma_m^2 sigma_p^2 + sigma_{n,m}^2, and the Fisher information
// is
//
//   J(theta) = sum_m S_m'^2 / sigma_m^2 + 2 sigma_m'^2 / sigma_m^2.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "aoa/beam.hpp"
#include "aoa/fisher.hpp"
#include "aoa/focal_plane.hpp"

namespace aoa {

struct PointingChannel {
  BeamParams beam;
  ReceiverGeometry geometry;
  NoiseModel noise;

  void validate() const {
    beam.validate();
    geometry.validate();
    noise.validate();
  }

  /// Non-empty when sigma_p exceeds a tenth of the beamwidth, where the
  /// first-order jitter model stops being trustworthy.
  [[nodiscard]] std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    const double phi = beamwidth(beam);
    if (noise.sigma_p > 0.1 * phi) {
      out.push_back("sigma_p = " + std::to_string(noise.sigma_p) + " rad exceeds 0.1*phi = " +
                    std::to_string(0.1 * phi) + " rad; linearized pointing model may be inaccurate");
    }
    return out;
  }
};

enum class DerivativeMode {
  finite_difference,  // central difference of gamma_m, step 1e-6 * max(1, |theta|)
  analytic,           // closed form through Lambda0''
};

namespace detail {
inline bool on_array(const ReceiverGeometry& g, double x) {
  const Interval a = array_bounds(g);
  return x >= a.lo && x <= a.hi;
}
}  // namespace detail

/// Focal-plane intensity with the spot shifted by the full jitter theta + theta_p.
inline double exact_spot_intensity(const PointingChannel& ch, double theta, double x,
                                   double theta_p) {
  const ReceiverGeometry& g = ch.geometry;
  if (!detail::on_array(g, x)) return 0.0;
  const double rho = g.spot_radius;
  const double shifted = theta + theta_p;
  return received_power(ch.beam, shifted) * spot_kernel(x - spot_center(g, shifted), rho) /
         (std::sqrt(2.0 * std::numbers::pi) * rho);
}

/// First-order expansion of exact_spot_intensity in theta_p: the unperturbed
/// spot plus kernel * (Lambda0 (x - F sin) F cos / rho^2 + Lambda0') * theta_p.
inline double linearized_spot_intensity(const PointingChannel& ch, double theta, double x,
                                        double theta_p) {
  const ReceiverGeometry& g = ch.geometry;
  if (!detail::on_array(g, x)) return 0.0;
  const double rho = g.spot_radius;
  const double power = received_power(ch.beam, theta);
  const double power_deriv = received_power_deriv(ch.beam, theta);
  const double u = x - spot_center(g, theta);
  const double kernel = spot_kernel(u, rho) / (std::sqrt(2.0 * std::numbers::pi) * rho);
  const double gain = power * u * spot_center_deriv(g, theta) / (rho * rho) + power_deriv;
  return kernel * power + kernel * gain * theta_p;
}

/// Signal term S_m; identical to the thermal-channel detector mean.
inline double signal_mean_sm(const PointingChannel& ch, double theta, int m) {
  return detector_mean(ch.beam, ch.geometry, theta, m);
}

/// Pointing-noise gain gamma_m: the integral over detector m of the
/// theta_p-coefficient of the linearized spot.
inline double gamma_m(const PointingChannel& ch, double theta, int m) {
  const ReceiverGeometry& g = ch.geometry;
  const Interval iv = detector_bounds(g, m);
  const double x0 = spot_center(g, theta);
  const double rho = g.spot_radius;
  return received_power(ch.beam, theta) * spot_center_deriv(g, theta) *
             detail::mass_slope(iv, x0, rho) +
         received_power_deriv(ch.beam, theta) * gauss_mass(iv, x0, rho);
}

inline double gamma_m_deriv(const PointingChannel& ch, double theta, int m,
                            DerivativeMode mode = DerivativeMode::finite_difference) {
  if (mode == DerivativeMode::finite_difference) {
    const double h = 1e-6 * std::max(1.0, std::abs(theta));
    return central_diff([&](double t) { return gamma_m(ch, t, m); }, theta, h);
  }
  const ReceiverGeometry& g = ch.geometry;
  const Interval iv = detector_bounds(g, m);
  const double rho = g.spot_radius;
  const double x0 = spot_center(g, theta);
  const double dx0 = spot_center_deriv(g, theta);
  const double ddx0 = -g.focal_length * std::sin(theta);
  const auto d = detail::power_derivatives(ch.beam, theta);

  const double slope = detail::mass_slope(iv, x0, rho);
  const double ua = iv.lo - x0;
  const double ub = iv.hi - x0;
  const double slope_x0 = (ua * spot_kernel(ua, rho) - ub * spot_kernel(ub, rho)) /
                          (rho * rho * std::sqrt(2.0 * std::numbers::pi) * rho);
  return d.second * gauss_mass(iv, x0, rho) + 2.0 * d.first * dx0 * slope +
         d.value * ddx0 * slope + d.value * dx0 * dx0 * slope_x0;
}

/// sigma_m = sqrt(gamma_m^2 sigma_p^2 + sigma_{n,m}^2).
inline double total_noise_sigma(const PointingChannel& ch, double theta, int m) {
  const double gm = gamma_m(ch, theta, m);
  const double sp = ch.noise.sigma_p;
  return std::sqrt(gm * gm * sp * sp + noise_variance(ch.geometry, ch.noise, m));
}

/// d sigma_m / d theta = gamma_m gamma_m' sigma_p^2 / sigma_m.
inline double total_noise_sigma_deriv(const PointingChannel& ch, double theta, int m,
                                      DerivativeMode mode = DerivativeMode::finite_difference) {
  const double sp = ch.noise.sigma_p;
  if (sp == 0.0) return 0.0;
  const double gm = gamma_m(ch, theta, m);
  return gm * gamma_m_deriv(ch, theta, m, mode) * sp * sp / total_noise_sigma(ch, theta, m);
}

/// Fisher information of theta with thermal noise and pointing jitter.
inline double fisher_information_general(const PointingChannel& ch, double theta,
                                         DerivativeMode mode = DerivativeMode::finite_difference) {
  double info = 0.0;
  for (const DetectorSignal& s : detector_signals(ch.beam, ch.geometry, theta)) {
    const double sigma = total_noise_sigma(ch, theta, s.index);
    const double dsigma = total_noise_sigma_deriv(ch, theta, s.index, mode);
    const double ds = s.alpha + s.beta;
    info += (ds * ds + 2.0 * dsigma * dsigma) / (sigma * sigma);
  }
  return info;
}

inline double crlb_general(const PointingChannel& ch, double theta,
                           DerivativeMode mode = DerivativeMode::finite_difference) {
  return inverse_or_inf(fisher_information_general(ch, theta, mode));
}

}  // namespace aoa
