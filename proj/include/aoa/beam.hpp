#pragma once

// Far-field Gaussian beam and the power it delivers to a receive aperture as
// a function of angle-of-arrival.
//
// The received spot power is
//
//   P(theta) = I0 / sqrt(2 pi (L phi)^2) * exp(-W(u) / 2) * pi a^2,
//   u(theta) = I0^2 tan^2(theta) / (2 pi L^4 phi^4),
//
// with W the principal Lambert W branch. All angles are radians, lengths
// metres, powers Watts.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "aoa/numerics.hpp"

namespace aoa {

struct BeamParams {
  double power_i0 = 0.0;         // W
  double wavelength = 0.0;       // m
  double waist = 0.0;            // m, w0
  double link_distance = 0.0;    // m, L
  double aperture_radius = 0.0;  // m, a

  static BeamParams from_waist(double power_i0, double wavelength, double waist,
                               double link_distance, double aperture_radius) {
    BeamParams p{power_i0, wavelength, waist, link_distance, aperture_radius};
    p.validate();
    return p;
  }

  /// Back-computes the waist from a half-angle beamwidth phi = lambda / (pi w0).
  static BeamParams from_beamwidth(double power_i0, double wavelength, double beamwidth,
                                   double link_distance, double aperture_radius) {
    if (!(beamwidth > 0.0) || !std::isfinite(beamwidth)) {
      throw std::invalid_argument("beamwidth must be finite and positive");
    }
    return from_waist(power_i0, wavelength, wavelength / (std::numbers::pi * beamwidth),
                      link_distance, aperture_radius);
  }

  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite and positive");
      }
    };
    check(power_i0, "power_i0");
    check(wavelength, "wavelength");
    check(waist, "waist");
    check(link_distance, "link_distance");
    check(aperture_radius, "aperture_radius");
  }
};

/// Half-angle beamwidth lambda / (pi w0).
inline double beamwidth(const BeamParams& p) { return p.wavelength / (std::numbers::pi * p.waist); }

/// Exact beam radius w(L) = w0 sqrt(1 + (lambda L / (pi w0^2))^2).
inline double beam_radius(const BeamParams& p, double distance) {
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    throw std::domain_error("beam_radius: distance must be finite and non-negative");
  }
  const double z = p.wavelength * distance / (std::numbers::pi * p.waist * p.waist);
  return p.waist * std::hypot(1.0, z);
}

/// Far-field footprint radius L * phi at the configured link distance.
inline double footprint_radius(const BeamParams& p) { return p.link_distance * beamwidth(p); }

/// Model-validity diagnostics. Empty when the far-field and small-aperture
/// assumptions both hold.
inline std::vector<std::string> beam_warnings(const BeamParams& p) {
  std::vector<std::string> out;
  const double fresnel = p.wavelength * p.link_distance / (std::numbers::pi * p.waist * p.waist);
  if (fresnel < 10.0) {
    out.push_back("far-field approximation weak: lambda*L/(pi*w0^2) = " + std::to_string(fresnel) +
                  " < 10");
  }
  const double fp = footprint_radius(p);
  const double ratio = (fp * fp) / (p.aperture_radius * p.aperture_radius);
  if (ratio < 10.0) {
    out.push_back("aperture not small against beam footprint: (L*phi/a)^2 = " +
                  std::to_string(ratio) + " < 10");
  }
  return out;
}

namespace detail {

inline void check_angle(double theta, const char* what) {
  if (!std::isfinite(theta)) throw std::domain_error(std::string(what) + ": non-finite angle");
}

inline bool inside_half_plane(double theta) { return std::abs(theta) < std::numbers::pi / 2.0; }

/// Peak intensity I0 / sqrt(2 pi (L phi)^2).
inline double peak_intensity(const BeamParams& p) {
  return p.power_i0 / (std::sqrt(2.0 * std::numbers::pi) * footprint_radius(p));
}

/// Coefficient c in u(theta) = c tan^2 theta.
inline double w_coefficient(const BeamParams& p) {
  const double s = footprint_radius(p);
  const double s2 = s * s;
  return p.power_i0 * p.power_i0 / (2.0 * std::numbers::pi * s2 * s2);
}

}  // namespace detail

/// Lambert-W argument I0^2 tan^2(theta) / (2 pi L^4 phi^4).
inline double w_argument(const BeamParams& p, double theta) {
  const double t = std::tan(theta);
  return detail::w_coefficient(p) * t * t;
}

/// Far-field transverse profile y(x) = I0 / sqrt(2 pi (L phi)^2) exp(-x^2 / 2 (L phi)^2).
inline double intensity_profile(const BeamParams& p, double x) {
  const double s = footprint_radius(p);
  return detail::peak_intensity(p) * std::exp(-x * x / (2.0 * s * s));
}

/// Transverse offset x(theta) = L phi sqrt(W(u(theta))) at which the profile
/// takes the value seen at angle theta.
inline double offset_for_angle(const BeamParams& p, double theta) {
  detail::check_angle(theta, "offset_for_angle");
  return footprint_radius(p) * std::sqrt(lambert_w0(w_argument(p, theta)));
}

/// Intensity as a function of angle-of-arrival; zero outside (-pi/2, pi/2).
inline double intensity_vs_aoa(const BeamParams& p, double theta) {
  detail::check_angle(theta, "intensity_vs_aoa");
  if (!detail::inside_half_plane(theta)) return 0.0;
  return detail::peak_intensity(p) * std::exp(-0.5 * lambert_w0(w_argument(p, theta)));
}

/// Spot power Lambda0(theta) collected by an aperture of radius a.
inline double received_power(const BeamParams& p, double theta) {
  return intensity_vs_aoa(p, theta) * std::numbers::pi * p.aperture_radius * p.aperture_radius;
}

namespace detail {

struct PowerDerivatives {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

// With W = u e^{-W} and u = c tan^2, the singular factor sec*csc*W/(1+W) in
// dLambda0/dtheta rewrites as c e^{-W} tan sec^2 / (1+W), which is regular at 0.
inline PowerDerivatives power_derivatives(const BeamParams& p, double theta) {
  check_angle(theta, "received_power_deriv");
  if (!inside_half_plane(theta)) return {};
  const double c = w_coefficient(p);
  const double t = std::tan(theta);
  const double w = lambert_w0(c * t * t);
  const double e = std::exp(-w);
  const double sec2 = 1.0 + t * t;
  const double value = received_power(p, theta);
  // q = -Lambda0' / Lambda0
  const double q = c * e * t * sec2 / (1.0 + w);
  const double dq = c * e * sec2 * sec2 / (1.0 + w) *
                    (2.0 / ((1.0 + w) * (1.0 + w)) - std::cos(2.0 * theta));
  return {value, -value * q, value * (q * q - dq)};
}

}  // namespace detail

/// dLambda0/dtheta. Equals -Lambda0 sec(theta) csc(theta) W/(1+W); 0 at theta = 0.
inline double received_power_deriv(const BeamParams& p, double theta) {
  return detail::power_derivatives(p, theta).first;
}

/// d^2 Lambda0 / dtheta^2 in closed form.
inline double received_power_deriv2(const BeamParams& p, double theta) {
  return detail::power_derivatives(p, theta).second;
}

}  // namespace aoa
