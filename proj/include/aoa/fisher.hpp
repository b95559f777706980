#pragma once

// Fisher information and Cramer-Rao bounds of theta for the thermal-noise
// channel Y_m = Lambda_m(theta) + X_m, X_m ~ N(0, sigma_m^2) independent.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "aoa/beam.hpp"
#include "aoa/focal_plane.hpp"

namespace aoa {

inline constexpr double kInfiniteBound = std::numeric_limits<double>::infinity();

/// sum_m (alpha_m + beta_m)^2 / sigma_m^2 split into its location (beta^2),
/// energy (alpha^2) and cross (2 alpha beta) sums.
struct FisherBreakdown {
  double location = 0.0;
  double energy = 0.0;
  double cross = 0.0;
  double total = 0.0;
};

inline double inverse_or_inf(double information) {
  return information > 0.0 ? 1.0 / information : kInfiniteBound;
}

/// Thermal-noise Fisher information. sigma_p in n is ignored here; see
/// pointing.hpp for the channel with pointing jitter.
inline FisherBreakdown fisher_information(const BeamParams& p, const ReceiverGeometry& g,
                                          const NoiseModel& n, double theta) {
  FisherBreakdown f;
  for (const DetectorSignal& s : detector_signals(p, g, theta)) {
    const double inv_var = 1.0 / noise_variance(g, n, s.index);
    const double d = s.alpha + s.beta;
    f.location += s.beta * s.beta * inv_var;
    f.energy += s.alpha * s.alpha * inv_var;
    f.cross += 2.0 * s.alpha * s.beta * inv_var;
    f.total += d * d * inv_var;
  }
  return f;
}

inline double crlb(const BeamParams& p, const ReceiverGeometry& g, const NoiseModel& n,
                   double theta) {
  return inverse_or_inf(fisher_information(p, g, n, theta).total);
}

/// Bound obtained from the spot-location term alone.
inline double crlb_location_only(const BeamParams& p, const ReceiverGeometry& g,
                                 const NoiseModel& n, double theta) {
  return inverse_or_inf(fisher_information(p, g, n, theta).location);
}

struct SweepRow {
  double theta = 0.0;
  FisherBreakdown fisher;
  double crlb = kInfiniteBound;
  double crlb_location_only = kInfiniteBound;
};

using SweepResult = std::vector<SweepRow>;

/// One row per grid angle, in grid order.
inline SweepResult sweep_theta(const BeamParams& p, const ReceiverGeometry& g, const NoiseModel& n,
                               std::span<const double> grid) {
  SweepResult rows;
  rows.reserve(grid.size());
  for (double theta : grid) {
    SweepRow r;
    r.theta = theta;
    r.fisher = fisher_information(p, g, n, theta);
    r.crlb = inverse_or_inf(r.fisher.total);
    r.crlb_location_only = inverse_or_inf(r.fisher.location);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace aoa
