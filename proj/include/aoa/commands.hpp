#pragma once

// CLI subcommands. Each builds a Table from a resolved config; run_command
// renders it, and the caller decides where the text goes.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aoa/beam.hpp"
#include "aoa/estimator.hpp"
#include "aoa/fisher.hpp"
#include "aoa/pointing.hpp"
#include "aoa/report.hpp"
#include "aoa/scenario.hpp"

namespace aoa {

struct RunContext {
  std::string command;
  std::string profile = "default";
  ScenarioConfig config;
  unsigned threads = 0;
};

namespace detail {

inline Table make_table(const RunContext& ctx) {
  Table t;
  t.metadata = {{"tool", std::string(kToolName) + " " + kToolVersion},
                {"command", ctx.command},
                {"profile", ctx.profile}};
  t.config = config_entries(ctx.config);
  return t;
}

inline void add_warnings(Table& t, const std::vector<std::string>& ws) {
  for (const auto& w : ws) {
    if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end()) t.warnings.push_back(w);
  }
}

inline void require_single(const std::vector<double>& v, const char* key, const char* cmd) {
  if (v.size() != 1) throw ConfigError({std::string(key) + ": '" + cmd + "' takes exactly one value"});
}

inline void require_single(const std::vector<int>& v, const char* key, const char* cmd) {
  if (v.size() != 1) throw ConfigError({std::string(key) + ": '" + cmd + "' takes exactly one value"});
}

}  // namespace detail

/// Energy-only Fisher information vs theta, one group of rows per beamwidth.
inline Table cmd_fisher(const RunContext& ctx) {
  const ScenarioConfig& c = ctx.config;
  c.validate();
  detail::require_single(c.detector_counts, "receiver.detector_count", "fisher");
  Table t = detail::make_table(ctx);
  t.columns = {"theta_rad", "phi_rad", "fisher_energy"};
  const ReceiverGeometry g = c.geometry(c.detector_counts.front());
  const NoiseModel n = c.noise();
  for (double phi : c.resolved_beamwidths()) {
    const BeamParams p = c.waist ? c.beam() : c.beam(phi);
    detail::add_warnings(t, beam_warnings(p));
    for (const SweepRow& r : sweep_theta(p, g, n, c.sweep.resolve(phi))) {
      t.rows.push_back({r.theta, phi, r.fisher.energy});
    }
  }
  return t;
}

/// Joint and location-only CRLB vs theta for every (beamwidth, M) pair.
inline Table cmd_crlb(const RunContext& ctx) {
  const ScenarioConfig& c = ctx.config;
  c.validate();
  Table t = detail::make_table(ctx);
  t.columns = {"theta_rad", "phi_rad", "detector_count", "crlb_joint", "crlb_location_only"};
  const NoiseModel n = c.noise();
  for (double phi : c.resolved_beamwidths()) {
    const BeamParams p = c.waist ? c.beam() : c.beam(phi);
    detail::add_warnings(t, beam_warnings(p));
    for (int m : c.detector_counts) {
      const ReceiverGeometry g = c.geometry(m);
      for (const SweepRow& r : sweep_theta(p, g, n, c.sweep.resolve(phi))) {
        t.rows.push_back({r.theta, phi, static_cast<double>(m), r.crlb, r.crlb_location_only});
      }
    }
  }
  return t;
}

/// CRLB with pointing jitter: a sigma_p = 0 reference column followed by one
/// column per configured positive sigma_p.
inline Table cmd_crlb_pointing(const RunContext& ctx) {
  const ScenarioConfig& c = ctx.config;
  c.validate();
  detail::require_single(c.detector_counts, "receiver.detector_count", "crlb-pointing");
  const std::vector<double> phis = c.resolved_beamwidths();
  detail::require_single(phis, "beam.beamwidth", "crlb-pointing");
  const double phi = phis.front();
  const BeamParams p = c.waist ? c.beam() : c.beam(phi);
  const ReceiverGeometry g = c.geometry(c.detector_counts.front());

  // Columns are labelled with sigma_p as configured (suffix "phi" when given
  // in beamwidth units) so the names stay short and exact.
  const std::string suffix = c.sigma_p_units == AngleUnits::phi ? "phi" : "";
  const std::vector<double> rad = c.sigma_p_rad(phi);

  Table t = detail::make_table(ctx);
  detail::add_warnings(t, beam_warnings(p));
  t.columns = {"theta_rad", "crlb_sigma_p_0"};
  std::vector<PointingChannel> channels{PointingChannel{p, g, c.noise(0.0)}};
  for (std::size_t i = 0; i < rad.size(); ++i) {
    if (!(rad[i] > 0.0)) continue;
    t.columns.push_back("crlb_sigma_p_" + format_double(c.sigma_p[i]) + suffix);
    channels.push_back(PointingChannel{p, g, c.noise(rad[i])});
    detail::add_warnings(t, channels.back().warnings());
  }
  for (double theta : c.sweep.resolve(phi)) {
    std::vector<double> row{theta};
    for (const auto& ch : channels) row.push_back(crlb_general(ch, theta));
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Monte-Carlo reports over the mc theta grid, using the first beamwidth,
/// detector count and sigma_p.
inline Table cmd_montecarlo_table(const RunContext& ctx) {
  const ScenarioConfig& c = ctx.config;
  c.validate();
  const double phi = c.resolved_beamwidths().front();
  const BeamParams p = c.waist ? c.beam() : c.beam(phi);
  const ReceiverGeometry g = c.geometry(c.detector_counts.front());
  const NoiseModel n = c.noise(c.sigma_p_rad(phi).front());

  Table t = detail::make_table(ctx);
  t.metadata.emplace_back("generator", kGeneratorName);
  detail::add_warnings(t, beam_warnings(p));
  if (n.sigma_p > 0.0) detail::add_warnings(t, PointingChannel{p, g, n}.warnings());
  t.columns = {"theta",      "trials",     "mse_joint", "mse_location_only",
               "crlb_joint", "crlb_location_only", "mean_bias"};
  EstimatorOptions opts;
  opts.threads = ctx.threads;
  for (double theta : c.mc_grid.resolve(phi)) {
    const McReport r = monte_carlo(p, g, n, theta, c.trials, c.seed, opts);
    t.rows.push_back({r.theta, static_cast<double>(r.trials), r.mse_joint, r.mse_location_only,
                      r.crlb_joint, r.crlb_location_only, r.mean_bias});
  }
  return t;
}

inline std::string cmd_montecarlo(const RunContext& ctx, OutputFormat format) {
  const Table t = cmd_montecarlo_table(ctx);
  if (format == OutputFormat::csv) return render_csv(t);
  nlohmann::ordered_json j;
  j["metadata"] = detail::json_header(t);
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    r["theta"] = row[0];
    r["trials"] = static_cast<int>(row[1]);
    for (std::size_t i = 2; i < row.size(); ++i) r[t.columns[i]] = detail::json_number(row[i]);
    reports.push_back(std::move(r));
  }
  j["reports"] = std::move(reports);
  return j.dump(2) + "\n";
}

/// Dispatches a subcommand by name and renders its output.
inline std::string run_command(const RunContext& ctx, OutputFormat format) {
  if (ctx.command == "fisher") return render(cmd_fisher(ctx), format);
  if (ctx.command == "crlb") return render(cmd_crlb(ctx), format);
  if (ctx.command == "crlb-pointing") return render(cmd_crlb_pointing(ctx), format);
  if (ctx.command == "montecarlo") return cmd_montecarlo(ctx, format);
  throw ConfigError({"unknown command '" + ctx.command + "'"});
}

}  // namespace aoa
