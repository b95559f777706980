#pragma once

// Scenario configuration: a flat `section.key = value` text format with `#`
// comments, built-in defaults, and named sweep presets (fig5 to fig10).
//
//   # narrow-beam default link
//   beam.power_i0        = 0.5
//   beam.wavelength      = 1.55e-06
//   beam.beamwidth       = 0.001          # or beam.waist, never both
//   beam.link_distance   = 100
//   beam.aperture_radius = 0.02
//   receiver.focal_length   = 0.001
//   receiver.array_area     = 4e-06
//   receiver.detector_count = 4           # comma-separated lists allowed
//   receiver.spot_radius    = 0.0002
//   noise.sigma_n       = 1e-06
//   noise.mode          = constant        # or area_proportional
//   noise.sigma_p       = 0               # list
//   noise.sigma_p_units = rad             # or phi (multiples of beamwidth)
//   sweep.theta_start = 0
//   sweep.theta_stop  = 25
//   sweep.theta_count = 400
//   sweep.theta_units = phi               # or rad
//   mc.trials = 2000
//   mc.seed   = 1
//   mc.theta_start = 0.002
//   mc.theta_stop  = 0.002
//   mc.theta_count = 1
//   mc.theta_units = rad

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <vector>

#include "aoa/beam.hpp"
#include "aoa/focal_plane.hpp"
#include "aoa/numerics.hpp"

namespace aoa {

/// Invalid configuration; what() lists every offending field, one per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::vector<std::string>& problems)
      : std::runtime_error(join(problems)), problems_(problems) {}

  [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
      if (!out.empty()) out += '\n';
      out += s;
    }
    return out;
  }
  std::vector<std::string> problems_;
};

enum class AngleUnits { rad, phi };

inline std::string to_string(AngleUnits u) { return u == AngleUnits::rad ? "rad" : "phi"; }

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

struct ThetaGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  AngleUnits units = AngleUnits::rad;

  [[nodiscard]] std::vector<double> resolve(double beamwidth_rad) const {
    const double scale = units == AngleUnits::phi ? beamwidth_rad : 1.0;
    return linspace(start * scale, stop * scale, static_cast<std::size_t>(count));
  }

  bool operator==(const ThetaGrid&) const = default;
};

struct ScenarioConfig {
  // beam
  double power_i0 = 0.5;
  double wavelength = 1.55e-6;
  std::optional<double> waist;            // exclusive with beamwidths
  std::vector<double> beamwidths{1e-3};   // rad
  double link_distance = 100.0;
  double aperture_radius = 0.02;
  // receiver
  double focal_length = 1e-3;
  double array_area = 4e-6;
  std::vector<int> detector_counts{4};
  double spot_radius = 2e-4;
  // noise
  double sigma_n = 1e-6;
  NoiseMode noise_mode = NoiseMode::constant;
  std::vector<double> sigma_p{0.0};
  AngleUnits sigma_p_units = AngleUnits::rad;
  // sweep
  ThetaGrid sweep{0.0, 25.0, 400, AngleUnits::phi};
  // monte carlo
  int trials = 2000;
  std::uint64_t seed = 1;
  ThetaGrid mc_grid{0.002, 0.002, 1, AngleUnits::rad};

  bool operator==(const ScenarioConfig&) const = default;

  /// Beamwidths to sweep; a configured waist yields the single implied value.
  [[nodiscard]] std::vector<double> resolved_beamwidths() const {
    if (waist) return {wavelength / (std::numbers::pi * *waist)};
    return beamwidths;
  }

  [[nodiscard]] BeamParams beam(double beamwidth_rad) const {
    return BeamParams::from_beamwidth(power_i0, wavelength, beamwidth_rad, link_distance,
                                      aperture_radius);
  }

  /// Beam for the first configured beamwidth (or the waist).
  [[nodiscard]] BeamParams beam() const {
    if (waist) {
      return BeamParams::from_waist(power_i0, wavelength, *waist, link_distance, aperture_radius);
    }
    return beam(beamwidths.front());
  }

  [[nodiscard]] ReceiverGeometry geometry(int detector_count) const {
    ReceiverGeometry g{focal_length, array_area, detector_count, spot_radius};
    g.validate();
    return g;
  }

  [[nodiscard]] NoiseModel noise(double sigma_p_rad = 0.0) const {
    NoiseModel n{sigma_n, noise_mode, sigma_p_rad};
    n.validate();
    return n;
  }

  /// sigma_p values in radians for a given beamwidth.
  [[nodiscard]] std::vector<double> sigma_p_rad(double beamwidth_rad) const {
    std::vector<double> out;
    const double scale = sigma_p_units == AngleUnits::phi ? beamwidth_rad : 1.0;
    for (double v : sigma_p) out.push_back(v * scale);
    return out;
  }

  /// Throws ConfigError listing every invalid field.
  void validate() const {
    std::vector<std::string> bad;
    auto positive = [&](double v, const char* key) {
      if (!(v > 0.0) || !std::isfinite(v)) bad.push_back(std::string(key) + ": must be finite and > 0");
    };
    positive(power_i0, "beam.power_i0");
    positive(wavelength, "beam.wavelength");
    positive(link_distance, "beam.link_distance");
    positive(aperture_radius, "beam.aperture_radius");
    if (waist) {
      positive(*waist, "beam.waist");
      if (!beamwidths.empty()) bad.emplace_back("beam.waist: cannot be combined with beam.beamwidth");
    } else if (beamwidths.empty()) {
      bad.emplace_back("beam.beamwidth: at least one value (or beam.waist) required");
    }
    for (double v : beamwidths) positive(v, "beam.beamwidth");
    positive(focal_length, "receiver.focal_length");
    positive(array_area, "receiver.array_area");
    positive(spot_radius, "receiver.spot_radius");
    if (detector_counts.empty()) bad.emplace_back("receiver.detector_count: at least one value required");
    for (int m : detector_counts) {
      if (m < 1) bad.emplace_back("receiver.detector_count: must be >= 1");
    }
    positive(sigma_n, "noise.sigma_n");
    if (sigma_p.empty()) bad.emplace_back("noise.sigma_p: at least one value required");
    for (double v : sigma_p) {
      if (!(v >= 0.0) || !std::isfinite(v)) bad.emplace_back("noise.sigma_p: must be finite and >= 0");
    }
    auto grid = [&](const ThetaGrid& gr, const std::string& prefix) {
      if (!std::isfinite(gr.start) || !std::isfinite(gr.stop) || gr.stop < gr.start) {
        bad.push_back(prefix + ".theta_start/theta_stop: need finite start <= stop");
      }
      if (gr.count < 1) bad.push_back(prefix + ".theta_count: must be >= 1");
    };
    grid(sweep, "sweep");
    grid(mc_grid, "mc");
    if (trials < 1) bad.emplace_back("mc.trials: must be >= 1");
    if (!bad.empty()) throw ConfigError(bad);
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto pos = s.find(',');
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    if (s == "inf" || s == "nan" || s == "-inf") return false;
  }
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

template <class T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace detail

/// Ordered (key, value) pairs of the fully resolved configuration.
inline std::vector<std::pair<std::string, std::string>> config_entries(const ScenarioConfig& c) {
  using detail::join_list;
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("beam.power_i0", format_double(c.power_i0));
  e.emplace_back("beam.wavelength", format_double(c.wavelength));
  if (c.waist) {
    e.emplace_back("beam.waist", format_double(*c.waist));
  } else {
    e.emplace_back("beam.beamwidth", join_list(c.beamwidths));
  }
  e.emplace_back("beam.link_distance", format_double(c.link_distance));
  e.emplace_back("beam.aperture_radius", format_double(c.aperture_radius));
  e.emplace_back("receiver.focal_length", format_double(c.focal_length));
  e.emplace_back("receiver.array_area", format_double(c.array_area));
  e.emplace_back("receiver.detector_count", join_list(c.detector_counts));
  e.emplace_back("receiver.spot_radius", format_double(c.spot_radius));
  e.emplace_back("noise.sigma_n", format_double(c.sigma_n));
  e.emplace_back("noise.mode", to_string(c.noise_mode));
  e.emplace_back("noise.sigma_p", join_list(c.sigma_p));
  e.emplace_back("noise.sigma_p_units", to_string(c.sigma_p_units));
  e.emplace_back("sweep.theta_start", format_double(c.sweep.start));
  e.emplace_back("sweep.theta_stop", format_double(c.sweep.stop));
  e.emplace_back("sweep.theta_count", std::to_string(c.sweep.count));
  e.emplace_back("sweep.theta_units", to_string(c.sweep.units));
  e.emplace_back("mc.trials", std::to_string(c.trials));
  e.emplace_back("mc.seed", std::to_string(c.seed));
  e.emplace_back("mc.theta_start", format_double(c.mc_grid.start));
  e.emplace_back("mc.theta_stop", format_double(c.mc_grid.stop));
  e.emplace_back("mc.theta_count", std::to_string(c.mc_grid.count));
  e.emplace_back("mc.theta_units", to_string(c.mc_grid.units));
  return e;
}

inline std::string serialize_config(const ScenarioConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_entries(c)) out += k + " = " + v + "\n";
  return out;
}

/// Applies `key = value` lines on top of `base`. Unknown keys, malformed
/// values and invalid results are all collected into one ConfigError.
inline ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {}) {
  using detail::parse_number;
  using detail::split_list;
  using detail::trim;

  std::vector<std::string> bad;
  ScenarioConfig c = std::move(base);
  bool saw_waist = false;
  bool saw_beamwidth = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      bad.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string where = key + " (line " + std::to_string(line_no) + ")";

    auto real = [&](double& dst) {
      if (!parse_number(value, dst)) bad.push_back(where + ": not a finite number: '" + std::string(value) + "'");
    };
    auto real_list = [&](std::vector<double>& dst) {
      std::vector<double> out;
      for (auto item : split_list(value)) {
        double v = 0.0;
        if (!parse_number(item, v)) {
          bad.push_back(where + ": not a finite number: '" + std::string(item) + "'");
          return;
        }
        out.push_back(v);
      }
      dst = std::move(out);
    };
    auto integer = [&](auto& dst) {
      if (!parse_number(value, dst)) bad.push_back(where + ": not an integer: '" + std::string(value) + "'");
    };
    auto units = [&](AngleUnits& dst) {
      if (value == "rad") {
        dst = AngleUnits::rad;
      } else if (value == "phi") {
        dst = AngleUnits::phi;
      } else {
        bad.push_back(where + ": expected 'rad' or 'phi'");
      }
    };

    if (key == "beam.power_i0") {
      real(c.power_i0);
    } else if (key == "beam.wavelength") {
      real(c.wavelength);
    } else if (key == "beam.waist") {
      double w = 0.0;
      const auto before = bad.size();
      real(w);
      if (bad.size() == before) {
        c.waist = w;
        c.beamwidths.clear();
        saw_waist = true;
      }
    } else if (key == "beam.beamwidth") {
      real_list(c.beamwidths);
      c.waist.reset();
      saw_beamwidth = true;
    } else if (key == "beam.link_distance") {
      real(c.link_distance);
    } else if (key == "beam.aperture_radius") {
      real(c.aperture_radius);
    } else if (key == "receiver.focal_length") {
      real(c.focal_length);
    } else if (key == "receiver.array_area") {
      real(c.array_area);
    } else if (key == "receiver.detector_count") {
      std::vector<int> out;
      bool ok = true;
      for (auto item : split_list(value)) {
        int m = 0;
        if (!parse_number(item, m)) {
          bad.push_back(where + ": not an integer: '" + std::string(item) + "'");
          ok = false;
          break;
        }
        out.push_back(m);
      }
      if (ok) c.detector_counts = std::move(out);
    } else if (key == "receiver.spot_radius") {
      real(c.spot_radius);
    } else if (key == "noise.sigma_n") {
      real(c.sigma_n);
    } else if (key == "noise.mode") {
      try {
        c.noise_mode = parse_noise_mode(std::string(value));
      } catch (const std::invalid_argument& e) {
        bad.push_back(where + ": " + e.what());
      }
    } else if (key == "noise.sigma_p") {
      real_list(c.sigma_p);
    } else if (key == "noise.sigma_p_units") {
      units(c.sigma_p_units);
    } else if (key == "sweep.theta_start") {
      real(c.sweep.start);
    } else if (key == "sweep.theta_stop") {
      real(c.sweep.stop);
    } else if (key == "sweep.theta_count") {
      integer(c.sweep.count);
    } else if (key == "sweep.theta_units") {
      units(c.sweep.units);
    } else if (key == "mc.trials") {
      integer(c.trials);
    } else if (key == "mc.seed") {
      integer(c.seed);
    } else if (key == "mc.theta_start") {
      real(c.mc_grid.start);
    } else if (key == "mc.theta_stop") {
      real(c.mc_grid.stop);
    } else if (key == "mc.theta_count") {
      integer(c.mc_grid.count);
    } else if (key == "mc.theta_units") {
      units(c.mc_grid.units);
    } else {
      bad.push_back(where + ": unknown key");
    }
  }
  if (saw_waist && saw_beamwidth) bad.emplace_back("beam.waist: cannot be combined with beam.beamwidth");

  try {
    c.validate();
  } catch (const ConfigError& e) {
    bad.insert(bad.end(), e.problems().begin(), e.problems().end());
  }
  if (!bad.empty()) throw ConfigError(bad);
  return c;
}

inline ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

inline const std::vector<std::string>& profile_names() {
  static const std::vector<std::string> names{"default", "fig5", "fig6", "fig7",
                                              "fig8",    "fig9", "fig10"};
  return names;
}

/// Built-in sweep presets.
inline ScenarioConfig profile(std::string_view name) {
  ScenarioConfig c;
  if (name == "default" || name == "fig6") return c;
  if (name == "fig5") {
    // Short link so that each beamwidth's energy information peaks inside
    // its own [0, 25 phi] window.
    c.beamwidths = {1e-3, 5e-3, 1e-2};
    c.link_distance = 15.0;
    c.aperture_radius = 2e-3;
    return c;
  }
  if (name == "fig7") {
    c.beamwidths = {1e-3, 1e-2};
    c.sweep = {0.0, 1.5, 400, AngleUnits::rad};
    return c;
  }
  if (name == "fig8") {
    c.noise_mode = NoiseMode::area_proportional;
    c.detector_counts = {4, 16, 64};
    c.sweep = {0.0, 0.45, 400, AngleUnits::rad};
    return c;
  }
  if (name == "fig9") {
    c.noise_mode = NoiseMode::area_proportional;
    c.detector_counts = {4, 16};
    c.sweep = {0.0, 1.2, 400, AngleUnits::rad};
    return c;
  }
  if (name == "fig10") {
    c.beamwidths = {0.2};
    c.sigma_p = {0.0, 0.002, 0.01, 0.05};
    c.sigma_p_units = AngleUnits::phi;
    c.sweep = {0.0, 0.45, 400, AngleUnits::rad};
    return c;
  }
  throw ConfigError({"unknown profile '" + std::string(name) + "'"});
}

}  // namespace aoa
