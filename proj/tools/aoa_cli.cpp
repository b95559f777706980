// aoa: Fisher information / CRLB sweeps and Monte-Carlo runs for
// angle-of-arrival estimation on a focal-plane array.
//
//   aoa crlb --profile fig6 --out fig6.csv
//   aoa montecarlo --config link.cfg --seed 7 --format json
//
// Settings are layered: built-in defaults, then --profile, then --config,
// then --seed. Exit status is 0 on success, 2 for configuration errors and
// 3 for numerical failures.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "aoa/aoa.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config_path;
  std::string out_path;
  std::string profile = "default";
  std::optional<std::uint64_t> seed;
  aoa::OutputFormat format = aoa::OutputFormat::csv;
  unsigned threads = 0;
};

void add_common(CLI::App& sub, Options& o) {
  sub.add_option("--config", o.config_path, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
  sub.add_option("--out", o.out_path, "Output file (default: standard output)");
  sub.add_option("--profile", o.profile, "Named preset")
      ->check(CLI::IsMember(aoa::profile_names()));
  sub.add_option("--seed", o.seed, "Override mc.seed");
  const std::map<std::string, aoa::OutputFormat> formats{{"csv", aoa::OutputFormat::csv},
                                                         {"json", aoa::OutputFormat::json}};
  sub.add_option("--format", o.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub.add_option("--threads", o.threads, "Monte-Carlo worker threads (0: all cores)");
}

// Without an explicit profile the pointing sweep starts from the wide-beam
// fig10 preset: 0.2 rad beam, sigma_p list and a [0, 0.45] rad grid.
std::string effective_profile(const std::string& command, const Options& o) {
  return command == "crlb-pointing" && o.profile == "default" ? "fig10" : o.profile;
}

aoa::ScenarioConfig resolve(const std::string& command, const Options& o) {
  aoa::ScenarioConfig base = aoa::profile(effective_profile(command, o));
  aoa::ScenarioConfig c = o.config_path.empty() ? base : aoa::load_config(o.config_path, base);
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

int run(const std::string& command, const Options& o) {
  aoa::RunContext ctx;
  ctx.command = command;
  ctx.profile = effective_profile(command, o);
  ctx.config = resolve(command, o);
  ctx.threads = o.threads;
  const std::string text = aoa::run_command(ctx, o.format);
  if (o.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out || !(out << text)) {
    std::cerr << "aoa: cannot write '" << o.out_path << "'\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angle-of-arrival information and Cramer-Rao bounds"};
  app.set_version_flag("--version", std::string(aoa::kToolName) + " " + aoa::kToolVersion);
  app.require_subcommand(1);

  Options opts;
  const std::pair<const char*, const char*> commands[] = {
      {"fisher", "Energy-only Fisher information vs theta"},
      {"crlb", "Joint and location-only CRLB vs theta"},
      {"crlb-pointing", "CRLB vs theta for several pointing-error levels"},
      {"montecarlo", "ML estimator MSE against the CRLB"},
  };
  for (const auto& [name, help] : commands) add_common(*app.add_subcommand(name, help), opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opts);
  } catch (const aoa::ConfigError& e) {
    std::cerr << "aoa: configuration error:\n" << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "aoa: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const aoa::numerical_error& e) {
    std::cerr << "aoa: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "aoa: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "aoa: " << e.what() << '\n';
    return 1;
  }
}
