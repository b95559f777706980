#include <gtest/gtest.h>

#include <random>
#include <string>

#include <json.hpp>

#include "aoa/commands.hpp"
#include "aoa/scenario.hpp"

namespace {

aoa::ScenarioConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto pos = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  aoa::ScenarioConfig c;
  c.power_i0 = pos(1e-3, 10.0);
  c.wavelength = pos(4e-7, 2e-6);
  if (u(rng) < 0.3) {
    c.waist = pos(1e-4, 1e-1);
    c.beamwidths.clear();
  } else {
    c.beamwidths.clear();
    const int k = 1 + static_cast<int>(u(rng) * 3);
    for (int i = 0; i < k; ++i) c.beamwidths.push_back(pos(1e-4, 0.3));
  }
  c.link_distance = pos(1.0, 1e5);
  c.aperture_radius = pos(1e-3, 1.0);
  c.focal_length = pos(1e-4, 1.0);
  c.array_area = pos(1e-8, 1e-2);
  c.detector_counts = {1 + static_cast<int>(u(rng) * 64)};
  c.spot_radius = pos(1e-6, 1e-2);
  c.sigma_n = pos(1e-9, 1.0);
  c.noise_mode = u(rng) < 0.5 ? aoa::NoiseMode::constant : aoa::NoiseMode::area_proportional;
  c.sigma_p = {0.0, pos(1e-6, 1e-1)};
  c.sigma_p_units = u(rng) < 0.5 ? aoa::AngleUnits::rad : aoa::AngleUnits::phi;
  c.sweep = {u(rng), 1.0 + u(rng), 1 + static_cast<int>(u(rng) * 1000), aoa::AngleUnits::rad};
  c.trials = 1 + static_cast<int>(u(rng) * 5000);
  c.seed = rng();
  c.mc_grid = {-u(rng), u(rng), 1 + static_cast<int>(u(rng) * 10), aoa::AngleUnits::phi};
  return c;
}

TEST(Config, RoundTripIsIdentity) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto c = random_config(rng);
    const auto text = aoa::serialize_config(c);
    const auto back = aoa::parse_config(text);
    EXPECT_EQ(back, c) << text;
    EXPECT_EQ(aoa::serialize_config(back), text);
  }
}

TEST(Config, DefaultsWhenEmpty) {
  EXPECT_EQ(aoa::parse_config(""), aoa::ScenarioConfig{});
  EXPECT_EQ(aoa::parse_config("# nothing here\n\n   \n"), aoa::ScenarioConfig{});
}

TEST(Config, CommentsAndListsParse) {
  const auto c = aoa::parse_config(
      "beam.beamwidth = 0.001, 0.005   # two beams\nreceiver.detector_count = 4,16\nnoise.mode = area_proportional\n");
  EXPECT_EQ(c.beamwidths, (std::vector<double>{1e-3, 5e-3}));
  EXPECT_EQ(c.detector_counts, (std::vector<int>{4, 16}));
  EXPECT_EQ(c.noise_mode, aoa::NoiseMode::area_proportional);
}

TEST(Config, ReportsEveryBadField) {
  try {
    aoa::parse_config("beam.power_i0 = -1\nreceiver.bogus = 3\nmc.trials = 0\nsweep.theta_count = x\nnonsense\n");
    FAIL() << "expected ConfigError";
  } catch (const aoa::ConfigError& e) {
    const std::string all = e.what();
    EXPECT_NE(all.find("beam.power_i0"), std::string::npos);
    EXPECT_NE(all.find("receiver.bogus"), std::string::npos);
    EXPECT_NE(all.find("mc.trials"), std::string::npos);
    EXPECT_NE(all.find("sweep.theta_count"), std::string::npos);
    EXPECT_NE(all.find("line 5"), std::string::npos);
    EXPECT_GE(e.problems().size(), 5u);
  }
}

TEST(Config, WaistExcludesBeamwidth) {
  EXPECT_THROW(aoa::parse_config("beam.waist = 1e-3\nbeam.beamwidth = 1e-3\n"), aoa::ConfigError);
  const auto c = aoa::parse_config("beam.waist = 1e-3\n");
  EXPECT_TRUE(c.waist.has_value());
  EXPECT_TRUE(c.beamwidths.empty());
  EXPECT_EQ(aoa::parse_config(aoa::serialize_config(c)), c);
}

TEST(Config, ConfigFileLayersOnProfile) {
  const auto c = aoa::parse_config("mc.seed = 77\n", aoa::profile("fig8"));
  EXPECT_EQ(c.seed, 77u);
  EXPECT_EQ(c.detector_counts, (std::vector<int>{4, 16, 64}));
}

TEST(Profiles, AllValidAndUnknownRejected) {
  for (const auto& name : aoa::profile_names()) EXPECT_NO_THROW(aoa::profile(name).validate()) << name;
  EXPECT_THROW(aoa::profile("fig11"), aoa::ConfigError);
}

aoa::RunContext context(const std::string& cmd, const std::string& prof) {
  aoa::RunContext ctx;
  ctx.command = cmd;
  ctx.profile = prof;
  ctx.config = aoa::profile(prof);
  return ctx;
}

TEST(Commands, CrlbTableIsRectangularAndEchoesConfig) {
  auto ctx = context("crlb", "fig8");
  ctx.config.sweep.count = 20;
  const auto t = aoa::cmd_crlb(ctx);
  EXPECT_EQ(t.rows.size(), 60u);
  for (const auto& r : t.rows) EXPECT_EQ(r.size(), t.columns.size());
  const auto csv = aoa::render_csv(t);
  EXPECT_NE(csv.find("# config: receiver.detector_count = 4, 16, 64"), std::string::npos);
  EXPECT_NE(csv.find("theta_rad,phi_rad,detector_count,crlb_joint,crlb_location_only\n"), std::string::npos);
  // The echoed config parses back into the one that was run.
  std::string echoed;
  for (const auto& [k, v] : t.config) echoed += k + " = " + v + "\n";
  EXPECT_EQ(aoa::parse_config(echoed), ctx.config);
}

TEST(Commands, FisherNeedsSingleDetectorCount) {
  auto ctx = context("fisher", "fig8");
  EXPECT_THROW(aoa::cmd_fisher(ctx), aoa::ConfigError);
}

TEST(Commands, PointingReferenceColumnMatchesCrlb) {
  auto ctx = context("crlb-pointing", "fig10");
  ctx.config.sweep.count = 25;
  const auto t = aoa::cmd_crlb_pointing(ctx);
  ASSERT_EQ(t.columns.size(), 5u);
  EXPECT_EQ(t.columns[1], "crlb_sigma_p_0");
  EXPECT_EQ(t.columns[4], "crlb_sigma_p_0.05phi");
  auto plain = ctx;
  plain.command = "crlb";
  const auto ref = aoa::cmd_crlb(plain);
  ASSERT_EQ(ref.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_NEAR(t.rows[i][1], ref.rows[i][3], 1e-9 * ref.rows[i][3]);
    for (std::size_t j = 2; j < t.rows[i].size(); ++j) EXPECT_GE(t.rows[i][j], t.rows[i][j - 1]);
  }
}

TEST(Commands, PointingWarnsForLargeJitter) {
  auto ctx = context("crlb-pointing", "fig10");
  ctx.config.sweep.count = 3;
  ctx.config.sigma_p = {0.2};
  const auto csv = aoa::render_csv(aoa::cmd_crlb_pointing(ctx));
  EXPECT_NE(csv.find("# warning: sigma_p"), std::string::npos);
}

TEST(Commands, MonteCarloJsonSchema) {
  auto ctx = context("montecarlo", "default");
  ctx.config.trials = 20;
  ctx.config.mc_grid = {0.001, 0.002, 2, aoa::AngleUnits::rad};
  const auto text = aoa::run_command(ctx, aoa::OutputFormat::json);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["metadata"]["generator"], aoa::kGeneratorName);
  EXPECT_EQ(j["metadata"]["config"]["mc.trials"], "20");
  ASSERT_EQ(j["reports"].size(), 2u);
  for (const auto& r : j["reports"]) {
    EXPECT_TRUE(r.contains("mse_joint"));
    EXPECT_TRUE(r.contains("mse_location_only"));
    EXPECT_EQ(r["trials"], 20);
  }
  EXPECT_EQ(aoa::run_command(ctx, aoa::OutputFormat::json), text);
}

TEST(Report, InfiniteBoundRendersAsInf) {
  aoa::Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.0, aoa::kInfiniteBound}};
  EXPECT_NE(aoa::render_csv(t).find("1,inf\n"), std::string::npos);
  const auto j = nlohmann::json::parse(aoa::render_json(t));
  EXPECT_EQ(j["rows"][0][1], "inf");
}

}  // namespace
