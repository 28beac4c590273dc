#include "wmrp_cli/config.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

namespace wmrp::cli {
namespace {

using std::numbers::pi;

TEST(ConfigTest, BundledReferenceScenario) {
  const RunConfig c = LoadConfig(WMRP_CONFIG_DIR "/reference.cfg");
  const Params& p = c.scenario.params;
  EXPECT_EQ(p.M, 1);
  EXPECT_EQ(p.m, 0.1);
  EXPECT_EQ(p.J, 0.01);
  EXPECT_EQ(p.l, 1);
  EXPECT_EQ(p.g, 9.81);
  const Gains& g = c.scenario.gains;
  EXPECT_EQ(g.k_E, 1);
  EXPECT_EQ(g.k_v, 0.8);
  EXPECT_EQ(g.k_p, 0.16);
  EXPECT_EQ(g.k_psi, 1);
  EXPECT_EQ(g.k_psi_dot, 2);
  const FullVelocityState& s = c.scenario.initial;
  EXPECT_EQ(s.x, 20);
  EXPECT_EQ(s.y, 30);
  EXPECT_EQ(s.psi, pi);
  EXPECT_EQ(s.x_dot, 0.5);
  EXPECT_EQ(s.y_dot, 0);
  EXPECT_EQ(s.psi_dot, -1.5);
  EXPECT_EQ(s.theta, pi / 4);
  EXPECT_EQ(s.theta_dot, 0);
  EXPECT_EQ(c.scenario.dt, 1e-3);
  EXPECT_EQ(c.scenario.t_final, 60);
  EXPECT_EQ(c.scenario.mode, ControlMode::kContinuous);
}

TEST(ConfigTest, SwappedVariantExchangesPdGains) {
  const RunConfig c = LoadConfig(WMRP_CONFIG_DIR "/reference_swapped_pd.cfg");
  EXPECT_EQ(c.scenario.gains.k_p, 0.8);
  EXPECT_EQ(c.scenario.gains.k_v, 0.16);
}

TEST(ConfigTest, AllBundledConfigsParse) {
  for (const char* name : {"zero_equilibrium", "downward_rest", "pure_swing_up", "heading_only"}) {
    EXPECT_NO_THROW(LoadConfig(std::string(WMRP_CONFIG_DIR "/") + name + ".cfg")) << name;
  }
}

TEST(ConfigTest, EmptyInputIsParseError) {
  EXPECT_THROW(ParseConfig(""), ParseError);
  EXPECT_THROW(ParseConfig("# only a comment\n\n[sim]\n"), ParseError);
}

TEST(ConfigTest, NegativeEnergyGainIsValidationError) {
  EXPECT_THROW(ParseConfig("[gains]\nk_E = -1\n"), ValidationError);
}

TEST(ConfigTest, ErrorsCarryLineAndKey) {
  try {
    ParseConfig("[params]\nM = 1\nmass = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.key(), "mass");
  }
  try {
    ParseConfig("[params]\nM = 1\n\nM = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.key(), "M");
  }
  EXPECT_THROW(ParseConfig("M = 1\n"), ParseError);
  EXPECT_THROW(ParseConfig("[physics]\nM = 1\n"), ParseError);
  EXPECT_THROW(ParseConfig("[params]\nM 1\n"), ParseError);
  EXPECT_THROW(ParseConfig("[params]\nM = one\n"), ParseError);
  EXPECT_THROW(ParseConfig("[params\nM = 1\n"), ParseError);
}

TEST(ConfigTest, InvariantViolationsAreValidationErrors) {
  EXPECT_THROW(ParseConfig("[params]\nJ = 0\n"), ValidationError);
  EXPECT_THROW(ParseConfig("[gains]\nk_psi = 0\n"), ValidationError);
  EXPECT_THROW(ParseConfig("[sim]\ndt = 0\n"), ValidationError);
  EXPECT_THROW(ParseConfig("[sim]\nmode = adaptive\n"), ValidationError);
  EXPECT_THROW(ParseConfig("[output]\ncolumns = t, speed\n"), ValidationError);
}

TEST(ConfigTest, ScalarSyntax) {
  double v = 0;
  ASSERT_TRUE(ParseScalar("pi", v));
  EXPECT_EQ(v, pi);
  ASSERT_TRUE(ParseScalar("-pi/2", v));
  EXPECT_EQ(v, -pi / 2);
  ASSERT_TRUE(ParseScalar("3*pi/4", v));
  EXPECT_EQ(v, 3 * pi / 4);
  ASSERT_TRUE(ParseScalar(" 1e-3 ", v));
  EXPECT_EQ(v, 1e-3);
  ASSERT_TRUE(ParseScalar("+2.5", v));
  EXPECT_EQ(v, 2.5);
  EXPECT_FALSE(ParseScalar("pi/0", v));
  EXPECT_FALSE(ParseScalar("2pi", v));
  EXPECT_FALSE(ParseScalar("", v));
  EXPECT_FALSE(ParseScalar("inf", v));
  EXPECT_FALSE(ParseScalar("1.5x", v));
}

TEST(ConfigTest, OutputSection) {
  const RunConfig c = ParseConfig(
      "[output]\ndir = results/a\ncolumns = t, theta ,E\ndiagnostics = false\n");
  EXPECT_EQ(c.out_dir, "results/a");
  EXPECT_EQ(c.columns, (std::vector<std::string>{"t", "theta", "E"}));
  EXPECT_FALSE(c.diagnostics);
}

TEST(ConfigTest, SimSection) {
  const RunConfig c = ParseConfig(
      "[sim]\nmode = sampled\nsample_period = 0.02\nprinted_eq24 = true\nt_final = 2\n");
  EXPECT_EQ(c.scenario.mode, ControlMode::kSampled);
  EXPECT_EQ(c.scenario.sample_period, 0.02);
  EXPECT_TRUE(c.scenario.control.alternate_accel_form);
  EXPECT_EQ(c.scenario.t_final, 2);
}

}  // namespace
}  // namespace wmrp::cli
