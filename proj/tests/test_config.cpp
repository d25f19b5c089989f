#include <algorithm>
#include <string>

#include <gtest/gtest.h>

#include "stochhyp/config.hpp"
#include "stochhyp/errors.hpp"

using namespace stochhyp;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Parse, PresetExpands) {
  const auto c = parse_config("preset = example1_order1\n");
  EXPECT_EQ(c.problem, Problem::convection);
  EXPECT_EQ(c.c_minus, 1.0);
  EXPECT_EQ(c.c_plus, 2.0);
  EXPECT_EQ(c.sigma, 0.3);
  EXPECT_EQ(c.T, 1.0);
  EXPECT_EQ(c.dx, 0.005);
  EXPECT_DOUBLE_EQ(c.dt, 0.005 / 5);
  EXPECT_EQ(c.K, 20);
  EXPECT_EQ(c.order, 1);
  EXPECT_EQ(c.steps(), 1000);
  EXPECT_EQ(c.quadrature_points(), 42);
}

TEST(Parse, EveryPresetIsValid) {
  for (const auto& name : preset_names()) {
    const auto c = preset(name);
    EXPECT_TRUE(validate(c).empty()) << name;
    EXPECT_EQ(c.preset, name);
  }
  EXPECT_THROW(preset("example3"), ConfigError);
}

TEST(Parse, EmptyFileListsEveryMissingKey) {
  const auto v = violations_of("");
  for (const char* key : {"'problem'", "'T'", "'grid.dx'", "'grid.dt'", "'K'"}) EXPECT_TRUE(mentions(v, key)) << key;
}

TEST(Parse, LiouvilleNeedsDv) {
  const auto v = violations_of("problem = liouville\nT = 1\nK = 2\n[grid]\ndx = 0.03\ndt = 0.002\n");
  EXPECT_TRUE(mentions(v, "'grid.dv'"));
}

TEST(Parse, CflViolationNamesTheBound) {
  const auto v = violations_of("preset = example1_order1\ngrid.dt = 0.004\n");
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(mentions(v, "CFL"));
  EXPECT_TRUE(mentions(v, "z = +/-1"));
}

TEST(Parse, SyntaxErrorsCarryLineNumbers) {
  const auto v = violations_of("preset = example1_order1\nbogus = 3\nK = 2\nK = 3\n[nowhere]\nnot a pair\n");
  EXPECT_TRUE(mentions(v, "line 2: unknown key 'bogus'"));
  EXPECT_TRUE(mentions(v, "line 4: duplicate key 'K'"));
  EXPECT_TRUE(mentions(v, "line 5: unknown section"));
  EXPECT_TRUE(mentions(v, "line 6: expected key = value"));
  EXPECT_TRUE(mentions(violations_of("K = 2\npreset = example1_order1\n"), "preset must come before"));
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\nK = two\n"), "line 2: K"));
}

TEST(Parse, SectionsDottedKeysAndComments) {
  const auto a = parse_config(
      "# convection run\nproblem = convection\nT = 0.5\nK = 3  # low order\n[grid]\ndx = 0.01\ndt_ratio = 0.2\n"
      "[random]\nsigma = 0.1\n[output]\ndir = somewhere\n");
  const auto b = parse_config(
      "problem = convection\nT = 0.5\nK = 3\ngrid.dx = 0.01\ngrid.dt = 0.002\nrandom.sigma = 0.1\noutput.dir = somewhere\n");
  EXPECT_EQ(a, b);
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\ngrid.dt = 0.001\ngrid.dt_ratio = 0.2\n"),
                       "mutually exclusive"));
}

TEST(Parse, SemanticChecks) {
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\nT = 0.0015\n"), "integer multiple"));
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\nz = 1.5\n"), "z must lie"));
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\nquadrature = 5\n"), "K+1"));
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\ninit = triangle\n"), "triangle"));
  EXPECT_TRUE(mentions(violations_of("preset = example1_order1\nlimiter = minmod\n"), "minmod"));
  EXPECT_TRUE(mentions(violations_of("preset = example2_order1\ngrid.dt = 0.02\n"), "CFL"));
}

TEST(Render, RoundTrips) {
  for (const auto& name : preset_names()) {
    auto c = preset(name);
    c.z = 0.1234567890123;
    c.threads = 3;
    EXPECT_EQ(parse_config(render(c)), c) << name;
  }
}
