#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "novikov2c/errors.hpp"
#include "novikov2c/monitors.hpp"
#include "novikov2c/scenario.hpp"

using namespace novikov2c;
using namespace novikov2c::diagnostics;
using spectral::Grid;
using spectral::RealField;

namespace {
constexpr double kPi = std::numbers::pi;

RealField constant(const Grid& g, double c) {
  return RealField::from_function(g, [c](double) { return c; });
}
}  // namespace

TEST(Conserved, ZeroState) {
  const ConservedPair p = conserved_quantities(SystemState::zero(Grid(10, 32)));
  EXPECT_EQ(p.e1, 0.0);
  EXPECT_EQ(p.e2, 0.0);
}

TEST(Conserved, GaussianClosedForms) {
  const Grid g(40.0, 1024);
  const RealField f =
      RealField::from_function(g, [](double x) { return std::exp(-(x - 20) * (x - 20)); });
  const ConservedPair p = conserved_quantities(SystemState(f, f));
  EXPECT_NEAR(p.e1, std::sqrt(2 * kPi), 1e-8);
  EXPECT_NEAR(p.e2, std::sqrt(kPi / 2), 1e-8);
}

TEST(Blowup, ZeroAndConstantStates) {
  const Grid g(10.0, 32);
  BlowupMonitor m;
  m.update(SystemState::zero(g), 0.0);
  EXPECT_EQ(m.integrand(), 0.0);
  EXPECT_EQ(m.breaking_indicator(), 0.0);

  const double c = 1.5;
  const SystemState s(RealField(g), constant(g, c));
  BlowupMonitor k;
  k.update(s, 0.0);
  EXPECT_NEAR(k.integrand(), c * c, 1e-14);
  EXPECT_NEAR(k.breaking_indicator(), 0.0, 1e-14);
  for (int i = 0; i < 10; ++i) k = blowup_update(k, s, 0.1);
  EXPECT_NEAR(k.cumulative(), c * c * 1.0, 1e-12);
  EXPECT_FALSE(k.w_crossing());
}

TEST(Blowup, ThresholdCrossingsAreLatched) {
  const Grid g(10.0, 32);
  BlowupThresholds th;
  th.cumulative = 1.0;
  BlowupMonitor m(th);
  const SystemState s(RealField(g), constant(g, 1.0));
  SystemState at = s;
  for (int i = 0; i < 30; ++i) {
    at.t = 0.1 * i;
    m.update(at, i == 0 ? 0.0 : 0.1);
  }
  ASSERT_TRUE(m.cumulative_crossing());
  EXPECT_NEAR(*m.cumulative_crossing(), 1.0, 0.1 + 1e-12);
  EXPECT_TRUE(std::isfinite(m.cumulative()));
}

TEST(Blowup, PeakonIndicatorNearSpeed) {
  const Grid g(40.0, 4096);
  scenario::Peakon p;
  p.c = 1.0;
  p.delta = 0.02;
  scenario::ScenarioPolicy pol;
  pol.boundary_tolerance = 1e-6;
  const auto sc = scenario::make_scenario(g, p, pol);
  const PointIndicators pi = point_indicators(sc.state);
  // sup u u_x for sqrt(c) e^{-|s|} tends to c at the crest; the mollified
  // slope only reaches full size a few delta away, where u has dropped.
  EXPECT_GT(pi.sup_uux, 0.85);
  EXPECT_LT(pi.sup_uux, 1.0);
  EXPECT_EQ(pi.sup_abs_uux, pi.sup_uux);
  // E1 of the mollified profile in closed form: 2c e^{delta^2} erfc(delta).
  const double e1 = 2.0 * std::exp(p.delta * p.delta) * std::erfc(p.delta);
  EXPECT_NEAR(conserved_quantities(sc.state).e1, e1, 1e-6);
}

TEST(Scenario, GaussianDefaultsToMidpoint) {
  const Grid g(40.0, 256);
  scenario::Gaussian s;
  s.u.amplitude = 2.0;
  const auto sc = scenario::make_scenario(g, s);
  EXPECT_EQ(sc.state.u[128], 2.0);
  EXPECT_EQ(spectral::sup_norm(sc.state.rho), 0.0);
  EXPECT_TRUE(sc.warnings.empty());
}

TEST(Scenario, BoundaryViolationNamesField) {
  const Grid g(10.0, 128);
  scenario::Gaussian s;
  s.rho.amplitude = 1.0;
  s.rho.width = 3.0;
  try {
    scenario::make_scenario(g, s);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'rho'"), std::string::npos) << e.what();
  }
}

TEST(Scenario, ExactPeakonIsRejectedOrWarned) {
  const Grid g(60.0, 1024);
  scenario::Peakon p;
  p.delta = 0.0;
  scenario::ScenarioPolicy pol;
  pol.boundary_tolerance = 1e-6;
  EXPECT_THROW(scenario::make_scenario(g, p, pol), ConfigError);
  pol.non_smooth = scenario::NonSmoothPolicy::warn;
  const auto sc = scenario::make_scenario(g, p, pol);
  EXPECT_FALSE(sc.warnings.empty());
}

TEST(Scenario, MollifiedPeakonProfile) {
  EXPECT_NEAR(scenario::mollified_peakon(0.0, 4.0, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(scenario::mollified_peakon(1.5, 1.0, 0.0), std::exp(-1.5), 1e-15);
  // Far from the crest the Gaussian smoothing multiplies the exponential by e^{delta^2/2}.
  const double d = 0.3;
  EXPECT_NEAR(scenario::mollified_peakon(6.0, 1.0, d), std::exp(-6.0 + d * d / 2), 1e-9);
  EXPECT_LT(scenario::mollified_peakon(0.0, 1.0, d), 1.0);
}

TEST(Scenario, AntisymmetricSteepSlope) {
  const Grid g(20.0, 1024);
  scenario::AntisymmetricSteep a;
  const auto sc = scenario::make_scenario(g, a);
  const RealField ux = spectral::derivative(sc.state.u, 1);
  EXPECT_NEAR(ux[512], a.slope, 1e-10);
  EXPECT_NEAR(sc.state.u[512], 0.0, 1e-15);
  EXPECT_NEAR(sc.state.rho[512], a.rho_amplitude, 1e-15);
}

TEST(Scenario, CustomTablesMustMatchGrid) {
  const Grid g(10.0, 16);
  scenario::Custom c;
  c.rho.assign(16, 0.0);
  c.u.assign(15, 0.0);
  EXPECT_THROW(scenario::make_scenario(g, c), ConfigError);
  c.u.assign(16, 0.0);
  EXPECT_NO_THROW(scenario::make_scenario(g, c));
}

TEST(Scenario, DecayOrderSeparatesSmoothAndKinked) {
  const Grid g(40.0, 2048);
  const RealField smooth =
      RealField::from_function(g, [](double x) { return std::exp(-(x - 20) * (x - 20)); });
  EXPECT_TRUE(std::isinf(scenario::spectral_decay_order(smooth)));
  const RealField kink =
      RealField::from_function(g, [](double x) { return std::exp(-std::abs(x - 20)); });
  EXPECT_LT(scenario::spectral_decay_order(kink), 2.0);
  EXPECT_GT(scenario::spectral_decay_order(kink), 1.5);
}

TEST(Scenario, Names) {
  EXPECT_EQ(scenario::scenario_name(scenario::Peakon{}), "peakon");
  EXPECT_EQ(scenario::scenario_name(scenario::TwoPeakon{}), "two_peakon");
  EXPECT_EQ(scenario::scenario_name(scenario::Custom{}), "custom");
}
