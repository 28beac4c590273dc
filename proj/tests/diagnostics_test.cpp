#include "wmrp/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wmrp/errors.hpp"

namespace wmrp {
namespace {

using std::numbers::pi;

Scenario ReferenceScenario() {
  Scenario sc;
  sc.initial = {20, 30, pi, pi / 4, 0.5, 0, -1.5, 0};
  return sc;
}

TEST(DifferentiateTest, ExactOnQuarticPolynomials) {
  std::vector<double> values;
  const double dt = 0.1;
  for (int i = 0; i < 20; ++i) {
    const double t = i * dt;
    values.push_back(1 - 2 * t + 0.5 * t * t * t * t);
  }
  const std::vector<double> d = Differentiate(values, dt);
  for (int i = 0; i < 20; ++i) {
    const double t = i * dt;
    EXPECT_NEAR(d[i], -2 + 2 * t * t * t, 1e-11) << "sample " << i;
  }
}

TEST(DifferentiateTest, ShortSeries) {
  EXPECT_TRUE(Differentiate(std::vector<double>{}, 1.0).empty());
  const std::vector<double> d = Differentiate(std::vector<double>{1.0, 3.0}, 0.5);
  EXPECT_EQ(d, (std::vector<double>{4.0, 4.0}));
}

TEST(DiagnosticsTest, MaxHelpers) {
  const std::vector<double> v = {3, 1, 2, -5, -4};
  EXPECT_EQ(MaxAbs(v), 5);
  EXPECT_EQ(MaxIncrease(v), 1);
  EXPECT_EQ(MaxIncrease(v, 3), 1);
  EXPECT_EQ(MaxIncrease(std::vector<double>{3, 2, 1}), 0);
}

TEST(DiagnosticsTest, EquilibriumResidualsVanish) {
  Scenario sc;
  sc.gains.k_E = 1;
  sc.gains.k_p = 0;
  sc.gains.k_v = 0;
  sc.t_final = 1;
  const Trajectory tr = Simulate(sc);
  EXPECT_EQ(MaxAbs(EnergyLawResidual(tr, sc.params, sc.gains)), 0.0);
  EXPECT_EQ(MaxAbs(PowerBalanceResidual(tr)), 0.0);
  EXPECT_EQ(MaxAbs(CollinearityResidual(tr)), 0.0);
  const CartPoleResidual cp = SteadyStateCartPoleResidual(tr, sc.params, sc.gains);
  EXPECT_EQ(cp.first_index, 0u);
  EXPECT_EQ(MaxAbs(cp.residual), 0.0);
}

TEST(DiagnosticsTest, EnergyLawNeedsPureSwingUp) {
  Scenario sc = ReferenceScenario();
  sc.t_final = 0.01;
  const Trajectory tr = Simulate(sc);
  EXPECT_THROW(EnergyLawResidual(tr, sc.params, sc.gains), WrongMode);
}

TEST(DiagnosticsTest, EnergyLawHoldsForCorrectedFormOnly) {
  Scenario sc = ReferenceScenario();
  sc.gains.k_p = 0;
  sc.gains.k_v = 0;
  sc.t_final = 10;
  const Trajectory corrected = Simulate(sc);
  const double corrected_max = MaxAbs(EnergyLawResidual(corrected, sc.params, sc.gains));
  EXPECT_LT(corrected_max, 1e-4);

  sc.control.alternate_accel_form = true;
  const Trajectory printed = Simulate(sc);
  const double printed_max = MaxAbs(EnergyLawResidual(printed, sc.params, sc.gains));
  EXPECT_GT(printed_max, 100 * corrected_max);
}

TEST(DiagnosticsTest, LyapunovTraces) {
  Trajectory tr;
  TrajectorySample s;
  tr.samples.push_back(s);
  s.diagnostics.E = -1.962;
  s.diagnostics.e_psi = 2.158799;
  tr.samples.push_back(s);
  Gains g;
  const LyapunovTraces traces = ComputeLyapunovTraces(tr, g);
  EXPECT_EQ(traces.V_E[0], 0.0);
  EXPECT_EQ(traces.V_psi[0], 0.0);
  EXPECT_NEAR(traces.V_E[1], 1.924722, 1e-6);
  EXPECT_NEAR(traces.V_psi[1], 2.330207, 1e-6);
}

TEST(DiagnosticsTest, HeadingLyapunovDecreasesWithFixedTarget) {
  // Driving straight away from the origin keeps psi_d constant; start off-heading
  // but with the motion still radial so psi_d_dot stays exactly zero.
  Scenario sc;
  sc.gains.k_E = 0;
  sc.gains.k_p = 0;
  sc.gains.k_v = 0;
  sc.initial.x = 10;
  sc.initial.psi = 0.8;
  sc.t_final = 15;
  const Trajectory tr = Simulate(sc);
  EXPECT_LT(std::abs(tr.samples.back().diagnostics.e_psi), 1e-4);
  const LyapunovTraces traces = ComputeLyapunovTraces(tr, sc.gains);
  EXPECT_LT(traces.V_psi.back(), traces.V_psi.front());
}

TEST(DiagnosticsTest, PowerBalanceOnReferenceRun) {
  Scenario sc = ReferenceScenario();
  sc.t_final = 10;
  const Trajectory tr = Simulate(sc);
  EXPECT_LT(MaxAbs(PowerBalanceResidual(tr)), 1e-4);
  EXPECT_EQ(MaxAbs(ConstraintResidual(tr)), 0.0);
}

TEST(DiagnosticsTest, CollinearityAtReferenceStart) {
  Scenario sc = ReferenceScenario();
  sc.t_final = 0.01;
  EXPECT_NEAR(CollinearityResidual(Simulate(sc)).front(), 15.0, 1e-12);
}

TEST(DiagnosticsTest, NeverConvergedWithoutTail) {
  Scenario sc = ReferenceScenario();
  sc.t_final = 1;
  const Trajectory tr = Simulate(sc);
  EXPECT_FALSE(FindConvergedTail(tr));
  EXPECT_THROW(SteadyStateCartPoleResidual(tr, sc.params, sc.gains), NeverConverged);
}

TEST(DiagnosticsTest, CartPoleResidualShrinksOnReferenceTail) {
  const Scenario sc = ReferenceScenario();
  const Trajectory tr = Simulate(sc);
  const CartPoleResidual cp = SteadyStateCartPoleResidual(tr, sc.params, sc.gains);
  ASSERT_GT(cp.residual.size(), 20000u);
  const std::size_t half = cp.residual.size() / 2;
  EXPECT_LT(MaxAbs(cp.residual, half), MaxAbs(std::span(cp.residual).first(half)));

  const std::vector<double> collinear = CollinearityResidual(tr);
  EXPECT_LT(MaxAbs(collinear, cp.first_index + half), MaxAbs(collinear) * 1e-3);
}

TEST(DiagnosticsTest, ReportOnPureSwingUp) {
  Scenario sc = ReferenceScenario();
  sc.gains.k_p = 0;
  sc.gains.k_v = 0;
  sc.t_final = 5;
  const ResidualReport r = BuildResidualReport(Simulate(sc));
  ASSERT_TRUE(r.energy_law_max);
  EXPECT_LT(*r.energy_law_max, 1e-4);
  ASSERT_TRUE(r.V_E_max_increase);
  EXPECT_LE(*r.V_E_max_increase, 1e-6);
  EXPECT_EQ(r.constraint_max, 0.0);
}

}  // namespace
}  // namespace wmrp
