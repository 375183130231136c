#include <gtest/gtest.h>

#include <cmath>

#include "ionjcm/closed_form.hpp"
#include "ionjcm/scan.hpp"

using namespace ionjcm;

namespace {

constexpr double pi = std::numbers::pi;

ScanGrid pinned_case1(double n0, double phi, const PhysicalParams& params, double t_max = 500e-6) {
  const int nt = time_samples(t_max, default_cutoff(n0), params.xi());
  ScanGrid grid;
  grid.axes = {Axis::pinned("n0_mean", n0), Axis::pinned("phi", phi), {"t", t_max / nt, t_max, nt, false}};
  return grid;
}

}  // namespace

TEST(Axis, Values) {
  const Axis a{"x", 0.0, 1.0, 5, false};
  EXPECT_DOUBLE_EQ(a.step(), 0.25);
  EXPECT_DOUBLE_EQ(a.value(4), 1.0);
  const Axis p{"phi", 0.0, 2 * pi, 4, true};
  EXPECT_DOUBLE_EQ(p.step(), pi / 2);
  EXPECT_DOUBLE_EQ(p.value(3), 1.5 * pi);
  const Axis one = Axis::pinned("n0_mean", 0.51);
  EXPECT_EQ(one.value(0), 0.51);
  EXPECT_EQ(one.step(), 0.0);
}

TEST(ScanGrid, Validation) {
  ScanGrid g;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 0.0, 1.0, 0, false}, {"t", 1e-6, 1e-5, 3, false}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 0.0, 1.0, 1, false}, {"t", 1e-6, 1e-5, 3, false}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 1.0, 1.0, 3, false}, {"t", 1e-6, 1e-5, 3, false}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 0.0, 1.0, 3, false}, {"s", 1e-6, 1e-5, 3, false}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 0.0, 1.0, 3, false}, {"t", 0.0, 1e-5, 3, false}};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.axes = {{"x", 0.0, 1.0, 3, false}, {"t", 1e-6, 1e-5, 3, false}};
  g.refine_points = 2;
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g.refine_points = 21;
  EXPECT_NO_THROW(g.validate());
}

TEST(TimeSamples, FortyPerShortestPeriod) {
  const auto params = PhysicalParams::defaults(28);
  const double period = 2 * pi / (std::sqrt(55.0) * params.xi());
  const int n = time_samples(500e-6, 28, params.xi());
  EXPECT_GE((500e-6 / (n - 1)), 0.0);
  EXPECT_LE(500e-6 / (n - 1), period / 40.0 * 1.001);
}

TEST(ScanCase1, PinnedOptimumNear343) {
  const auto params = PhysicalParams::defaults(default_cutoff(0.51));
  const auto r = scan_case1(pinned_case1(0.51, 0.0, params), params);
  EXPECT_LE(r.optimum_value, -0.42);
  bool near = false;
  for (const auto& p : r.near_optimal) {
    EXPECT_LE(p.value, r.optimum_value + kNearOptimalWindow);
    near = near || std::abs(p.location[2] - 343e-6) <= 2e-6;
  }
  EXPECT_TRUE(near);
  EXPECT_EQ(r.location_names, (std::vector<std::string>{"n0_mean", "phi", "t"}));
  EXPECT_EQ(r.optimum_value, reevaluate_case1(r.location, params));
}

TEST(ScanCase1, VacuumHasNoSqueezing) {
  const auto params = PhysicalParams::defaults(12);
  ScanGrid grid;
  grid.axes = {Axis::pinned("n0_mean", 1e-6), {"phi", 0.0, 2 * pi, 8, true}, {"t", 1e-6, 500e-6, 400, false}};
  EXPECT_GE(scan_case1(grid, params).optimum_value, -1e-5);
}

TEST(ScanCase1, RefinementMonotoneAndDeterministic) {
  const auto params = PhysicalParams::defaults(default_cutoff(1.0));
  ScanGrid grid;
  grid.axes = {{"n0_mean", 0.3, 1.0, 8, false}, {"phi", 0.0, 2 * pi, 4, true}, {"t", 1e-6, 400e-6, 600, false}};
  const auto a = scan_case1(grid, params);
  const auto b = scan_case1(grid, params);
  EXPECT_EQ(a.location, b.location);
  EXPECT_EQ(a.optimum_value, b.optimum_value);
  EXPECT_EQ(a.grid_evaluations, b.grid_evaluations);
  ASSERT_EQ(a.refinement_history.size(), 4u);
  for (std::size_t k = 1; k < a.refinement_history.size(); ++k) {
    EXPECT_LE(a.refinement_history[k].value, a.refinement_history[k - 1].value);
  }
  EXPECT_EQ(a.optimum_value, reevaluate_case1(a.location, params));
}

TEST(ScanCase2, AnalyticSlice) {
  const auto params = PhysicalParams::defaults(2);
  const double t = pi / (std::sqrt(3.0) * params.xi());
  for (int k = 0; k <= 100; ++k) {
    const double a = k / 100.0;
    const double c = std::sqrt(1.0 - a * a);
    const double expected = 32.0 * a * a / 9.0 - 8.0 / 3.0 * a * c;
    ASSERT_NEAR(case2_var_p(a, 0.0, c, 0.0, 0.0, t, params), expected, 1e-12);
  }
}

TEST(ScanCase2, NoDoublyExcitedAmplitude) {
  const auto params = PhysicalParams::defaults(2);
  const double b = 0.6;
  const double c = 0.8;
  for (double dphi : {0.0, 0.7, pi / 2}) {
    for (int k = 1; k < 50; ++k) {
      const double t = k * 2e-6;
      const double s = std::sin(params.xi() * t);
      const double expected = 2 * b * b * s * s - 4 * std::pow(b * c * s * std::sin(dphi), 2);
      ASSERT_NEAR(case2_var_p(0.0, b, c, 0.0, dphi, t, params), expected, 1e-12);
    }
  }
}

TEST(ScanCase2, PhaseOneIrrelevantWithoutMiddleAmplitude) {
  const auto params = PhysicalParams::defaults(2);
  const double t = pi / (std::sqrt(3.0) * params.xi());
  const double base = case2_var_p(0.3, 0.0, std::sqrt(0.91), 0.0, 0.2, t, params);
  for (double phi1 : {0.4, -2.0, 3.1}) {
    EXPECT_NEAR(case2_var_p(0.3, 0.0, std::sqrt(0.91), phi1, 0.2, t, params), base, 1e-12);
  }
}

TEST(ScanCase2, SmallGridFindsSliceMinimum) {
  const auto params = PhysicalParams::defaults(2);
  ScanGrid grid;
  const int nt = time_samples(20e-6, 2, params.xi());
  grid.axes = {{"theta", 0.0, pi / 2, 11, false}, Axis::pinned("psi", 0.0), Axis::pinned("phi1", 0.0),
               {"phi2", 0.0, 2 * pi, 8, true}, {"t", 20e-6 / nt, 20e-6, nt, false}};
  const auto r = scan_case2(grid, params);
  EXPECT_NEAR(r.optimum_value, -4.0 / 9.0, 1e-7);
  EXPECT_NEAR(r.location[2], 3.0 / std::sqrt(10.0), 1e-4);
  EXPECT_EQ(r.location[1], 0.0);
  EXPECT_EQ(r.optimum_value, reevaluate_case2(r.location, params));
}

TEST(MinOverTime, FindsRefinedMinimum) {
  const auto m = min_over_time([](double t) { return std::cos(t) + 0.1 * std::cos(3 * t); }, 0.0, 10.0, 50);
  EXPECT_NEAR(m.value, -1.1, 1e-6);
  EXPECT_THROW(min_over_time([](double) { return 0.0; }, 0.0, 1.0, 1), std::invalid_argument);
}

TEST(Threshold, NoSqueezingOnsetAtZeroPhase) {
  const auto params = PhysicalParams::defaults(default_cutoff(3.0));
  const auto r = threshold_no_squeezing(params);
  EXPECT_LT(r.min_var_p_lower, -kNoSqueezingTolerance);
  EXPECT_GE(r.min_var_p_upper, -kNoSqueezingTolerance);
  EXPECT_LE(r.upper - r.lower, 1e-3);
  EXPECT_GE(r.value, 1.5);
  EXPECT_LE(r.value, 2.0);
}

TEST(Threshold, Endpoints) {
  const auto params = PhysicalParams::defaults(default_cutoff(3.0));
  EXPECT_LT(case1_min_over_time(0.51, 0.0, params).value, -0.4);
  EXPECT_GE(case1_min_over_time(3.0, 0.0, params).value, -0.005);
  EXPECT_THROW(threshold_no_squeezing(params, 0.0, 2.5, 3.0), std::runtime_error);
}
