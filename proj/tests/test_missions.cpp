// Copyright 2026 The Glider Guidance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "glider/missions.hpp"

namespace glider {
namespace {

Scenario zero_current_scenario() {
  Scenario s;
  s.name = "still";
  s.field = CurrentField::zero();
  s.glider.v_veh_bf = 0.5;
  s.area = {{0.0, 4.0}, {0.0, 4.0}, 0.4};
  s.start = {0.4, 0.4};
  s.goal = {3.6, 2.0};
  s.t0 = 2.0;
  return s;
}

void expect_same_report(const MetricsReport& a, const MetricsReport& b) {
  EXPECT_EQ(a.position_error, b.position_error);
  EXPECT_EQ(a.time_delay, b.time_delay);
  EXPECT_EQ(a.planned_time, b.planned_time);
  EXPECT_EQ(a.simulated_time, b.simulated_time);
  EXPECT_EQ(a.error_calls, b.error_calls);
  EXPECT_EQ(a.final_position, b.final_position);
  ASSERT_EQ(a.legs.size(), b.legs.size());
  for (std::size_t i = 0; i < a.legs.size(); ++i) EXPECT_EQ(a.legs[i].heading, b.legs[i].heading);
}

TEST(RunScenario, ZeroCurrentIsExact) {
  for (HeadingMethod m : {HeadingMethod::calc, HeadingMethod::sim, HeadingMethod::opt}) {
    Scenario s = zero_current_scenario();
    s.method = m;
    const MetricsReport r = run_scenario(s);
    EXPECT_LE(r.position_error, 1e-6 * r.path_length);
    EXPECT_LE(std::abs(r.time_delay), 1e-6 * r.planned_time);
    EXPECT_NEAR(r.planned_time, r.path_length / 0.5, 1e-9);
    EXPECT_EQ(r.goal, (Point2{3.6, 2.0}));
  }
}

TEST(RunScenario, MetricDefinitions) {
  const MetricsReport r = run_scenario(jet_scenario({0.0, -1.2}, {6.0, 0.4}));
  EXPECT_EQ(r.position_error, distance(r.goal, r.final_position));
  EXPECT_EQ(r.time_delay, r.simulated_time - r.planned_time);
  EXPECT_GE(r.position_error, 0.0);
  EXPECT_EQ(r.track_legs, r.legs.size());
  EXPECT_EQ(r.track_legs + 1, r.n_waypoints);
  EXPECT_EQ(r.scenario, "jet");
  EXPECT_EQ(r.method, HeadingMethod::opt);
}

TEST(RunScenario, JetOptErrorMagnitude) {
  const MetricsReport r = run_scenario(jet_scenario({0.0, -1.2}, {6.0, 0.4}));
  EXPECT_LT(r.position_error, 1e-2);
  EXPECT_LT(r.position_error, 0.01 * r.path_length);
}

TEST(RunScenario, Deterministic) {
  const Scenario s = jet_scenario({-1.2, 0.8}, {7.2, -0.8});
  expect_same_report(run_scenario(s), run_scenario(s));
}

TEST(RunScenario, SmoothingIsApplied) {
  Scenario s = jet_scenario({0.0, -1.2}, {6.0, 0.4});
  const PlanResult raw = plan_scenario(s);
  s.smooth = true;
  const PlanResult smooth = plan_scenario(s);
  EXPECT_LE(smooth.waypoints.size(), raw.waypoints.size());
  EXPECT_EQ(run_scenario(s).n_waypoints, smooth.waypoints.size());
}

TEST(RunScenario, PlannerFailureCarriesStage) {
  Scenario s = zero_current_scenario();
  s.field = CurrentField::uniform({-0.8, 0.0});
  s.area = {{0.0, 2.0}, {0.0, 0.0}, 0.4};
  s.start = {0.0, 0.0};
  s.goal = {2.0, 0.0};
  try {
    run_scenario(s);
    FAIL() << "expected StageError";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "plan");
    EXPECT_STREQ(e.kind(), "unreachable");
  }
}

TEST(CompareMethods, UniformFieldCollapses) {
  Scenario s = zero_current_scenario();
  s.field = CurrentField::uniform({0.15, -0.1});
  const auto out = compare_methods(s);
  ASSERT_EQ(out.size(), 3u);
  for (const auto& o : out) ASSERT_TRUE(o.report.has_value()) << o.failure;
  const MetricsReport& calc = *out[0].report;
  for (const auto& o : out) {
    EXPECT_NEAR(o.report->position_error, calc.position_error, 1e-6);
    EXPECT_NEAR(o.report->time_delay, calc.time_delay, 1e-6);
    EXPECT_EQ(o.report->planned_time, calc.planned_time);
    for (std::size_t i = 0; i < calc.legs.size(); ++i)
      EXPECT_NEAR(wrap_angle(o.report->legs[i].heading - calc.legs[i].heading), 0.0, 1e-6);
  }
  EXPECT_LE(calc.position_error, 1e-6);
}

TEST(CompareMethods, StrongShearFailsCalcOnly) {
  const auto out = compare_methods(strong_shear_scenario());
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].method, HeadingMethod::calc);
  EXPECT_FALSE(out[0].report.has_value());
  EXPECT_EQ(out[0].failure_kind, "impassable");
  EXPECT_EQ(out[0].failure.rfind("guidance:", 0), 0u) << out[0].failure;
  for (std::size_t i = 1; i < 3; ++i) {
    ASSERT_TRUE(out[i].report.has_value()) << out[i].failure;
    EXPECT_LT(out[i].report->position_error, 0.1);
  }
}

TEST(CompareMethods, JetOptBeatsSimOnMostStarts) {
  const auto suite = jet20_suite();
  int wins = 0;
  int runs = 0;
  for (std::size_t k = 0; k < suite.size(); k += 4) {
    const auto out = compare_methods(suite[k]);
    ASSERT_TRUE(out[1].report && out[2].report);
    ++runs;
    if (out[2].report->position_error <= out[1].report->position_error) ++wins;
  }
  EXPECT_GT(2 * wins, runs);
}

TEST(BenchBracketing, StillWaterConvergesQuickly) {
  const Scenario s = zero_current_scenario();
  const auto rows = bench_bracketing(s);
  EXPECT_EQ(rows[0].method, BracketMethod::golden);
  EXPECT_EQ(rows[1].method, BracketMethod::fibonacci);
  EXPECT_EQ(rows[2].method, BracketMethod::brent);
  for (const auto& r : rows) {
    EXPECT_GT(r.path_elements, 0u);
    EXPECT_LE(r.error_calls, 30 * r.path_elements);
    EXPECT_LE(r.position_error, 1e-9);
  }
}

TEST(BenchBracketing, NeedsOpt) {
  Scenario s = zero_current_scenario();
  s.method = HeadingMethod::sim;
  EXPECT_THROW(bench_bracketing(s), InvalidArgument);
}

TEST(BenchBracketing, BrentUsesFewestCallsOnJet) {
  const auto rows = bench_bracketing(jet_scenario({0.0, -1.2}, {6.0, 0.4}));
  EXPECT_LE(rows[2].error_calls, rows[1].error_calls);
  EXPECT_LE(rows[1].error_calls, rows[0].error_calls);
  EXPECT_EQ(rows[0].path_elements, rows[2].path_elements);
}

TEST(JetSuite, TwentyDistinctLatticeStarts) {
  const auto a = jet20_suite();
  const auto b = jet20_suite();
  ASSERT_EQ(a.size(), 20u);
  std::set<std::pair<double, double>> starts;
  const GeoGraph g = scenario_graph(a.front());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].start, b[i].start);
    EXPECT_EQ(a[i].goal, kJetSuiteGoal);
    EXPECT_GE(distance(a[i].start, kJetSuiteGoal), 3.0);
    EXPECT_EQ(g.position(g.snap(a[i].start)), a[i].start);
    EXPECT_EQ(a[i].glider.v_veh_bf, 0.5);
    EXPECT_EQ(a[i].area.grid_size, 0.4);
    starts.insert({a[i].start.x, a[i].start.y});
  }
  EXPECT_EQ(starts.size(), 20u);
}

TEST(ScaledScenario, Configuration) {
  const Scenario s = scaled_jet_scenario();
  EXPECT_EQ(s.field.units(), Units::si);
  EXPECT_EQ(s.glider.v_veh_bf, 0.382);
  EXPECT_EQ(s.glider.dr_speed(), 0.342);
  EXPECT_EQ(s.glider.depths.climb_to, 2.52);
  EXPECT_EQ(s.glider.depths.dive_to, 102.48);
  const GeoGraph g = scenario_graph(s);
  EXPECT_EQ(g.vertex_count(), 8385u);
  EXPECT_NEAR(s.t0, 2.378 * 86400.0, 1e-6);
}

}  // namespace
}  // namespace glider
