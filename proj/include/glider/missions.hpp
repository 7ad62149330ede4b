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

#ifndef GLIDER_MISSIONS_HPP
#define GLIDER_MISSIONS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "glider/errors.hpp"
#include "glider/heading.hpp"
#include "glider/kinematics.hpp"
#include "glider/ocean_models.hpp"
#include "glider/planner.hpp"
#include "glider/waypoints.hpp"

namespace glider {

struct PlannerArea {
  Interval x;
  Interval y;
  double grid_size = 1.0;
};

/// Everything needed to plan, guide and simulate one mission.
struct Scenario {
  std::string name;
  CurrentField field;
  GliderParams glider;
  PlannerArea area;
  Point2 start;
  Point2 goal;
  double t0 = 0.0;
  HeadingMethod method = HeadingMethod::opt;
  HeadingOptions heading;
  StepControl ctrl;
  bool smooth = false;
  std::optional<double> current_speed_bound;

  void validate() const {
    glider.validate();
    ctrl.validate();
    require(area.grid_size > 0.0, "grid size must be positive");
    require(heading.n_segments >= 1 && heading.n_intervals >= 1, "segment counts must be at least 1");
    require(heading.tol > 0.0, "heading tolerance must be positive");
  }

  PlannerOptions planner_options() const {
    PlannerOptions o;
    o.n_segments = heading.n_segments;
    o.current_speed_bound = current_speed_bound;
    return o;
  }
};

/// Outcome of flying a generated DR list through the true field.
struct MetricsReport {
  std::string scenario;
  HeadingMethod method = HeadingMethod::opt;
  BracketMethod bracket = BracketMethod::brent;
  double position_error = 0.0;  // |goal - final simulated position|
  double time_delay = 0.0;      // simulated - planned
  double planned_time = 0.0;
  double simulated_time = 0.0;
  double path_length = 0.0;
  std::size_t n_waypoints = 0;
  std::size_t error_calls = 0;
  std::size_t track_legs = 0;
  Point2 goal;
  Point2 final_position;
  std::vector<LegDiagnostics> legs;
};

inline GeoGraph scenario_graph(const Scenario& s) { return build_grid(s.area.x, s.area.y, s.area.grid_size); }

inline WaypointPath path_from_plan(const PlanResult& plan) { return {plan.waypoints, plan.arrival_times.front()}; }

inline PlanResult plan_scenario(const Scenario& s) {
  s.validate();
  try {
    const GeoGraph graph = scenario_graph(s);
    PlanResult plan = astar_tve(graph, s.start, s.goal, s.t0, s.field, s.glider, s.ctrl, s.planner_options());
    if (s.smooth) plan = smooth_path(plan, s.field, s.glider, s.ctrl, {s.heading.n_segments});
    return plan;
  } catch (const GuidanceError& e) {
    throw StageError("plan", e.what(), e.kind());
  }
}

/// The parts of a plan that a metrics report compares against.
struct PlanSummary {
  Point2 goal;
  double planned_time = 0.0;
  double path_length = 0.0;
  std::size_t n_waypoints = 0;
};

inline PlanSummary summarize_plan(const PlanResult& plan) {
  require(!plan.waypoints.empty(), "plan has no waypoints");
  return {plan.waypoints.back(), plan.total_time, plan.length(), plan.waypoints.size()};
}

/// Metrics of a flown track against the plan it was generated from.
inline MetricsReport measure_track(const PlanSummary& plan, const Track& track, double t0) {
  MetricsReport r;
  r.goal = plan.goal;
  r.final_position = track.end_position();
  r.position_error = distance(r.goal, r.final_position);
  r.planned_time = plan.planned_time;
  r.simulated_time = track.t_end - t0;
  r.time_delay = r.simulated_time - r.planned_time;
  r.path_length = plan.path_length;
  r.n_waypoints = plan.n_waypoints;
  r.track_legs = track.headings.size();
  return r;
}

/// Builds the DR list for `plan`, flies it and measures the result.
inline MetricsReport evaluate_plan(const Scenario& s, const PlanResult& plan, const HeadingOptions& heading) {
  GuidanceResult guidance;
  try {
    guidance = build_guidance(path_from_plan(plan), s.method, s.glider, s.field, s.ctrl, heading);
  } catch (const GuidanceError& e) {
    throw StageError("guidance", e.what(), e.kind());
  }
  Track track;
  try {
    track = simulate_dr_mission(guidance.dr, s.field, s.glider, s.ctrl, heading.n_intervals);
  } catch (const GuidanceError& e) {
    throw StageError("simulate", e.what(), e.kind());
  }
  MetricsReport r = measure_track(summarize_plan(plan), track, guidance.dr.t0);
  r.scenario = s.name;
  r.method = s.method;
  r.bracket = heading.bracket;
  r.error_calls = guidance.total_error_calls();
  r.legs = std::move(guidance.legs);
  return r;
}

inline MetricsReport evaluate_plan(const Scenario& s, const PlanResult& plan) {
  return evaluate_plan(s, plan, s.heading);
}

inline MetricsReport run_scenario(const Scenario& s) { return evaluate_plan(s, plan_scenario(s)); }

struct BracketBenchRow {
  BracketMethod method = BracketMethod::brent;
  std::size_t error_calls = 0;
  std::size_t path_elements = 0;
  double position_error = 0.0;
};

/// Error-function call totals for golden, Fibonacci and Brent backing OPT on
/// the same plan.
inline std::array<BracketBenchRow, 3> bench_bracketing(const Scenario& s, const PlanResult& plan) {
  require(s.method == HeadingMethod::opt, "bracketing benchmark needs the OPT method");
  std::array<BracketBenchRow, 3> rows;
  const BracketMethod order[] = {BracketMethod::golden, BracketMethod::fibonacci, BracketMethod::brent};
  for (std::size_t i = 0; i < 3; ++i) {
    HeadingOptions h = s.heading;
    h.bracket = order[i];
    const MetricsReport r = evaluate_plan(s, plan, h);
    rows[i] = {order[i], r.error_calls, r.legs.size(), r.position_error};
  }
  return rows;
}

inline std::array<BracketBenchRow, 3> bench_bracketing(const Scenario& s) {
  return bench_bracketing(s, plan_scenario(s));
}

struct MethodOutcome {
  HeadingMethod method = HeadingMethod::opt;
  std::optional<MetricsReport> report;
  std::string failure;  // stage-labelled message when report is empty
  std::string failure_kind;
};

/// CALC, SIM and OPT on one shared plan; guidance failures are recorded,
/// not thrown.
inline std::vector<MethodOutcome> compare_methods(const Scenario& s, const PlanResult& plan) {
  std::vector<MethodOutcome> out;
  for (HeadingMethod m : {HeadingMethod::calc, HeadingMethod::sim, HeadingMethod::opt}) {
    Scenario sm = s;
    sm.method = m;
    MethodOutcome o;
    o.method = m;
    try {
      o.report = evaluate_plan(sm, plan);
    } catch (const GuidanceError& e) {
      o.failure = e.what();
      o.failure_kind = e.kind();
    }
    out.push_back(std::move(o));
  }
  return out;
}

inline std::vector<MethodOutcome> compare_methods(const Scenario& s) { return compare_methods(s, plan_scenario(s)); }

// Built-in scenarios ----------------------------------------------------------

/// Dimensionless meandering-jet mission template: v = 0.5, grid 0.4 over
/// x in [-2, 12], y in [-4, 4].
inline Scenario jet_scenario(Point2 start, Point2 goal, std::string name = "jet") {
  Scenario s;
  s.name = std::move(name);
  s.field = CurrentField::jet();
  s.glider.v_veh_bf = 0.5;
  s.area = {{-2.0, 12.0}, {-4.0, 4.0}, 0.4};
  s.start = start;
  s.goal = goal;
  s.t0 = 0.0;
  return s;
}

inline constexpr Point2 kJetSuiteGoal{10.0, 0.0};
inline constexpr std::uint64_t kJetSuiteSeed = 20140407;

/// Twenty seeded start vertices across the jet domain, all flying to one
/// goal. Starts are lattice vertices at least 3 units from the goal.
inline std::vector<Scenario> jet20_suite() {
  std::mt19937_64 rng(kJetSuiteSeed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Scenario> suite;
  const Scenario base = jet_scenario({}, kJetSuiteGoal);
  const GeoGraph graph = scenario_graph(base);
  while (suite.size() < 20) {
    const Point2 p{-2.0 + 10.0 * unit(), -4.0 + 8.0 * unit()};
    const Point2 start = graph.position(graph.snap(p));
    if (distance(start, kJetSuiteGoal) < 3.0) continue;
    suite.push_back(jet_scenario(start, kJetSuiteGoal, "jet20-" + std::to_string(suite.size() + 1)));
  }
  return suite;
}

/// Single straight leg through a crossover shear: the four-sample average
/// opposes the path faster than the glider swims, while the ramped dive
/// only meets the weak diagonal.
inline Scenario strong_shear_scenario() {
  Scenario s;
  s.name = "strong-shear";
  CrossoverShearField shear;
  shear.start = {0.0, 0.0};
  shear.end = {4.0, 0.0};
  shear.depth = 1.0;
  shear.strength = 1.2;
  s.field = CurrentField::shear(shear);
  s.glider.v_veh_bf = 0.5;
  s.glider.depths = {0.0, 1.0};
  s.area = {{0.0, 4.0}, {-4.0, 4.0}, 4.0};
  s.start = {0.0, 0.0};
  s.goal = {4.0, 0.0};
  return s;
}

/// Physical-unit scenario: 40 km / 3 day scaled jet with surface wind, on a
/// 5 km lattice over 640 x 320 km.
inline Scenario scaled_jet_scenario() {
  Scenario s;
  s.name = "scaled-jet";
  ScaleParams scale;
  scale.space_scale = 40000.0;
  scale.time_scale = 3.0 * 86400.0;
  scale.velocity_scale = 1.0;
  s.field = CurrentField::scaled_jet(JetParams{}, WindParams{}, scale);
  s.glider.v_veh_bf = 0.382;
  s.glider.v_veh_dr = 0.342;
  s.glider.depths = {2.52, 102.48};
  s.area = {{-320000.0, 320000.0}, {-160000.0, 160000.0}, 5000.0};
  s.start = {0.0, 0.0};
  s.goal = {125000.0, -100000.0};
  s.t0 = 2.378 * 86400.0;
  return s;
}

}  // namespace glider

#endif  // GLIDER_MISSIONS_HPP
