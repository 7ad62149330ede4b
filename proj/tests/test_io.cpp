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

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "glider/io.hpp"
#include "oracles.hpp"

namespace glider {
namespace {

using io::Json;

std::string scenario_file(const char* name) { return std::string(GLIDER_SCENARIO_DIR) + "/" + name; }

void expect_same_currents(const CurrentField& a, const CurrentField& b, double scale, double t_scale) {
  EXPECT_EQ(a.units(), b.units());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Position3 p{oracle::uniform(rng, -2, 12) * scale, oracle::uniform(rng, -4, 4) * scale,
                      oracle::uniform(rng, 0, 1)};
    const double t = oracle::uniform(rng, 0, 20) * t_scale;
    const Velocity2 ca = a.current(p, t);
    const Velocity2 cb = b.current(p, t);
    EXPECT_NEAR(ca.x, cb.x, 1e-12);
    EXPECT_NEAR(ca.y, cb.y, 1e-12);
  }
}

TEST(FieldJson, RoundTripsEveryType) {
  CrossoverShearField shear;
  shear.end = {3.0, 1.0};
  shear.strength = 0.7;
  for (const CurrentField& f :
       {CurrentField::zero(), CurrentField::uniform({0.2, -0.1}, Units::si), CurrentField::jet(),
        CurrentField::shear(shear), scaled_jet_scenario().field}) {
    const Json j = io::to_json(f);
    EXPECT_EQ(j.at("format_version"), io::kFormatVersion);
    const CurrentField back = io::field_from_json(Json::parse(j.dump()));
    EXPECT_EQ(io::to_json(back), j);
    const bool si = f.units() == Units::si;
    expect_same_currents(f, back, si ? 40000.0 : 1.0, si ? 3.0 * 86400.0 : 1.0);
  }
}

TEST(FieldJson, UnitsAreMandatory) {
  Json j = io::to_json(CurrentField::jet());
  j.erase("units");
  EXPECT_THROW(io::field_from_json(j), FormatError);
}

TEST(FieldJson, UnitMismatchRejected) {
  Json j = io::to_json(CurrentField::jet());
  j["units"] = "si";
  EXPECT_THROW(io::field_from_json(j), FormatError);
  Json s = io::to_json(scaled_jet_scenario().field);
  s["units"] = "dimensionless";
  EXPECT_THROW(io::field_from_json(s), FormatError);
  j["units"] = "furlongs";
  EXPECT_THROW(io::field_from_json(j), FormatError);
}

TEST(FieldJson, UnknownTypeRejected) {
  Json j = io::to_json(CurrentField::zero());
  j["type"] = "vortex";
  EXPECT_THROW(io::field_from_json(j), FormatError);
}

TEST(Versioning, UnknownOrMissingVersionRejected) {
  const Json good = io::to_json(CurrentField::jet());
  for (const Json& v : {Json(2), Json(0), Json("1"), Json(1.5)}) {
    Json j = good;
    j["format_version"] = v;
    EXPECT_THROW(io::field_from_json(j), FormatError) << v.dump();
  }
  Json missing = good;
  missing.erase("format_version");
  EXPECT_THROW(io::field_from_json(missing), FormatError);
  EXPECT_NO_THROW(io::field_from_json(missing, false));

  const Json plan = io::to_json(plan_scenario(jet_scenario({0.0, 0.0}, {2.0, 0.4})));
  Json bad = plan;
  bad["format_version"] = 7;
  EXPECT_THROW(io::plan_from_json(bad), FormatError);
  EXPECT_THROW(io::scenario_from_json(Json::object()), FormatError);
}

TEST(Versioning, EveryWrittenDocumentCarriesVersion) {
  const Scenario s = jet_scenario({0.0, 0.0}, {2.0, 0.4});
  const PlanResult plan = plan_scenario(s);
  const GuidanceResult g = build_guidance(path_from_plan(plan), s.method, s.glider, s.field, s.ctrl);
  const MetricsReport r = evaluate_plan(s, plan);
  for (const Json& j : {io::to_json(s), io::to_json(s.field), io::to_json(s.glider), io::to_json(plan),
                        io::to_json(io::DRListDocument{g.dr, {}}),
                        io::to_json(io::ScheduleDocument{g.schedule, s.start, s.method, {}}), io::to_json(r)})
    EXPECT_EQ(j.at("format_version"), io::kFormatVersion) << j.dump();
}

TEST(ScenarioJson, RoundTrip) {
  Scenario s = scaled_jet_scenario();
  s.smooth = true;
  s.current_speed_bound = 0.9;
  s.method = HeadingMethod::sim;
  s.heading.bracket = BracketMethod::fibonacci;
  s.heading.sanity_bound = 500.0;
  s.ctrl.eps_tol = 3e-4;
  const Scenario b = io::scenario_from_json(Json::parse(io::to_json(s).dump()));
  EXPECT_EQ(b.name, s.name);
  EXPECT_EQ(b.start, s.start);
  EXPECT_EQ(b.goal, s.goal);
  EXPECT_EQ(b.t0, s.t0);
  EXPECT_EQ(b.area.x.lo, s.area.x.lo);
  EXPECT_EQ(b.area.y.hi, s.area.y.hi);
  EXPECT_EQ(b.area.grid_size, s.area.grid_size);
  EXPECT_EQ(b.glider.v_veh_bf, s.glider.v_veh_bf);
  EXPECT_EQ(b.glider.dr_speed(), s.glider.dr_speed());
  EXPECT_EQ(b.glider.depths.dive_to, s.glider.depths.dive_to);
  EXPECT_EQ(b.method, s.method);
  EXPECT_EQ(b.smooth, true);
  EXPECT_EQ(b.current_speed_bound, s.current_speed_bound);
  EXPECT_EQ(b.heading.bracket, s.heading.bracket);
  EXPECT_EQ(b.heading.n_segments, s.heading.n_segments);
  EXPECT_EQ(b.heading.sanity_bound, 500.0);
  // Angles travel in degrees; the radian value may move by an ulp.
  EXPECT_NEAR(b.heading.tol, s.heading.tol, 1e-18);
  EXPECT_EQ(b.ctrl.eps_tol, 3e-4);
  EXPECT_EQ(b.ctrl.h_min, s.ctrl.h_min);
}

TEST(ScenarioJson, DefaultsFillMissingSections) {
  Json j = io::to_json(jet_scenario({0.0, 0.0}, {2.0, 0.4}));
  j.erase("heading");
  j.erase("step_control");
  io::Defaults d;
  d.ctrl.eps_tol = 2e-4;
  d.heading.n_segments = 6;
  const Scenario s = io::scenario_from_json(j, d);
  EXPECT_EQ(s.ctrl.eps_tol, 2e-4);
  EXPECT_EQ(s.heading.n_segments, 6u);
}

TEST(ScenarioJson, ShippedFilesMatchBuiltins) {
  const Scenario jet = io::scenario_from_json(io::read_json_file(scenario_file("jet_example.json")));
  const Scenario ref = jet20_suite().front();
  EXPECT_EQ(jet.name, "jet-example");
  EXPECT_EQ(jet.start, ref.start);
  EXPECT_EQ(jet.goal, ref.goal);
  EXPECT_EQ(jet.area.grid_size, 0.4);

  const Scenario scaled = io::scenario_from_json(io::read_json_file(scenario_file("scaled_jet.json")));
  const Scenario sref = scaled_jet_scenario();
  EXPECT_EQ(scaled.goal, sref.goal);
  EXPECT_EQ(scaled.t0, sref.t0);
  EXPECT_EQ(scaled.field.units(), Units::si);
  expect_same_currents(scaled.field, sref.field, 40000.0, 86400.0);

  const Scenario shear = io::scenario_from_json(io::read_json_file(scenario_file("strong_shear.json")));
  expect_same_currents(shear.field, strong_shear_scenario().field, 1.0, 1.0);

  EXPECT_NO_THROW(io::field_from_json(io::read_json_file(scenario_file("field_uniform.json"))));
  EXPECT_NO_THROW(io::field_from_json(io::read_json_file(scenario_file("field_jet.json"))));
  EXPECT_NO_THROW(io::field_from_json(io::read_json_file(scenario_file("field_scaled_jet.json"))));
  EXPECT_EQ(io::glider_from_json(io::read_json_file(scenario_file("glider_scaled.json"))).dr_speed(), 0.342);
  EXPECT_EQ(io::glider_from_json(io::read_json_file(scenario_file("glider_jet.json"))).v_veh_bf, 0.5);
}

TEST(PlanJson, RoundTripIsExact) {
  const PlanResult p = plan_scenario(jet_scenario({0.0, -1.2}, {4.0, 0.4}));
  const PlanResult b = io::plan_from_json(Json::parse(io::to_json(p).dump()));
  EXPECT_EQ(b.waypoints, p.waypoints);
  EXPECT_EQ(b.arrival_times, p.arrival_times);
  EXPECT_EQ(b.total_time, p.total_time);
  EXPECT_EQ(b.stats.cost_calls, p.stats.cost_calls);
}

TEST(PlanJson, RejectsInconsistentPlans) {
  Json j = io::to_json(plan_scenario(jet_scenario({0.0, -1.2}, {4.0, 0.4})));
  j["arrival_times"].erase(0);
  EXPECT_THROW(io::plan_from_json(j), FormatError);
}

TEST(GuidanceJson, DrListAndScheduleRoundTrip) {
  const Scenario s = jet_scenario({0.0, -1.2}, {4.0, 0.4});
  const PlanResult plan = plan_scenario(s);
  const GuidanceResult g = build_guidance(path_from_plan(plan), s.method, s.glider, s.field, s.ctrl);
  io::GuidanceContext ctx{s.name, s.glider, s.ctrl, s.heading, summarize_plan(plan), g.total_error_calls()};

  const io::DRListDocument d = io::drlist_from_json(Json::parse(io::to_json(io::DRListDocument{g.dr, ctx}).dump()));
  EXPECT_EQ(d.dr.entries, g.dr.entries);
  EXPECT_EQ(d.dr.t0, g.dr.t0);
  EXPECT_EQ(d.dr.v_veh_bf_dr, g.dr.v_veh_bf_dr);
  EXPECT_EQ(d.dr.method, g.dr.method);
  ASSERT_TRUE(d.context.plan && d.context.glider && d.context.ctrl);
  EXPECT_EQ(d.context.plan->planned_time, plan.total_time);
  EXPECT_EQ(d.context.error_calls, g.total_error_calls());
  EXPECT_EQ(d.context.ctrl->eps_tol, s.ctrl.eps_tol);

  const io::ScheduleDocument sd = io::schedule_from_json(
      Json::parse(io::to_json(io::ScheduleDocument{g.schedule, s.start, s.method, ctx}).dump()));
  ASSERT_EQ(sd.schedule.entries.size(), g.schedule.entries.size());
  EXPECT_EQ(sd.schedule.t_end, g.schedule.t_end);
  EXPECT_EQ(sd.start, s.start);
  for (std::size_t i = 0; i < sd.schedule.entries.size(); ++i) {
    EXPECT_EQ(sd.schedule.entries[i].t_start, g.schedule.entries[i].t_start);
    EXPECT_NEAR(wrap_angle(sd.schedule.entries[i].heading - g.schedule.entries[i].heading), 0.0, 1e-15);
  }
}

TEST(GuidanceJson, AnglesAreDegrees) {
  HeadingSchedule sched{{{0.0, std::numbers::pi / 2}}, 1.0};
  const Json j = io::to_json(io::ScheduleDocument{sched, {0, 0}, HeadingMethod::calc, {}});
  EXPECT_DOUBLE_EQ(j["entries"][0]["heading_deg"].get<double>(), 90.0);
  EXPECT_FALSE(j["entries"][0].contains("heading"));
}

TEST(MetricsJson, FieldsAndLegs) {
  const Scenario s = jet_scenario({0.0, -1.2}, {4.0, 0.4});
  const MetricsReport r = run_scenario(s);
  const Json j = io::to_json(r);
  EXPECT_EQ(j["position_error"].get<double>(), r.position_error);
  EXPECT_EQ(j["time_delay"].get<double>(), r.time_delay);
  EXPECT_EQ(j["method"], "opt");
  EXPECT_EQ(j["legs"].size(), r.legs.size());
  EXPECT_TRUE(j["legs"][0].contains("heading_deg"));
}

TEST(Csv, ShortestRoundTripDoubles) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double v = std::ldexp(oracle::uniform(rng, -1.0, 1.0), static_cast<int>(rng() % 200) - 100);
    const std::string s = io::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(io::format_double(0.5), "0.5");
}

TEST(Csv, TrackAndLatticeLayout) {
  Track tr;
  tr.samples = {{0.0, {0.0, 0.0, 1.0}}, {0.25, {0.1, -0.2, 1.5}}};
  std::ostringstream a;
  io::write_track_csv(a, tr);
  EXPECT_EQ(a.str(), "t,x,y,z\n0,0,0,1\n0.25,0.1,-0.2,1.5\n");

  std::ostringstream b;
  io::write_lattice_csv(b, UniformField{{0.2, -0.1}}, {{0.0, 1.0}, {0.0, 2.0}, 2, 3, 0.0, {0.0, 5.0}});
  std::istringstream in(b.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,z,t,u,v");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",0.2,-0.1"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 2u * 3u * 2u);
}

TEST(Files, MissingAndMalformed) {
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), FormatError);
  const std::string path = ::testing::TempDir() + "/bad.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  EXPECT_THROW(io::read_json_file(path), FormatError);
}

}  // namespace
}  // namespace glider
