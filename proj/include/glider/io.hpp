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

#ifndef GLIDER_IO_HPP
#define GLIDER_IO_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "glider/errors.hpp"
#include "glider/geometry.hpp"
#include "glider/heading.hpp"
#include "glider/kinematics.hpp"
#include "glider/missions.hpp"
#include "glider/ocean_models.hpp"
#include "glider/optimize.hpp"
#include "glider/planner.hpp"
#include "glider/types.hpp"
#include "glider/waypoints.hpp"

namespace glider::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T read(const Json& j, const char* key) {
  const Json& v = member(j, key);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T read_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return read<T>(j, key);
}

inline std::size_t read_count(const Json& j, const char* key, std::size_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline Json point(const Point2& p) { return {{"x", p.x}, {"y", p.y}}; }
inline Point2 point(const Json& j) { return {read<double>(j, "x"), read<double>(j, "y")}; }

inline Json interval(const Interval& i) { return Json::array({i.lo, i.hi}); }
inline Interval interval(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("a range must be a two-element numeric array");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json points(const std::vector<Point2>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(point(p));
  return a;
}

inline std::vector<Point2> points(const Json& j) {
  if (!j.is_array()) throw FormatError("expected an array of points");
  std::vector<Point2> out;
  for (const auto& e : j) out.push_back(point(e));
  return out;
}

}  // namespace detail

/// Rejects documents whose format_version is not ours. Nested objects may
/// omit the version; top-level files must carry it.
inline void check_version(const Json& j, bool required) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (!j.contains("format_version")) {
    if (required) throw FormatError("missing format_version");
    return;
  }
  const Json& v = j.at("format_version");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    throw FormatError("unsupported format_version " + v.dump());
}

inline Json versioned(Json body) {
  Json out = {{"format_version", kFormatVersion}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

// Fields ----------------------------------------------------------------------

inline std::string_view to_string(Units u) { return u == Units::si ? "si" : "dimensionless"; }

inline Units units_from_string(const std::string& s) {
  if (s == "dimensionless") return Units::dimensionless;
  if (s == "si") return Units::si;
  throw FormatError("unknown units '" + s + "'");
}

inline Json to_json(const JetParams& p) {
  return {{"b0", p.b0}, {"eps_b", p.eps_b}, {"omega", p.omega}, {"theta_deg", deg_from_rad(p.theta)},
          {"k", p.k}, {"c", p.c}};
}

inline JetParams jet_params_from_json(const Json& j) {
  JetParams p;
  p.b0 = detail::read_or(j, "b0", p.b0);
  p.eps_b = detail::read_or(j, "eps_b", p.eps_b);
  p.omega = detail::read_or(j, "omega", p.omega);
  if (j.contains("theta_deg")) p.theta = rad_from_deg(detail::read<double>(j, "theta_deg"));
  p.k = detail::read_or(j, "k", p.k);
  p.c = detail::read_or(j, "c", p.c);
  return p;
}

inline Json to_json(const CurrentField& field) {
  Json params = Json::object();
  std::string type;
  if (std::holds_alternative<ZeroField>(field.model())) {
    type = "zero";
  } else if (const auto* u = std::get_if<UniformField>(&field.model())) {
    type = "uniform";
    params = {{"u", u->velocity.x}, {"v", u->velocity.y}};
  } else if (const auto* jf = std::get_if<JetField>(&field.model())) {
    type = "jet";
    params = to_json(jf->params);
  } else if (const auto* s = std::get_if<ScaledJetField>(&field.model())) {
    type = "scaled_jet";
    Json scale = {{"space_scale", s->scale.space_scale}, {"time_scale", s->scale.time_scale}};
    if (s->scale.velocity_scale) scale["velocity_scale"] = *s->scale.velocity_scale;
    params = {{"jet", to_json(s->jet)},
              {"wind", {{"z_max", s->wind.z_max}, {"w0", s->wind.w0}, {"d", s->wind.d}}},
              {"scale", scale}};
  } else if (const auto* c = std::get_if<CrossoverShearField>(&field.model())) {
    type = "shear";
    params = {{"start", detail::point(c->start)}, {"end", detail::point(c->end)}, {"depth", c->depth},
              {"strength", c->strength}, {"width", c->width}, {"sharpness", c->sharpness}};
  }
  return versioned({{"type", type}, {"units", to_string(field.units())}, {"params", params}});
}

inline CurrentField field_from_json(const Json& j, bool top_level = true) {
  check_version(j, top_level);
  const auto type = detail::read<std::string>(j, "type");
  const Units units = units_from_string(detail::read<std::string>(j, "units"));
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (type == "zero") return CurrentField::zero(units);
  if (type == "uniform")
    return CurrentField::uniform({detail::read<double>(params, "u"), detail::read<double>(params, "v")}, units);
  if (type == "jet") {
    if (units != Units::dimensionless) throw FormatError("a jet field is dimensionless; use scaled_jet for si units");
    return CurrentField::jet(jet_params_from_json(params));
  }
  if (type == "scaled_jet") {
    if (units != Units::si) throw FormatError("a scaled_jet field has si units");
    const Json jet = params.contains("jet") ? params.at("jet") : Json::object();
    const Json wj = params.contains("wind") ? params.at("wind") : Json::object();
    const Json sj = params.contains("scale") ? params.at("scale") : Json::object();
    WindParams w;
    w.z_max = detail::read_or(wj, "z_max", w.z_max);
    w.w0 = detail::read_or(wj, "w0", w.w0);
    w.d = detail::read_or(wj, "d", w.d);
    ScaleParams s;
    s.space_scale = detail::read_or(sj, "space_scale", s.space_scale);
    s.time_scale = detail::read_or(sj, "time_scale", s.time_scale);
    if (sj.contains("velocity_scale")) s.velocity_scale = detail::read<double>(sj, "velocity_scale");
    return CurrentField::scaled_jet(jet_params_from_json(jet), w, s);
  }
  if (type == "shear") {
    CrossoverShearField c;
    c.start = detail::point(detail::member(params, "start"));
    c.end = detail::point(detail::member(params, "end"));
    c.depth = detail::read_or(params, "depth", c.depth);
    c.strength = detail::read_or(params, "strength", c.strength);
    c.width = detail::read_or(params, "width", c.width);
    c.sharpness = detail::read_or(params, "sharpness", c.sharpness);
    try {
      return CurrentField::shear(c, units);
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("unknown field type '" + type + "'");
}

// Vehicle and numerics ----------------------------------------------------------

inline Json to_json(const GliderParams& g) {
  Json j = {{"v_veh_bf", g.v_veh_bf}};
  if (g.v_veh_dr) j["v_veh_dr"] = *g.v_veh_dr;
  j["climb_to"] = g.depths.climb_to;
  j["dive_to"] = g.depths.dive_to;
  return versioned(j);
}

inline GliderParams glider_from_json(const Json& j, bool top_level = true) {
  check_version(j, top_level);
  GliderParams g;
  g.v_veh_bf = detail::read<double>(j, "v_veh_bf");
  if (j.contains("v_veh_dr")) g.v_veh_dr = detail::read<double>(j, "v_veh_dr");
  g.depths.climb_to = detail::read_or(j, "climb_to", 0.0);
  g.depths.dive_to = detail::read_or(j, "dive_to", 0.0);
  g.validate();
  return g;
}

inline Json to_json(const StepControl& c) {
  return {{"h", c.h}, {"h_min", c.h_min}, {"h_max", c.h_max}, {"eps_tol", c.eps_tol}, {"tau", c.tau}};
}

inline StepControl step_control_from_json(const Json& j, StepControl base = {}) {
  base.h = detail::read_or(j, "h", base.h);
  base.h_min = detail::read_or(j, "h_min", base.h_min);
  base.h_max = detail::read_or(j, "h_max", base.h_max);
  base.eps_tol = detail::read_or(j, "eps_tol", base.eps_tol);
  base.tau = detail::read_or(j, "tau", base.tau);
  base.validate();
  return base;
}

inline Json to_json(const HeadingOptions& h) {
  Json j = {{"n_segments", h.n_segments},
            {"n_intervals", h.n_intervals},
            {"bracket", to_string(h.bracket)},
            {"tol_deg", deg_from_rad(h.tol)},
            {"degenerate_widening_deg", deg_from_rad(h.degenerate_widening)}};
  if (std::isfinite(h.sanity_bound)) j["sanity_bound"] = h.sanity_bound;
  return j;
}

inline HeadingOptions heading_options_from_json(const Json& j, HeadingOptions base = {}) {
  base.n_segments = detail::read_count(j, "n_segments", base.n_segments);
  base.n_intervals = detail::read_count(j, "n_intervals", base.n_intervals);
  if (j.contains("bracket")) base.bracket = bracket_method_from_string(detail::read<std::string>(j, "bracket"));
  if (j.contains("tol_deg")) base.tol = rad_from_deg(detail::read<double>(j, "tol_deg"));
  if (j.contains("degenerate_widening_deg"))
    base.degenerate_widening = rad_from_deg(detail::read<double>(j, "degenerate_widening_deg"));
  base.sanity_bound = detail::read_or(j, "sanity_bound", base.sanity_bound);
  return base;
}

// Scenarios -------------------------------------------------------------------

/// Defaults applied to scenario fields the document leaves out.
struct Defaults {
  StepControl ctrl;
  HeadingOptions heading;
};

inline Json to_json(const Scenario& s) {
  Json j = {{"name", s.name},
            {"field", to_json(s.field)},
            {"glider", to_json(s.glider)},
            {"area", {{"x", detail::interval(s.area.x)}, {"y", detail::interval(s.area.y)},
                      {"grid_size", s.area.grid_size}}},
            {"start", detail::point(s.start)},
            {"goal", detail::point(s.goal)},
            {"t0", s.t0},
            {"method", to_string(s.method)},
            {"heading", to_json(s.heading)},
            {"step_control", to_json(s.ctrl)},
            {"smooth", s.smooth}};
  if (s.current_speed_bound) j["current_speed_bound"] = *s.current_speed_bound;
  return versioned(j);
}

inline Scenario scenario_from_json(const Json& j, const Defaults& defaults = {}) {
  check_version(j, true);
  Scenario s;
  s.name = detail::read_or<std::string>(j, "name", "scenario");
  s.field = field_from_json(detail::member(j, "field"), false);
  s.glider = glider_from_json(detail::member(j, "glider"), false);
  const Json& area = detail::member(j, "area");
  s.area = {detail::interval(detail::member(area, "x")), detail::interval(detail::member(area, "y")),
            detail::read<double>(area, "grid_size")};
  s.start = detail::point(detail::member(j, "start"));
  s.goal = detail::point(detail::member(j, "goal"));
  s.t0 = detail::read_or(j, "t0", 0.0);
  if (j.contains("method")) s.method = heading_method_from_string(detail::read<std::string>(j, "method"));
  s.heading = j.contains("heading") ? heading_options_from_json(j.at("heading"), defaults.heading) : defaults.heading;
  s.ctrl = j.contains("step_control") ? step_control_from_json(j.at("step_control"), defaults.ctrl) : defaults.ctrl;
  s.smooth = detail::read_or(j, "smooth", false);
  if (j.contains("current_speed_bound")) s.current_speed_bound = detail::read<double>(j, "current_speed_bound");
  s.validate();
  return s;
}

// Plans -------------------------------------------------------------------------

inline Json to_json(const PlanResult& p) {
  return versioned({{"waypoints", detail::points(p.waypoints)},
                    {"arrival_times", p.arrival_times},
                    {"total_time", p.total_time},
                    {"length", p.length()},
                    {"stats",
                     {{"cost_calls", p.stats.cost_calls},
                      {"current_calls", p.stats.current_calls},
                      {"vertices", p.stats.vertices},
                      {"edges", p.stats.edges},
                      {"expanded", p.stats.expanded},
                      {"compute_seconds", p.stats.compute_seconds}}}});
}

inline PlanResult plan_from_json(const Json& j) {
  check_version(j, true);
  PlanResult p;
  p.waypoints = detail::points(detail::member(j, "waypoints"));
  p.arrival_times = detail::read<std::vector<double>>(j, "arrival_times");
  p.total_time = detail::read<double>(j, "total_time");
  if (j.contains("stats")) {
    const Json& st = j.at("stats");
    p.stats.cost_calls = detail::read_count(st, "cost_calls", 0);
    p.stats.current_calls = detail::read_count(st, "current_calls", 0);
    p.stats.vertices = detail::read_count(st, "vertices", 0);
    p.stats.edges = detail::read_count(st, "edges", 0);
    p.stats.expanded = detail::read_count(st, "expanded", 0);
    p.stats.compute_seconds = detail::read_or(st, "compute_seconds", 0.0);
  }
  if (p.waypoints.size() < 2 || p.arrival_times.size() != p.waypoints.size())
    throw FormatError("a plan needs at least two waypoints and one arrival time per waypoint");
  return p;
}

// Guidance artifacts --------------------------------------------------------------

/// Settings travelling with a DR list or schedule so it can be replayed
/// without the scenario.
struct GuidanceContext {
  std::string scenario;
  std::optional<GliderParams> glider;
  std::optional<StepControl> ctrl;
  std::optional<HeadingOptions> heading;
  std::optional<PlanSummary> plan;
  std::size_t error_calls = 0;
};

namespace detail {

inline void put_context(Json& j, const GuidanceContext& c) {
  if (!c.scenario.empty()) j["scenario"] = c.scenario;
  if (c.glider) j["glider"] = to_json(*c.glider);
  if (c.ctrl) j["step_control"] = to_json(*c.ctrl);
  if (c.heading) j["heading"] = to_json(*c.heading);
  if (c.plan)
    j["plan"] = {{"goal", point(c.plan->goal)},
                 {"planned_time", c.plan->planned_time},
                 {"path_length", c.plan->path_length},
                 {"n_waypoints", c.plan->n_waypoints}};
  j["error_calls"] = c.error_calls;
}

inline GuidanceContext get_context(const Json& j) {
  GuidanceContext c;
  c.scenario = read_or<std::string>(j, "scenario", "");
  if (j.contains("glider")) c.glider = glider_from_json(j.at("glider"), false);
  if (j.contains("step_control")) c.ctrl = step_control_from_json(j.at("step_control"));
  if (j.contains("heading")) c.heading = heading_options_from_json(j.at("heading"));
  if (j.contains("plan")) {
    const Json& p = j.at("plan");
    c.plan = PlanSummary{point(member(p, "goal")), read<double>(p, "planned_time"), read<double>(p, "path_length"),
                         read_count(p, "n_waypoints", 0)};
  }
  c.error_calls = read_count(j, "error_calls", 0);
  return c;
}

}  // namespace detail

struct DRListDocument {
  DRWaypointList dr;
  GuidanceContext context;
};

inline Json to_json(const DRListDocument& d) {
  Json j = versioned({{"method", to_string(d.dr.method)},
                      {"v_veh_bf_dr", d.dr.v_veh_bf_dr},
                      {"t0", d.dr.t0},
                      {"entries", detail::points(d.dr.entries)}});
  detail::put_context(j, d.context);
  return j;
}

inline DRListDocument drlist_from_json(const Json& j) {
  check_version(j, true);
  DRListDocument d;
  d.dr.method = heading_method_from_string(detail::read<std::string>(j, "method"));
  d.dr.v_veh_bf_dr = detail::read<double>(j, "v_veh_bf_dr");
  d.dr.t0 = detail::read<double>(j, "t0");
  d.dr.entries = detail::points(detail::member(j, "entries"));
  if (d.dr.entries.size() < 2) throw FormatError("a DR list needs at least two entries");
  d.context = detail::get_context(j);
  return d;
}

struct ScheduleDocument {
  HeadingSchedule schedule;
  Point2 start;
  HeadingMethod method = HeadingMethod::opt;
  GuidanceContext context;
};

inline Json to_json(const ScheduleDocument& d) {
  Json entries = Json::array();
  for (const auto& e : d.schedule.entries) entries.push_back({{"t_start", e.t_start}, {"heading_deg", deg_from_rad(e.heading)}});
  Json j = versioned({{"method", to_string(d.method)},
                      {"start", detail::point(d.start)},
                      {"t_end", d.schedule.t_end},
                      {"entries", entries}});
  detail::put_context(j, d.context);
  return j;
}

inline ScheduleDocument schedule_from_json(const Json& j) {
  check_version(j, true);
  ScheduleDocument d;
  d.method = heading_method_from_string(detail::read_or<std::string>(j, "method", "opt"));
  d.start = detail::point(detail::member(j, "start"));
  d.schedule.t_end = detail::read<double>(j, "t_end");
  const Json& entries = detail::member(j, "entries");
  if (!entries.is_array() || entries.empty()) throw FormatError("a heading schedule needs at least one entry");
  for (const auto& e : entries)
    d.schedule.entries.push_back(
        {detail::read<double>(e, "t_start"), wrap_angle(rad_from_deg(detail::read<double>(e, "heading_deg")))});
  d.context = detail::get_context(j);
  return d;
}

// Reports -------------------------------------------------------------------------

inline Json to_json(const LegDiagnostics& l) {
  return {{"leg", l.leg},
          {"x_start", detail::point(l.x_start)},
          {"x_target", detail::point(l.x_target)},
          {"t_start", l.t_start},
          {"t_travel", l.t_travel},
          {"heading_deg", deg_from_rad(l.heading)},
          {"x_end", detail::point(l.x_end)},
          {"error_calls", l.error_calls},
          {"miss_distance", l.miss_distance},
          {"sanity_exceeded", l.sanity_exceeded}};
}

inline Json to_json(const std::vector<LegDiagnostics>& legs) {
  Json a = Json::array();
  for (const auto& l : legs) a.push_back(to_json(l));
  return a;
}

/// The scalar metrics shared by every report form.
inline Json metrics_json(const MetricsReport& r) {
  return {{"scenario", r.scenario},
          {"method", to_string(r.method)},
          {"bracket", to_string(r.bracket)},
          {"position_error", r.position_error},
          {"time_delay", r.time_delay},
          {"planned_time", r.planned_time},
          {"simulated_time", r.simulated_time},
          {"path_length", r.path_length},
          {"n_waypoints", r.n_waypoints},
          {"error_calls", r.error_calls},
          {"track_legs", r.track_legs},
          {"goal", detail::point(r.goal)},
          {"final_position", detail::point(r.final_position)}};
}

inline Json to_json(const MetricsReport& r) {
  Json j = versioned(metrics_json(r));
  if (!r.legs.empty()) j["legs"] = to_json(r.legs);
  return j;
}

// Files and CSV -------------------------------------------------------------------------

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline void write_track_csv(std::ostream& out, const Track& track) {
  out << "t,x,y,z\n";
  for (const auto& s : track.samples)
    out << format_double(s.t) << ',' << format_double(s.pos.x) << ',' << format_double(s.pos.y) << ','
        << format_double(s.pos.z) << '\n';
}

inline void write_headings_csv(std::ostream& out, const std::vector<HeadingCommand>& headings) {
  out << "t_start,heading_rad\n";
  for (const auto& h : headings) out << format_double(h.t_start) << ',' << format_double(h.heading) << '\n';
}

struct LatticeSpec {
  Interval x;
  Interval y;
  std::size_t nx = 2;
  std::size_t ny = 2;
  double z = 0.0;
  std::vector<double> times{0.0};
};

template <CurrentSource F>
void write_lattice_csv(std::ostream& out, const F& field, const LatticeSpec& spec) {
  require(spec.nx >= 1 && spec.ny >= 1, "lattice needs at least one point per axis");
  auto axis = [](Interval r, std::size_t n, std::size_t i) {
    return n == 1 ? r.lo : r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  out << "x,y,z,t,u,v\n";
  for (double t : spec.times)
    for (std::size_t j = 0; j < spec.ny; ++j)
      for (std::size_t i = 0; i < spec.nx; ++i) {
        const double x = axis(spec.x, spec.nx, i);
        const double y = axis(spec.y, spec.ny, j);
        const Velocity2 c = field.current({x, y, spec.z}, t);
        out << format_double(x) << ',' << format_double(y) << ',' << format_double(spec.z) << ','
            << format_double(t) << ',' << format_double(c.x) << ',' << format_double(c.y) << '\n';
      }
}

inline void write_metrics_csv_header(std::ostream& out) {
  out << "scenario,method,bracket,position_error,time_delay,planned_time,simulated_time,path_length,"
         "n_waypoints,error_calls\n";
}

inline void write_metrics_csv_row(std::ostream& out, const MetricsReport& r) {
  out << r.scenario << ',' << to_string(r.method) << ',' << to_string(r.bracket) << ','
      << format_double(r.position_error) << ',' << format_double(r.time_delay) << ','
      << format_double(r.planned_time) << ',' << format_double(r.simulated_time) << ','
      << format_double(r.path_length) << ',' << r.n_waypoints << ',' << r.error_calls << '\n';
}

}  // namespace glider::io

#endif  // GLIDER_IO_HPP
