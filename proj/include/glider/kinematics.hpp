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

#ifndef GLIDER_KINEMATICS_HPP
#define GLIDER_KINEMATICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glider/errors.hpp"
#include "glider/geometry.hpp"
#include "glider/ocean_models.hpp"
#include "glider/types.hpp"

namespace glider {

struct GliderParams {
  /// True speed through water, used for every simulation.
  double v_veh_bf = 0.5;
  /// Speed assumed by the onboard dead reckoning; defaults to v_veh_bf.
  std::optional<double> v_veh_dr;
  DepthBand depths;

  double dr_speed() const { return v_veh_dr.value_or(v_veh_bf); }
  void validate() const {
    require(v_veh_bf > 0.0, "vehicle speed must be positive");
    require(!v_veh_dr || *v_veh_dr > 0.0, "dead-reckoning speed must be positive");
    require(depths.climb_to >= 0.0 && depths.dive_to >= depths.climb_to,
            "depths must satisfy 0 <= climb_to <= dive_to");
  }
};

/// Step-size control shared by the track integrator and the travel-time
/// march. h is a fraction of the quantity being subdivided.
struct StepControl {
  double h = 0.25;
  double h_min = 1e-4;
  double h_max = 0.25;
  double eps_tol = 1e-4;
  double tau = 0.9;

  void validate() const {
    require(h_min > 0.0 && h_min <= h && h <= h_max && h_max <= 1.0,
            "step control needs 0 < h_min <= h <= h_max <= 1");
    require(eps_tol > 0.0, "eps_tol must be positive");
    require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
  }
};

inline Velocity2 earth_velocity(double heading, const Velocity2& current, double v_veh_bf) {
  return current + unit_heading(heading) * v_veh_bf;
}

/// Optimal step for a second-order method, clamped to [h_min, h_max].
/// A zero local error maps to h_max.
inline double step_size_update(double h, double error_local, const StepControl& ctrl) {
  if (error_local <= 0.0) return ctrl.h_max;
  return std::max(ctrl.h_min, std::min(ctrl.h_max, ctrl.tau * h * std::sqrt(ctrl.eps_tol / error_local)));
}

/// One attempted integration step, reported to observers.
struct IntegrationStep {
  double t = 0.0;  // absolute time at the end of the step
  Position3 pos;   // position at the end of the step
  double h = 0.0;  // step size after the update law
  double error_local = 0.0;
  bool accepted = false;
};

struct NullStepObserver {
  void operator()(const IntegrationStep&) const {}
};

namespace detail {

// Shared by calc_destination and its segmented form. Depth ramps from
// z_from to z_to over t_travel.
template <CurrentSource F, class Observer>
Position3 integrate_heading(const F& field, Point2 start, double t_start, double heading, double t_travel,
                            double z_from, double z_to, double speed, const StepControl& ctrl, double& h,
                            Observer& observe) {
  const Velocity2 through_water = unit_heading(heading) * speed;
  const double dz = z_to - z_from;
  Point2 x = start;
  double z = z_from;
  double t_local = 0.0;
  Velocity2 current_start = field.current(Position3::at(x, z), t_start);

  while (t_local < t_travel) {
    const Velocity2 rough = current_start + through_water;
    double dt = h * t_travel;
    bool last = false;
    if (t_local + dt >= t_travel * (1.0 - 1e-12)) {
      dt = t_travel - t_local;
      last = true;
    }
    const Point2 x_rough = x + rough * dt;
    const double z_end = last ? z_to : z_from + dz * (t_local + dt) / t_travel;
    const double t_end = last ? t_start + t_travel : t_start + t_local + dt;
    const Velocity2 current_end = field.current(Position3::at(x_rough, z_end), t_end);
    const Velocity2 improved = (current_start + current_end) * 0.5 + through_water;
    const double error_local = norm(rough - improved);
    h = step_size_update(h, error_local, ctrl);

    if (error_local < ctrl.eps_tol || h == ctrl.h_min) {
      current_start = current_end;
      x = x + improved * dt;
      z = z_end;
      t_local = last ? t_travel : t_local + dt;
      observe(IntegrationStep{t_end, Position3::at(x, z), h, error_local, true});
    } else {
      observe(IntegrationStep{t_end, Position3::at(x_rough, z_end), h, error_local, false});
    }
  }
  return Position3::at(x, z);
}

}  // namespace detail

/// Final position after holding `heading` for t_travel, starting at the
/// climb-to depth and ramping linearly to the dive-to depth.
template <CurrentSource F, class Observer = NullStepObserver>
Position3 calc_destination(const F& field, const Position3& x_start, double t_start, double heading,
                           double t_travel, const DepthBand& depths, double v_veh_bf, const StepControl& ctrl,
                           Observer&& observe = {}) {
  require(t_travel > 0.0 && std::isfinite(t_travel), "t_travel must be positive and finite");
  double h = ctrl.h;
  return detail::integrate_heading(field, x_start.xy(), t_start, heading, t_travel, depths.climb_to,
                                   depths.dive_to, v_veh_bf, ctrl, h, observe);
}

inline constexpr std::size_t kDefaultIntervals = 10;

/// calc_destination run over n consecutive equal time intervals; the depth
/// ramp spans the full t_travel.
template <CurrentSource F, class Observer = NullStepObserver>
Position3 calc_destination_segmented(const F& field, const Position3& x_start, double t_start, double heading,
                                     double t_travel, const DepthBand& depths, double v_veh_bf,
                                     const StepControl& ctrl, std::size_t n_intervals = kDefaultIntervals,
                                     Observer&& observe = {}) {
  require(t_travel > 0.0 && std::isfinite(t_travel), "t_travel must be positive and finite");
  require(n_intervals >= 1, "n_intervals must be at least 1");
  const double n = static_cast<double>(n_intervals);
  Position3 pos = x_start;
  double h = ctrl.h;  // carried from one interval to the next
  for (std::size_t i = 0; i < n_intervals; ++i) {
    const double t_a = i == 0 ? t_start : t_start + t_travel * (static_cast<double>(i) / n);
    const double t_b = i + 1 == n_intervals ? t_start + t_travel
                                            : t_start + t_travel * (static_cast<double>(i + 1) / n);
    const double dt = n_intervals == 1 ? t_travel : t_b - t_a;
    const double z_from = i == 0 ? depths.climb_to : depths.at(static_cast<double>(i) / n);
    const double z_to = i + 1 == n_intervals ? depths.dive_to : depths.at(static_cast<double>(i + 1) / n);
    pos = detail::integrate_heading(field, pos.xy(), t_a, heading, dt, z_from, z_to, v_veh_bf, ctrl, h, observe);
  }
  return pos;
}

struct TrackSample {
  double t = 0.0;
  Position3 pos;
};

struct Track {
  std::vector<TrackSample> samples;
  std::vector<HeadingCommand> headings;
  std::vector<std::string> warnings;
  double t_end = 0.0;  // start time plus the summed hold times


  Point2 end_position() const { return samples.empty() ? Point2{} : samples.back().pos.xy(); }
};

/// Heading and hold time recovered from one DR leg.
struct LegControl {
  double heading = 0.0;
  double t_travel = 0.0;
};

inline std::optional<LegControl> extract_control(const Point2& from, const Point2& to, double v_veh_dr) {
  const Vec2 dir = to - from;
  const double len = norm(dir);
  if (len == 0.0) return std::nullopt;
  return LegControl{bearing(dir), len / v_veh_dr};
}

namespace detail {

template <CurrentSource F>
void fly_leg(Track& track, const F& field, double t_start, double heading, double t_travel,
             const GliderParams& glider, const StepControl& ctrl, std::size_t n_intervals) {
  const Position3 from = track.samples.back().pos;
  track.headings.push_back({t_start, heading});
  auto record = [&track](const IntegrationStep& s) {
    if (s.accepted) track.samples.push_back({s.t, s.pos});
  };
  calc_destination_segmented(field, from, t_start, heading, t_travel, glider.depths, glider.v_veh_bf, ctrl,
                             n_intervals, record);
}

}  // namespace detail

/// Flies a dead-reckoning waypoint list through the true field.
template <CurrentSource F>
Track simulate_dr_mission(const DRWaypointList& dr, const F& field, const GliderParams& glider,
                          const StepControl& ctrl, std::size_t n_intervals = kDefaultIntervals) {
  require(dr.entries.size() >= 2, "a DR waypoint list needs at least two entries");
  require(dr.v_veh_bf_dr > 0.0, "DR list speed must be positive");
  Track track;
  track.samples.push_back({dr.t0, Position3::at(dr.entries.front(), glider.depths.climb_to)});
  double t = dr.t0;
  for (std::size_t i = 1; i < dr.entries.size(); ++i) {
    const auto leg = extract_control(dr.entries[i - 1], dr.entries[i], dr.v_veh_bf_dr);
    if (!leg) {
      track.warnings.push_back("leg " + std::to_string(i) + " has zero length; skipped");
      continue;
    }
    detail::fly_leg(track, field, t, leg->heading, leg->t_travel, glider, ctrl, n_intervals);
    t += leg->t_travel;
  }
  track.t_end = t;
  return track;
}

/// Flies a timed heading schedule; no dead reckoning is involved.
template <CurrentSource F>
Track simulate_heading_schedule(const HeadingSchedule& schedule, const Point2& start, const F& field,
                                const GliderParams& glider, const StepControl& ctrl,
                                std::size_t n_intervals = kDefaultIntervals) {
  require(!schedule.entries.empty(), "a heading schedule needs at least one entry");
  Track track;
  track.samples.push_back({schedule.entries.front().t_start, Position3::at(start, glider.depths.climb_to)});
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const double t_next = i + 1 < schedule.entries.size() ? schedule.entries[i + 1].t_start : schedule.t_end;
    const double hold = t_next - schedule.entries[i].t_start;
    require(hold > 0.0, "heading schedule times must be strictly increasing");
    detail::fly_leg(track, field, schedule.entries[i].t_start, schedule.entries[i].heading, hold, glider, ctrl,
                    n_intervals);
  }
  track.t_end = schedule.t_end;
  return track;
}

}  // namespace glider

#endif  // GLIDER_KINEMATICS_HPP
