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

#ifndef GLIDER_WAYPOINTS_HPP
#define GLIDER_WAYPOINTS_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "glider/errors.hpp"
#include "glider/heading.hpp"
#include "glider/kinematics.hpp"
#include "glider/ocean_models.hpp"
#include "glider/types.hpp"

namespace glider {

/// Per-leg record of the DR-list construction loop.
struct LegDiagnostics {
  std::size_t leg = 0;  // 1-based index of the target waypoint
  Point2 x_start;       // simulated true start position
  Point2 x_target;
  double t_start = 0.0;
  double t_travel = 0.0;
  double heading = 0.0;
  Point2 x_end;  // simulated true end position
  std::size_t error_calls = 0;
  double miss_distance = 0.0;  // |target - x_end|
  bool sanity_exceeded = false;
};

struct GuidanceResult {
  DRWaypointList dr;
  HeadingSchedule schedule;
  std::vector<LegDiagnostics> legs;

  std::size_t total_error_calls() const {
    std::size_t n = 0;
    for (const auto& l : legs) n += l.error_calls;
    return n;
  }
};

/// Runs the DR-list loop: travel time, heading, DR waypoint, then the true
/// position is advanced by simulation to seed the next leg. Produces both
/// the DR list and the equivalent heading schedule.
template <CurrentSource F>
GuidanceResult build_guidance(const WaypointPath& path, HeadingMethod method, const GliderParams& glider,
                              const F& field, const StepControl& ctrl, const HeadingOptions& opts = {}) {
  path.validate();
  glider.validate();
  ctrl.validate();
  GuidanceResult out;
  out.dr.v_veh_bf_dr = glider.dr_speed();
  out.dr.t0 = path.t0;
  out.dr.method = method;
  out.dr.entries.push_back(path.waypoints.front());

  Position3 x_start = Position3::at(path.waypoints.front(), glider.depths.climb_to);
  double t_start = path.t0;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const Point2 target = path.waypoints[i];
    if (distance(x_start.xy(), target) == 0.0) throw ImpassableLeg(i);
    const double t_travel = calc_traveltime(field, x_start, target, t_start, glider.depths, glider.v_veh_bf, ctrl,
                                            opts.n_segments);
    if (!std::isfinite(t_travel)) throw ImpassableLeg(i);
    const double t_end = t_start + t_travel;
    const PathElement elem{x_start, Position3::at(target, glider.depths.dive_to), t_start, t_end, glider.depths};

    HeadingDecision decision;
    try {
      decision = detect_heading(method, elem, field, glider.v_veh_bf, ctrl, opts);
    } catch (const ImpassableSegment&) {
      throw ImpassableLeg(i);
    }
    const double phi = decision.heading;
    out.dr.entries.push_back(out.dr.entries.back() + unit_heading(phi) * (t_travel * glider.dr_speed()));
    out.schedule.entries.push_back({t_start, phi});

    const Position3 x_end = calc_destination_segmented(field, x_start, t_start, phi, t_travel, glider.depths,
                                                       glider.v_veh_bf, ctrl, opts.n_intervals);
    out.legs.push_back({i, x_start.xy(), target, t_start, t_travel, phi, x_end.xy(), decision.error_calls,
                        distance(target, x_end.xy()), decision.sanity_exceeded});
    x_start = x_end;
    t_start = t_end;
  }
  out.schedule.t_end = t_start;
  return out;
}

template <CurrentSource F>
DRWaypointList create_dr_waypoint_list(const WaypointPath& path, HeadingMethod method, const GliderParams& glider,
                                       const F& field, const StepControl& ctrl, const HeadingOptions& opts = {}) {
  return build_guidance(path, method, glider, field, ctrl, opts).dr;
}

template <CurrentSource F>
HeadingSchedule to_heading_schedule(const WaypointPath& path, HeadingMethod method, const GliderParams& glider,
                                    const F& field, const StepControl& ctrl, const HeadingOptions& opts = {}) {
  return build_guidance(path, method, glider, field, ctrl, opts).schedule;
}

}  // namespace glider

#endif  // GLIDER_WAYPOINTS_HPP
