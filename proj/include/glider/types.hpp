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

#ifndef GLIDER_TYPES_HPP
#define GLIDER_TYPES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glider/errors.hpp"
#include "glider/geometry.hpp"

namespace glider {

enum class HeadingMethod { calc, sim, opt };

inline std::string_view to_string(HeadingMethod m) {
  switch (m) {
    case HeadingMethod::calc: return "calc";
    case HeadingMethod::sim: return "sim";
    case HeadingMethod::opt: return "opt";
  }
  return "?";
}

inline HeadingMethod heading_method_from_string(std::string_view s) {
  if (s == "calc") return HeadingMethod::calc;
  if (s == "sim") return HeadingMethod::sim;
  if (s == "opt") return HeadingMethod::opt;
  throw InvalidArgument("unknown heading method '" + std::string(s) + "'");
}

/// Shallow and deep turning depths of one leg's dive profile.
struct DepthBand {
  double climb_to = 0.0;
  double dive_to = 0.0;

  double at(double fraction) const { return climb_to + (dive_to - climb_to) * fraction; }
};

/// Planned path in the true (earth) frame.
struct WaypointPath {
  std::vector<Point2> waypoints;
  double t0 = 0.0;

  void validate() const {
    require(waypoints.size() >= 2, "a waypoint path needs at least two waypoints");
    for (std::size_t i = 1; i < waypoints.size(); ++i)
      require(!(waypoints[i] == waypoints[i - 1]), "consecutive waypoints must be distinct");
  }
};

/// Waypoints in the glider's dead-reckoned frame plus the metadata needed to
/// replay them.
struct DRWaypointList {
  std::vector<Point2> entries;
  double v_veh_bf_dr = 0.0;
  double t0 = 0.0;
  HeadingMethod method = HeadingMethod::opt;
};

struct HeadingCommand {
  double t_start = 0.0;
  double heading = 0.0;  // radians, (-pi, pi]
};

/// Timed heading commands; the last command is held until t_end.
struct HeadingSchedule {
  std::vector<HeadingCommand> entries;
  double t_end = 0.0;
};

}  // namespace glider

#endif  // GLIDER_TYPES_HPP
