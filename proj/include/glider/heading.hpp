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

#ifndef GLIDER_HEADING_HPP
#define GLIDER_HEADING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "glider/errors.hpp"
#include "glider/geometry.hpp"
#include "glider/kinematics.hpp"
#include "glider/ocean_models.hpp"
#include "glider/optimize.hpp"
#include "glider/types.hpp"

namespace glider {

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// One planned leg handed to heading determination.
struct PathElement {
  Position3 x_start;
  Position3 x_end;
  double t_start = 0.0;
  double t_end = 0.0;
  DepthBand depths;

  double length() const { return distance(x_start.xy(), x_end.xy()); }
  void validate() const {
    require(length() > 0.0, "path element has zero length");
    require(t_end > t_start, "path element needs t_end > t_start");
  }
};

/// Line-circle intersection of the path direction with the speed circle
/// centred on the current.
struct PathSolution {
  double disc_raw = 0.0;  // before clamping
  double disc = 0.0;
  double v_path_ef = 0.0;  // speed made good along the path
  Vec2 heading_vector;     // through-water velocity
  double heading = 0.0;
};

inline PathSolution solve_path_heading(const Vec2& path_unit, const Velocity2& current, double v_veh_bf) {
  PathSolution s;
  const double along = dot(path_unit, current);
  s.disc_raw = along * along + v_veh_bf * v_veh_bf - dot(current, current);
  s.disc = std::max(s.disc_raw, 0.0);
  s.v_path_ef = along + std::sqrt(s.disc);
  s.heading_vector = path_unit * s.v_path_ef - current;
  s.heading = bearing(s.heading_vector);
  return s;
}

/// CALC: one solve with the current averaged over both ends and both depths.
template <CurrentSource F>
PathSolution calc_heading_solution(const PathElement& elem, const F& field, double v_veh_bf) {
  elem.validate();
  const Point2 a = elem.x_start.xy();
  const Point2 b = elem.x_end.xy();
  const Velocity2 mean = (field.current(Position3::at(a, elem.depths.climb_to), elem.t_start) +
                          field.current(Position3::at(a, elem.depths.dive_to), elem.t_start) +
                          field.current(Position3::at(b, elem.depths.climb_to), elem.t_end) +
                          field.current(Position3::at(b, elem.depths.dive_to), elem.t_end)) *
                         0.25;
  const Vec2 dir = b - a;
  return solve_path_heading(dir * (1.0 / norm(dir)), mean, v_veh_bf);
}

template <CurrentSource F>
double calc_heading(const PathElement& elem, const F& field, double v_veh_bf) {
  return calc_heading_solution(elem, field, v_veh_bf).heading;
}

/// Time and heading log of one segment march.
struct SegmentTravel {
  std::vector<double> headings;
  double t_travel = 0.0;  // +inf when the segment is impassable
  bool passable() const { return std::isfinite(t_travel); }
};

namespace detail {

// Marches along one straight segment in sub-segments of length h * L. The
// depth ramps from climb-to at the start to dive-to at the end. Returns +inf
// when the speed made good drops to zero on an accepted sub-segment.
template <CurrentSource F>
double march_segment(const F& field, const Point2& start, const Point2& end, double t_start,
                     const DepthBand& depths, double speed, const StepControl& ctrl,
                     std::vector<double>* headings) {
  const Vec2 span = end - start;
  const double length = norm(span);
  const Vec2 unit = span * (1.0 / length);
  double s = 0.0;
  double t = t_start;
  double h = ctrl.h;
  Velocity2 current_start = field.current(Position3::at(start, depths.climb_to), t);

  while (s < length) {
    double ds = h * length;
    bool last = false;
    if (s + ds >= length * (1.0 - 1e-12)) {
      ds = length - s;
      last = true;
    }
    const PathSolution rough = solve_path_heading(unit, current_start, speed);
    const double dt_probe = ds / (rough.v_path_ef > 0.0 ? rough.v_path_ef : speed);
    const Point2 p_end = last ? end : start + unit * (s + ds);
    const double z_end = last ? depths.dive_to : depths.at((s + ds) / length);
    const Velocity2 current_end = field.current(Position3::at(p_end, z_end), t + dt_probe);
    const PathSolution improved = solve_path_heading(unit, (current_start + current_end) * 0.5, speed);
    const double error_local = norm(rough.heading_vector - improved.heading_vector);
    h = step_size_update(h, error_local, ctrl);

    if (error_local < ctrl.eps_tol || h == ctrl.h_min) {
      if (improved.v_path_ef <= 0.0) return kInfiniteCost;
      if (headings) headings->push_back(improved.heading);
      t += ds / improved.v_path_ef;
      s = last ? length : s + ds;
      current_start = current_end;
    }
  }
  return t - t_start;
}

// n equal segments with chained start times. Stops at the first impassable
// segment.
template <CurrentSource F>
double march_path(const F& field, const Point2& start, const Point2& end, double t_start, const DepthBand& depths,
                  double speed, const StepControl& ctrl, std::size_t n_segments, std::vector<double>* headings) {
  require(n_segments >= 1, "n_segments must be at least 1");
  require(distance(start, end) > 0.0, "segment has zero length");
  const double n = static_cast<double>(n_segments);
  const Vec2 span = end - start;
  double t = t_start;
  Point2 seg_start = start;
  for (std::size_t i = 0; i < n_segments; ++i) {
    const Point2 seg_end = i + 1 == n_segments ? end : start + span * (static_cast<double>(i + 1) / n);
    const double dt = march_segment(field, seg_start, seg_end, t, depths, speed, ctrl, headings);
    if (!std::isfinite(dt)) return kInfiniteCost;
    t += dt;
    seg_start = seg_end;
  }
  return t - t_start;
}

}  // namespace detail

inline constexpr std::size_t kDefaultSegments = 10;

/// TRAVELTIME for a single segment with its heading log.
template <CurrentSource F>
SegmentTravel travel_time_segment(const F& field, const Position3& x_start, const Point2& x_end, double t_start,
                                  const DepthBand& depths, double v_veh_bf, const StepControl& ctrl) {
  require(distance(x_start.xy(), x_end) > 0.0, "segment has zero length");
  SegmentTravel out;
  out.t_travel = detail::march_segment(field, x_start.xy(), x_end, t_start, depths, v_veh_bf, ctrl, &out.headings);
  return out;
}

/// Path-holding travel time over n_segments equal segments. Returns +inf
/// when any segment is impassable.
template <CurrentSource F>
double calc_traveltime(const F& field, const Position3& x_start, const Point2& x_end, double t_start,
                       const DepthBand& depths, double v_veh_bf, const StepControl& ctrl,
                       std::size_t n_segments = kDefaultSegments) {
  return detail::march_path(field, x_start.xy(), x_end, t_start, depths, v_veh_bf, ctrl, n_segments, nullptr);
}

struct HeadingSequence {
  std::vector<double> headings;
  double t_travel = 0.0;
};

template <CurrentSource F>
HeadingSequence heading_sequence(const PathElement& elem, const F& field, double v_veh_bf, const StepControl& ctrl,
                                 std::size_t n_segments = kDefaultSegments) {
  require(elem.length() > 0.0, "path element has zero length");
  HeadingSequence seq;
  seq.t_travel = detail::march_path(field, elem.x_start.xy(), elem.x_end.xy(), elem.t_start, elem.depths, v_veh_bf,
                                    ctrl, n_segments, &seq.headings);
  if (!std::isfinite(seq.t_travel)) throw ImpassableSegment("path element is impassable");
  return seq;
}

/// atan2 of the summed unit vectors; throws when they cancel.
inline double circular_mean(const std::vector<double>& angles) {
  require(!angles.empty(), "circular mean of an empty sequence");
  double sx = 0.0;
  double sy = 0.0;
  for (double a : angles) {
    sx += std::cos(a);
    sy += std::sin(a);
  }
  if (std::hypot(sx, sy) <= 1e-12 * static_cast<double>(angles.size()))
    throw GuidanceError("heading sequence has no defined mean direction");
  return std::atan2(sy, sx);
}

/// SIM: circular mean of the simulated heading sequence.
template <CurrentSource F>
double sim_heading(const PathElement& elem, const F& field, double v_veh_bf, const StepControl& ctrl,
                   std::size_t n_segments = kDefaultSegments) {
  return circular_mean(heading_sequence(elem, field, v_veh_bf, ctrl, n_segments).headings);
}

/// Miss distance in 2-D after holding `heading` for the element's duration.
template <CurrentSource F>
double error_function(double heading, const PathElement& elem, const F& field, double v_veh_bf,
                      const StepControl& ctrl, std::size_t n_intervals = kDefaultIntervals) {
  require(elem.t_end > elem.t_start, "error function needs t_end > t_start");
  const Position3 dest = calc_destination_segmented(field, elem.x_start, elem.t_start, heading,
                                                    elem.t_end - elem.t_start, elem.depths, v_veh_bf, ctrl,
                                                    n_intervals);
  return distance(elem.x_end.xy(), dest.xy());
}

struct HeadingOptions {
  std::size_t n_segments = kDefaultSegments;
  std::size_t n_intervals = kDefaultIntervals;
  BracketMethod bracket = BracketMethod::brent;
  double tol = 1e-3;
  double degenerate_widening = 0.1;
  double sanity_bound = std::numeric_limits<double>::infinity();
};

/// Outcome of one heading determination.
struct HeadingDecision {
  double heading = 0.0;
  std::size_t error_calls = 0;
  double miss_distance = std::numeric_limits<double>::quiet_NaN();  // OPT only
  Interval bracket;                                                  // OPT only
  bool sanity_exceeded = false;
  std::size_t sequence_length = 0;
};

/// Offsets of the extreme headings from the circular mean, so a spread
/// across +-pi stays contiguous.
inline Interval heading_offsets(const std::vector<double>& headings, double centre) {
  Interval off;
  for (double a : headings) {
    const double d = wrap_angle(a - centre);
    off.lo = std::min(off.lo, d);
    off.hi = std::max(off.hi, d);
  }
  return off;
}

/// Bracket [min, max] of a heading sequence, unwrapped around its circular
/// mean; widened on both sides when narrower than tol.
inline Interval heading_bracket(const std::vector<double>& headings, double tol, double widening) {
  const double centre = circular_mean(headings);
  Interval off = heading_offsets(headings, centre);
  if (off.hi - off.lo < tol) {
    off.lo -= widening;
    off.hi += widening;
  }
  return {centre + off.lo, centre + off.hi};
}

/// OPT: bracketing minimisation of the miss distance over the span of the
/// simulated heading sequence.
template <CurrentSource F>
HeadingDecision opt_heading(const PathElement& elem, const F& field, double v_veh_bf, const StepControl& ctrl,
                            const HeadingOptions& opts = {}) {
  const HeadingSequence seq = heading_sequence(elem, field, v_veh_bf, ctrl, opts.n_segments);
  HeadingDecision out;
  out.sequence_length = seq.headings.size();
  out.bracket = heading_bracket(seq.headings, opts.tol, opts.degenerate_widening);
  auto objective = [&](double heading) {
    return error_function(heading, elem, field, v_veh_bf, ctrl, opts.n_intervals);
  };
  BracketResult r = minimize_bracketed(opts.bracket, objective, out.bracket.lo, out.bracket.hi, opts.tol);
  // The sequence mean is scored as well, so OPT never does worse than SIM.
  const double mean = circular_mean(seq.headings);
  const double f_mean = objective(mean);
  ++r.n_calls;
  if (f_mean <= r.f_min) {
    r.x_min = mean;
    r.f_min = f_mean;
  }
  out.heading = wrap_angle(r.x_min);
  out.error_calls = r.n_calls;
  out.miss_distance = r.f_min;
  out.sanity_exceeded = r.f_min > opts.sanity_bound;
  return out;
}

template <CurrentSource F>
HeadingDecision detect_heading(HeadingMethod method, const PathElement& elem, const F& field, double v_veh_bf,
                               const StepControl& ctrl, const HeadingOptions& opts = {}) {
  switch (method) {
    case HeadingMethod::calc: {
      // A solve with no speed made good cannot steer the leg.
      const PathSolution sol = calc_heading_solution(elem, field, v_veh_bf);
      if (sol.v_path_ef <= 0.0) throw ImpassableSegment("averaged current leaves no headway along the path");
      HeadingDecision d;
      d.heading = sol.heading;
      return d;
    }
    case HeadingMethod::sim: {
      const HeadingSequence seq = heading_sequence(elem, field, v_veh_bf, ctrl, opts.n_segments);
      HeadingDecision d;
      d.heading = circular_mean(seq.headings);
      d.sequence_length = seq.headings.size();
      return d;
    }
    case HeadingMethod::opt: return opt_heading(elem, field, v_veh_bf, ctrl, opts);
  }
  throw InvalidArgument("unknown heading method");
}

}  // namespace glider

#endif  // GLIDER_HEADING_HPP
