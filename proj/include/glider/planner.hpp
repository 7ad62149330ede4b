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

#ifndef GLIDER_PLANNER_HPP
#define GLIDER_PLANNER_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "glider/errors.hpp"
#include "glider/geometry.hpp"
#include "glider/heading.hpp"
#include "glider/kinematics.hpp"
#include "glider/ocean_models.hpp"

namespace glider {

struct GridMove {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const GridMove&, const GridMove&) = default;
};

/// All coprime integer offsets within Chebyshev radius `radius`. Radius 3
/// gives the 32-move "rectangular 3-sector" neighbourhood.
inline std::vector<GridMove> coprime_moves(int radius) {
  std::vector<GridMove> moves;
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx)
      if ((dx != 0 || dy != 0) && std::gcd(std::abs(dx), std::abs(dy)) == 1) moves.push_back({dx, dy});
  return moves;
}

using VertexId = std::uint32_t;

/// Rectangular lattice graph with a uniform move set.
struct GeoGraph {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double grid_size = 1.0;
  Point2 origin;
  std::vector<GridMove> moves;

  std::size_t vertex_count() const { return nx * ny; }

  /// Directed edges whose both ends lie on the lattice.
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& m : moves) {
      const auto ax = static_cast<std::size_t>(std::abs(m.dx));
      const auto ay = static_cast<std::size_t>(std::abs(m.dy));
      if (ax < nx && ay < ny) n += (nx - ax) * (ny - ay);
    }
    return n;
  }

  VertexId id(std::size_t i, std::size_t j) const { return static_cast<VertexId>(j * nx + i); }
  std::size_t col(VertexId v) const { return v % nx; }
  std::size_t row(VertexId v) const { return v / nx; }
  Point2 position(VertexId v) const {
    return {origin.x + grid_size * static_cast<double>(col(v)), origin.y + grid_size * static_cast<double>(row(v))};
  }
  Area area() const {
    return {origin.x, origin.x + grid_size * static_cast<double>(nx - 1), origin.y,
            origin.y + grid_size * static_cast<double>(ny - 1)};
  }

  std::optional<VertexId> neighbour(VertexId v, const GridMove& m) const {
    const auto i = static_cast<long long>(col(v)) + m.dx;
    const auto j = static_cast<long long>(row(v)) + m.dy;
    if (i < 0 || j < 0 || i >= static_cast<long long>(nx) || j >= static_cast<long long>(ny)) return std::nullopt;
    return id(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  bool adjacent(VertexId a, VertexId b) const {
    const long long dx = static_cast<long long>(col(b)) - static_cast<long long>(col(a));
    const long long dy = static_cast<long long>(row(b)) - static_cast<long long>(row(a));
    return std::any_of(moves.begin(), moves.end(), [&](const GridMove& m) { return m.dx == dx && m.dy == dy; });
  }

  /// Nearest lattice vertex; throws when p lies outside the area by more
  /// than half a grid cell.
  VertexId snap(const Point2& p) const {
    const double fi = (p.x - origin.x) / grid_size;
    const double fj = (p.y - origin.y) / grid_size;
    const double ri = std::round(fi);
    const double rj = std::round(fj);
    if (ri < 0.0 || rj < 0.0 || ri > static_cast<double>(nx - 1) || rj > static_cast<double>(ny - 1))
      throw InvalidArgument("point lies outside the planning area");
    return id(static_cast<std::size_t>(ri), static_cast<std::size_t>(rj));
  }
};

/// Lattice covering [x_range] x [y_range] inclusive, with the 32-move
/// neighbourhood.
inline GeoGraph build_grid(Interval x_range, Interval y_range, double grid_size) {
  require(grid_size > 0.0, "grid size must be positive");
  require(x_range.hi >= x_range.lo && y_range.hi >= y_range.lo, "planning ranges must be ordered");
  GeoGraph g;
  g.grid_size = grid_size;
  g.origin = {x_range.lo, y_range.lo};
  g.nx = static_cast<std::size_t>(std::floor((x_range.hi - x_range.lo) / grid_size + 1e-9)) + 1;
  g.ny = static_cast<std::size_t>(std::floor((y_range.hi - y_range.lo) / grid_size + 1e-9)) + 1;
  require(g.nx >= 1 && g.ny >= 1 && g.nx * g.ny >= 2, "planning lattice is empty");
  g.moves = coprime_moves(3);
  return g;
}

struct PlannerOptions {
  std::size_t n_segments = kDefaultSegments;
  /// Upper bound on the current speed for the heuristic; estimated from the
  /// field when unset.
  std::optional<double> current_speed_bound;
  std::size_t speed_samples = 24;
};

struct PlanStats {
  std::size_t cost_calls = 0;
  std::size_t current_calls = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t expanded = 0;
  double compute_seconds = 0.0;
};

struct PlanResult {
  std::vector<Point2> waypoints;
  std::vector<double> arrival_times;
  double total_time = 0.0;
  PlanStats stats;

  double length() const {
    double l = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i) l += distance(waypoints[i - 1], waypoints[i]);
    return l;
  }
};

/// Time to traverse the straight edge a -> b when departing at t.
template <CurrentSource F>
double edge_cost(const GeoGraph& graph, VertexId from, VertexId to, double departure_time, const F& field,
                 const GliderParams& glider, const StepControl& ctrl, std::size_t n_segments = kDefaultSegments) {
  require(graph.adjacent(from, to), "edge_cost needs adjacent vertices");
  return calc_traveltime(field, Position3::at(graph.position(from), glider.depths.climb_to), graph.position(to),
                         departure_time, glider.depths, glider.v_veh_bf, ctrl, n_segments);
}

/// Euclidean distance over the best possible ground speed.
struct TravelTimeHeuristic {
  Point2 goal;
  double max_ground_speed = 1.0;
  double operator()(const Point2& p) const { return distance(p, goal) / max_ground_speed; }
};

/// Time-variant A*: each label carries an arrival time; a successor's label
/// is the edge cost evaluated at the predecessor's arrival time. Vertices are
/// settled once, without waiting.
template <CurrentSource F>
PlanResult astar_tve(const GeoGraph& graph, const Point2& start, const Point2& goal, double t0, const F& field,
                     const GliderParams& glider, const StepControl& ctrl, const PlannerOptions& opts = {}) {
  glider.validate();
  ctrl.validate();
  const auto t_begin = std::chrono::steady_clock::now();
  const VertexId s = graph.snap(start);
  const VertexId g = graph.snap(goal);

  CountingField counted(field);
  double bound = 0.0;
  if (opts.current_speed_bound) {
    bound = *opts.current_speed_bound;
  } else {
    const double horizon = 4.0 * distance(graph.position(s), graph.position(g)) / glider.v_veh_bf;
    bound = max_speed_estimate(field, graph.area(), {glider.depths.climb_to, glider.depths.dive_to},
                               {t0, t0 + horizon}, opts.speed_samples);
  }
  const TravelTimeHeuristic heuristic{graph.position(g), glider.v_veh_bf + bound};

  PlanResult out;
  out.stats.vertices = graph.vertex_count();
  out.stats.edges = graph.edge_count();

  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr VertexId none = std::numeric_limits<VertexId>::max();
  std::vector<double> arrival(graph.vertex_count(), inf);
  std::vector<VertexId> parent(graph.vertex_count(), none);
  std::vector<bool> settled(graph.vertex_count(), false);

  // (f, arrival time, vertex): ties resolve on arrival time, then vertex id.
  using Entry = std::tuple<double, double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  arrival[s] = t0;
  open.emplace(heuristic(graph.position(s)), t0, s);

  while (!open.empty()) {
    const auto [f, t, v] = open.top();
    open.pop();
    if (settled[v] || t > arrival[v]) continue;
    settled[v] = true;
    ++out.stats.expanded;
    if (v == g) break;
    const Position3 from = Position3::at(graph.position(v), glider.depths.climb_to);
    for (const GridMove& m : graph.moves) {
      const auto w = graph.neighbour(v, m);
      if (!w || settled[*w]) continue;
      ++out.stats.cost_calls;
      const double cost = calc_traveltime(counted, from, graph.position(*w), t, glider.depths, glider.v_veh_bf, ctrl,
                                          opts.n_segments);
      if (!std::isfinite(cost)) continue;
      const double ta = t + cost;
      if (ta < arrival[*w]) {
        arrival[*w] = ta;
        parent[*w] = v;
        open.emplace(ta + heuristic(graph.position(*w)), ta, *w);
      }
    }
  }
  out.stats.current_calls = counted.calls();
  if (!settled[g]) throw Unreachable("goal is unreachable from start");

  std::vector<VertexId> chain;
  for (VertexId v = g; v != none; v = parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  for (VertexId v : chain) {
    out.waypoints.push_back(graph.position(v));
    out.arrival_times.push_back(arrival[v]);
  }
  out.total_time = arrival[g] - t0;
  out.stats.compute_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return out;
}

/// Chained path-holding arrival times along a waypoint list; empty when a
/// leg is impassable.
template <CurrentSource F>
std::vector<double> chain_arrival_times(const std::vector<Point2>& waypoints, double t0, const F& field,
                                        const GliderParams& glider, const StepControl& ctrl,
                                        std::size_t n_segments = kDefaultSegments) {
  std::vector<double> times{t0};
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double dt = calc_traveltime(field, Position3::at(waypoints[i - 1], glider.depths.climb_to), waypoints[i],
                                      times.back(), glider.depths, glider.v_veh_bf, ctrl, n_segments);
    if (!std::isfinite(dt)) return {};
    times.push_back(times.back() + dt);
  }
  return times;
}

struct SmoothingOptions {
  std::size_t n_segments = kDefaultSegments;
  /// Allowed relative travel-time increase over the input plan.
  double relative_tolerance = 1e-3;
};

/// Greedy waypoint elision: repeatedly drop the interior waypoint whose
/// removal gives the shortest total time, while the total stays within
/// (1 + tolerance) of the input plan's total.
template <CurrentSource F>
PlanResult smooth_path(const PlanResult& plan, const F& field, const GliderParams& glider, const StepControl& ctrl,
                       const SmoothingOptions& opts = {}) {
  require(plan.waypoints.size() >= 2 && plan.arrival_times.size() == plan.waypoints.size(),
          "smoothing needs a valid plan");
  PlanResult out = plan;
  if (plan.waypoints.size() < 3) return out;
  const double t0 = plan.arrival_times.front();
  CountingField counted(field);

  std::vector<Point2> current = plan.waypoints;
  std::vector<double> times = chain_arrival_times(current, t0, counted, glider, ctrl, opts.n_segments);
  require(!times.empty(), "input plan has an impassable leg");
  const double limit = (times.back() - t0) * (1.0 + opts.relative_tolerance);

  while (current.size() > 2) {
    std::optional<std::size_t> best;
    std::vector<double> best_times;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < current.size(); ++k) {
      std::vector<Point2> candidate = current;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(k));
      auto ct = chain_arrival_times(candidate, t0, counted, glider, ctrl, opts.n_segments);
      out.stats.cost_calls += ct.empty() ? 0 : ct.size() - 1;
      if (ct.empty()) continue;
      const double total = ct.back() - t0;
      if (total < best_total) {
        best_total = total;
        best = k;
        best_times = std::move(ct);
      }
    }
    if (!best || best_total > limit) break;
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(*best));
    times = std::move(best_times);
  }
  out.waypoints = std::move(current);
  out.arrival_times = std::move(times);
  out.total_time = out.arrival_times.back() - t0;
  out.stats.current_calls += counted.calls();
  return out;
}

}  // namespace glider

#endif  // GLIDER_PLANNER_HPP
