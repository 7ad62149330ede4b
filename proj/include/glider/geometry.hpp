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

#ifndef GLIDER_GEOMETRY_HPP
#define GLIDER_GEOMETRY_HPP

#include <cmath>
#include <numbers>

namespace glider {

/// Plain 2-D vector used for horizontal positions and velocities.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

using Point2 = Vec2;
using Velocity2 = Vec2;

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(b - a); }
inline Vec2 unit_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }
inline double bearing(const Vec2& v) { return std::atan2(v.y, v.x); }

/// Position with depth; z is positive downward.
struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Point2 xy() const { return {x, y}; }
  static constexpr Position3 at(const Point2& p, double depth) { return {p.x, p.y, depth}; }
  friend constexpr bool operator==(const Position3&, const Position3&) = default;
};

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

inline double deg_from_rad(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double rad_from_deg(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace glider

#endif  // GLIDER_GEOMETRY_HPP
