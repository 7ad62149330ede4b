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

#ifndef GLIDER_OCEAN_MODELS_HPP
#define GLIDER_OCEAN_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <variant>

#include "glider/errors.hpp"
#include "glider/geometry.hpp"

namespace glider {

/// Anything that yields a horizontal current at a position and time.
template <class F>
concept CurrentSource = requires(const F& f, const Position3& p, double t) {
  { f.current(p, t) } -> std::convertible_to<Velocity2>;
};

/// Meandering-jet parameters. Defaults are the classic Gulf Stream test set.
struct JetParams {
  double b0 = 1.2;
  double eps_b = 0.3;
  double omega = 0.4;
  double theta = std::numbers::pi / 2.0;
  double k = 0.84;
  double c = 0.12;

  void validate() const {
    require(k != 0.0, "jet wavenumber k must be non-zero");
    require(b0 >= 0.0 && eps_b >= 0.0, "jet amplitudes must be non-negative");
  }
};

/// Depth-decaying surface wind drift added to the x-component.
struct WindParams {
  double z_max = 15.0;
  double w0 = 0.5;
  double d = 2.0;

  void validate() const { require(z_max > 0.0, "wind decay depth z_max must be positive"); }
};

/// Maps dimensionless jet coordinates to physical ones.
///
/// The velocity scale defaults to space_scale / time_scale. It can be set
/// explicitly when a scenario quotes dimensionless speeds directly in m/s.
struct ScaleParams {
  double space_scale = 40000.0;
  double time_scale = 259200.0;
  std::optional<double> velocity_scale;

  double velocity() const { return velocity_scale.value_or(space_scale / time_scale); }
  void validate() const {
    require(space_scale > 0.0 && time_scale > 0.0, "scales must be positive");
    require(!velocity_scale || *velocity_scale > 0.0, "velocity scale must be positive");
  }
};

/// B(t), the oscillating meander amplitude.
inline double meander_amplitude(const JetParams& p, double t) {
  return p.b0 + p.eps_b * std::cos(p.omega * t + p.theta);
}

inline double stream_function(const JetParams& p, double x, double y, double t) {
  const double b = meander_amplitude(p, t);
  const double s = p.k * (x - p.c * t);
  const double sn = std::sin(s);
  const double denom = std::sqrt(1.0 + p.k * p.k * b * b * sn * sn);
  return 1.0 - std::tanh((y - b * std::cos(s)) / denom);
}

/// u = -d(psi)/dy, v = d(psi)/dx, evaluated analytically.
inline Velocity2 jet_velocity(const JetParams& p, double x, double y, double t) {
  const double b = meander_amplitude(p, t);
  const double s = p.k * (x - p.c * t);
  const double sn = std::sin(s);
  const double cs = std::cos(s);
  const double kb = p.k * b;
  const double denom = std::sqrt(1.0 + kb * kb * sn * sn);
  const double offset = y - b * cs;
  const double eta = offset / denom;
  const double ch = std::cosh(eta);
  const double sech2 = std::isfinite(ch) ? 1.0 / (ch * ch) : 0.0;

  // d(denom)/dx = k^3 b^2 sin cos / denom
  const double ddenom_dx = p.k * kb * kb * sn * cs / denom;
  const double deta_dx = (kb * sn * denom - offset * ddenom_dx) / (denom * denom);
  const double deta_dy = 1.0 / denom;
  return {sech2 * deta_dy, -sech2 * deta_dx};
}

inline double surface_wind_u(const WindParams& w, double omega, double z, double t) {
  const double decay = std::max(1.0 - z / w.z_max, 0.0);
  if (decay == 0.0) return 0.0;
  return w.w0 * std::cos(w.d * omega * t) * decay;
}

struct ZeroField {
  Velocity2 current(const Position3&, double) const { return {}; }
};

struct UniformField {
  Velocity2 velocity;
  Velocity2 current(const Position3&, double) const { return velocity; }
};

/// Dimensionless jet; depth is ignored.
struct JetField {
  JetParams params;
  Velocity2 current(const Position3& pos, double t) const { return jet_velocity(params, pos.x, pos.y, t); }
};

/// Jet in physical units plus the surface wind term on u.
struct ScaledJetField {
  JetParams jet;
  WindParams wind;
  ScaleParams scale;

  Velocity2 current(const Position3& pos, double t) const {
    const double vs = scale.velocity();
    const double tn = t / scale.time_scale;
    Velocity2 v = jet_velocity(jet, pos.x / scale.space_scale, pos.y / scale.space_scale, tn) * vs;
    v.x += surface_wind_u(wind, jet.omega, pos.z, tn) * vs;
    return v;
  }
};

/// Current opposing the axis start -> end, confined to two layers: deep
/// within `width` (a fraction of the axis) of the start, shallow within
/// `width` of the end. A glider that is shallow at the start and deep at the
/// end of each tenth of the axis meets only the weak flanks; samples taken
/// deep at the start or shallow at the end meet the full strength.
struct CrossoverShearField {
  Point2 start;
  Point2 end{1.0, 0.0};
  double depth = 1.0;
  double strength = 1.0;
  double width = 0.1;
  double sharpness = 2.0;

  void validate() const {
    require(distance(start, end) > 0.0, "shear axis needs distinct end points");
    require(depth > 0.0 && strength >= 0.0 && sharpness > 0.0 && width > 0.0 && width <= 1.0,
            "shear depth, strength, width or sharpness out of range");
  }

  Velocity2 current(const Position3& pos, double) const {
    const Vec2 axis = end - start;
    const double length = norm(axis);
    const Vec2 unit = axis * (1.0 / length);
    const double f = std::clamp(dot(pos.xy() - start, unit) / length, 0.0, 1.0);
    const double s = std::clamp(pos.z / depth, 0.0, 1.0);
    const double near_start = std::max(1.0 - f / width, 0.0);
    const double near_end = std::max(1.0 - (1.0 - f) / width, 0.0);
    const double mag = strength * (std::pow(s * near_start, sharpness) + std::pow((1.0 - s) * near_end, sharpness));
    return unit * -mag;
  }
};

enum class Units { dimensionless, si };

/// Closed set of analytic fields behind one evaluation interface.
class CurrentField {
 public:
  using Model = std::variant<ZeroField, UniformField, JetField, ScaledJetField, CrossoverShearField>;

  CurrentField() = default;
  CurrentField(Model model, Units units) : model_(std::move(model)), units_(units) { validate(); }

  static CurrentField zero(Units u = Units::dimensionless) { return {ZeroField{}, u}; }
  static CurrentField uniform(Velocity2 v, Units u = Units::dimensionless) { return {UniformField{v}, u}; }
  static CurrentField jet(JetParams p = {}) { return {JetField{p}, Units::dimensionless}; }
  static CurrentField shear(CrossoverShearField f, Units u = Units::dimensionless) { return {f, u}; }
  static CurrentField scaled_jet(JetParams j, WindParams w, ScaleParams s) {
    return {ScaledJetField{j, w, s}, Units::si};
  }

  Velocity2 current(const Position3& pos, double t) const {
    return std::visit([&](const auto& m) { return m.current(pos, t); }, model_);
  }

  const Model& model() const { return model_; }
  Units units() const { return units_; }

 private:
  void validate() const {
    if (const auto* j = std::get_if<JetField>(&model_)) j->params.validate();
    if (const auto* c = std::get_if<CrossoverShearField>(&model_)) c->validate();
    if (const auto* s = std::get_if<ScaledJetField>(&model_)) {
      s->jet.validate();
      s->wind.validate();
      s->scale.validate();
    }
  }

  Model model_ = ZeroField{};
  Units units_ = Units::dimensionless;
};

template <CurrentSource F>
Velocity2 get_current(const F& field, const Position3& pos, double t) {
  return field.current(pos, t);
}

/// Counts evaluations of a wrapped field. One instance per invocation;
/// the counter is not synchronized.
template <CurrentSource F>
class CountingField {
 public:
  explicit CountingField(const F& field) : field_(&field) {}
  Velocity2 current(const Position3& pos, double t) const {
    ++calls_;
    return field_->current(pos, t);
  }
  std::size_t calls() const { return calls_; }
  void reset() { calls_ = 0; }

 private:
  const F* field_;
  mutable std::size_t calls_ = 0;
};

struct Area {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kSpeedSafetyFactor = 1.1;

/// Upper bound on |current| over a deterministic lattice, scaled by a 1.1
/// safety factor. n_samples points per axis in x, y and t; the two depth
/// range ends and the midpoint in z.
template <CurrentSource F>
double max_speed_estimate(const F& field, const Area& area, Interval z_range, Interval t_range,
                          std::size_t n_samples) {
  require(n_samples >= 1, "max_speed_estimate needs at least one sample");
  auto lattice = [n_samples](double lo, double hi, std::size_t i) {
    if (n_samples == 1) return 0.5 * (lo + hi);
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_samples - 1);
  };
  const double depths[] = {z_range.lo, 0.5 * (z_range.lo + z_range.hi), z_range.hi};
  double best = 0.0;
  for (std::size_t it = 0; it < n_samples; ++it) {
    const double t = lattice(t_range.lo, t_range.hi, it);
    for (std::size_t ix = 0; ix < n_samples; ++ix) {
      const double x = lattice(area.x_min, area.x_max, ix);
      for (std::size_t iy = 0; iy < n_samples; ++iy) {
        const double y = lattice(area.y_min, area.y_max, iy);
        for (double z : depths) best = std::max(best, norm(field.current({x, y, z}, t)));
      }
    }
  }
  return best * kSpeedSafetyFactor;
}

}  // namespace glider

#endif  // GLIDER_OCEAN_MODELS_HPP
