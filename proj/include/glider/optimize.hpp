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

#ifndef GLIDER_OPTIMIZE_HPP
#define GLIDER_OPTIMIZE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glider/errors.hpp"

namespace glider {

struct BracketResult {
  double x_min = 0.0;
  double f_min = 0.0;
  std::size_t n_calls = 0;
};

enum class BracketMethod { golden, fibonacci, brent };

inline std::string_view to_string(BracketMethod m) {
  switch (m) {
    case BracketMethod::golden: return "golden";
    case BracketMethod::fibonacci: return "fibonacci";
    case BracketMethod::brent: return "brent";
  }
  return "?";
}

inline BracketMethod bracket_method_from_string(std::string_view s) {
  if (s == "golden") return BracketMethod::golden;
  if (s == "fibonacci") return BracketMethod::fibonacci;
  if (s == "brent") return BracketMethod::brent;
  throw InvalidArgument("unknown bracketing method '" + std::string(s) + "'");
}

namespace detail {

// Wraps an objective and keeps the best point seen.
template <class F>
class CountedObjective {
 public:
  explicit CountedObjective(F& f) : f_(f) {}

  double operator()(double x) {
    const double fx = f_(x);
    ++calls_;
    if (calls_ == 1) first_f_ = fx;
    flat_ = flat_ && fx == first_f_;
    if (calls_ == 1 || fx < best_f_) {
      best_f_ = fx;
      best_x_ = x;
    }
    return fx;
  }

  // A flat objective carries no information on the minimizer; report the
  // centre of the search interval.
  BracketResult result(double a, double b) const {
    if (flat_) return {0.5 * (a + b), best_f_, calls_};
    return {best_x_, best_f_, calls_};
  }
  bool flat() const { return flat_; }
  std::size_t calls() const { return calls_; }

 private:
  F& f_;
  std::size_t calls_ = 0;
  double best_x_ = 0.0;
  double best_f_ = std::numeric_limits<double>::infinity();
  double first_f_ = 0.0;
  bool flat_ = true;
};

inline void check_interval(double a, double b, double tol) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, "bracketing needs a finite interval with a < b");
  require(tol > 0.0, "bracketing tolerance must be positive");
}

}  // namespace detail

inline constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2

/// Golden-section search on [a, b]; stops once the bracket width is <= tol.
template <class F>
BracketResult golden_section(F&& f, double a, double b, double tol) {
  detail::check_interval(a, b, tol);
  detail::CountedObjective obj(f);
  const double a0 = a;
  const double b0 = b;
  double c = b - kGoldenRatio * (b - a);
  double d = a + kGoldenRatio * (b - a);
  double fc = obj(c);
  double fd = obj(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGoldenRatio * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGoldenRatio * (b - a);
      fd = obj(d);
    }
  }
  return obj.result(a0, b0);
}

/// Fibonacci search with the evaluation count fixed up front: the smallest n
/// with F(n) >= (b - a) / tol, where the final probe pair is split by a
/// small offset.
template <class F>
BracketResult fibonacci_search(F&& f, double a, double b, double tol) {
  detail::check_interval(a, b, tol);
  detail::CountedObjective obj(f);
  const double a0 = a;
  const double b0 = b;
  const double delta = 0.01 * tol;
  const double ratio = (b - a) / (tol - delta);

  std::vector<double> fib{1.0, 1.0};  // fib[i] = F(i + 1)
  while (fib.back() < ratio) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  const std::size_t n = fib.size();  // F(n) >= ratio
  if (n < 3) {
    obj(0.5 * (a + b));
    return obj.result(a0, b0);
  }
  auto F_ = [&fib](std::size_t i) { return fib[i - 1]; };

  double c = a + F_(n - 2) / F_(n) * (b - a);
  double d = a + F_(n - 1) / F_(n) * (b - a);
  double fc = obj(c);
  double fd = obj(d);
  for (std::size_t m = n; m > 3; --m) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + F_(m - 3) / F_(m - 1) * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + F_(m - 2) / F_(m - 1) * (b - a);
      fd = obj(d);
    }
  }
  // c and d now coincide at the bracket midpoint; split them.
  const double probe = c + delta;
  if (obj(probe) < fc) {
    a = c;
  } else {
    b = probe;
  }
  return obj.result(a0, b0);
}

/// Brent's minimizer: golden-section steps combined with successive
/// parabolic interpolation. Stops once the bracket around the best point is
/// no wider than tol.
template <class F>
BracketResult brent_min(F&& f, double a, double b, double tol) {
  detail::check_interval(a, b, tol);
  detail::CountedObjective obj(f);
  const double a0 = a;
  const double b0 = b;
  constexpr double kCgold = 0.3819660112501051;  // 1 - kGoldenRatio
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double x = a + kCgold * (b - a);
  double w = x;
  double v = x;
  double fx = obj(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;

  for (;;) {
    const double xm = 0.5 * (a + b);
    const double tol1 = eps * std::abs(x) + tol / 4.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      // Trial parabola through x, w, v.
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm ? a : b) - x;
      d = kCgold * e;
    }

    const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0.0 ? tol1 : -tol1);
    const double fu = obj(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  if (obj.flat()) return obj.result(a0, b0);
  return {x, fx, obj.calls()};
}

template <class F>
BracketResult minimize_bracketed(BracketMethod method, F&& f, double a, double b, double tol) {
  switch (method) {
    case BracketMethod::golden: return golden_section(f, a, b, tol);
    case BracketMethod::fibonacci: return fibonacci_search(f, a, b, tol);
    case BracketMethod::brent: return brent_min(f, a, b, tol);
  }
  throw InvalidArgument("unknown bracketing method");
}

}  // namespace glider

#endif  // GLIDER_OPTIMIZE_HPP
