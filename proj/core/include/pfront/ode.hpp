#pragma once

// Dormand-Prince 5(4) with standard step-size control. Header-only because the
// right-hand sides are small lambdas that should inline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>

#include "pfront/error.hpp"

namespace pfront {

struct OdeTolerances {
  double rtol = 1e-8;
  double atol = 1e-14;
  /// Smallest step relative to max(1, |s|) before StiffFailure.
  double min_step = 1e-14;
  long max_steps = 2'000'000;
};

/// Integrates y' = rhs(s, y) from `s` to `s_end` (> s). `h` carries the step
/// size between calls. `observer(s, y)` runs after every accepted step and may
/// return false to stop early. Returns false iff stopped by the observer.
template <std::size_t N, class Rhs, class Observer>
bool integrate_dp45(Rhs&& rhs, double& s, std::array<double, N>& y, double s_end, double& h,
                    const OdeTolerances& tol, Observer&& observer) {
  using Vec = std::array<double, N>;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto combine = [&](const Vec& base, double step, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = base;
    for (const auto& [w, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) out[i] += step * w * (*k)[i];
    }
    return out;
  };

  Vec k1 = rhs(s, y);
  long steps = 0;
  if (h <= 0.0) h = 1e-3 * (s_end - s);
  while (s < s_end) {
    if (++steps > tol.max_steps) throw Error(ErrorCode::StiffFailure, "step budget exhausted");
    bool last = false;
    if (s + h >= s_end) {
      h = s_end - s;
      last = true;
    }
    const Vec k2 = rhs(s + c2 * h, combine(y, h, {{a21, &k1}}));
    const Vec k3 = rhs(s + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = rhs(s + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = rhs(s + c5 * h, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = rhs(s + h, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec y_new = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec k7 = rhs(s + h, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (err <= 1.0 && std::isfinite(err)) {
      s = last ? s_end : s + h;
      y = y_new;
      k1 = k7;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= grow;
      if (!observer(s, y)) return false;
    } else {
      const double shrink = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.1;
      h *= shrink;
      if (h < tol.min_step * std::max(1.0, std::abs(s))) {
        throw Error(ErrorCode::StiffFailure, "step size underflow at s = " + std::to_string(s));
      }
    }
  }
  return true;
}

}  // namespace pfront
