#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pfront/closed_form.hpp"
#include "pfront/error.hpp"

namespace pfront {

namespace {

using real = long double;

constexpr double kStepFraction = 1e-5;
constexpr double kKinkBuffer = 10.0;

real flux(real v, real p) {
  if (v == 0) return 0;
  return std::copysign(std::pow(std::fabs(v), p - 1), v);
}

}  // namespace

ResidualSteps default_steps(double x, double t) noexcept {
  const double h = kStepFraction * std::max({1.0, std::abs(x), t});
  return {h, h};
}

Residual residual(const SpaceTimeFunction& fn, double x, double t,
                  std::optional<ResidualSteps> steps) {
  if (!steps) {
    // Near a kink the local length scale is the distance to it.
    steps = default_steps(x, t);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& kink : fn.kinks) gap = std::min(gap, std::abs(x - kink.at(t)));
    if (kStepFraction * gap < steps->hx) steps = ResidualSteps{kStepFraction * gap, kStepFraction * gap};
  }
  const auto [hx, ht] = *steps;
  if (t - ht <= 0.0) {
    throw Error(ErrorCode::TooCloseToKink, fmt::format("t = {} within one step of t = 0", t));
  }
  for (const auto& kink : fn.kinks) {
    for (const double tau : {t - ht, t, t + ht}) {
      if (std::abs(x - kink.at(tau)) <= kKinkBuffer * hx) {
        throw Error(ErrorCode::TooCloseToKink,
                    fmt::format("x = {} at t = {} is within {} of a kink", x, t, kKinkBuffer * hx));
      }
    }
  }

  const real p = fn.params.p;
  const real X = x, T = t, Hx = hx, Ht = ht;
  const auto& u = fn.value;
  const real u0 = u(X, T);
  const real ut = (u(X, T + Ht) - u(X, T - Ht)) / (2 * Ht);
  const real ux_right = (u(X + 2 * Hx, T) - u0) / (2 * Hx);
  const real ux_left = (u0 - u(X - 2 * Hx, T)) / (2 * Hx);
  const real flux_x = (flux(ux_right, p) - flux(ux_left, p)) / (2 * Hx);
  const real reaction = u0 > 0 ? static_cast<real>(fn.params.b) * std::pow(u0, static_cast<real>(fn.params.beta)) : 0;

  Residual out;
  out.value = static_cast<double>(ut - flux_x + reaction);
  out.scale = static_cast<double>(std::fabs(ut) + std::fabs(flux_x) + std::fabs(reaction));
  out.u = static_cast<double>(u0);
  return out;
}

std::vector<std::pair<double, double>> sample_grid(const BarrierSpec& bar, std::size_t nx,
                                                   std::size_t nt) {
  std::vector<std::pair<double, double>> out;
  out.reserve(nx * nt);
  const auto& d = bar.domain;
  for (std::size_t j = 1; j <= nt; ++j) {
    const double t = d.t_min + (d.t_max - d.t_min) * static_cast<double>(j) / static_cast<double>(nt);
    const double lo = d.left ? std::max(d.x_min, d.left->at(t)) : d.x_min;
    const double hi = d.x_max;
    if (!(hi > lo)) continue;
    for (std::size_t i = 0; i < nx; ++i) {
      out.emplace_back(lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(nx), t);
    }
  }
  return out;
}

SignReport certify_sign(const BarrierSpec& bar, const std::vector<std::pair<double, double>>& samples,
                        double tol) {
  const auto fn = as_function(bar);
  const double width = bar.domain.x_max - bar.domain.x_min;
  const double sign = bar.side == Side::Super ? 1.0 : -1.0;
  SignReport report;
  for (const auto& [x, t] : samples) {
    const ResidualSteps steps{
        kStepFraction * std::min(std::max(1.0, std::abs(x)), std::max(std::abs(x), 0.1 * width)),
        kStepFraction * t};
    Residual r;
    try {
      r = residual(fn, x, t, steps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooCloseToKink) throw;
      ++report.skipped;
      continue;
    }
    if (!(r.u > 0.0)) {
      ++report.outside_support;
      continue;
    }
    ++report.checked;
    const double normalized = r.scale > 0.0 ? sign * r.value / r.scale : 0.0;
    if (normalized < report.worst) {
      report.worst = normalized;
      report.worst_x = x;
      report.worst_t = t;
    }
  }
  report.pass = report.checked > 0 && report.worst >= -tol;
  return report;
}

}  // namespace pfront
