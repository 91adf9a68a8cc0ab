#include "pfront/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "pfront/error.hpp"
#include "pfront/ode.hpp"

namespace pfront {

namespace {

using State = std::array<double, 2>;

constexpr double kFrontOffset = 1e-6;
constexpr int kMaxStations = 48;
constexpr int kMaxExpansions = 12;

double slope_from_flux(double v, double p) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), 1.0 / (p - 1.0)), v);
}

struct Shooter {
  ProblemParams pr;
  ProfileKind kind;
  double far_power;
  double tol;

  [[nodiscard]] FrontExpansion front(double xs) const {
    if (kind == ProfileKind::PureDiffusion) return {front_coefficient(pr, xs), front_power(pr.p)};
    return reaction_front(pr, xs);
  }

  [[nodiscard]] State rhs(double xs, double s, const State& y) const {
    const double xi = xs - s;
    const double f = std::max(y[0], 0.0);
    const double fp = slope_from_flux(y[1], pr.p);
    double dv;
    if (kind == ProfileKind::PureDiffusion) {
      const double m = diffusion_scale(pr.p, pr.alpha);
      dv = (-xi * fp + pr.alpha * f) / m;
    } else {
      const double kappa = borderline_exponent(pr.p, pr.beta);
      dv = f / (1.0 - pr.beta) - kappa * xi * fp + pr.b * std::pow(f, pr.beta);
    }
    return {-fp, -dv};
  }

  struct Outcome {
    double ratio = 0.0;
    double station = 0.0;
  };

  // Far-field ratio f(-Xi) / (C Xi^a) for trial endpoint `xs`, with Xi doubled
  // until the ratio settles. Optionally records the trajectory.
  Outcome shoot(double xs, std::vector<double>* xi_out = nullptr, std::vector<double>* f_out = nullptr,
                std::vector<double>* v_out = nullptr) const {
    const auto fe = front(xs);
    double s = kFrontOffset * xs;
    const double e = fe.exponent;
    State y{fe.coefficient * std::pow(s, e),
            -std::pow(fe.coefficient * e, pr.p - 1.0) * std::pow(s, (e - 1.0) * (pr.p - 1.0))};
    auto record = [&](double sv, const State& yv) {
      if (xi_out == nullptr) return;
      xi_out->push_back(xs - sv);
      f_out->push_back(yv[0]);
      v_out->push_back(yv[1]);
    };
    if (xi_out != nullptr) {
      xi_out->push_back(xs);
      f_out->push_back(0.0);
      v_out->push_back(0.0);
    }
    record(s, y);

    OdeTolerances ode;
    ode.rtol = tol / 100.0;
    ode.atol = 1e-30;
    double h = 0.0;
    bool collapsed = false;
    auto observer = [&](double sv, const State& yv) {
      if (!(yv[0] > 0.0) || !std::isfinite(yv[0])) {
        collapsed = true;
        return false;
      }
      record(sv, yv);
      return true;
    };
    auto f = [&](double sv, const State& yv) { return rhs(xs, sv, yv); };

    double previous = 0.0;
    double station = std::max(8.0 * xs, 1.0);
    for (int k = 0; k < kMaxStations; ++k, station *= 2.0) {
      if (!integrate_dp45(f, s, y, xs + station, h, ode, observer) || collapsed) return {0.0, station};
      const double ratio = y[0] / (pr.C * std::pow(station, far_power));
      if (k > 0 && std::abs(ratio - previous) < tol / 10.0) return {ratio, station};
      previous = ratio;
    }
    throw Error(ErrorCode::StiffFailure,
                fmt::format("far-field ratio did not settle by Xi = {} (trial {})", station, xs));
  }
};

SelfSimilarProfile solve(const Shooter& sh, double guess) {
  auto residual = [&](double xs) { return sh.shoot(xs).ratio - 1.0; };
  double lo = 0.1 * guess;
  double hi = 10.0 * guess;
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  for (int i = 0; i < kMaxExpansions && f_lo >= 0.0; ++i) {
    hi = lo;
    f_hi = f_lo;
    lo *= 0.1;
    f_lo = residual(lo);
  }
  for (int i = 0; i < kMaxExpansions && f_hi <= 0.0; ++i) {
    lo = hi;
    f_lo = f_hi;
    hi *= 10.0;
    f_hi = residual(hi);
  }
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw Error(ErrorCode::NoBracket,
                fmt::format("far-field residual {} at {} and {} at {}", f_lo, lo, f_hi, hi));
  }
  while (hi - lo > 0.1 * sh.tol * 0.5 * (lo + hi)) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid < f_lo || f_mid > f_hi) {
      throw Error(ErrorCode::NoBracket,
                  fmt::format("shooting residual not monotone: F({})={}, F({})={}, F({})={}", lo, f_lo,
                              mid, f_mid, hi, f_hi));
    }
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double xs = lo - f_lo * (hi - lo) / (f_hi - f_lo);

  SelfSimilarProfile out;
  out.kind = sh.kind;
  out.params = sh.pr;
  out.xi_star = xs;
  out.tol = sh.tol;
  const auto outcome = sh.shoot(xs, &out.xi, &out.values, &out.flux);
  out.far_station = outcome.station;
  out.far_ratio = outcome.ratio;
  const auto fe = sh.front(xs);
  out.front_coefficient = fe.coefficient;
  out.front_exponent = fe.exponent;
  return out;
}

}  // namespace

std::string_view to_string(ProfileKind kind) noexcept {
  return kind == ProfileKind::PureDiffusion ? "PureDiffusion" : "Reaction";
}

double front_coefficient(const ProblemParams& params, double xi_star) {
  const double p = params.p;
  const double m = diffusion_scale(p, params.alpha);
  return std::pow(xi_star * std::pow(p - 2.0, p - 1.0) / (m * std::pow(p - 1.0, p - 1.0)),
                  1.0 / (p - 2.0));
}

FrontExpansion reaction_front(const ProblemParams& params, double zeta_star) {
  const auto& [p, b, beta, alpha, C] = params;
  const double kappa = borderline_exponent(p, beta);
  const double bp = beta * (p - 1.0);
  const double n = front_power(p);
  if (nearly_equal(bp, 1.0, 1e-9)) {
    // (K n)^{p-1} n = kappa zeta_* K n + b K^beta
    auto h = [&](double K) {
      return std::pow(K * n, p - 1.0) * n - kappa * zeta_star * K * n - b * std::pow(K, beta);
    };
    double lo = 1e-300;
    double hi = 1.0;
    while (h(hi) <= 0.0) hi *= 2.0;
    for (int i = 0; i < 2000 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = lo < 1e-12 * hi ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), n};
  }
  if (bp > 1.0) return {std::pow(kappa * zeta_star / std::pow(n, p - 1.0), 1.0 / (p - 2.0)), n};
  return {critical_constant(params), p / (p - 1.0 - beta)};
}

SelfSimilarProfile solve_pure_profile(const ProblemParams& raw, double tol) {
  ProblemParams pr = raw;
  pr.b = 0.0;
  pr = validate(pr);
  const double p = pr.p;
  if (!(pr.alpha < p / (p - 2.0)) || nearly_equal(pr.alpha, p / (p - 2.0))) {
    throw Error(ErrorCode::OutOfDomain, "profile needs 0 < alpha < p/(p-2)");
  }
  const double m = diffusion_scale(p, pr.alpha);
  const auto bracket = xi_bracket(p, pr.alpha);
  const double k = std::pow(p - 1.0, p - 1.0) * m / std::pow(p - 2.0, p - 1.0);
  const double guess = std::pow(pr.C, (p - 2.0) / m) * std::pow(k, 1.0 / p) * bracket.xi2;
  Shooter sh{pr, ProfileKind::PureDiffusion, pr.alpha, tol};
  auto out = solve(sh, guess);
  out.A0 = out.eval(0.0) / std::pow(pr.C, p / m);
  return out;
}

SelfSimilarProfile solve_reaction_profile(const ProblemParams& raw, double tol) {
  const ProblemParams pr = validate(raw);
  const double p = pr.p;
  const double q = p - 1.0 - pr.beta;
  if (!(pr.beta < 1.0) || !nearly_equal(pr.alpha, p / q)) {
    throw Error(ErrorCode::OutOfDomain, "reaction profile needs beta < 1 and alpha = p/(p-1-beta)");
  }
  const double cs = critical_constant(pr);
  if (!(pr.C > cs) || nearly_equal(pr.C, cs)) {
    throw Error(ErrorCode::OutOfDomain, "reaction profile needs C > C_*");
  }
  // Scale of the explicit front speed at beta(p-1) = 1.
  const double guess = pr.b * (1.0 - pr.beta) * std::pow(pr.C, pr.beta - 1.0) *
                       std::max(std::pow(pr.C / cs, q) - 1.0, 1e-3);
  Shooter sh{pr, ProfileKind::Reaction, p / q, tol};
  auto out = solve(sh, guess);
  out.A1 = out.eval(0.0);
  return out;
}

double SelfSimilarProfile::eval(double x) const {
  if (x >= xi_star) return 0.0;
  if (xi.size() < 2) throw Error(ErrorCode::OutOfDomain, "empty profile");
  if (x > xi[1]) return front_coefficient * std::pow(xi_star - x, front_exponent);
  if (x < xi.back()) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("xi = {} left of the stored profile", x));
  }
  // xi is descending; find i with xi[i] >= x >= xi[i+1].
  auto it = std::lower_bound(xi.begin() + 1, xi.end(), x, [](double a, double b) { return a > b; });
  std::size_t j = static_cast<std::size_t>(it - xi.begin());
  if (j >= xi.size()) j = xi.size() - 1;
  const std::size_t i = j - 1;
  const double x0 = xi[i], x1 = xi[j];
  const double h = x1 - x0;
  const double tau = (x - x0) / h;
  const double d0 = slope_from_flux(flux[i], params.p) * h;
  const double d1 = slope_from_flux(flux[j], params.p) * h;
  const double t2 = tau * tau, t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * values[i] + (t3 - 2 * t2 + tau) * d0 + (-2 * t3 + 3 * t2) * values[j] +
         (t3 - t2) * d1;
}

double SelfSimilarProfile::slope(double x) const {
  if (x >= xi_star) return 0.0;
  if (x > xi[1]) {
    return -front_coefficient * front_exponent * std::pow(xi_star - x, front_exponent - 1.0);
  }
  auto it = std::lower_bound(xi.begin() + 1, xi.end(), x, [](double a, double b) { return a > b; });
  std::size_t j = std::min(static_cast<std::size_t>(it - xi.begin()), xi.size() - 1);
  const std::size_t i = j - 1;
  const double tau = (x - xi[i]) / (xi[j] - xi[i]);
  const double v = (1.0 - tau) * flux[i] + tau * flux[j];
  return slope_from_flux(v, params.p);
}

}  // namespace pfront
