#include "pfront/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pfront/error.hpp"

namespace pfront {

namespace {

using real = long double;

real pos(real v) { return v > 0 ? v : 0; }

void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::OutOfDomain, what);
}

double get(const std::map<std::string, double>& m, const char* key) {
  auto it = m.find(key);
  if (it == m.end()) throw Error(ErrorCode::OutOfDomain, fmt::format("missing constant {}", key));
  return it->second;
}

// (1 - e^{-b(p-2)t})/b with its b -> 0 limit.
real decay_integral(real b, real p, real t) {
  if (std::fabs(b) < 1e-12L) return (p - 2) * t;
  return -std::expm1(-b * (p - 2) * t) / b;
}

bool is_borderline(const ProblemParams& pr) {
  return pr.beta < 1.0 && pr.b > 0.0 && nearly_equal(pr.alpha, borderline_alpha(pr.p, pr.beta));
}

}  // namespace

double Curve::at(double t) const {
  if (coefficient == 0.0) return 0.0;
  return coefficient * std::pow(t, exponent);
}

bool BarrierDomain::contains(double x, double t) const {
  if (!(x >= x_min && x <= x_max && t >= t_min && t <= t_max)) return false;
  if (left && !(x > left->at(t))) return false;
  return true;
}

std::string_view to_string(SolutionFamily family) noexcept {
  switch (family) {
    case SolutionFamily::TravelingWave: return "TravelingWave";
    case SolutionFamily::BorderlineExplicit: return "BorderlineExplicit";
    case SolutionFamily::WaitingBeta1: return "WaitingBeta1";
    case SolutionFamily::WaitingPureDiffusion: return "WaitingPureDiffusion";
    case SolutionFamily::StationaryCritical: return "StationaryCritical";
    case SolutionFamily::AbsorptionOnly: return "AbsorptionOnly";
  }
  return "?";
}

bool is_exact(SolutionFamily family) noexcept { return family != SolutionFamily::AbsorptionOnly; }

std::string_view to_string(BarrierFamily family) noexcept {
  switch (family) {
    case BarrierFamily::ProfilePower: return "ProfilePower";
    case BarrierFamily::ShrinkGamma: return "ShrinkGamma";
    case BarrierFamily::CornerBarrier: return "CornerBarrier";
    case BarrierFamily::RegionThreeG: return "RegionThreeG";
    case BarrierFamily::ExpBeta1: return "ExpBeta1";
    case BarrierFamily::PowerWaitReaction: return "PowerWaitReaction";
    case BarrierFamily::PowerWaitBlowup: return "PowerWaitBlowup";
    case BarrierFamily::PowerWaitStatic: return "PowerWaitStatic";
    case BarrierFamily::B0Profile: return "B0Profile";
  }
  return "?";
}

std::string_view to_string(Side side) noexcept { return side == Side::Sub ? "Sub" : "Super"; }

// --- solutions ---------------------------------------------------------------

ClosedFormSolution make_solution(SolutionFamily family, const ProblemParams& raw) {
  ClosedFormSolution sol;
  sol.family = family;
  sol.params = validate(raw);
  auto& pr = sol.params;
  const double p = pr.p;
  const double waiting_alpha = p / (p - 2.0);
  switch (family) {
    case SolutionFamily::TravelingWave:
      require(pr.b == 0.0 && nearly_equal(pr.alpha, front_power(p)),
              "traveling wave needs b = 0 and alpha = (p-1)/(p-2)");
      pr.alpha = front_power(p);
      sol.constants["xi_star"] = std::pow(pr.C, p - 2.0) * std::pow(front_power(p), p - 1.0);
      break;
    case SolutionFamily::BorderlineExplicit: {
      require(is_borderline(pr) && nearly_equal(pr.beta * (p - 1.0), 1.0, 1e-9),
              "explicit borderline solution needs beta(p-1) = 1 and alpha = p/(p-1-beta)");
      const double cs = critical_constant(pr);
      sol.constants["C_star"] = cs;
      sol.constants["zeta_star"] = pr.b * (1.0 - pr.beta) * std::pow(pr.C, pr.beta - 1.0) *
                                   (std::pow(pr.C / cs, p - 1.0 - pr.beta) - 1.0);
      break;
    }
    case SolutionFamily::WaitingBeta1: {
      require(nearly_equal(pr.beta, 1.0) && nearly_equal(pr.alpha, waiting_alpha),
              "beta = 1 waiting solution needs alpha = p/(p-2)");
      const double ratio = std::pow(pr.C / bar_constant(p), p - 2.0);
      sol.constants["C_bar"] = bar_constant(p);
      if (std::abs(pr.b) < 1e-12) {
        sol.horizon = 1.0 / (ratio * (p - 2.0));
      } else if (pr.b >= ratio) {
        sol.horizon = kInf;
      } else {
        sol.horizon = std::log(1.0 - pr.b / ratio) / (pr.b * (2.0 - p));
      }
      sol.constants["T"] = sol.horizon;
      break;
    }
    case SolutionFamily::WaitingPureDiffusion: {
      require(pr.b == 0.0 && nearly_equal(pr.alpha, waiting_alpha),
              "pure-diffusion waiting solution needs b = 0 and alpha = p/(p-2)");
      const double cb = bar_constant(p);
      sol.constants["C_bar"] = cb;
      sol.horizon = std::pow(cb / pr.C, p - 2.0) / (p - 2.0);
      sol.constants["T"] = sol.horizon;
      break;
    }
    case SolutionFamily::StationaryCritical: {
      require(is_borderline(pr), "stationary solution needs beta < 1, b > 0, alpha = p/(p-1-beta)");
      pr.C = critical_constant(pr);
      sol.constants["C_star"] = pr.C;
      break;
    }
    case SolutionFamily::AbsorptionOnly:
      require(pr.beta < 1.0 && pr.b > 0.0, "absorption-only solution needs beta < 1, b > 0");
      sol.constants["ell_star"] = ell_star(pr);
      break;
  }
  return sol;
}

namespace {

std::function<real(real, real)> solution_kernel(const ClosedFormSolution& sol) {
  const real p = sol.params.p;
  const real b = sol.params.b;
  const real beta = sol.params.beta;
  const real alpha = sol.params.alpha;
  const real C = sol.params.C;
  switch (sol.family) {
    case SolutionFamily::TravelingWave: {
      const real xi = get(sol.constants, "xi_star");
      const real n = (p - 1) / (p - 2);
      return [=](real x, real t) { return C * std::pow(pos(xi * t - x), n); };
    }
    case SolutionFamily::BorderlineExplicit: {
      const real zeta = get(sol.constants, "zeta_star");
      const real n = 1 / (1 - beta);
      return [=](real x, real t) { return C * std::pow(pos(zeta * t - x), n); };
    }
    case SolutionFamily::WaitingBeta1: {
      const real ratio = std::pow(C / static_cast<real>(get(sol.constants, "C_bar")), p - 2);
      const real a = p / (p - 2);
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        const real bracket = 1 - ratio * decay_integral(b, p, t);
        return C * std::pow(-x, a) * std::exp(-b * t) * std::pow(bracket, 1 / (2 - p));
      };
    }
    case SolutionFamily::WaitingPureDiffusion: {
      const real ratio = std::pow(C / static_cast<real>(get(sol.constants, "C_bar")), p - 2);
      const real a = p / (p - 2);
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        return C * std::pow(-x, a) * std::pow(1 - ratio * (p - 2) * t, 1 / (2 - p));
      };
    }
    case SolutionFamily::StationaryCritical: {
      const real a = p / (p - 1 - beta);
      return [=](real x, real) { return C * std::pow(pos(-x), a); };
    }
    case SolutionFamily::AbsorptionOnly: {
      const real w = alpha * (1 - beta);
      const real c1 = std::pow(C, 1 - beta);
      return [=](real x, real t) {
        const real inner = c1 * std::pow(pos(-x), w) - b * (1 - beta) * t;
        return std::pow(pos(inner), 1 / (1 - beta));
      };
    }
  }
  return [](real, real) { return real{0}; };
}

std::vector<Curve> solution_kinks(const ClosedFormSolution& sol) {
  switch (sol.family) {
    case SolutionFamily::TravelingWave: return {{get(sol.constants, "xi_star"), 1.0}};
    case SolutionFamily::BorderlineExplicit: return {{get(sol.constants, "zeta_star"), 1.0}};
    case SolutionFamily::AbsorptionOnly: {
      const auto& pr = sol.params;
      return {{-get(sol.constants, "ell_star"), 1.0 / (pr.alpha * (1.0 - pr.beta))}};
    }
    default: return {{0.0, 1.0}};
  }
}

}  // namespace

double eval_solution(const ClosedFormSolution& sol, double x, double t) {
  if (t < 0.0) throw Error(ErrorCode::OutOfDomain, "negative time");
  if (t >= sol.horizon) {
    throw Error(ErrorCode::BeyondHorizon, fmt::format("t = {} >= T = {}", t, sol.horizon));
  }
  return static_cast<double>(solution_kernel(sol)(x, t));
}

double solution_interface(const ClosedFormSolution& sol, double t) {
  return solution_kinks(sol).front().at(t);
}

SpaceTimeFunction as_function(const ClosedFormSolution& sol) {
  return {sol.params, solution_kernel(sol), solution_kinks(sol)};
}

// --- barriers ----------------------------------------------------------------

namespace {

std::function<real(real, real)> barrier_kernel(const BarrierSpec& bar) {
  const auto& k = bar.constants;
  const real p = bar.params.p;
  const real b = bar.params.b;
  const real beta = bar.params.beta;
  const real alpha = bar.params.alpha;
  const real C = bar.params.C;
  switch (bar.family) {
    case BarrierFamily::ProfilePower: {
      const real c0 = get(k, "C0"), z0 = get(k, "zeta0"), g0 = get(k, "gamma0");
      const real kappa = get(k, "kappa");
      return [=](real x, real t) {
        if (t <= 0) return real{0};
        const real zeta = x * std::pow(t, -kappa);
        return std::pow(t, 1 / (1 - beta)) * c0 * std::pow(pos(z0 - zeta), g0);
      };
    }
    case BarrierFamily::ShrinkGamma: {
      const real gamma = get(k, "gamma");
      const real w = p * (1 - beta) / (p - 1 - beta);
      const real c1 = std::pow(C, 1 - beta);
      return [=](real x, real t) {
        const real inner = c1 * std::pow(pos(-x), w) - b * (1 - beta) * (1 - gamma) * t;
        return std::pow(pos(inner), 1 / (1 - beta));
      };
    }
    case BarrierFamily::CornerBarrier: {
      const real c0 = get(k, "C0"), z0 = get(k, "zeta0"), g0 = get(k, "gamma0");
      const real kappa = get(k, "kappa");
      return [=](real x, real t) { return c0 * std::pow(pos(-z0 * std::pow(t, kappa) - x), g0); };
    }
    case BarrierFamily::RegionThreeG: {
      const real s = get(k, "s");
      const real w = alpha * (1 - beta);
      const real c1 = std::pow(C + s, 1 - beta);
      return [=](real x, real t) {
        const real inner = c1 * std::pow(pos(-x), w) - b * (1 - beta) * (1 - s) * t;
        return std::pow(pos(inner), 1 / (1 - beta));
      };
    }
    case BarrierFamily::ExpBeta1: {
      const real amp = get(k, "amplitude");
      const real eps = get(k, "envelope_eps");
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        real v = amp * std::pow(-x, alpha) * std::exp(-b * t);
        if (eps != 0) v *= std::pow(1 - eps * decay_integral(b, p, t) / (p - 2), 1 / (2 - p));
        return v;
      };
    }
    case BarrierFamily::PowerWaitReaction: {
      const real s = get(k, "s"), d = get(k, "d");
      const real w = alpha * (1 - beta);
      const real c1 = std::pow(C + s, 1 - beta);
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        const real inner = c1 * std::pow(-x, w) + b * (beta - 1) * (1 - d) * t;
        return std::pow(inner, 1 / (1 - beta));
      };
    }
    case BarrierFamily::PowerWaitBlowup: {
      const real amp = get(k, "amplitude"), gamma = get(k, "gamma");
      const real a = p / (p - 2);
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        return amp * std::pow(-x, a) * std::pow(1 - gamma * t, 1 / (2 - p));
      };
    }
    case BarrierFamily::PowerWaitStatic: {
      const real amp = get(k, "amplitude"), eps = get(k, "envelope_eps");
      return [=](real x, real t) {
        if (x >= 0) return real{0};
        return amp * std::pow(-x, alpha) * std::pow(1 - eps * t, 1 / (2 - p));
      };
    }
    case BarrierFamily::B0Profile: {
      const real c0 = get(k, "C0"), xi0 = get(k, "xi0");
      const real m = p - alpha * (p - 2);
      const real n = (p - 1) / (p - 2);
      return [=](real x, real t) {
        if (t <= 0) return real{0};
        return std::pow(t, alpha / m) * c0 * std::pow(pos(xi0 - x * std::pow(t, -1 / m)), n);
      };
    }
  }
  return [](real, real) { return real{0}; };
}

std::vector<Curve> barrier_kinks(const BarrierSpec& bar) {
  const auto& k = bar.constants;
  switch (bar.family) {
    case BarrierFamily::ProfilePower:
      return {{get(k, "zeta0"), get(k, "kappa")}, {0.0, 1.0}};
    case BarrierFamily::B0Profile: {
      const auto& pr = bar.params;
      return {{get(k, "xi0"), 1.0 / diffusion_scale(pr.p, pr.alpha)}, {0.0, 1.0}};
    }
    case BarrierFamily::CornerBarrier:
      return {{-get(k, "zeta0"), get(k, "kappa")}};
    case BarrierFamily::ShrinkGamma:
    case BarrierFamily::RegionThreeG:
      return {{-get(k, "edge_speed"), get(k, "edge_exponent")}};
    default:
      return {{0.0, 1.0}};
  }
}

BarrierSpec base_spec(BarrierFamily family, const ProblemParams& params, Side side) {
  BarrierSpec bar;
  bar.family = family;
  bar.side = side;
  bar.params = validate(params);
  return bar;
}

}  // namespace

double eval_barrier_unchecked(const BarrierSpec& bar, double x, double t) {
  return static_cast<double>(barrier_kernel(bar)(x, t));
}

double eval_barrier(const BarrierSpec& bar, double x, double t) {
  if (!bar.domain.contains(x, t)) {
    throw Error(ErrorCode::OutsideDomain,
                fmt::format("({}, {}) outside the {} window", x, t, to_string(bar.family)));
  }
  return eval_barrier_unchecked(bar, x, t);
}

SpaceTimeFunction as_function(const BarrierSpec& bar) {
  return {bar.params, barrier_kernel(bar), barrier_kinks(bar)};
}

BarrierSpec profile_power(const ProblemParams& params, double c0, double zeta0, double gamma0,
                          Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::ProfilePower, params, side);
  const auto& pr = bar.params;
  require(pr.beta < 1.0 && pr.b > 0.0, "profile barrier needs beta < 1, b > 0");
  require(c0 > 0.0 && zeta0 > 0.0 && gamma0 > 0.0, "profile barrier constants must be positive");
  const double kappa = borderline_exponent(pr.p, pr.beta);
  bar.constants = {{"C0", c0}, {"zeta0", zeta0}, {"gamma0", gamma0}, {"kappa", kappa}};
  bar.domain = {0.0, 1.25 * zeta0 * std::pow(t_max, kappa), 0.0, t_max, std::nullopt};
  return bar;
}

BarrierSpec borderline_profile_barrier(const ProblemParams& params, double a1, Side side,
                                       double t_max) {
  const auto dc = appendix_constants(params, a1);
  const auto& ap = dc.appendix;
  require(ap.count("zeta1") != 0, "profile barriers need C > C_*");
  const double q = params.p - 1.0 - params.beta;
  if (side == Side::Super) {
    return profile_power(params, ap.at("C2"), ap.at("zeta2"), params.p / q, side, t_max);
  }
  return profile_power(params, ap.at("C1"), ap.at("zeta1"), ap.at("mu"), side, t_max);
}

BarrierSpec shrink_gamma(const ProblemParams& params, double gamma, Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::ShrinkGamma, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  require(beta < 1.0 && b > 0.0, "shrinking barrier needs beta < 1, b > 0");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0,1]");
  const double kappa = borderline_exponent(p, beta);
  const double speed = std::pow(b * (1.0 - beta) * (1.0 - gamma) * std::pow(C, beta - 1.0), kappa);
  bar.constants = {{"gamma", gamma}, {"edge_speed", speed}, {"edge_exponent", kappa}};
  const double reach = std::pow(b * (1.0 - beta) * std::pow(C, beta - 1.0) * t_max, kappa);
  bar.domain = {-3.0 * reach, reach, 0.0, t_max, std::nullopt};
  return bar;
}

BarrierSpec shrink_gamma_barrier(const ProblemParams& params, Side side, double t_max) {
  const double cs = critical_constant(params);
  require(params.C < cs, "shrinking barriers need C < C_*");
  const double bp = params.beta * (params.p - 1.0);
  const double top = std::pow(params.C / cs, params.p - 1.0 - params.beta);
  const bool upper_branch = bp > 1.0 || nearly_equal(bp, 1.0);
  double gamma;
  if (upper_branch) {
    gamma = side == Side::Super ? top : 0.0;
  } else {
    // The upper bound on this branch is u0 itself (gamma = 1).
    gamma = side == Side::Sub ? top : 1.0;
  }
  return shrink_gamma(params, gamma, side, t_max);
}

BarrierSpec corner_barrier(const ProblemParams& params, double c0, double zeta0, double ell,
                           double time_exponent, double space_exponent, Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::CornerBarrier, params, side);
  require(c0 > 0.0 && zeta0 > 0.0 && ell > zeta0, "corner barrier needs ell > zeta0 > 0, C0 > 0");
  bar.constants = {{"C0", c0},
                   {"zeta0", zeta0},
                   {"ell", ell},
                   {"kappa", time_exponent},
                   {"gamma0", space_exponent}};
  const double reach = ell * std::pow(t_max, time_exponent);
  bar.domain = {-reach, 0.5 * reach, 0.0, t_max, Curve{-ell, time_exponent}};
  return bar;
}

BarrierSpec borderline_corner_barrier(const ProblemParams& params, Side side, double t_max) {
  const auto dc = appendix_constants(params, std::nullopt);
  const auto& ap = dc.appendix;
  const double q = params.p - 1.0 - params.beta;
  const double kappa = borderline_exponent(params.p, params.beta);
  if (side == Side::Sub) {
    require(ap.count("zeta3") != 0, "lower corner barrier needs beta(p-1) < 1 and C < C_*");
    return corner_barrier(params, *dc.c_star, ap.at("zeta3"), ap.at("ell0"), kappa, params.p / q,
                          side, t_max);
  }
  require(ap.count("ell1") != 0, "upper corner barrier needs C < C_* and an interior maximiser");
  return corner_barrier(params, ap.at("C3"), ap.at("zeta4"), ap.at("ell1"), kappa, params.p / q,
                        side, t_max);
}

BarrierSpec region_three_corner(const ProblemParams& params, double ell, double eps) {
  const auto& [p, b, beta, alpha, C] = params;
  const auto rc = region_three_constants(params, ell, eps);
  const double q = p - 1.0 - beta;
  const double w = alpha * (1.0 - beta);
  const double e = alpha * q - p;
  require(e > 0.0, "corner barrier window needs alpha > p/(p-1-beta)");
  const double allowed = 0.5 * eps * b /
                         (std::pow(rc.c6, q) * (alpha - 1.0) * (p - 1.0) * std::pow(alpha, p - 1.0));
  const double delta = std::pow(std::pow(allowed, 1.0 / e) / (ell - rc.zeta5), w);
  auto bar = corner_barrier(params, rc.c6, rc.zeta5, ell, 1.0 / w, alpha, Side::Super, delta);
  bar.constants["eps"] = eps;
  return bar;
}

BarrierSpec region_three_g(const ProblemParams& params, double s) {
  const Side side = s > 0.0 ? Side::Super : Side::Sub;
  auto bar = base_spec(BarrierFamily::RegionThreeG, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  const double q = p - 1.0 - beta;
  require(beta < 1.0 && b > 0.0 && alpha > p / q, "g_eps barriers need Region 3 parameters");
  require(std::abs(s) < std::min(1.0, C) && s != 0.0, "|s| must lie in (0, min(1, C))");
  require(side == Side::Sub || beta * (p - 1.0) >= 1.0 - kTieTolerance,
          "upper g_eps needs beta(p-1) >= 1");
  const double w = alpha * (1.0 - beta);
  const double speed = std::pow(C + s, -1.0 / alpha) * std::pow(b * (1.0 - beta) * (1.0 - s), 1.0 / w);
  const double bound = std::abs(alpha * (1.0 - beta) - 1.0) * (p - 1.0) + alpha * beta * (p - 1.0);
  const double x_eps = std::pow(0.5 * std::abs(s) * b /
                                    (std::pow(alpha, p - 1.0) * std::pow(C + std::abs(s), q) * bound),
                                1.0 / (alpha * q - p));
  const double delta1 = std::pow(x_eps / speed, w);
  bar.constants = {{"s", s}, {"edge_speed", speed}, {"edge_exponent", 1.0 / w}, {"x_eps", -x_eps}};
  bar.domain = {-x_eps, 0.25 * x_eps, 0.0, delta1, std::nullopt};
  return bar;
}

BarrierSpec exp_beta1(const ProblemParams& params, double eps, Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::ExpBeta1, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  require(nearly_equal(beta, 1.0) && alpha > p / (p - 2.0), "needs beta = 1, alpha > p/(p-2)");
  require(eps > 0.0 && eps < C, "eps must lie in (0, C)");
  if (side == Side::Sub) {
    bar.constants = {{"amplitude", C - eps}, {"envelope_eps", 0.0}};
    bar.domain = {-1.0, 0.2, 0.0, t_max, std::nullopt};
    return bar;
  }
  const double amp = C + eps;
  const double x_eps = std::pow(0.5 * eps / ((p - 2.0) * std::pow(alpha, p - 1.0) * (alpha - 1.0) *
                                             (p - 1.0) * std::pow(amp, p - 2.0)),
                                1.0 / (alpha * (p - 2.0) - p));
  // Keep 1 - eps (1 - e^{-b(p-2)t}) / (b(p-2)) >= 1/2.
  double horizon = t_max;
  const double lim = 0.5 * (p - 2.0) / eps;
  if (b <= 0.0 || lim * b < 1.0) {
    const double t_half = std::abs(b) < 1e-12 ? lim / (p - 2.0)
                                              : -std::log1p(-lim * b) / (b * (p - 2.0));
    horizon = std::min(horizon, t_half);
  }
  bar.constants = {{"amplitude", amp}, {"envelope_eps", eps}, {"x_eps", -x_eps}};
  bar.domain = {-x_eps, 0.2 * x_eps, 0.0, horizon, std::nullopt};
  return bar;
}

BarrierSpec power_wait_reaction(const ProblemParams& params, double s, double t_max) {
  const Side side = s > 0.0 ? Side::Super : Side::Sub;
  auto bar = base_spec(BarrierFamily::PowerWaitReaction, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  const double q = p - 1.0 - beta;
  require(beta > 1.0 && q > 0.0 && alpha >= p / q - kTieTolerance, "needs 1 < beta < p-1, alpha >= p/(p-1-beta)");
  require(std::abs(s) < std::min(1.0, C) && s != 0.0, "|s| must lie in (0, min(1, C))");
  const double sign_b = b > 0.0 ? 1.0 : (b < 0.0 ? -1.0 : 0.0);
  double d = s * sign_b;
  if (nearly_equal(alpha, p / q)) d = (std::pow((C + s) / critical_constant(params), q) + s) * sign_b;
  bar.constants = {{"s", s}, {"d", d}};
  // Window from |S| <= |s|/2, which needs g <= (C+s)|x|^alpha (b > 0).
  require(b > 0.0 && alpha * q - p > 0.0, "certified window derived for b > 0 and alpha > p/(p-1-beta)");
  const double bound = std::abs(alpha * (1.0 - beta) - 1.0) * (p - 1.0) + alpha * beta * (p - 1.0);
  const double x_eps = std::pow(0.5 * std::abs(s) * b /
                                    (std::pow(alpha, p - 1.0) * std::pow(C + std::abs(s), q) * bound),
                                1.0 / (alpha * q - p));
  bar.constants["x_eps"] = -x_eps;
  bar.domain = {-std::min(x_eps, 1.0), 0.2 * std::min(x_eps, 1.0), 0.0, t_max, std::nullopt};
  return bar;
}

BarrierSpec power_wait_blowup(const ProblemParams& params, double s) {
  const Side side = s > 0.0 ? Side::Super : Side::Sub;
  auto bar = base_spec(BarrierFamily::PowerWaitBlowup, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  require(beta > 1.0 && nearly_equal(alpha, p / (p - 2.0)), "needs beta > 1, alpha = p/(p-2)");
  require(std::abs(s) < C && s != 0.0, "|s| must lie in (0, C)");
  const double amp = C + s;
  const double gamma =
      2.0 * (p - 1.0) * std::pow(p, p - 1.0) * std::pow(amp, p - 2.0) * std::pow(p - 2.0, 1.0 - p) + s;
  require(gamma > 0.0, "gamma_s must be positive");
  const double t_max = 0.5 / gamma;
  double x_eps = 1.0;
  if (b != 0.0) {
    const double g_max = std::pow(0.5 * std::abs(s) / ((p - 2.0) * std::abs(b)), 1.0 / (beta - 1.0));
    const double growth = std::pow(1.0 - gamma * t_max, 1.0 / (2.0 - p));
    x_eps = std::min(1.0, std::pow(g_max / (amp * growth), (p - 2.0) / p));
  }
  bar.constants = {{"amplitude", amp}, {"gamma", gamma}, {"s", s}, {"x_eps", -x_eps}};
  bar.domain = {-x_eps, 0.2 * x_eps, 0.0, t_max, std::nullopt};
  return bar;
}

BarrierSpec power_wait_static(const ProblemParams& params, double eps, Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::PowerWaitStatic, params, side);
  const auto& [p, b, beta, alpha, C] = bar.params;
  require((beta > 1.0 || b == 0.0) && alpha > p / (p - 2.0), "needs beta > 1 (or b = 0), alpha > p/(p-2)");
  require(eps > 0.0 && eps < C, "eps must lie in (0, C)");
  const double diff = std::pow(alpha, p - 1.0) * (alpha - 1.0) * (p - 1.0);
  double x_eps = 1.0;
  if (side == Side::Sub) {
    const double amp = C - eps;
    if (b > 0.0) {
      const double e1 = alpha * beta - alpha * (p - 1.0) + p;
      require(e1 > 0.0, "lower static barrier needs alpha < p/(p-1-beta) or beta >= p-1");
      x_eps = std::min(1.0, std::pow(0.5 * std::pow(amp, p - 1.0 - beta) * diff / b, 1.0 / e1));
    }
    bar.constants = {{"amplitude", amp}, {"envelope_eps", 0.0}, {"x_eps", -x_eps}};
  } else {
    const double amp = C + eps;
    t_max = std::min(t_max, 0.5 / eps);
    x_eps = std::pow(0.5 * eps / ((p - 2.0) * diff * std::pow(amp, p - 2.0)),
                     1.0 / (alpha * (p - 2.0) - p));
    if (b < 0.0) {
      const double g_max = std::pow(0.5 * eps / ((p - 2.0) * -b), 1.0 / (beta - 1.0));
      const double growth = std::pow(1.0 - eps * t_max, 1.0 / (2.0 - p));
      x_eps = std::min(x_eps, std::pow(g_max / (amp * growth), 1.0 / alpha));
    }
    x_eps = std::min(x_eps, 1.0);
    bar.constants = {{"amplitude", amp}, {"envelope_eps", eps}, {"x_eps", -x_eps}};
  }
  bar.domain = {-x_eps, 0.2 * x_eps, 0.0, t_max, std::nullopt};
  return bar;
}

BarrierSpec b0_profile(const ProblemParams& params, double a0, Side side, double t_max) {
  auto bar = base_spec(BarrierFamily::B0Profile, params, side);
  const auto& pr = bar.params;
  require(pr.b == 0.0, "b = 0 profile barrier needs b = 0");
  const auto bounds = pure_profile_bounds(pr, a0);
  const double c0 = side == Side::Super ? bounds.c5 : bounds.c4;
  const double xi0 = side == Side::Super ? bounds.xi4 : bounds.xi3;
  bar.constants = {{"C0", c0}, {"xi0", xi0}};
  const double m = diffusion_scale(pr.p, pr.alpha);
  bar.domain = {0.0, 1.25 * xi0 * std::pow(t_max, 1.0 / m), 0.0, t_max, std::nullopt};
  return bar;
}

}  // namespace pfront
