#include "pfront/model.hpp"

#include <algorithm>
#include <cmath>

#include "pfront/error.hpp"

namespace pfront {

namespace {

bool below(double a, double b) { return a < b && !nearly_equal(a, b); }
bool at_least(double a, double b) { return a > b || nearly_equal(a, b); }

void require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::OutOfDomain, what);
}

}  // namespace

bool nearly_equal(double a, double b, double rel) noexcept {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

ProblemParams validate(const ProblemParams& params) {
  const auto& [p, b, beta, alpha, C] = params;
  if (!std::isfinite(p) || !std::isfinite(b) || !std::isfinite(beta) || !std::isfinite(alpha) ||
      !std::isfinite(C)) {
    throw Error(ErrorCode::RejectedRange, "non-finite parameter");
  }
  if (p == 2.0) throw Error(ErrorCode::RejectedP2, "p = 2 is the semilinear limit");
  if (p < 2.0) throw Error(ErrorCode::RejectedRange, "p must exceed 2");
  if (beta <= 0.0) throw Error(ErrorCode::RejectedRange, "beta must be positive");
  if (alpha <= 0.0) throw Error(ErrorCode::RejectedRange, "alpha must be positive");
  if (C <= 0.0) throw Error(ErrorCode::RejectedRange, "C must be positive");
  if (beta < 1.0 && b <= 0.0) throw Error(ErrorCode::RejectedSignB, "beta < 1 requires b > 0");
  return params;
}

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::R1_Expanding: return "R1_Expanding";
    case Region::R2_Borderline: return "R2_Borderline";
    case Region::R3_Shrinking: return "R3_Shrinking";
    case Region::R4_Waiting: return "R4_Waiting";
    case Region::B0_Expanding: return "B0_Expanding";
    case Region::B0_Waiting: return "B0_Waiting";
    case Region::B0_Stationary: return "B0_Stationary";
  }
  return "?";
}

std::string_view to_string(Subcase subcase) noexcept {
  switch (subcase) {
    case Subcase::R2_above_critical: return "R2_above_critical";
    case Subcase::R2_below_critical: return "R2_below_critical";
    case Subcase::R2_at_critical: return "R2_at_critical";
    case Subcase::W4a: return "W4a";
    case Subcase::W4b: return "W4b";
    case Subcase::W4c: return "W4c";
    case Subcase::W4d: return "W4d";
  }
  return "?";
}

bool is_waiting(Region region) noexcept {
  return region == Region::R4_Waiting || region == Region::B0_Waiting ||
         region == Region::B0_Stationary;
}

double diffusion_scale(double p, double alpha) noexcept { return p - alpha * (p - 2.0); }
double borderline_exponent(double p, double beta) noexcept {
  return (p - 1.0 - beta) / (p * (1.0 - beta));
}
double borderline_alpha(double p, double beta) noexcept { return p / (p - 1.0 - beta); }
double front_power(double p) noexcept { return (p - 1.0) / (p - 2.0); }

double critical_constant(const ProblemParams& params) {
  const auto& [p, b, beta, alpha, C] = params;
  const double q = p - 1.0 - beta;
  require(q > 0.0, "critical constant needs p - 1 - beta > 0");
  const double base = std::abs(b) * std::pow(q, p) / ((1.0 + beta) * std::pow(p, p - 1.0) * (p - 1.0));
  return std::pow(base, 1.0 / q);
}

double bar_constant(double p) {
  require(p > 2.0, "C_bar needs p > 2");
  return std::pow(std::pow(p - 2.0, p) / (2.0 * (p - 1.0) * std::pow(p, p - 1.0)), 1.0 / (p - 2.0));
}

double ell_star(const ProblemParams& params) {
  const auto& [p, b, beta, alpha, C] = params;
  require(beta < 1.0 && b > 0.0, "l_* needs beta < 1 and b > 0");
  return std::pow(C, -1.0 / alpha) * std::pow(b * (1.0 - beta), 1.0 / (alpha * (1.0 - beta)));
}

XiBracket xi_bracket(double p, double alpha) {
  require(p > 2.0 && alpha > 0.0 && below(alpha, p / (p - 2.0)),
          "xi bracket needs 0 < alpha < p/(p-2)");
  const double explicit_alpha = front_power(p);
  if (nearly_equal(alpha, explicit_alpha)) return {1.0, 1.0};
  const double r = std::pow(p - 1.0, 1.0 / p) * std::pow(alpha * (p - 2.0), -1.0 / p);
  if (alpha > explicit_alpha) return {r, 1.0};
  return {1.0, r};
}

double nu_alpha(double p, double alpha) {
  require(p > 2.0 && alpha > 0.0, "nu_alpha needs p > 2, alpha > 0");
  if (at_least(alpha, front_power(p))) return 1.0;
  return alpha * (p - 2.0) / (p - 1.0);
}

double front_speed_scale(double p, double alpha, double value_at_origin) {
  const double m = diffusion_scale(p, alpha);
  require(m > 0.0 && value_at_origin > 0.0, "front speed scale needs alpha < p/(p-2), A > 0");
  const double k = std::pow(p - 1.0, p - 1.0) * m / std::pow(p - 2.0, p - 1.0);
  return std::pow(value_at_origin, (p - 2.0) / p) * std::pow(k, 1.0 / p);
}

PureProfileBounds pure_profile_bounds(const ProblemParams& params, double a0) {
  const auto& [p, b, beta, alpha, C] = params;
  const auto bracket = xi_bracket(p, alpha);
  const double m = diffusion_scale(p, alpha);
  const double amplitude = std::pow(C, p / m) * a0;
  const double scale = front_speed_scale(p, alpha, amplitude);
  const double n = front_power(p);
  PureProfileBounds out;
  out.xi3 = scale * bracket.xi1;
  out.xi4 = scale * bracket.xi2;
  out.c4 = amplitude * std::pow(out.xi3, -n);
  out.c5 = amplitude * std::pow(out.xi4, -n);
  return out;
}

double maximize_golden(const std::function<double(double)>& g, double lo, double hi,
                       double abs_tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double d = hi;
  double b = d - inv_phi * (d - a);
  double c = a + inv_phi * (d - a);
  double gb = g(b);
  double gc = g(c);
  for (int it = 0; it < max_iter && (d - a) > abs_tol; ++it) {
    if (gb >= gc) {
      d = c;
      c = b;
      gc = gb;
      b = d - inv_phi * (d - a);
      gb = g(b);
    } else {
      a = b;
      b = c;
      gb = gc;
      c = a + inv_phi * (d - a);
      gc = g(c);
    }
  }
  return 0.5 * (a + d);
}

DerivedConstants derived_constants(const ProblemParams& params) {
  const auto& [p, b, beta, alpha, C] = params;
  DerivedConstants out;
  out.c_bar = bar_constant(p);
  if (b != 0.0 && p - 1.0 - beta > 0.0) out.c_star = critical_constant(params);
  if (beta < 1.0 && b > 0.0) out.ell_star = ell_star(params);
  if (below(alpha, p / (p - 2.0))) {
    const auto bracket = xi_bracket(p, alpha);
    out.xi1 = bracket.xi1;
    out.xi2 = bracket.xi2;
    out.nu_alpha = nu_alpha(p, alpha);
  }
  return out;
}

DerivedConstants appendix_constants(const ProblemParams& params, std::optional<double> a1) {
  const auto& [p, b, beta, alpha, C] = params;
  require(beta < 1.0 && b > 0.0 && nearly_equal(alpha, borderline_alpha(p, beta)),
          "appendix constants need the Region-2 borderline");

  DerivedConstants out = derived_constants(params);
  auto& map = out.appendix;
  const double cs = *out.c_star;
  const double q = p - 1.0 - beta;  // p - 1 - beta
  const double bp = beta * (p - 1.0);
  const bool upper_branch = bp > 1.0 || nearly_equal(bp, 1.0);
  const double mu = upper_branch ? front_power(p) : p / q;
  map["mu"] = mu;

  if (a1 && C > cs * (1.0 + kTieTolerance)) {
    const double A = *a1;
    require(A > 0.0, "A1 must be positive");
    const double common =
        std::pow(A, (p - 2.0) / p) * std::pow(1.0 + b * (1.0 - beta) * std::pow(A, beta - 1.0), -1.0 / p);
    const double zeta_a = common * std::pow(1.0 - beta, 1.0 / p) * (p - 1.0) / (p - 2.0);
    const double zeta_b =
        common * std::pow((1.0 - beta) * (1.0 + beta) * std::pow(p, p - 1.0) * (p - 1.0), 1.0 / p) / q;
    double zeta1, c1, zeta2, c2, zeta2_bar;
    if (upper_branch) {
      zeta1 = zeta_a;
      c1 = A * std::pow(zeta1, -mu);
      zeta2 = zeta_b;
      c2 = A * std::pow(zeta2, -p / q);
      zeta2_bar = std::pow(A, (p - 2.0) / p) *
                  std::pow(p * std::pow(p - 1.0, p) * std::pow(p - 2.0, 1.0 - p) * (1.0 - beta) /
                               (p * (p - 2.0) - beta * (p - 1.0) + 1.0),
                           1.0 / p);
    } else {
      zeta1 = zeta_b;
      c1 = A * std::pow(zeta1, -p / q);
      zeta2 = std::pow(A / cs, q / p);
      c2 = cs;
      // Same expression as zeta1 on the other branch.
      zeta2_bar = zeta_a;
    }
    map["zeta1"] = zeta1;
    map["C1"] = c1;
    map["zeta2"] = zeta2;
    map["C2"] = c2;
    map["zeta2_bar"] = zeta2_bar;
    map["C2_bar"] = A * std::pow(zeta2_bar, -front_power(p));
  }

  if (C < cs * (1.0 - kTieTolerance)) {
    const double ratio = C / cs;
    const double gamma = 1.0 - std::pow(ratio, q / p);
    const double exponent = (1.0 + beta * (1.0 - p)) / (p * (1.0 - beta));
    const double ratio_q = std::pow(ratio, q);
    auto g = [&](double delta) {
      const double s = 1.0 - delta * gamma;
      const double bracket = s - ratio_q * std::pow(s, 1.0 - p);
      if (delta <= 0.0) return exponent > 0.0 ? 0.0 : (exponent == 0.0 ? bracket : HUGE_VAL);
      return std::exp(exponent * std::log(delta)) * bracket;
    };
    const double delta_star = maximize_golden(g, 0.0, 1.0);
    map["Gamma"] = gamma;
    map["delta_star"] = delta_star;
    out.maximizer_at_boundary = delta_star < 1e-6 || delta_star > 1.0 - 1e-6;
    const double kappa = borderline_exponent(p, beta);
    if (!out.maximizer_at_boundary) {
      const double dg = delta_star * gamma;
      const double inner = b * (1.0 - beta) / dg * ((1.0 - dg) - std::pow(1.0 - dg, 1.0 - p) * ratio_q);
      const double ell1 = std::pow(C, (1.0 + beta - p) / p) * std::pow(inner, kappa);
      map["ell1"] = ell1;
      map["zeta4"] = dg * ell1;
      map["C3"] = C * std::pow(1.0 - dg, p / (1.0 + beta - p));
    }
    if (bp < 1.0 && !nearly_equal(bp, 1.0)) {
      const double k = (1.0 - beta) * q / (1.0 - bp);
      const double rk = std::pow(cs / C, k);
      const double theta = (1.0 - ratio_q) / (rk - 1.0);
      const double pref = std::pow(cs, (1.0 + beta - p) / p) * std::pow(b * (1.0 - beta) * theta, kappa);
      map["theta_star"] = theta;
      map["ell0"] = pref * rk;
      map["zeta3"] = pref * (rk - 1.0);
    }
  }
  return out;
}

RegionThreeConstants region_three_constants(const ProblemParams& params, double ell, double eps) {
  const auto& [p, b, beta, alpha, C] = params;
  RegionThreeConstants out;
  out.ell_star = ell_star(params);
  require(ell > out.ell_star, "corner barrier speed must exceed l_*");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
  const double w = alpha * (1.0 - beta);
  const double q = std::pow(out.ell_star / ell, w) * (1.0 - eps);
  out.zeta5 = q * ell;
  out.c6 = std::pow(1.0 - q, -alpha) *
           std::pow(std::pow(C, 1.0 - beta) - std::pow(ell, -w) * b * (1.0 - beta) * (1.0 - eps),
                    1.0 / (1.0 - beta));
  return out;
}

Regime classify(const ProblemParams& raw) {
  const ProblemParams params = validate(raw);
  const auto& [p, b, beta, alpha, C] = params;
  const double m = diffusion_scale(p, alpha);
  const double waiting_alpha = p / (p - 2.0);
  const double explicit_alpha = front_power(p);
  Regime out;

  // Closed-form coefficient of the diffusion-dominated law when the b = 0
  // traveling wave is explicit.
  auto diffusive_law = [&](Region region) {
    out.region = region;
    out.interface_exponent = 1.0 / m;
    if (nearly_equal(alpha, explicit_alpha)) {
      out.interface_coefficient = std::pow(C, p - 2.0) * std::pow(explicit_alpha, p - 1.0);
    }
  };

  if (b == 0.0) {
    if (below(alpha, waiting_alpha)) {
      diffusive_law(Region::B0_Expanding);
    } else if (nearly_equal(alpha, waiting_alpha)) {
      out.region = Region::B0_Waiting;
    } else {
      out.region = Region::B0_Stationary;
    }
    return out;
  }

  const bool beta_is_one = nearly_equal(beta, 1.0);
  const double effective_beta = beta_is_one ? 1.0 : std::min(1.0, beta);
  if (below(alpha, p / (p - 1.0 - effective_beta))) {
    diffusive_law(Region::R1_Expanding);
    return out;
  }

  if (beta < 1.0 && !beta_is_one) {
    const double edge = borderline_alpha(p, beta);
    if (nearly_equal(alpha, edge)) {
      out.region = Region::R2_Borderline;
      const double cs = critical_constant(params);
      // Purely relative: C_* can be far below 1.
      if (std::abs(C - cs) <= kTieTolerance * cs) {
        out.subcase = Subcase::R2_at_critical;
        return out;
      }
      out.subcase = C > cs ? Subcase::R2_above_critical : Subcase::R2_below_critical;
      out.interface_exponent = borderline_exponent(p, beta);
      if (nearly_equal(beta * (p - 1.0), 1.0)) {
        out.interface_coefficient =
            b * (1.0 - beta) * std::pow(C, beta - 1.0) * (std::pow(C / cs, p - 1.0 - beta) - 1.0);
      }
      return out;
    }
    out.region = Region::R3_Shrinking;
    out.interface_exponent = 1.0 / (alpha * (1.0 - beta));
    out.interface_coefficient = -ell_star(params);
    return out;
  }

  // beta >= 1 and alpha >= p/(p-2)
  out.region = Region::R4_Waiting;
  if (beta_is_one) {
    out.subcase = nearly_equal(alpha, waiting_alpha) ? Subcase::W4a : Subcase::W4b;
  } else if (beta < p - 1.0 && !nearly_equal(beta, p - 1.0)) {
    out.subcase = at_least(alpha, borderline_alpha(p, beta)) ? Subcase::W4c : Subcase::W4d;
  } else {
    out.subcase = Subcase::W4d;
  }
  return out;
}

}  // namespace pfront
