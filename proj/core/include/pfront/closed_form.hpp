#pragma once

// Explicit solutions and barrier functions of
//   Lu = u_t - (|u_x|^{p-2} u_x)_x + b u^beta,
// plus a finite-difference evaluator of Lu used to certify signs.

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfront/model.hpp"

namespace pfront {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// x = coefficient * t^exponent.
struct Curve {
  double coefficient = 0.0;
  double exponent = 1.0;
  [[nodiscard]] double at(double t) const;
};

enum class SolutionFamily {
  TravelingWave,         // C (xi_* t - x)_+^{(p-1)/(p-2)}, b = 0
  BorderlineExplicit,    // C (zeta_* t - x)_+^{1/(1-beta)}, beta(p-1) = 1
  WaitingBeta1,          // beta = 1, alpha = p/(p-2)
  WaitingPureDiffusion,  // b = 0, alpha = p/(p-2)
  StationaryCritical,    // C_* (-x)_+^{p/(p-1-beta)}
  AbsorptionOnly,        // solves u_t + b u^beta = 0 only
};

std::string_view to_string(SolutionFamily family) noexcept;

/// False for AbsorptionOnly, which is the leading-order solution in the
/// absorption-dominated region and not a solution of the full equation.
[[nodiscard]] bool is_exact(SolutionFamily family) noexcept;

struct ClosedFormSolution {
  SolutionFamily family = SolutionFamily::TravelingWave;
  ProblemParams params;
  std::map<std::string, double> constants;
  double horizon = kInf;
};

/// Throws OutOfDomain when `params` do not satisfy the family's preconditions.
ClosedFormSolution make_solution(SolutionFamily family, const ProblemParams& params);

/// Throws BeyondHorizon for t >= horizon.
double eval_solution(const ClosedFormSolution& sol, double x, double t);

/// Interface position of the solution at time t.
double solution_interface(const ClosedFormSolution& sol, double t);

// --- barriers ----------------------------------------------------------------

enum class BarrierFamily {
  ProfilePower,       // t^{1/(1-beta)} C0 (zeta0 - zeta)_+^{gamma0}, x > 0
  ShrinkGamma,        // [C^{1-beta}(-x)_+^{p(1-beta)/(p-1-beta)} - b(1-beta)(1-gamma)t]_+^{1/(1-beta)}
  CornerBarrier,      // C0 (-zeta0 t^kappa - x)_+^{gamma0} on x > -ell t^kappa
  RegionThreeG,       // [(C+s)^{1-beta}(-x)_+^{alpha(1-beta)} - b(1-beta)(1-s)t]_+^{1/(1-beta)}
  ExpBeta1,           // (C+-eps)(-x)_+^alpha e^{-bt} [..]^{1/(2-p)}
  PowerWaitReaction,  // [(C+s)^{1-beta}|x|^{alpha(1-beta)} + b(beta-1)(1-d_s)t]^{1/(1-beta)}
  PowerWaitBlowup,    // (C+s)(-x)_+^{p/(p-2)} (1 - gamma_s t)^{1/(2-p)}
  PowerWaitStatic,    // (C-eps)(-x)_+^alpha  or  (C+eps)(-x)_+^alpha (1-eps t)^{1/(2-p)}
  B0Profile,          // t^{alpha/m} C0 (xi0 - xi)_+^{(p-1)/(p-2)}, x > 0
};

inline constexpr int kBarrierFamilyCount = 9;

std::string_view to_string(BarrierFamily family) noexcept;

enum class Side { Sub, Super };

std::string_view to_string(Side side) noexcept;

/// Finite sampling window in which the declared sign is claimed.
struct BarrierDomain {
  double x_min = -1.0;
  double x_max = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
  /// Additional constraint x > left(t).
  std::optional<Curve> left;
  [[nodiscard]] bool contains(double x, double t) const;
};

struct BarrierSpec {
  BarrierFamily family = BarrierFamily::ProfilePower;
  Side side = Side::Super;
  ProblemParams params;
  std::map<std::string, double> constants;
  BarrierDomain domain;
};

/// Throws OutsideDomain when (x, t) is not in `bar.domain`.
double eval_barrier(const BarrierSpec& bar, double x, double t);

/// Same formula without the domain check (used for plotting and sandwich
/// checks that clip the domain themselves).
double eval_barrier_unchecked(const BarrierSpec& bar, double x, double t);

// Factories. Each sets the constants the paper-side construction uses and a
// sampling window where the sign claim holds.

BarrierSpec profile_power(const ProblemParams& params, double c0, double zeta0, double gamma0,
                          Side side, double t_max = 1.0);
/// Upper (C2, zeta2, p/(p-1-beta)) or lower (C1, zeta1, mu) profile barrier for
/// the expanding borderline case, from appendix constants with f_1(0) = a1.
BarrierSpec borderline_profile_barrier(const ProblemParams& params, double a1, Side side,
                                       double t_max = 1.0);
BarrierSpec shrink_gamma(const ProblemParams& params, double gamma, Side side, double t_max = 1.0);
/// gamma = (C/C_*)^{p-1-beta} (upper when beta(p-1) > 1, lower when < 1) or
/// gamma = 0 (lower when beta(p-1) > 1).
BarrierSpec shrink_gamma_barrier(const ProblemParams& params, Side side, double t_max = 1.0);
BarrierSpec corner_barrier(const ProblemParams& params, double c0, double zeta0, double ell,
                           double time_exponent, double space_exponent, Side side,
                           double t_max = 1.0);
/// Shrinking borderline case with beta(p-1) < 1: (C_*, zeta3, ell0) lower,
/// (C3, zeta4, ell1) upper.
BarrierSpec borderline_corner_barrier(const ProblemParams& params, Side side, double t_max = 1.0);
/// Region-3 upper corner barrier with constants (C6, zeta5); the time window
/// is shrunk until the sign claim holds.
BarrierSpec region_three_corner(const ProblemParams& params, double ell, double eps);
/// g_s with s = +eps (upper) or s = -eps (lower).
BarrierSpec region_three_g(const ProblemParams& params, double s);
BarrierSpec exp_beta1(const ProblemParams& params, double eps, Side side, double t_max = 1.0);
BarrierSpec power_wait_reaction(const ProblemParams& params, double s, double t_max = 1.0);
BarrierSpec power_wait_blowup(const ProblemParams& params, double s);
BarrierSpec power_wait_static(const ProblemParams& params, double eps, Side side,
                              double t_max = 1.0);
/// b = 0 profile barrier; `a0` = w(0,1) from the profile solver.
BarrierSpec b0_profile(const ProblemParams& params, double a0, Side side, double t_max = 1.0);

// --- residual ----------------------------------------------------------------

/// A space-time function evaluated in extended precision, with the curves
/// across which it is not smooth.
struct SpaceTimeFunction {
  ProblemParams params;
  std::function<long double(long double, long double)> value;
  std::vector<Curve> kinks;
};

SpaceTimeFunction as_function(const ClosedFormSolution& sol);
SpaceTimeFunction as_function(const BarrierSpec& bar);

struct ResidualSteps {
  double hx = 0.0;
  double ht = 0.0;
};

/// Default steps: h = 1e-5 * max(1, |x|, t) in both directions.
ResidualSteps default_steps(double x, double t) noexcept;

struct Residual {
  double value = 0.0;
  /// |u_t| + |flux_x| + |b| u^beta at the point.
  double scale = 0.0;
  double u = 0.0;
};

/// Finite-difference Lu. Without explicit steps, uses default_steps shrunk to
/// 1e-5 of the distance to the nearest kink when that is smaller. Throws
/// TooCloseToKink if the stencil touches a kink curve (10 h buffer) or
/// reaches t <= 0.
Residual residual(const SpaceTimeFunction& fn, double x, double t,
                  std::optional<ResidualSteps> steps = std::nullopt);

struct SignReport {
  bool pass = false;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  /// Samples where g = 0 (trivially a solution there).
  std::size_t outside_support = 0;
  /// Most adverse value of side * residual / scale (negative = violation).
  double worst = kInf;
  double worst_x = 0.0;
  double worst_t = 0.0;
};

/// Interior sample points of the barrier's window: `nt` time levels and `nx`
/// points per level.
std::vector<std::pair<double, double>> sample_grid(const BarrierSpec& bar, std::size_t nx,
                                                   std::size_t nt);

/// PASS iff every sample inside the support has side * Lg >= -tol * scale
/// and at least one such sample exists.
SignReport certify_sign(const BarrierSpec& bar, const std::vector<std::pair<double, double>>& samples,
                        double tol = 1e-7);

}  // namespace pfront
