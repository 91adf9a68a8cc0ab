#pragma once

// Parameters of u_t - (|u_x|^{p-2} u_x)_x + b u^beta = 0 with initial data
// u0 ~ C (-x)_+^alpha, the short-time regime classification, and the closed
// form constants that go with each regime.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace pfront {

/// Relative band used for every equality test between real parameters
/// (alpha on a regime boundary, beta == 1, C == C_*).
inline constexpr double kTieTolerance = 1e-12;

[[nodiscard]] bool nearly_equal(double a, double b, double rel = kTieTolerance) noexcept;

struct ProblemParams {
  double p = 3.0;
  double b = 0.0;
  double beta = 1.0;
  double alpha = 1.0;
  double C = 1.0;
};

/// Returns `params` unchanged if admissible, throws Error otherwise
/// (RejectedP2, RejectedRange, RejectedSignB).
ProblemParams validate(const ProblemParams& params);

enum class Region {
  R1_Expanding,
  R2_Borderline,
  R3_Shrinking,
  R4_Waiting,
  B0_Expanding,
  B0_Waiting,
  B0_Stationary,
};

enum class Subcase {
  R2_above_critical,
  R2_below_critical,
  R2_at_critical,
  W4a,
  W4b,
  W4c,
  W4d,
};

struct Regime {
  Region region = Region::R1_Expanding;
  std::optional<Subcase> subcase;
  /// eta(t) ~ coefficient * t^exponent as t -> 0+.
  std::optional<double> interface_exponent;
  /// Signed; negative means the interface retreats. Present only where the
  /// coefficient has a closed form for these parameters.
  std::optional<double> interface_coefficient;
};

std::string_view to_string(Region region) noexcept;
std::string_view to_string(Subcase subcase) noexcept;

/// Total on validated parameters.
Regime classify(const ProblemParams& params);

[[nodiscard]] bool is_waiting(Region region) noexcept;

// --- similarity exponents ---------------------------------------------------

/// p - alpha(p-2); positive in the pure-diffusion expanding range.
[[nodiscard]] double diffusion_scale(double p, double alpha) noexcept;
/// (p-1-beta)/(p(1-beta)): interface exponent on the Region-2 borderline.
[[nodiscard]] double borderline_exponent(double p, double beta) noexcept;
/// p/(p-1-beta): the borderline value of alpha.
[[nodiscard]] double borderline_alpha(double p, double beta) noexcept;
/// (p-1)/(p-2): the alpha of the explicit traveling wave and the front power.
[[nodiscard]] double front_power(double p) noexcept;

// --- named constants ----------------------------------------------------------

/// C_* = [|b|(p-1-beta)^p / ((1+beta) p^{p-1} (p-1))]^{1/(p-1-beta)}.
double critical_constant(const ProblemParams& params);

/// C_bar = [(p-2)^p / (2(p-1) p^{p-1})]^{1/(p-2)}.
double bar_constant(double p);

/// l_* = C^{-1/alpha} (b(1-beta))^{1/(alpha(1-beta))}; requires beta < 1, b > 0.
double ell_star(const ProblemParams& params);

struct XiBracket {
  double xi1 = 1.0;
  double xi2 = 1.0;
};

/// Bracket for the normalised front speed xi''_*; requires 0 < alpha < p/(p-2).
XiBracket xi_bracket(double p, double alpha);

/// nu_alpha from the pure-diffusion profile barriers (1 at alpha = (p-1)/(p-2)).
double nu_alpha(double p, double alpha);

/// Front-speed decomposition for b = 0:
/// xi_* = A^{(p-2)/p} [(p-1)^{p-1}(p-alpha(p-2))/(p-2)^{p-1}]^{1/p} xi''_*,
/// where A = f(0) is the profile value at the origin for amplitude C.
double front_speed_scale(double p, double alpha, double value_at_origin);

/// Barrier constants bounding the b = 0 self-similar solution on x >= 0:
/// C4 t^{alpha/m} (xi3 - xi)_+^{(p-1)/(p-2)} <= u <= C5 t^{alpha/m} (xi4 - xi)_+^{(p-1)/(p-2)}.
struct PureProfileBounds {
  double xi3 = 0.0;
  double xi4 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
};

/// `a0` is w(0,1), the C = 1 profile value at the origin.
PureProfileBounds pure_profile_bounds(const ProblemParams& params, double a0);

struct DerivedConstants {
  std::optional<double> c_star;
  double c_bar = 0.0;
  std::optional<double> ell_star;
  std::optional<double> xi1;
  std::optional<double> xi2;
  std::optional<double> nu_alpha;
  /// Keys: zeta1 C1 zeta2 C2 zeta2_bar C2_bar mu Gamma delta_star ell1 zeta4
  /// C3 theta_star ell0 zeta3 (whichever apply).
  std::map<std::string, double> appendix;
  /// Set when the maximiser of g(delta) sits within 1e-6 of 0 or 1; the
  /// dependent constants ell1, zeta4, C3 are then omitted.
  bool maximizer_at_boundary = false;
};

/// Appendix constants for the Region-2 borderline (beta < 1,
/// alpha = p/(p-1-beta)). The expanding-side constants need `a1` = f_1(0)
/// and C > C_*; the shrinking-side ones need C < C_*.
DerivedConstants appendix_constants(const ProblemParams& params, std::optional<double> a1);

/// Whatever named constants are defined for `params` (used by reports).
DerivedConstants derived_constants(const ProblemParams& params);

/// Golden-section search for the maximiser of a unimodal `g` on [lo, hi].
double maximize_golden(const std::function<double(double)>& g, double lo, double hi,
                       double abs_tol = 1e-10, int max_iter = 200);

struct RegionThreeConstants {
  double ell_star = 0.0;
  double zeta5 = 0.0;
  double c6 = 0.0;
};

/// Upper-barrier constants for the Region-3 corner barrier with speed `ell` > l_*
/// and slack `eps` in (0,1).
RegionThreeConstants region_three_constants(const ProblemParams& params, double ell, double eps);

}  // namespace pfront
