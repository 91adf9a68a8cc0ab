#pragma once

// Shooting solvers for the self-similar profiles.
//   b = 0:      u = t^{alpha/m} f(xi),        xi = x t^{-1/m},    m = p - alpha(p-2)
//   borderline: u = t^{1/(1-beta)} f1(zeta),  zeta = x t^{-kappa}, kappa = (p-1-beta)/(p(1-beta))
// Both are integrated leftward from the free endpoint in (f, v), v = |f'|^{p-2} f'.

#include <optional>
#include <string_view>
#include <vector>

#include "pfront/model.hpp"

namespace pfront {

enum class ProfileKind { PureDiffusion, Reaction };

std::string_view to_string(ProfileKind kind) noexcept;

struct SelfSimilarProfile {
  ProfileKind kind = ProfileKind::PureDiffusion;
  ProblemParams params;
  /// Samples ordered from the front leftward (xi decreasing).
  std::vector<double> xi;
  std::vector<double> values;
  std::vector<double> flux;
  double xi_star = 0.0;
  /// w(0, 1) = f(0) / C^{p/m} (pure diffusion only).
  std::optional<double> A0;
  /// f1(0) (reaction only).
  std::optional<double> A1;
  double front_coefficient = 0.0;
  double front_exponent = 0.0;
  /// Far-field station used for the final match and the ratio obtained there.
  double far_station = 0.0;
  double far_ratio = 0.0;
  double tol = 0.0;

  /// Profile value at `x`, Hermite-interpolated; 0 at and beyond the front.
  [[nodiscard]] double eval(double x) const;
  /// f'(x) recovered from the flux.
  [[nodiscard]] double slope(double x) const;
};

/// K in f ~ K (xi_* - xi)^{(p-1)/(p-2)} for the b = 0 profile.
double front_coefficient(const ProblemParams& params, double xi_star);

/// Front coefficient and exponent of f1 near zeta_* (case split on beta(p-1)).
struct FrontExpansion {
  double coefficient = 0.0;
  double exponent = 0.0;
};
FrontExpansion reaction_front(const ProblemParams& params, double zeta_star);

/// Requires 0 < alpha < p/(p-2); b is ignored.
SelfSimilarProfile solve_pure_profile(const ProblemParams& params, double tol = 1e-4);

/// Requires beta < 1, alpha = p/(p-1-beta), C > C_*.
SelfSimilarProfile solve_reaction_profile(const ProblemParams& params, double tol = 1e-4);

}  // namespace pfront
