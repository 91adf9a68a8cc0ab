#pragma once

// Barrier instances shared by the closed-form tests and the acceptance binary.

#include <vector>

#include "pfront/closed_form.hpp"
#include "pfront/profile.hpp"

namespace pfront::testing {

struct CertifyCase {
  const char* name;
  BarrierSpec bar;
};

/// Two or more barriers from each of the nine families, with parameters
/// whose sampling windows are wide enough to resolve the sign claim.
inline std::vector<CertifyCase> barrier_cases() {
  std::vector<CertifyCase> out;
  const ProblemParams expanding{3, 1, 0.25, 3.0 / 1.75, 2.0};
  const double a1 = *solve_reaction_profile(expanding).A1;
  out.push_back({"profile upper", borderline_profile_barrier(expanding, a1, Side::Super)});
  out.push_back({"profile lower", borderline_profile_barrier(expanding, a1, Side::Sub)});
  ProblemParams above{4, 1, 0.5, 1.6, 1};
  above.C = 0.5 * critical_constant(above);
  out.push_back({"shrink upper", shrink_gamma_barrier(above, Side::Super)});
  out.push_back({"shrink lower", shrink_gamma_barrier(above, Side::Sub)});
  ProblemParams below{3, 1, 0.25, 3.0 / 1.75, 1};
  below.C = 0.5 * critical_constant(below);
  out.push_back({"shrink lower, beta(p-1) < 1", shrink_gamma_barrier(below, Side::Sub)});
  out.push_back({"corner lower", borderline_corner_barrier(below, Side::Sub)});
  out.push_back({"corner upper", borderline_corner_barrier(below, Side::Super)});
  const ProblemParams r3{3, 1, 0.5, 4, 1};
  out.push_back({"region three corner", region_three_corner(r3, 1.0, 0.05)});
  out.push_back({"region three upper", region_three_g(r3, 0.05)});
  out.push_back({"region three lower", region_three_g(r3, -0.05)});
  const ProblemParams w4b{3, 1, 1, 4, 1};
  out.push_back({"exp upper", exp_beta1(w4b, 0.05, Side::Super)});
  out.push_back({"exp lower", exp_beta1(w4b, 0.05, Side::Sub)});
  const ProblemParams w4c{3, 1, 1.2, 10, 1};
  out.push_back({"reaction wait upper", power_wait_reaction(w4c, 0.05)});
  out.push_back({"reaction wait lower", power_wait_reaction(w4c, -0.05)});
  const ProblemParams w4d{3, 1, 2, 3, 1};
  out.push_back({"blow-up wait upper", power_wait_blowup(w4d, 0.05)});
  out.push_back({"blow-up wait lower", power_wait_blowup(w4d, -0.05)});
  const ProblemParams w4s{3, -1, 2, 5, 1};
  out.push_back({"static wait upper", power_wait_static(w4s, 0.05, Side::Super)});
  out.push_back({"static wait lower", power_wait_static(w4s, 0.05, Side::Sub)});
  const ProblemParams b0{3, 0, 1, 1, 1};
  const double a0 = *solve_pure_profile(b0).A0;
  out.push_back({"pure diffusion upper", b0_profile(b0, a0, Side::Super)});
  out.push_back({"pure diffusion lower", b0_profile(b0, a0, Side::Sub)});
  return out;
}

}  // namespace pfront::testing
