#pragma once

// Verdicts from PDE runs: interface power-law fits, values along probe
// curves, sandwich checks against barriers, waiting-time reports.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfront/closed_form.hpp"
#include "pfront/model.hpp"
#include "pfront/pde.hpp"

namespace pfront {

struct FitResult {
  double exponent = 0.0;
  /// Signed: negative for a retreating interface.
  double coefficient = 0.0;
  double r_squared = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  std::size_t samples = 0;
};

/// Least squares of log|eta| on log t over samples in [t1, t2] with
/// |eta| > 5 dx. Throws InsufficientData (< 8 samples) or MixedSign.
FitResult fit_power_law(const InterfaceTrace& trace, double t1, double t2);

/// Default window [t_end/100, t_end/10].
FitResult fit_power_law(const InterfaceTrace& trace);

enum class CurveKind {
  RhoCurve,   // x = rho t^{1/(p - alpha(p-2))}
  EllCurve,   // x = -ell t^{1/(alpha(1-beta))}
  ZetaCurve,  // x = rho t^{(p-1-beta)/(p(1-beta))}
};

struct ProbeCurve {
  CurveKind kind = CurveKind::RhoCurve;
  double speed = 0.0;

  [[nodiscard]] double position(const ProblemParams& params, double t) const;
  /// Power sigma with u ~ value * t^sigma along the curve.
  [[nodiscard]] double time_power(const ProblemParams& params) const;
};

struct ProbeSample {
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;  // u(x(t), t) t^{-sigma}
};

/// `front_speed` (xi_* or zeta_*) enables the rho < front guard. EllCurve
/// requires ell > l_*. Throws CurveOutsideGrid, OutOfDomain.
std::vector<ProbeSample> probe_local_solution(const std::vector<Field>& snapshots, const ProbeCurve& curve,
                                              const ProblemParams& params,
                                              std::optional<double> front_speed = std::nullopt);

/// Linear interpolation of a field at x.
double sample_field(const Field& field, double x);

struct Plateau {
  double value = 0.0;
  /// (max - min) / |mean| over the window.
  double spread = 0.0;
  std::size_t samples = 0;
};

/// Mean of the normalized values with t in [t1, t2].
Plateau plateau(const std::vector<ProbeSample>& series, double t1, double t2);

/// A comparison function with the region where it is claimed to apply.
struct Bound {
  std::string name;
  std::function<double(double, double)> value;
  std::function<bool(double, double)> contains;
};

Bound bound_from(const BarrierSpec& bar, std::function<bool(double, double)> contains);
Bound bound_from(const ClosedFormSolution& sol);

struct SandwichReport {
  bool pass = false;
  std::size_t checked = 0;
  double slack = 0.0;
  /// Most negative of u - lower + slack and upper - u + slack.
  double worst_margin = 0.0;
  double worst_x = 0.0;
  double worst_t = 0.0;
  std::string worst_side;
};

/// PASS iff lower - slack <= u <= upper + slack at every node inside both
/// bounds' regions. Throws DomainMismatch if no node qualifies.
SandwichReport verify_sandwich(const std::vector<Field>& snapshots, const Bound& lower, const Bound& upper,
                               double slack);

/// max |u_fine - u_coarse| over coarse nodes, for matching snapshot lists
/// (the coarse grid has half the cells).
double truncation_estimate(const std::vector<Field>& fine, const std::vector<Field>& coarse);

/// max(3 * estimate, 1e-6 * max u).
double sandwich_slack(double estimate, const std::vector<Field>& snapshots);

struct WaitingReport {
  bool regime_waiting = false;
  bool stationary = false;
  double band = 0.0;
  double max_excursion = 0.0;
  std::optional<double> horizon;
  bool horizon_honored = true;
  std::string diagnostic;
};

/// Checks that eta stays within 2 dx of its initial position up to `t_end`;
/// for finite blow-up horizons also that t_end < T.
WaitingReport waiting_time_report(const InterfaceTrace& trace, const ProblemParams& params, double t_end);

struct Check {
  std::string name;
  double predicted = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Relative check |measured - predicted| <= tolerance |predicted|.
Check relative_check(std::string name, double predicted, double measured, double tolerance);
/// Absolute check |measured - predicted| <= tolerance.
Check absolute_check(std::string name, double predicted, double measured, double tolerance);

/// CSV columns: check_name, predicted, measured, tolerance, pass.
void write_verdicts(const std::filesystem::path& path, const std::vector<Check>& checks);
std::string summarize(const std::vector<Check>& checks);

}  // namespace pfront
