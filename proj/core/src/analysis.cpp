#include "pfront/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "pfront/csv.hpp"
#include "pfront/error.hpp"

namespace pfront {

FitResult fit_power_law(const InterfaceTrace& trace, double t1, double t2) {
  if (!(t1 < t2)) throw Error(ErrorCode::InsufficientData, "fit window needs t1 < t2");
  std::vector<double> lx, ly;
  int sign = 0;
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    const double t = trace.t[i];
    const double eta = trace.eta[i];
    if (t < t1 || t > t2 || !(std::abs(eta) > 5.0 * trace.dx) || t <= 0.0) continue;
    const int s = eta > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) {
      throw Error(ErrorCode::MixedSign, fmt::format("interface changes sign in [{}, {}]", t1, t2));
    }
    lx.push_back(std::log(t));
    ly.push_back(std::log(std::abs(eta)));
  }
  if (lx.size() < 8) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("{} usable samples in [{}, {}], need 8", lx.size(), t1, t2));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  FitResult out;
  out.exponent = sxy / sxx;
  out.coefficient = sign * std::exp(my - out.exponent * mx);
  out.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  out.t1 = t1;
  out.t2 = t2;
  out.samples = lx.size();
  return out;
}

FitResult fit_power_law(const InterfaceTrace& trace) {
  if (trace.t.empty()) throw Error(ErrorCode::InsufficientData, "empty trace");
  const double t_end = trace.t.back();
  return fit_power_law(trace, t_end / 100.0, t_end / 10.0);
}

double ProbeCurve::position(const ProblemParams& pr, double t) const {
  switch (kind) {
    case CurveKind::RhoCurve: return speed * std::pow(t, 1.0 / diffusion_scale(pr.p, pr.alpha));
    case CurveKind::EllCurve: return -speed * std::pow(t, 1.0 / (pr.alpha * (1.0 - pr.beta)));
    case CurveKind::ZetaCurve: return speed * std::pow(t, borderline_exponent(pr.p, pr.beta));
  }
  return 0.0;
}

double ProbeCurve::time_power(const ProblemParams& pr) const {
  if (kind == CurveKind::RhoCurve) return pr.alpha / diffusion_scale(pr.p, pr.alpha);
  return 1.0 / (1.0 - pr.beta);
}

double sample_field(const Field& field, double x) {
  const auto& g = field.grid;
  if (x < g.x_left || x > g.x_right) {
    throw Error(ErrorCode::CurveOutsideGrid, fmt::format("x = {} outside [{}, {}]", x, g.x_left, g.x_right));
  }
  const double pos = (x - g.x_left) / g.dx();
  std::size_t i = static_cast<std::size_t>(std::floor(pos));
  if (i >= field.values.size() - 1) i = field.values.size() - 2;
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * field.values[i] + w * field.values[i + 1];
}

std::vector<ProbeSample> probe_local_solution(const std::vector<Field>& snapshots, const ProbeCurve& curve,
                                              const ProblemParams& params, std::optional<double> front_speed) {
  if (curve.kind != CurveKind::EllCurve && front_speed && !(curve.speed < *front_speed)) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("probe speed {} must be below the front speed {}", curve.speed, *front_speed));
  }
  if (curve.kind == CurveKind::EllCurve && !(curve.speed > ell_star(params))) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("probe speed {} must exceed l_* = {}", curve.speed, ell_star(params)));
  }
  const double sigma = curve.time_power(params);
  std::vector<ProbeSample> out;
  for (const auto& f : snapshots) {
    if (f.t <= 0.0) continue;
    const double x = curve.position(params, f.t);
    out.push_back({f.t, x, sample_field(f, x) * std::pow(f.t, -sigma)});
  }
  return out;
}

Plateau plateau(const std::vector<ProbeSample>& series, double t1, double t2) {
  Plateau out;
  double lo = kInf, hi = -kInf, sum = 0.0;
  for (const auto& s : series) {
    if (s.t < t1 || s.t > t2) continue;
    sum += s.value;
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
    ++out.samples;
  }
  if (out.samples == 0) throw Error(ErrorCode::InsufficientData, "no probe samples in window");
  out.value = sum / static_cast<double>(out.samples);
  out.spread = out.value != 0.0 ? (hi - lo) / std::abs(out.value) : 0.0;
  return out;
}

Bound bound_from(const BarrierSpec& bar, std::function<bool(double, double)> contains) {
  auto spec = std::make_shared<BarrierSpec>(bar);
  return {fmt::format("{}:{}", to_string(bar.family), to_string(bar.side)),
          [spec](double x, double t) { return eval_barrier_unchecked(*spec, x, t); }, std::move(contains)};
}

Bound bound_from(const ClosedFormSolution& sol) {
  auto s = std::make_shared<ClosedFormSolution>(sol);
  return {std::string(to_string(sol.family)), [s](double x, double t) { return eval_solution(*s, x, t); },
          [s](double, double t) { return t < s->horizon; }};
}

SandwichReport verify_sandwich(const std::vector<Field>& snapshots, const Bound& lower, const Bound& upper,
                               double slack) {
  SandwichReport r;
  r.slack = slack;
  r.worst_margin = kInf;
  for (const auto& f : snapshots) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double x = f.grid.node(i);
      const double u = f.values[i];
      const bool in_lower = lower.contains(x, f.t);
      const bool in_upper = upper.contains(x, f.t);
      if (!in_lower && !in_upper) continue;
      ++r.checked;
      if (in_lower) {
        const double m = u - lower.value(x, f.t) + slack;
        if (m < r.worst_margin) {
          r.worst_margin = m;
          r.worst_x = x;
          r.worst_t = f.t;
          r.worst_side = lower.name;
        }
      }
      if (in_upper) {
        const double m = upper.value(x, f.t) - u + slack;
        if (m < r.worst_margin) {
          r.worst_margin = m;
          r.worst_x = x;
          r.worst_t = f.t;
          r.worst_side = upper.name;
        }
      }
    }
  }
  if (r.checked == 0) {
    throw Error(ErrorCode::DomainMismatch,
                fmt::format("no snapshot node lies in the region of {} or {}", lower.name, upper.name));
  }
  r.pass = r.worst_margin >= 0.0;
  return r;
}

double truncation_estimate(const std::vector<Field>& fine, const std::vector<Field>& coarse) {
  if (fine.size() != coarse.size()) {
    throw Error(ErrorCode::DomainMismatch, "fine and coarse runs have different snapshot lists");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const auto& f = fine[k];
    const auto& c = coarse[k];
    if (f.grid.n_cells != 2 * c.grid.n_cells || f.grid.x_left != c.grid.x_left ||
        f.grid.x_right != c.grid.x_right) {
      throw Error(ErrorCode::DomainMismatch, "coarse grid must have half the cells of the fine grid");
    }
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      worst = std::max(worst, std::abs(f.values[2 * i] - c.values[i]));
    }
  }
  return worst;
}

double sandwich_slack(double estimate, const std::vector<Field>& snapshots) {
  double max_u = 0.0;
  for (const auto& f : snapshots) {
    for (double v : f.values) max_u = std::max(max_u, v);
  }
  return std::max(3.0 * estimate, 1e-6 * max_u);
}

WaitingReport waiting_time_report(const InterfaceTrace& trace, const ProblemParams& params, double t_end) {
  WaitingReport r;
  const Regime regime = classify(params);
  r.regime_waiting = is_waiting(regime.region);
  r.band = 2.0 * trace.dx;
  // Measured from the threshold-level initial interface, which for large
  // alpha lies several cells left of the origin.
  for (double eta : trace.eta) r.max_excursion = std::max(r.max_excursion, std::abs(eta - trace.eta0));
  r.stationary = !trace.eta.empty() && r.max_excursion <= r.band;

  const double p = params.p;
  const bool explicit_alpha = nearly_equal(params.alpha, p / (p - 2.0));
  if (explicit_alpha && params.b == 0.0) {
    r.horizon = make_solution(SolutionFamily::WaitingPureDiffusion, params).horizon;
  } else if (explicit_alpha && nearly_equal(params.beta, 1.0)) {
    r.horizon = make_solution(SolutionFamily::WaitingBeta1, params).horizon;
  }
  if (r.horizon) r.horizon_honored = t_end < *r.horizon;

  if (!r.regime_waiting) {
    r.diagnostic = fmt::format("regime mismatch: {} has no waiting time", to_string(regime.region));
  } else if (!r.stationary) {
    r.diagnostic = fmt::format("interface moved {} from {} (band {})", r.max_excursion, trace.eta0, r.band);
  } else if (!r.horizon_honored) {
    r.diagnostic = fmt::format("run end {} is not before the blow-up time {}", t_end, *r.horizon);
  } else {
    r.diagnostic = "stationary";
  }
  return r;
}

Check relative_check(std::string name, double predicted, double measured, double tolerance) {
  const bool pass = std::abs(measured - predicted) <= tolerance * std::abs(predicted);
  return {std::move(name), predicted, measured, tolerance, pass};
}

Check absolute_check(std::string name, double predicted, double measured, double tolerance) {
  const bool pass = std::abs(measured - predicted) <= tolerance;
  return {std::move(name), predicted, measured, tolerance, pass};
}

void write_verdicts(const std::filesystem::path& path, const std::vector<Check>& checks) {
  CsvTable table({"check_name", "predicted", "measured", "tolerance", "pass"});
  for (const auto& c : checks) {
    table.add_row({c.name, format_number(c.predicted), format_number(c.measured), format_number(c.tolerance),
                   c.pass ? "true" : "false"});
  }
  table.write(path);
}

std::string summarize(const std::vector<Check>& checks) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out += fmt::format("{:<4} {}: predicted {:.6g}, measured {:.6g}, tolerance {:.3g}\n", c.pass ? "PASS" : "FAIL",
                       c.name, c.predicted, c.measured, c.tolerance);
    passed += c.pass ? 1 : 0;
  }
  out += fmt::format("{}/{} checks passed\n", passed, checks.size());
  return out;
}

}  // namespace pfront
