#include "pfront/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "pfront/cli/svg.hpp"
#include "pfront/csv.hpp"
#include "pfront/error.hpp"
#include "pfront/pde.hpp"
#include "pfront/profile.hpp"

namespace pfront::cli {

namespace fs = std::filesystem;

bool CommandResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::size_t worker_count() {
  if (const char* env = std::getenv("PFRONT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<SolutionFamily> exact_family(const ProblemParams& pr) {
  const double p = pr.p;
  if (pr.b == 0.0) {
    if (nearly_equal(pr.alpha, front_power(p))) return SolutionFamily::TravelingWave;
    if (nearly_equal(pr.alpha, p / (p - 2.0))) return SolutionFamily::WaitingPureDiffusion;
    return std::nullopt;
  }
  if (pr.beta < 1.0 && nearly_equal(pr.alpha, borderline_alpha(p, pr.beta))) {
    if (nearly_equal(pr.C, critical_constant(pr))) return SolutionFamily::StationaryCritical;
    if (nearly_equal(pr.beta * (p - 1.0), 1.0)) return SolutionFamily::BorderlineExplicit;
    return std::nullopt;
  }
  if (nearly_equal(pr.beta, 1.0) && nearly_equal(pr.alpha, p / (p - 2.0))) return SolutionFamily::WaitingBeta1;
  return std::nullopt;
}

namespace {

void write_csv(CommandResult& res, const fs::path& path, const CsvTable& table) {
  table.write(path);
  res.artifacts.push_back(path);
}

void write_plot(CommandResult& res, const fs::path& path, const std::string& svg) {
  write_svg(path, svg);
  res.artifacts.push_back(path);
}

std::string opt_str(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

Check pass_if(std::string name, double predicted, double measured, double tolerance, bool pass) {
  return {std::move(name), predicted, measured, tolerance, pass};
}

/// Same data without the absorption term, for the b = 0 profile.
ProblemParams diffusion_only(ProblemParams pr) {
  pr.b = 0.0;
  pr.beta = 1.0;
  return pr;
}

ProblemParams with_amplitude(ProblemParams pr, double C) {
  pr.C = C;
  return pr;
}

Bound solution_bound(SolutionFamily family, const ProblemParams& pr) { return bound_from(make_solution(family, pr)); }

Bound barrier_bound(const BarrierSpec& bar) {
  const BarrierDomain dom = bar.domain;
  return bound_from(bar, [dom](double x, double t) { return dom.contains(x, t); });
}

double fit_t1(const ExperimentConfig& cfg) { return cfg.fit_t1.value_or(cfg.t_end / 100.0); }
double fit_t2(const ExperimentConfig& cfg) { return cfg.fit_t2.value_or(cfg.t_end / 10.0); }

RunResult simulate_run(const ExperimentConfig& cfg, const Grid1D& grid) {
  RunOptions opt;
  opt.snapshot_times = cfg.snapshot_times;
  opt.trace_samples = cfg.trace_samples;
  opt.detect_waiting = is_waiting(classify(cfg.params).region);
  if (cfg.left_trace == "exact") {
    const auto family = exact_family(cfg.params);
    if (!family) throw Error(ErrorCode::OutOfDomain, "left_trace = exact needs parameters with a closed form solution");
    auto sol = std::make_shared<ClosedFormSolution>(make_solution(*family, cfg.params));
    if (sol->horizon <= cfg.t_end) {
      throw Error(ErrorCode::BeyondHorizon,
                  fmt::format("the exact solution blows up at t = {:.6g} <= t_end", sol->horizon));
    }
    const double xl = grid.x_left;
    opt.left_boundary = [sol, xl](double t) { return eval_solution(*sol, xl, t); };
  }
  return run(cfg.params, grid, cfg.t_end, opt);
}

/// Coefficient of the leading interface law; shooting supplies it where no
/// closed form exists.
std::optional<double> predicted_coefficient(const ProblemParams& pr, const Regime& regime) {
  if (regime.interface_coefficient) return regime.interface_coefficient;
  if (regime.region == Region::R1_Expanding || regime.region == Region::B0_Expanding) {
    return solve_pure_profile(diffusion_only(pr)).xi_star;
  }
  if (regime.region == Region::R2_Borderline && regime.subcase == Subcase::R2_above_critical) {
    return solve_reaction_profile(pr).xi_star;
  }
  return std::nullopt;
}

double max_abs_error(const Field& f, const ClosedFormSolution& sol, double* max_u) {
  double err = 0.0, top = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    err = std::max(err, std::abs(f.values[i] - eval_solution(sol, f.grid.node(i), f.t)));
    top = std::max(top, f.values[i]);
  }
  if (max_u) *max_u = top;
  return err;
}

std::vector<std::string> default_simulate_checks(const ExperimentConfig& cfg, const Regime& regime) {
  if (!cfg.checks.empty()) return cfg.checks;
  std::vector<std::string> out;
  out.emplace_back(is_waiting(regime.region) ? "waiting" : "fit");
  if (cfg.probe) out.emplace_back("probe");
  const auto family = exact_family(cfg.params);
  if (family && cfg.left_trace == "exact") out.emplace_back("exact");
  return out;
}

std::string region_color(Region r) {
  switch (r) {
    case Region::R1_Expanding:
    case Region::B0_Expanding: return "#9ecae1";
    case Region::R2_Borderline: return "#252525";
    case Region::R3_Shrinking: return "#fdae6b";
    case Region::R4_Waiting:
    case Region::B0_Waiting:
    case Region::B0_Stationary: return "#a1d99b";
  }
  return "#ffffff";
}

}  // namespace

// --- bounds --------------------------------------------------------------------

BoundPair bounds_for(const ProblemParams& pr, double eps, double t_end) {
  const Regime regime = classify(pr);
  const double s = eps * pr.C;
  const double p = pr.p;
  auto barriers = [](BarrierSpec lo, BarrierSpec hi) {
    BoundPair out{barrier_bound(lo), barrier_bound(hi), {lo, hi}};
    return out;
  };
  auto solutions = [&](SolutionFamily family) {
    return BoundPair{solution_bound(family, with_amplitude(pr, pr.C - s)),
                     solution_bound(family, with_amplitude(pr, pr.C + s)), {}};
  };
  switch (regime.region) {
    case Region::B0_Expanding: {
      const double a0 = *solve_pure_profile(pr).A0;
      return barriers(b0_profile(pr, a0, Side::Sub, t_end), b0_profile(pr, a0, Side::Super, t_end));
    }
    case Region::B0_Waiting: return solutions(SolutionFamily::WaitingPureDiffusion);
    case Region::B0_Stationary:
      return barriers(power_wait_static(pr, s, Side::Sub, t_end), power_wait_static(pr, s, Side::Super, t_end));
    case Region::R2_Borderline:
      if (regime.subcase == Subcase::R2_above_critical) {
        const double a1 = *solve_reaction_profile(pr).A1;
        return barriers(borderline_profile_barrier(pr, a1, Side::Sub, t_end),
                        borderline_profile_barrier(pr, a1, Side::Super, t_end));
      }
      if (regime.subcase == Subcase::R2_below_critical) {
        return barriers(shrink_gamma_barrier(pr, Side::Sub, t_end), shrink_gamma_barrier(pr, Side::Super, t_end));
      }
      return BoundPair{solution_bound(SolutionFamily::StationaryCritical, pr),
                       solution_bound(SolutionFamily::StationaryCritical, pr), {}};
    case Region::R3_Shrinking: return barriers(region_three_g(pr, -s), region_three_g(pr, s));
    case Region::R4_Waiting:
      switch (*regime.subcase) {
        case Subcase::W4a: return solutions(SolutionFamily::WaitingBeta1);
        case Subcase::W4b:
          return barriers(exp_beta1(pr, s, Side::Sub, t_end), exp_beta1(pr, s, Side::Super, t_end));
        case Subcase::W4c: return barriers(power_wait_reaction(pr, -s, t_end), power_wait_reaction(pr, s, t_end));
        default: break;
      }
      if (nearly_equal(pr.alpha, p / (p - 2.0))) return barriers(power_wait_blowup(pr, -s), power_wait_blowup(pr, s));
      return barriers(power_wait_static(pr, s, Side::Sub, t_end), power_wait_static(pr, s, Side::Super, t_end));
    case Region::R1_Expanding: break;
  }
  throw Error(ErrorCode::OutOfDomain, "no comparison pair for the expanding region with b != 0");
}

// --- figure 1 -----------------------------------------------------------------------

Figure1Map figure1_map(double p, double alpha_max, double beta_max, int alpha_cells, int beta_cells) {
  Figure1Map map{p, alpha_max, beta_max, alpha_cells, beta_cells, {}};
  map.regions.resize(static_cast<std::size_t>(alpha_cells * beta_cells));
  parallel_for(static_cast<std::size_t>(beta_cells), [&](std::size_t j) {
    for (int i = 0; i < alpha_cells; ++i) {
      const ProblemParams pr{p, 1.0, map.beta_at(static_cast<int>(j)), map.alpha_at(i), 1.0};
      map.regions[j * static_cast<std::size_t>(alpha_cells) + static_cast<std::size_t>(i)] = classify(pr).region;
    }
  });
  return map;
}

double figure1_boundary_error(const Figure1Map& map) {
  const double da = map.alpha_max / map.alpha_cells;
  double worst = 0.0;
  for (int j = 0; j < map.beta_cells; ++j) {
    const double beta = map.beta_at(j);
    const double predicted = map.p / (map.p - 1.0 - std::min(1.0, beta));
    int first = map.alpha_cells;
    for (int i = 0; i < map.alpha_cells; ++i) {
      if (map.at(i, j) != Region::R1_Expanding) {
        first = i;
        break;
      }
    }
    const double found = first < map.alpha_cells ? map.alpha_at(first) : map.alpha_max;
    const double limit = std::min(predicted, map.alpha_max);
    worst = std::max(worst, std::abs(found - limit) / da);
  }
  return worst;
}

// --- commands ---------------------------------------------------------------------

CommandResult cmd_classify(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const Regime r = classify(cfg.params);
  CsvTable t({"key", "value"});
  t.add_row({"region", std::string(to_string(r.region))});
  t.add_row({"subcase", r.subcase ? std::string(to_string(*r.subcase)) : ""});
  t.add_row({"interface_exponent", opt_str(r.interface_exponent)});
  t.add_row({"interface_coefficient", opt_str(r.interface_coefficient)});
  write_csv(res, out / "classify.csv", t);
  res.notes = fmt::format("region {}{}\n", to_string(r.region),
                          r.subcase ? fmt::format(" ({})", to_string(*r.subcase)) : "");
  if (r.interface_exponent) res.notes += fmt::format("interface exponent {:.6g}\n", *r.interface_exponent);
  return res;
}

CommandResult cmd_constants(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const auto& pr = cfg.params;
  const Regime regime = classify(pr);
  DerivedConstants dc = derived_constants(pr);
  if (regime.region == Region::R2_Borderline) {
    std::optional<double> a1;
    if (regime.subcase == Subcase::R2_above_critical) a1 = *solve_reaction_profile(pr, cfg.tolerances.profile).A1;
    dc = appendix_constants(pr, a1);
    if (a1) dc.appendix["A1"] = *a1;
  }
  CsvTable t({"name", "value"});
  auto put = [&](const std::string& name, const std::optional<double>& v) {
    if (v) t.add_row({name, format_number(*v)});
  };
  put("c_star", dc.c_star);
  put("c_bar", dc.c_bar);
  put("ell_star", dc.ell_star);
  put("xi1", dc.xi1);
  put("xi2", dc.xi2);
  put("nu_alpha", dc.nu_alpha);
  for (const auto& [k, v] : dc.appendix) put(k, v);
  if (dc.maximizer_at_boundary) t.add_row({"maximizer_at_boundary", "true"});
  write_csv(res, out / "constants.csv", t);
  res.notes = t.str();
  return res;
}

CommandResult cmd_profile(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const auto& pr = cfg.params;
  const Regime regime = classify(pr);
  const double tol = cfg.tolerances.profile;
  const bool reaction = regime.region == Region::R2_Borderline;
  if (reaction && regime.subcase != Subcase::R2_above_critical) {
    throw Error(ErrorCode::OutOfDomain, "the borderline profile exists only for C > C_*");
  }
  const SelfSimilarProfile prof = reaction ? solve_reaction_profile(pr, tol) : solve_pure_profile(diffusion_only(pr), tol);

  CsvTable t({"xi", "f", "v"});
  for (std::size_t i = 0; i < prof.xi.size(); ++i) t.add_numbers({prof.xi[i], prof.values[i], prof.flux[i]});
  write_csv(res, out / "profile.csv", t);

  LinePlot plot{reaction ? "Borderline profile f1" : "Self-similar profile f", reaction ? "zeta" : "xi", "f", {}};
  Series s{"shooting", {}, {}};
  const double lo = -std::max(2.0, prof.xi_star);
  for (int k = 0; k <= 400; ++k) {
    const double x = lo + (1.25 * prof.xi_star - lo) * k / 400.0;
    s.x.push_back(x);
    s.y.push_back(prof.eval(x));
  }
  plot.series.push_back(s);

  const double p = pr.p;
  if (!reaction && nearly_equal(pr.alpha, front_power(p))) {
    const auto sol = make_solution(SolutionFamily::TravelingWave, pr);
    const double xs = sol.constants.at("xi_star");
    res.checks.push_back(relative_check("xi_star", xs, prof.xi_star, 1e-3));
    double err = 0.0, top = 0.0;
    Series e{"explicit", {}, {}, "#d62728", true};
    for (int k = 0; k <= 1000; ++k) {
      const double x = xs * k / 1000.0;
      const double exact = pr.C * std::pow(std::max(xs - x, 0.0), front_power(p));
      err = std::max(err, std::abs(prof.eval(x) - exact));
      top = std::max(top, exact);
    }
    for (double x : s.x) {
      e.x.push_back(x);
      e.y.push_back(pr.C * std::pow(std::max(xs - x, 0.0), front_power(p)));
    }
    plot.series.push_back(e);
    res.checks.push_back(absolute_check("profile_sup_error", 0.0, err / top, 1e-3));
  } else if (!reaction) {
    const auto br = xi_bracket(p, pr.alpha);
    const double normalized = prof.xi_star / front_speed_scale(p, pr.alpha, prof.A0.value_or(prof.eval(0.0)));
    res.checks.push_back(pass_if("xi_normalized_in_bracket", 0.5 * (br.xi1 + br.xi2), normalized,
                                 0.5 * (br.xi2 - br.xi1) + tol,
                                 normalized >= br.xi1 - tol && normalized <= br.xi2 + tol));
  } else {
    if (nearly_equal(pr.beta * (p - 1.0), 1.0)) {
      const auto sol = make_solution(SolutionFamily::BorderlineExplicit, pr);
      const double zs = sol.constants.at("zeta_star");
      res.checks.push_back(relative_check("zeta_star", zs, prof.xi_star, 1e-3));
      res.checks.push_back(relative_check("A1", eval_solution(sol, 0.0, 1.0), *prof.A1, 1e-3));
    }
    const auto dc = appendix_constants(pr, *prof.A1);
    const double z1 = dc.appendix.at("zeta1"), z2 = dc.appendix.at("zeta2");
    const double slack = tol * prof.xi_star;
    res.checks.push_back(pass_if("zeta_star_in_bracket", 0.5 * (z1 + z2), prof.xi_star, 0.5 * (z2 - z1) + slack,
                                 prof.xi_star >= z1 - slack && prof.xi_star <= z2 + slack));
  }
  write_plot(res, out / "profile.svg", render(plot));
  res.notes = fmt::format("{} = {:.10g}\n", reaction ? "zeta_*" : "xi_*", prof.xi_star);
  if (prof.A0) res.notes += fmt::format("A0 = {:.10g}\n", *prof.A0);
  if (prof.A1) res.notes += fmt::format("A1 = {:.10g}\n", *prof.A1);
  return res;
}

CommandResult cmd_simulate(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const auto& pr = cfg.params;
  const Regime regime = classify(pr);
  const auto checks = default_simulate_checks(cfg, regime);
  auto wants = [&](std::string_view c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };

  const RunResult run_out = simulate_run(cfg, cfg.grid);
  for (std::size_t k = 0; k < run_out.snapshots.size(); ++k) {
    const fs::path path = out / fmt::format("snapshot_{:03d}.csv", k);
    write_snapshot_csv(path, run_out.snapshots[k]);
    res.artifacts.push_back(path);
  }
  write_trace_csv(out / "trace.csv", run_out.trace);
  res.artifacts.push_back(out / "trace.csv");

  LinePlot tp{"Interface", "t", "eta", {}};
  tp.series.push_back({"eta(t)", run_out.trace.t, run_out.trace.eta, "#1f77b4", false, true});
  if (regime.interface_exponent && regime.interface_coefficient) {
    Series law{"leading law", {}, {}, "#d62728", true};
    for (double t : run_out.trace.t) {
      law.x.push_back(t);
      law.y.push_back(*regime.interface_coefficient * std::pow(t, *regime.interface_exponent));
    }
    tp.series.push_back(law);
  }
  write_plot(res, out / "trace.svg", render(tp));

  LinePlot sp{"Snapshots", "x", "u", {}};
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
  const std::size_t stride = std::max<std::size_t>(1, run_out.snapshots.size() / 5);
  for (std::size_t k = 0, c = 0; k < run_out.snapshots.size(); k += stride, ++c) {
    const auto& f = run_out.snapshots[k];
    Series s{fmt::format("t = {:.3g}", f.t), {}, {}, colors[c % 5]};
    const std::size_t step = std::max<std::size_t>(1, f.values.size() / 600);
    for (std::size_t i = 0; i < f.values.size(); i += step) {
      s.x.push_back(f.grid.node(i));
      s.y.push_back(f.values[i]);
    }
    sp.series.push_back(std::move(s));
  }
  write_plot(res, out / "snapshots.svg", render(sp));

  const auto& tol = cfg.tolerances;
  if (wants("fit")) {
    if (!regime.interface_exponent) throw Error(ErrorCode::OutOfDomain, "no interface power law for this regime");
    const FitResult fit = fit_power_law(run_out.trace, fit_t1(cfg), fit_t2(cfg));
    res.checks.push_back(relative_check("fit_exponent", *regime.interface_exponent, fit.exponent, tol.exponent));
    if (const auto coef = predicted_coefficient(pr, regime)) {
      res.checks.push_back(relative_check("fit_coefficient", *coef, fit.coefficient, tol.coefficient));
    }
    res.notes += fmt::format("fit on [{:.4g}, {:.4g}]: {} samples, r^2 = {:.6f}\n", fit.t1, fit.t2, fit.samples,
                             fit.r_squared);
  }
  if (wants("probe")) {
    if (!cfg.probe) throw Error(ErrorCode::OutOfDomain, "check = probe needs probe and probe_speed");
    const ProbeCurve curve = *cfg.probe;
    std::optional<double> front;
    double predicted = 0.0;
    if (curve.kind == CurveKind::RhoCurve) {
      const auto prof = solve_pure_profile(diffusion_only(pr), tol.profile);
      front = prof.xi_star;
      predicted = prof.eval(curve.speed);
    } else if (curve.kind == CurveKind::ZetaCurve) {
      const auto prof = solve_reaction_profile(pr, tol.profile);
      front = prof.xi_star;
      predicted = prof.eval(curve.speed);
    } else {
      const double e = 1.0 - pr.beta;
      predicted = std::pow(std::pow(pr.C, e) * std::pow(curve.speed, pr.alpha * e) - pr.b * e, 1.0 / e);
    }
    const auto series = probe_local_solution(run_out.snapshots, curve, pr, front);
    CsvTable t({"t", "x", "value"});
    for (const auto& s : series) t.add_numbers({s.t, s.x, s.value});
    write_csv(res, out / "probe.csv", t);
    const Plateau pl = plateau(series, fit_t1(cfg), fit_t2(cfg));
    res.checks.push_back(relative_check("probe_plateau", predicted, pl.value, tol.plateau));
  }
  if (wants("exact") || wants("convergence")) {
    const auto family = exact_family(pr);
    if (!family) throw Error(ErrorCode::OutOfDomain, "no closed form solution for these parameters");
    const auto sol = make_solution(*family, pr);
    double worst = 0.0;
    for (const auto& f : run_out.snapshots) {
      double top = 0.0;
      const double err = max_abs_error(f, sol, &top);
      if (top > 0.0) worst = std::max(worst, err / top);
    }
    res.checks.push_back(absolute_check("exact_nodal_error", 0.0, worst, tol.nodal));
    const double eta = extract_interface(run_out.snapshots.back(), run_out.trace.threshold);
    // A relative band is empty when the exact interface sits at the origin.
    const double eta_exact = solution_interface(sol, run_out.snapshots.back().t);
    res.checks.push_back(absolute_check("exact_interface", eta_exact, eta,
                                        std::max(tol.interface * std::abs(eta_exact), 2.0 * cfg.grid.dx())));
    if (wants("convergence")) {
      if (cfg.grid.n_cells % 4 != 0) throw Error(ErrorCode::OutOfDomain, "convergence needs n divisible by 4");
      std::vector<double> errs;
      for (int div : {4, 2}) {
        Grid1D g = cfg.grid;
        g.n_cells /= div;
        const auto r = simulate_run(cfg, g);
        errs.push_back(max_abs_error(r.snapshots.back(), sol, nullptr));
      }
      errs.push_back(max_abs_error(run_out.snapshots.back(), sol, nullptr));
      double order = kInf;
      for (std::size_t k = 0; k + 1 < errs.size(); ++k) order = std::min(order, std::log2(errs[k] / errs[k + 1]));
      res.checks.push_back(pass_if("convergence_order", tol.convergence_order, order, 0.0,
                                   order >= tol.convergence_order));
      res.notes += fmt::format("errors at n/4, n/2, n: {:.3e} {:.3e} {:.3e}\n", errs[0], errs[1], errs[2]);
    }
  }
  if (wants("waiting")) {
    const WaitingReport w = waiting_time_report(run_out.trace, pr, cfg.t_end);
    res.checks.push_back(pass_if("waiting_regime", 1.0, w.regime_waiting ? 1.0 : 0.0, 0.0, w.regime_waiting));
    res.checks.push_back(absolute_check("waiting_excursion", 0.0, w.max_excursion, w.band));
    if (w.horizon) {
      res.checks.push_back(pass_if("waiting_horizon", *w.horizon, cfg.t_end, 0.0, w.horizon_honored));
    }
    res.notes += fmt::format("waiting: {}\n", w.diagnostic);
  }
  res.notes += fmt::format("{} steps\n", run_out.steps);
  return res;
}

CommandResult cmd_verify(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const auto& pr = cfg.params;
  const std::vector<std::string> checks =
      cfg.checks.empty() ? std::vector<std::string>{"sandwich", "certify"} : cfg.checks;
  auto wants = [&](std::string_view c) { return std::find(checks.begin(), checks.end(), c) != checks.end(); };
  const BoundPair pair = bounds_for(pr, cfg.tolerances.envelope_eps, cfg.t_end);

  if (wants("sandwich") || wants("envelope")) {
    if (cfg.grid.n_cells % 2 != 0) throw Error(ErrorCode::OutOfDomain, "sandwich needs an even n for the coarse run");
    const RunResult fine = simulate_run(cfg, cfg.grid);
    Grid1D coarse_grid = cfg.grid;
    coarse_grid.n_cells /= 2;
    const RunResult coarse = simulate_run(cfg, coarse_grid);
    const double estimate = truncation_estimate(fine.snapshots, coarse.snapshots);
    const double slack = sandwich_slack(estimate, fine.snapshots);
    const SandwichReport rep = verify_sandwich(fine.snapshots, pair.lower, pair.upper, slack);
    res.checks.push_back(pass_if("sandwich_margin", 0.0, rep.worst_margin, 0.0, rep.pass));
    res.notes += fmt::format("sandwich {} vs {}: {} nodes, truncation estimate {:.3e}, worst margin {:.3e} at "
                             "(x = {:.4g}, t = {:.4g}) on the {} side\n",
                             pair.lower.name, pair.upper.name, rep.checked, estimate, rep.worst_margin, rep.worst_x,
                             rep.worst_t, rep.worst_side);

    // Plot the latest snapshot that meets the bounds' regions.
    for (auto it = fine.snapshots.rbegin(); it != fine.snapshots.rend(); ++it) {
      Series u{"u", {}, {}, "#1f77b4"}, lo{pair.lower.name, {}, {}, "#2ca02c", true},
          hi{pair.upper.name, {}, {}, "#d62728", true};
      for (std::size_t i = 0; i < it->values.size(); ++i) {
        const double x = it->grid.node(i);
        const bool in_lo = pair.lower.contains(x, it->t), in_hi = pair.upper.contains(x, it->t);
        if (!in_lo && !in_hi) continue;
        u.x.push_back(x);
        u.y.push_back(it->values[i]);
        if (in_lo) {
          lo.x.push_back(x);
          lo.y.push_back(pair.lower.value(x, it->t));
        }
        if (in_hi) {
          hi.x.push_back(x);
          hi.y.push_back(pair.upper.value(x, it->t));
        }
      }
      if (u.x.empty()) continue;
      write_plot(res, out / "sandwich.svg",
                 render(LinePlot{fmt::format("Sandwich at t = {:.4g}", it->t), "x", "u", {u, lo, hi}}));
      break;
    }
  }
  if (wants("certify")) {
    CsvTable t({"family", "side", "pass", "checked", "skipped", "outside_support", "worst", "worst_x", "worst_t"});
    for (const auto& bar : pair.barriers) {
      const SignReport rep = certify_sign(bar, sample_grid(bar, 40, 25));
      res.checks.push_back(pass_if(fmt::format("certify_{}_{}", to_string(bar.family), to_string(bar.side)), 0.0,
                                   rep.worst, 1e-7, rep.pass));
      t.add_row({std::string(to_string(bar.family)), std::string(to_string(bar.side)), rep.pass ? "true" : "false",
                 std::to_string(rep.checked), std::to_string(rep.skipped), std::to_string(rep.outside_support),
                 format_number(rep.worst), format_number(rep.worst_x), format_number(rep.worst_t)});
    }
    write_csv(res, out / "certify.csv", t);
  }
  return res;
}

CommandResult cmd_figure1(const ExperimentConfig& cfg, const fs::path& out) {
  CommandResult res;
  const double p = cfg.params.p;
  const Figure1Map map = figure1_map(p, cfg.alpha_max, cfg.beta_max, cfg.alpha_cells, cfg.beta_cells);

  CsvTable t({"alpha", "beta", "region"});
  for (int j = 0; j < map.beta_cells; ++j) {
    for (int i = 0; i < map.alpha_cells; ++i) {
      t.add_row({format_number(map.alpha_at(i)), format_number(map.beta_at(j)), std::string(to_string(map.at(i, j)))});
    }
  }
  write_csv(res, out / "figure1.csv", t);

  CellMap cm;
  cm.title = fmt::format("Regions in the (alpha, beta) plane, p = {:g}", p);
  cm.x_label = "alpha";
  cm.y_label = "beta";
  cm.x_max = cfg.alpha_max;
  cm.y_max = cfg.beta_max;
  cm.nx = map.alpha_cells;
  cm.ny = map.beta_cells;
  const std::vector<Region> legend = {Region::R1_Expanding, Region::R2_Borderline, Region::R3_Shrinking,
                                      Region::R4_Waiting};
  for (Region r : legend) {
    cm.palette.push_back(region_color(r));
    cm.legend.emplace_back(to_string(r));
  }
  for (Region r : map.regions) {
    const auto it = std::find(legend.begin(), legend.end(), r);
    cm.cells.push_back(static_cast<int>(it - legend.begin()));
  }
  Series curve{"alpha = p/(p-1-min(1,beta))", {}, {}, "#252525"};
  for (int k = 0; k <= 300; ++k) {
    const double beta = cfg.beta_max * k / 300.0;
    const double a = p / (p - 1.0 - std::min(1.0, beta));
    if (a > 0.0 && a <= cfg.alpha_max) {
      curve.x.push_back(a);
      curve.y.push_back(beta);
    }
  }
  cm.curves.push_back(curve);
  write_plot(res, out / "figure1.svg", render(cm));

  res.checks.push_back(absolute_check("boundary_offset_cells", 0.0, figure1_boundary_error(map), 1.0));
  struct Probe {
    double alpha, beta;
    Region expected;
  };
  // One point inside each region (and on the borderline) at p = 3.
  if (p == 3.0) {
    for (const Probe& pt : {Probe{1.0, 0.5, Region::R1_Expanding}, Probe{2.0, 0.5, Region::R2_Borderline},
                            Probe{4.0, 0.5, Region::R3_Shrinking}, Probe{5.0, 2.0, Region::R4_Waiting}}) {
      const Region got = classify({p, 1.0, pt.beta, pt.alpha, 1.0}).region;
      res.checks.push_back(pass_if(fmt::format("point_{:g}_{:g}_{}", pt.alpha, pt.beta, to_string(pt.expected)),
                                   static_cast<double>(pt.expected), static_cast<double>(got), 0.0,
                                   got == pt.expected));
    }
  }
  return res;
}

}  // namespace pfront::cli
