#include "pfront/pde.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pfront/csv.hpp"
#include "pfront/error.hpp"

namespace pfront {

namespace {

constexpr double kSigma = 0.4;
constexpr double kDtFloor = 1e-14;

enum class FluxKind { Cubic, Quartic, General };

FluxKind flux_kind(double p) {
  if (p == 3.0) return FluxKind::Cubic;
  if (p == 4.0) return FluxKind::Quartic;
  return FluxKind::General;
}

// Face fluxes F[i] = |d|^{p-2} d, d = (u[i+1]-u[i])/dx, for faces 0..hi-1.
// Returns max |d| over those faces.
double compute_fluxes(const std::vector<double>& u, std::vector<double>& F, double p, double dx,
                      std::size_t hi) {
  const double inv_dx = 1.0 / dx;
  const double* uu = u.data();
  double* ff = F.data();
  double acc = 0.0;
  switch (flux_kind(p)) {
    case FluxKind::Cubic:
#pragma omp simd reduction(max : acc)
      for (std::size_t i = 0; i < hi; ++i) {
        const double d = (uu[i + 1] - uu[i]) * inv_dx;
        const double a = std::abs(d);
        ff[i] = a * d;
        acc = acc > a ? acc : a;
      }
      break;
    case FluxKind::Quartic:
#pragma omp simd reduction(max : acc)
      for (std::size_t i = 0; i < hi; ++i) {
        const double d = (uu[i + 1] - uu[i]) * inv_dx;
        ff[i] = d * d * d;
        const double a = std::abs(d);
        acc = acc > a ? acc : a;
      }
      break;
    case FluxKind::General:
      for (std::size_t i = 0; i < hi; ++i) {
        const double d = (uu[i + 1] - uu[i]) * inv_dx;
        const double a = std::abs(d);
        ff[i] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, p - 1.0), d);
        acc = acc > a ? acc : a;
      }
      break;
  }
  return acc;
}

struct PassStats {
  double slope = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Diffusion update of nodes 1..hi-1 fused with the face fluxes of the
// updated state, so a step without reaction reads the arrays once. Face i-1
// is rewritten as soon as node i is final; it is not needed after that.
template <class Flux>
PassStats fused_pass(double* u, double* F, std::size_t hi, std::size_t n, double r, double inv_dx,
                     double left_value, Flux flux) {
  PassStats st;
  st.max = left_value;
  double prev = left_value;
  double f_prev = F[0];
  for (std::size_t i = 1; i < hi; ++i) {
    const double f_i = F[i];
    const double v = u[i] + r * (f_i - f_prev);
    u[i] = v;
    const double d = (v - prev) * inv_dx;
    F[i - 1] = flux(d);
    // Branches rather than max/min chains: they are rarely taken and do not
    // serialize the loop.
    const double a = std::abs(d);
    if (a > st.slope) st.slope = a;
    if (v < st.min) st.min = v;
    if (v > st.max) st.max = v;
    prev = v;
    f_prev = f_i;
  }
  u[0] = left_value;
  u[n] = 0.0;
  const double d_last = (u[hi] - prev) * inv_dx;
  F[hi - 1] = flux(d_last);
  st.slope = std::max(st.slope, std::abs(d_last));
  if (hi < n) {
    const double d_next = (u[hi + 1] - u[hi]) * inv_dx;
    F[hi] = flux(d_next);
    st.slope = std::max(st.slope, std::abs(d_next));
  }
  return st;
}

PassStats fused_step(std::vector<double>& u, std::vector<double>& F, double p, std::size_t hi, std::size_t n,
                     double r, double inv_dx, double left_value) {
  switch (flux_kind(p)) {
    case FluxKind::Cubic:
      return fused_pass(u.data(), F.data(), hi, n, r, inv_dx, left_value,
                        [](double d) { return std::abs(d) * d; });
    case FluxKind::Quartic:
      return fused_pass(u.data(), F.data(), hi, n, r, inv_dx, left_value,
                        [](double d) { return d * d * d; });
    case FluxKind::General:
      break;
  }
  return fused_pass(u.data(), F.data(), hi, n, r, inv_dx, left_value, [p](double d) {
    const double a = std::abs(d);
    return a == 0.0 ? 0.0 : std::copysign(std::pow(a, p - 1.0), d);
  });
}

void react(std::vector<double>& u, const ProblemParams& pr, double tau, std::size_t lo, std::size_t hi) {
  if (pr.b == 0.0 || tau <= 0.0) return;
  if (pr.beta == 1.0) {
    const double factor = std::exp(-pr.b * tau);
    for (std::size_t i = lo; i < hi; ++i) u[i] *= factor;
    return;
  }
  const double e = 1.0 - pr.beta;
  const double shift = pr.b * e * tau;
  double* uu = u.data();
  if (pr.beta == 0.5) {
    // The common borderline and shrinking cases; sqrt and a square instead of two pow calls.
    for (std::size_t i = lo; i < hi; ++i) {
      if (uu[i] <= 0.0) continue;
      const double inner = std::sqrt(uu[i]) - shift;
      uu[i] = inner > 0.0 ? inner * inner : 0.0;
    }
    return;
  }
  if (pr.beta == 2.0) {
    for (std::size_t i = lo; i < hi; ++i) {
      if (uu[i] <= 0.0) continue;
      const double inner = 1.0 / uu[i] - shift;
      if (!(inner > 0.0)) {
        throw Error(ErrorCode::UnstableStep, fmt::format("reaction blow-up at node {}", i));
      }
      uu[i] = 1.0 / inner;
    }
    return;
  }
  for (std::size_t i = lo; i < hi; ++i) {
    if (uu[i] <= 0.0) continue;
    const double inner = std::pow(uu[i], e) - shift;
    if (pr.beta < 1.0) {
      uu[i] = inner > 0.0 ? std::pow(inner, 1.0 / e) : 0.0;
    } else {
      if (!(inner > 0.0)) {
        throw Error(ErrorCode::UnstableStep, fmt::format("reaction blow-up at node {}", i));
      }
      uu[i] = std::pow(inner, 1.0 / e);
    }
  }
}

double dt_from(double max_slope, double max_u, const ProblemParams& pr, double dx, double dt_max) {
  double lambda_r = 0.0;
  if (pr.beta >= 1.0 && pr.b != 0.0 && max_u > 0.0) {
    lambda_r = std::abs(pr.b) * pr.beta * std::pow(max_u, pr.beta - 1.0);
  }
  const double diff = (pr.p - 1.0) * std::pow(max_slope, pr.p - 2.0);
  const double denom = diff + dx * dx * lambda_r;
  if (!(denom > 0.0)) return dt_max;
  return std::clamp(kSigma * dx * dx / denom, kDtFloor, dt_max);
}

// In-place evolution shared by step() and run().
class Evolver {
 public:
  Evolver(const ProblemParams& params, const Grid1D& grid, std::vector<double> u)
      : pr_(params), grid_(grid), dx_(grid.dx()), n_(static_cast<std::size_t>(grid.n_cells)),
        u_(std::move(u)), F_(n_ + 1, 0.0) {
    last_pos_ = 0;
    for (std::size_t i = 0; i <= n_; ++i) {
      if (u_[i] > 0.0) last_pos_ = i;
    }
    max_u_ = *std::max_element(u_.begin(), u_.end());
  }

  [[nodiscard]] const std::vector<double>& values() const { return u_; }
  [[nodiscard]] std::vector<double>& values() { return u_; }

  [[nodiscard]] std::size_t active_end() const { return std::min(last_pos_ + 2, n_); }

  // Fluxes for the current state; returns the stable dt.
  double prepare(double dt_max) {
    if (!fresh_) slope_ = compute_fluxes(u_, F_, pr_.p, dx_, active_end());
    return dt_from(slope_, max_u_, pr_, dx_, dt_max);
  }

  // Completes a step of size dt after prepare().
  void advance(double dt, double left_value, bool diffuse = true, bool reaction = true) {
    const std::size_t hi = active_end();
    const bool has_reaction = reaction && pr_.b != 0.0;
    fresh_ = false;
    if (diffuse && !has_reaction && hi >= 2) {
      const double old_max = max_u_;
      const PassStats st = fused_step(u_, F_, pr_.p, hi, n_, dt / dx_, 1.0 / dx_, left_value);
      finish(old_max, st.min, st.max, hi);
      fresh_ = st.min >= 0.0;
      slope_ = st.slope;
      return;
    }
    if (has_reaction) {
      react(u_, pr_, 0.5 * dt, 1, hi);
      if (diffuse) compute_fluxes(u_, F_, pr_.p, dx_, hi);
    }
    const double old_max = max_u_;
    double new_min = 0.0;
    if (diffuse) {
      const double r = dt / dx_;
      double* uu = u_.data();
      const double* ff = F_.data();
      double lo = 0.0;
#pragma omp simd reduction(min : lo)
      for (std::size_t i = 1; i < hi; ++i) {
        const double v = uu[i] + r * (ff[i] - ff[i - 1]);
        uu[i] = v;
        lo = lo < v ? lo : v;
      }
      new_min = lo;
    }
    if (has_reaction) react(u_, pr_, 0.5 * dt, 1, hi);
    u_[0] = left_value;
    u_[n_] = 0.0;

    double new_max = 0.0;
    const double* uu = u_.data();
    const std::size_t top = std::min(hi, n_);
#pragma omp simd reduction(max : new_max)
    for (std::size_t i = 0; i <= top; ++i) new_max = new_max > uu[i] ? new_max : uu[i];
    finish(old_max, new_min, std::max(new_max, left_value), hi);
  }

  void check_boundary(double threshold) const {
    if (n_ >= 2 && u_[n_ - 2] > threshold) {
      throw Error(ErrorCode::InterfaceAtBoundary,
                  fmt::format("support reached x = {}", grid_.node(n_ - 2)));
    }
  }

 private:
  // Sanity checks after a step, clipping of round-off negatives, support bookkeeping.
  void finish(double old_max, double new_min, double new_max, std::size_t hi) {
    const double ref = std::max(old_max, new_max);
    if (new_min < -1e-12 * ref) {
      throw Error(ErrorCode::UnstableStep, fmt::format("negative value {} after step", new_min));
    }
    if (new_min < 0.0) {
      for (std::size_t i = 1; i < hi; ++i) u_[i] = std::max(u_[i], 0.0);
    }
    if (!std::isfinite(new_max) || (old_max > 0.0 && new_max > 10.0 * old_max)) {
      throw Error(ErrorCode::UnstableStep, fmt::format("max grew from {} to {}", old_max, new_max));
    }
    // Nodes beyond hi are untouched by the step.
    max_u_ = std::max(new_max, hi < n_ ? max_beyond(hi) : 0.0);

    if (last_pos_ + 1 <= n_ && u_[last_pos_ + 1] > 0.0) {
      ++last_pos_;
    } else {
      while (last_pos_ > 0 && u_[last_pos_] <= 0.0) --last_pos_;
    }
  }

  double max_beyond(std::size_t hi) const {
    double m = 0.0;
    for (std::size_t i = hi; i <= last_pos_ && i <= n_; ++i) m = std::max(m, u_[i]);
    return m;
  }

  ProblemParams pr_;
  Grid1D grid_;
  double dx_;
  std::size_t n_;
  std::vector<double> u_;
  std::vector<double> F_;
  std::size_t last_pos_ = 0;
  double max_u_ = 0.0;
  // F_ already holds the fluxes of u_ (set by the fused path).
  bool fresh_ = false;
  double slope_ = 0.0;
};

std::vector<double> geometric_times(double t_end, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  const double t0 = 1e-4 * t_end;
  if (count == 1) return {t_end};
  const double ratio = std::pow(t_end / t0, 1.0 / static_cast<double>(count - 1));
  double t = t0;
  for (std::size_t i = 0; i < count; ++i, t *= ratio) out.push_back(i + 1 == count ? t_end : t);
  return out;
}

}  // namespace

Grid1D make_grid(double x_left, double x_right, int n_cells) {
  if (!(x_left < 0.0 && x_right > 0.0) || n_cells < 2) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("grid needs x_left < 0 < x_right and n > 1 (got [{}, {}], n = {})", x_left,
                            x_right, n_cells));
  }
  return {x_left, x_right, n_cells};
}

Field initial_field(const ProblemParams& params, const Grid1D& grid) {
  Field f;
  f.grid = grid;
  f.values.resize(grid.nodes());
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double x = grid.node(i);
    f.values[i] = x < 0.0 ? params.C * std::pow(-x, params.alpha) : 0.0;
  }
  return f;
}

double stable_dt(const Field& field, const ProblemParams& params) {
  const double dx = field.grid.dx();
  double max_slope = 0.0;
  for (std::size_t i = 0; i + 1 < field.values.size(); ++i) {
    max_slope = std::max(max_slope, std::abs(field.values[i + 1] - field.values[i]) / dx);
  }
  const double max_u = *std::max_element(field.values.begin(), field.values.end());
  return dt_from(max_slope, max_u, params, dx, 1e-3);
}

Field step(const Field& field, const ProblemParams& params, double dt, double left_value) {
  Evolver ev(params, field.grid, field.values);
  ev.prepare(1e300);
  ev.advance(dt, left_value);
  return {field.grid, field.t + dt, ev.values()};
}

Field diffusion_step(const Field& field, const ProblemParams& params, double dt, double left_value) {
  Evolver ev(params, field.grid, field.values);
  ev.prepare(1e300);
  ev.advance(dt, left_value, true, false);
  return {field.grid, field.t + dt, ev.values()};
}

Field reaction_step(const Field& field, const ProblemParams& params, double tau) {
  Field out = field;
  react(out.values, params, tau, 0, out.values.size());
  out.t += tau;
  return out;
}

double extract_interface(const Field& field, double threshold) {
  const auto& u = field.values;
  const auto& g = field.grid;
  for (std::size_t i = u.size(); i-- > 0;) {
    if (u[i] > threshold) {
      if (i + 1 >= u.size()) return g.node(i);
      const double frac = (u[i] - threshold) / (u[i] - u[i + 1]);
      return g.node(i) + frac * g.dx();
    }
  }
  return g.x_left - g.dx();
}

std::optional<double> detect_waiting_time(const InterfaceTrace& trace) {
  const double band = std::max(2.0 * trace.dx, 3.0 * trace.jitter);
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    if (trace.eta[i] > band) return trace.t[i];
  }
  return std::nullopt;
}

RunResult run(const ProblemParams& raw, const Grid1D& grid, double t_end, const RunOptions& options) {
  const ProblemParams params = validate(raw);
  if (!(t_end > 0.0)) throw Error(ErrorCode::SnapshotSkew, "t_end must be positive");
  const auto& snaps = options.snapshot_times;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    if (snaps[i] < 0.0 || snaps[i] > t_end || (i > 0 && snaps[i] < snaps[i - 1])) {
      throw Error(ErrorCode::SnapshotSkew,
                  fmt::format("snapshot times must be sorted within [0, {}]", t_end));
    }
  }

  const Field u0 = initial_field(params, grid);
  const double u0_left = u0.values.front();
  const BoundaryTrace left = options.left_boundary ? options.left_boundary
                                                   : BoundaryTrace([u0_left](double) { return u0_left; });
  const double max_u0 = *std::max_element(u0.values.begin(), u0.values.end());

  RunResult result;
  auto& trace = result.trace;
  trace.threshold = options.threshold_fraction * max_u0;
  trace.dx = grid.dx();
  trace.eta0 = extract_interface(u0, trace.threshold);
  const auto trace_times = geometric_times(t_end, options.trace_samples);

  Evolver ev(params, grid, u0.values);
  ev.values()[0] = left(0.0);
  std::size_t next_trace = 0;
  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
    result.snapshots.push_back({grid, 0.0, ev.values()});
    ++next_snap;
  }

  double t = 0.0;
  while (t < t_end) {
    double target = t_end;
    if (next_trace < trace_times.size()) target = std::min(target, trace_times[next_trace]);
    if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);
    double dt = ev.prepare(options.dt_max);
    bool lands = false;
    if (t + dt >= target * (1.0 - 1e-14)) {
      dt = target - t;
      lands = true;
    }
    ev.advance(dt, left(t + dt));
    t = lands ? target : t + dt;
    ++result.steps;
    ev.check_boundary(trace.threshold);

    while (next_trace < trace_times.size() && trace_times[next_trace] <= t) {
      trace.t.push_back(t);
      trace.eta.push_back(extract_interface({grid, t, ev.values()}, trace.threshold));
      ++next_trace;
    }
    while (next_snap < snaps.size() && snaps[next_snap] <= t) {
      result.snapshots.push_back({grid, t, ev.values()});
      ++next_snap;
    }
  }

  const std::size_t head = std::max<std::size_t>(1, trace.t.size() / 10);
  if (!trace.eta.empty()) {
    const auto [mn, mx] = std::minmax_element(trace.eta.begin(), trace.eta.begin() + static_cast<long>(head));
    trace.jitter = *mx - *mn;
  }
  if (options.detect_waiting) trace.waiting_time = detect_waiting_time(trace);
  return result;
}

void write_snapshot_csv(const std::filesystem::path& path, const Field& field) {
  CsvTable table({"x", "u"});
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    table.add_numbers({field.grid.node(i), field.values[i]});
  }
  table.write(path);
}

void write_trace_csv(const std::filesystem::path& path, const InterfaceTrace& trace) {
  CsvTable table({"t", "eta"});
  for (std::size_t i = 0; i < trace.t.size(); ++i) table.add_numbers({trace.t[i], trace.eta[i]});
  table.write(path);
}

}  // namespace pfront
