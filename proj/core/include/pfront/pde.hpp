#pragma once

// Explicit conservative finite differences for
//   u_t = (|u_x|^{p-2} u_x)_x - b u^beta
// on [x_left, x_right] with u(x_left, t) pinned and u(x_right, t) = 0.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "pfront/model.hpp"

namespace pfront {

struct Grid1D {
  double x_left = -1.0;
  double x_right = 1.0;
  int n_cells = 100;

  [[nodiscard]] double dx() const noexcept { return (x_right - x_left) / n_cells; }
  [[nodiscard]] double node(std::size_t i) const noexcept {
    return x_left + static_cast<double>(i) * dx();
  }
  [[nodiscard]] std::size_t nodes() const noexcept { return static_cast<std::size_t>(n_cells) + 1; }
};

/// Throws OutOfDomain unless x_left < 0 < x_right and n_cells > 1.
Grid1D make_grid(double x_left, double x_right, int n_cells);

struct Field {
  Grid1D grid;
  double t = 0.0;
  std::vector<double> values;
};

struct InterfaceTrace {
  std::vector<double> t;
  std::vector<double> eta;
  double threshold = 0.0;
  double dx = 0.0;
  /// Interface of the initial field at the same threshold. For steep data
  /// it sits left of the origin by |x_left| * 1e-10^{1/alpha}.
  double eta0 = 0.0;
  std::optional<double> waiting_time;
  /// Spread of eta over the first tenth of the samples.
  double jitter = 0.0;
};

/// Left boundary value as a function of time.
using BoundaryTrace = std::function<double(double)>;

Field initial_field(const ProblemParams& params, const Grid1D& grid);

/// dt = 0.4 dx^2 / ((p-1) max|du/dx|^{p-2} + dx^2 lambda_r), capped at 1e-3
/// and floored at 1e-14.
double stable_dt(const Field& field, const ProblemParams& params);

/// One Strang step: half reaction, diffusion, half reaction. The left node is
/// set to `left_value` (the boundary trace at t + dt), the right node to 0.
Field step(const Field& field, const ProblemParams& params, double dt, double left_value);

/// Same, with only the diffusion or only the reaction part (tests).
Field diffusion_step(const Field& field, const ProblemParams& params, double dt, double left_value);
Field reaction_step(const Field& field, const ProblemParams& params, double tau);

/// Rightmost crossing of `threshold`, linearly interpolated; x_left - dx if
/// every node is at or below the threshold.
double extract_interface(const Field& field, double threshold);

struct RunOptions {
  std::vector<double> snapshot_times;
  /// Defaults to the static value u0(x_left).
  BoundaryTrace left_boundary;
  std::size_t trace_samples = 200;
  /// Interface threshold relative to max u0.
  double threshold_fraction = 1e-10;
  double dt_max = 1e-3;
  /// Fill InterfaceTrace::waiting_time (waiting regimes).
  bool detect_waiting = false;
};

struct RunResult {
  std::vector<Field> snapshots;
  InterfaceTrace trace;
  long steps = 0;
};

/// Throws SnapshotSkew if snapshot times are unsorted or outside [0, t_end].
RunResult run(const ProblemParams& params, const Grid1D& grid, double t_end,
              const RunOptions& options = {});

/// First trace sample with eta > max(2 dx, 3 jitter), if any.
std::optional<double> detect_waiting_time(const InterfaceTrace& trace);

void write_snapshot_csv(const std::filesystem::path& path, const Field& field);
void write_trace_csv(const std::filesystem::path& path, const InterfaceTrace& trace);

}  // namespace pfront
