#pragma once

// The pfront subcommands. Each writes its artifacts under the output
// directory and returns the checks it evaluated.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pfront/analysis.hpp"
#include "pfront/cli/config.hpp"
#include "pfront/closed_form.hpp"

namespace pfront::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

struct CommandResult {
  std::vector<Check> checks;
  std::vector<std::filesystem::path> artifacts;
  /// Human-readable lines printed after the check summary.
  std::string notes;

  [[nodiscard]] bool passed() const;
};

CommandResult cmd_classify(const ExperimentConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_constants(const ExperimentConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_profile(const ExperimentConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_figure1(const ExperimentConfig& cfg, const std::filesystem::path& out);

/// Entry point shared by the executable and the CLI tests; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// --- pieces reused by tests ------------------------------------------------------

/// PFRONT_THREADS if set to a positive integer, else the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. The first
/// exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Closed form solution of the full equation for these parameters, if any.
std::optional<SolutionFamily> exact_family(const ProblemParams& params);

struct Figure1Map {
  double p = 3.0;
  double alpha_max = 8.0;
  double beta_max = 3.0;
  int alpha_cells = 0;
  int beta_cells = 0;
  /// Row-major: beta_cells rows of alpha_cells cells, at cell centres.
  std::vector<Region> regions;

  [[nodiscard]] double alpha_at(int i) const { return (i + 0.5) * alpha_max / alpha_cells; }
  [[nodiscard]] double beta_at(int j) const { return (j + 0.5) * beta_max / beta_cells; }
  [[nodiscard]] Region at(int i, int j) const {
    return regions[static_cast<std::size_t>(j * alpha_cells + i)];
  }
};

/// Classification over cell centres with b = 1, C = 1.
Figure1Map figure1_map(double p, double alpha_max, double beta_max, int alpha_cells, int beta_cells);

/// Largest distance, in alpha cells, between the first non-expanding cell of
/// each beta row and alpha = p/(p-1-min(1, beta)).
double figure1_boundary_error(const Figure1Map& map);

/// Lower and upper comparison functions for the regime of `params`, amplitude
/// half-width eps * C where a +-eps family is used. `a_profile` is A0 (b = 0)
/// or A1 (borderline, C > C_*) when the pair needs it.
struct BoundPair {
  Bound lower;
  Bound upper;
  /// Barriers among the two (closed form solutions are not listed).
  std::vector<BarrierSpec> barriers;
};
BoundPair bounds_for(const ProblemParams& params, double eps, double t_end);

}  // namespace pfront::cli
