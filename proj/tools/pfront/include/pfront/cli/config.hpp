#pragma once

// Experiment configuration: flat `key = value` lines, `#` comments, repeated
// `snapshot =` and `check =` lines accumulate.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfront/analysis.hpp"
#include "pfront/error.hpp"
#include "pfront/model.hpp"
#include "pfront/pde.hpp"

namespace pfront::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  /// 1-based; 0 when the problem is not tied to a line (missing key).
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Parameters parsed but rejected by validate().
class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorCode code, const std::string& what);
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Tolerances {
  double exponent = 0.02;
  double coefficient = 0.05;
  double plateau = 0.05;
  double interface = 0.02;
  double nodal = 0.01;
  double profile = 1e-4;
  double convergence_order = 0.8;
  /// Envelope half-width relative to C for the +-eps bounds.
  double envelope_eps = 0.05;
};

struct ExperimentConfig {
  ProblemParams params;
  Grid1D grid{-6.0, 6.0, 4800};
  double t_end = 1.0;
  std::vector<double> snapshot_times;
  /// fit, probe, exact, convergence, waiting, sandwich, certify. Empty means
  /// the defaults for the regime.
  std::vector<std::string> checks;
  std::filesystem::path output_dir = ".";
  Tolerances tolerances;
  std::optional<double> fit_t1;
  std::optional<double> fit_t2;
  std::optional<ProbeCurve> probe;
  /// "static" pins u0(x_left); "exact" uses the closed form solution when the
  /// parameters have one.
  std::string left_trace = "static";
  std::size_t trace_samples = 200;
  /// Number of snapshots added evenly over (0, t_end] when none are listed.
  int auto_snapshots = 20;

  // figure1 sweep
  double alpha_max = 8.0;
  double beta_max = 3.0;
  int alpha_cells = 160;
  int beta_cells = 60;
};

/// Throws ParseError or ValidationError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace pfront::cli
