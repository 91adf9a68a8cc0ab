#include "pfront/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace pfront::cli {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}", line, what) : what), line_(line) {}

ValidationError::ValidationError(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_real(std::string_view v, int line, std::string_view key) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    // Allow simple fractions such as 1/36.
    const auto slash = v.find('/');
    if (slash != std::string_view::npos) {
      return to_real(trim(v.substr(0, slash)), line, key) / to_real(trim(v.substr(slash + 1)), line, key);
    }
    throw ParseError(line, fmt::format("{}: '{}' is not a number", key, v));
  }
  return out;
}

int to_int(std::string_view v, int line, std::string_view key) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ParseError(line, fmt::format("{}: '{}' is not an integer", key, v));
  return out;
}

const std::set<std::string, std::less<>> kChecks = {"fit",         "probe",    "exact",   "convergence",
                                                    "waiting",     "sandwich", "certify", "envelope"};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::optional<std::string> probe_kind;
  std::optional<double> probe_speed;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, fmt::format("expected key = value, got '{}'", line));
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line_no, "empty key or value");
    const bool repeatable = key == "snapshot" || key == "check";
    if (!repeatable && !seen.insert(key).second) throw ParseError(line_no, fmt::format("duplicate key '{}'", key));

    auto real = [&] { return to_real(value, line_no, key); };
    auto& tol = cfg.tolerances;
    if (key == "p") cfg.params.p = real();
    else if (key == "b") cfg.params.b = real();
    else if (key == "beta") cfg.params.beta = real();
    else if (key == "alpha") cfg.params.alpha = real();
    else if (key == "C") cfg.params.C = real();
    else if (key == "x_left") cfg.grid.x_left = real();
    else if (key == "x_right") cfg.grid.x_right = real();
    else if (key == "n") cfg.grid.n_cells = to_int(value, line_no, key);
    else if (key == "t_end") cfg.t_end = real();
    else if (key == "snapshot") cfg.snapshot_times.push_back(real());
    else if (key == "auto_snapshots") cfg.auto_snapshots = to_int(value, line_no, key);
    else if (key == "trace_samples") cfg.trace_samples = static_cast<std::size_t>(to_int(value, line_no, key));
    else if (key == "check") {
      if (!kChecks.contains(value)) throw ParseError(line_no, fmt::format("unknown check '{}'", value));
      cfg.checks.emplace_back(value);
    } else if (key == "output_dir") cfg.output_dir = std::string(value);
    else if (key == "fit_t1") cfg.fit_t1 = real();
    else if (key == "fit_t2") cfg.fit_t2 = real();
    else if (key == "probe") {
      if (value != "rho" && value != "ell" && value != "zeta") {
        throw ParseError(line_no, fmt::format("probe must be rho, ell or zeta, got '{}'", value));
      }
      probe_kind = std::string(value);
    } else if (key == "probe_speed") probe_speed = real();
    else if (key == "left_trace") {
      if (value != "static" && value != "exact") throw ParseError(line_no, "left_trace must be static or exact");
      cfg.left_trace = std::string(value);
    } else if (key == "tol_exponent") tol.exponent = real();
    else if (key == "tol_coefficient") tol.coefficient = real();
    else if (key == "tol_plateau") tol.plateau = real();
    else if (key == "tol_interface") tol.interface = real();
    else if (key == "tol_nodal") tol.nodal = real();
    else if (key == "tol_profile") tol.profile = real();
    else if (key == "min_order") tol.convergence_order = real();
    else if (key == "envelope_eps") tol.envelope_eps = real();
    else if (key == "alpha_max") cfg.alpha_max = real();
    else if (key == "beta_max") cfg.beta_max = real();
    else if (key == "alpha_cells") cfg.alpha_cells = to_int(value, line_no, key);
    else if (key == "beta_cells") cfg.beta_cells = to_int(value, line_no, key);
    else throw ParseError(line_no, fmt::format("unknown key '{}'", key));
  }

  if (!seen.contains("p")) throw ParseError(0, "p required");
  if (probe_kind.has_value() != probe_speed.has_value()) {
    throw ParseError(0, "probe and probe_speed must be given together");
  }
  if (probe_kind) {
    const CurveKind kind = *probe_kind == "rho"   ? CurveKind::RhoCurve
                           : *probe_kind == "ell" ? CurveKind::EllCurve
                                                  : CurveKind::ZetaCurve;
    cfg.probe = ProbeCurve{kind, *probe_speed};
  }
  try {
    cfg.params = validate(cfg.params);
  } catch (const Error& e) {
    throw ValidationError(e.code(), e.what());
  }
  if (!(cfg.t_end > 0.0)) throw ParseError(0, "t_end must be positive");
  if (!(cfg.grid.x_left < 0.0 && cfg.grid.x_right > 0.0) || cfg.grid.n_cells < 2) {
    throw ParseError(0, "grid needs x_left < 0 < x_right and n > 1");
  }
  std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
  for (double s : cfg.snapshot_times) {
    if (s < 0.0 || s > cfg.t_end) throw ParseError(0, fmt::format("snapshot {} outside [0, t_end]", s));
  }
  if (cfg.snapshot_times.empty()) {
    for (int k = 1; k <= cfg.auto_snapshots; ++k) cfg.snapshot_times.push_back(cfg.t_end * k / cfg.auto_snapshots);
  }
  if (cfg.fit_t1 && cfg.fit_t2 && !(*cfg.fit_t1 < *cfg.fit_t2)) throw ParseError(0, "fit_t1 must be below fit_t2");
  if (!(cfg.alpha_max > 0.0 && cfg.beta_max > 0.0 && cfg.alpha_cells > 1 && cfg.beta_cells > 1)) {
    throw ParseError(0, "figure1 ranges must be positive with at least 2 cells");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace pfront::cli
