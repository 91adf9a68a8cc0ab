#include <filesystem>
#include <map>
#include <ostream>
#include <system_error>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pfront/cli/commands.hpp"
#include "pfront/csv.hpp"
#include "pfront/error.hpp"

namespace pfront::cli {

namespace {

using Command = CommandResult (*)(const ExperimentConfig&, const std::filesystem::path&);

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = {
      {"classify", cmd_classify}, {"constants", cmd_constants}, {"profile", cmd_profile},
      {"simulate", cmd_simulate}, {"verify", cmd_verify},       {"figure1", cmd_figure1},
  };
  return table;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interface behaviour of the p-Laplacian equation with strong absorption", "pfront"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> names;
  for (const auto& [name, fn] : commands()) names.push_back(name);
  app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Experiment configuration file")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitConfigError;
  }

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ParseError& e) {
    if (e.line() > 0) {
      err << fmt::format("{}:{}: {}\n", config_path, e.line(), e.what());
    } else {
      err << fmt::format("{}: {}\n", config_path, e.what());
    }
    return kExitConfigError;
  } catch (const ValidationError& e) {
    err << fmt::format("{}: {}\n", config_path, e.what());
    return kExitConfigError;
  }
  const std::filesystem::path dir = out_dir.empty() ? cfg.output_dir : std::filesystem::path(out_dir);

  CommandResult res;
  try {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
    res = commands().at(command)(cfg, dir);
    if (!res.checks.empty()) {
      write_verdicts(dir / "verdicts.csv", res.checks);
      res.artifacts.push_back(dir / "verdicts.csv");
    }
    const std::string summary = summarize(res.checks) + res.notes;
    write_text(dir / "summary.txt", summary);
    out << summary;
  } catch (const Error& e) {
    err << fmt::format("{} failed: {}\n", command, e.what());
    return kExitRuntimeError;
  } catch (const std::exception& e) {
    err << fmt::format("{} failed: {}\n", command, e.what());
    return kExitRuntimeError;
  }
  return res.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace pfront::cli
