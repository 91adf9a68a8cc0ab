// Every shipped configuration passes under the commands it names in its
// "# Intended for:" line.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pfront/cli/commands.hpp"

namespace pfront::cli {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> shipped_configs() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(PFRONT_CONFIG_DIR)) {
    if (e.path().extension() == ".cfg") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> intended_commands(const fs::path& path) {
  std::ifstream in(path);
  const std::string marker = "# Intended for:";
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(marker, 0) != 0) continue;
    std::vector<std::string> out;
    std::string rest = line.substr(marker.size());
    rest = rest.substr(0, rest.find('.'));
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream words(rest);
    for (std::string w; words >> w;) out.push_back(w);
    return out;
  }
  return {};
}

class ShippedConfig : public ::testing::TestWithParam<std::string> {};

TEST_P(ShippedConfig, PassesItsIntendedCommands) {
  const fs::path cfg = fs::path(PFRONT_CONFIG_DIR) / (GetParam() + ".cfg");
  const auto commands = intended_commands(cfg);
  ASSERT_FALSE(commands.empty()) << cfg;
  const fs::path out_root = fs::temp_directory_path() / ("pfront_shipped_" + GetParam());
  for (const auto& command : commands) {
    const std::string cfg_s = cfg.string(), out_s = (out_root / command).string();
    const std::vector<const char*> argv = {"pfront", command.c_str(), "--config", cfg_s.c_str(), "--out",
                                           out_s.c_str()};
    std::ostringstream out, err;
    EXPECT_EQ(run_cli(static_cast<int>(argv.size()), argv.data(), out, err), kExitOk)
        << command << "\n" << out.str() << err.str();
  }
  fs::remove_all(out_root);
}

INSTANTIATE_TEST_SUITE_P(Configs, ShippedConfig, ::testing::ValuesIn(shipped_configs()),
                         [](const auto& info) { return info.param; });

}  // namespace
}  // namespace pfront::cli
