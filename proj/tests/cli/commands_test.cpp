#include <atomic>
#include <cstdlib>
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

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pfront_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path config(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }

  int run(const std::string& command, const fs::path& cfg, const fs::path& out) {
    const std::string cfg_s = cfg.string(), out_s = out.string();
    const std::vector<const char*> argv = {"pfront", command.c_str(), "--config", cfg_s.c_str(), "--out",
                                           out_s.c_str()};
    stdout_.str("");
    stderr_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), stdout_, stderr_);
  }

  static std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream stdout_, stderr_;
};

const char* kTravelingWave =
    "p = 3\nalpha = 2\nx_left = -1\nx_right = 2\nn = 300\nt_end = 0.25\nleft_trace = exact\ncheck = exact\n";

TEST_F(CliTest, ClassifyWritesRegion) {
  EXPECT_EQ(run("classify", config("a.cfg", "p = 3\nb = 1\nbeta = 0.5\nalpha = 4\n"), dir_ / "out"), kExitOk);
  EXPECT_NE(slurp(dir_ / "out" / "classify.csv").find("region,R3_Shrinking\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "summary.txt"));
}

TEST_F(CliTest, ConstantsForBorderlineCase) {
  EXPECT_EQ(run("constants", config("c.cfg", "p = 3\nb = 1\nbeta = 0.5\nalpha = 2\nC = 0.2\n"), dir_ / "out"),
            kExitOk);
  const std::string csv = slurp(dir_ / "out" / "constants.csv");
  EXPECT_NE(csv.find("c_star,0.25\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("c_bar,0.027777777777777776\n"), std::string::npos) << csv;
}

TEST_F(CliTest, WaitingConfigurationPasses) {
  const auto cfg = config("w.cfg", "p = 3\nalpha = 3\nC = 1/36\nx_left = -1\nx_right = 1\nn = 400\nt_end = 0.5\n");
  EXPECT_EQ(run("simulate", cfg, dir_ / "out"), kExitOk) << stdout_.str() << stderr_.str();
  EXPECT_NE(stdout_.str().find("waiting_excursion"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "verdicts.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "trace.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "trace.svg"));
}

TEST_F(CliTest, ExactSolutionCheckPasses) {
  EXPECT_EQ(run("simulate", config("tw.cfg", kTravelingWave), dir_ / "out"), kExitOk) << stdout_.str();
}

TEST_F(CliTest, FailedCheckExitsOne) {
  const auto cfg = config("tight.cfg", std::string(kTravelingWave) + "tol_nodal = 1e-12\n");
  EXPECT_EQ(run("simulate", cfg, dir_ / "out"), kExitCheckFailed);
  EXPECT_NE(slurp(dir_ / "out" / "verdicts.csv").find("exact_nodal_error"), std::string::npos);
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("classify", config("np.cfg", "alpha = 2\n"), dir_ / "out"), kExitConfigError);
  EXPECT_NE(stderr_.str().find("p required"), std::string::npos);
  EXPECT_EQ(run("classify", config("p2.cfg", "p = 2\n"), dir_ / "out"), kExitConfigError);
  EXPECT_EQ(run("classify", config("bad.cfg", "p = 3\nalpha = x\n"), dir_ / "out"), kExitConfigError);
  EXPECT_NE(stderr_.str().find(":2:"), std::string::npos) << stderr_.str();
  EXPECT_EQ(run("classify", dir_ / "missing.cfg", dir_ / "out"), kExitConfigError);
  EXPECT_EQ(run("explode", config("ok.cfg", "p = 3\n"), dir_ / "out"), kExitConfigError);
}

TEST_F(CliTest, SolverErrorsExitThree) {
  const auto cfg = config("edge.cfg", "p = 3\nalpha = 2\nx_left = -1\nx_right = 0.2\nn = 120\nt_end = 1\n");
  EXPECT_EQ(run("simulate", cfg, dir_ / "out"), kExitRuntimeError);
  EXPECT_NE(stderr_.str().find("InterfaceAtBoundary"), std::string::npos) << stderr_.str();
}

TEST_F(CliTest, UnwritableOutputExitsThree) {
  const auto cfg = config("a.cfg", "p = 3\n");
  std::ofstream(dir_ / "blocker") << "x";
  EXPECT_EQ(run("classify", cfg, dir_ / "blocker" / "sub"), kExitRuntimeError);
  EXPECT_NE(stderr_.str().find("blocker"), std::string::npos);
}

TEST_F(CliTest, IdenticalConfigsGiveIdenticalArtifacts) {
  const auto cfg = config("tw.cfg", kTravelingWave);
  ASSERT_EQ(run("simulate", cfg, dir_ / "one"), kExitOk);
  ASSERT_EQ(run("simulate", cfg, dir_ / "two"), kExitOk);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "one")) {
    const auto name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "two" / name)) << name;
    ++compared;
  }
  EXPECT_GT(compared, 5u);
}

TEST_F(CliTest, ProfileAgainstExplicitWave) {
  EXPECT_EQ(run("profile", config("p.cfg", "p = 3\nalpha = 2\n"), dir_ / "out"), kExitOk) << stdout_.str();
  const std::string csv = slurp(dir_ / "out" / "profile.csv");
  EXPECT_EQ(csv.rfind("xi,f,v\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST_F(CliTest, Figure1PointsAndBoundary) {
  EXPECT_EQ(run("figure1", config("f.cfg", "p = 3\n"), dir_ / "out"), kExitOk) << stdout_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "figure1.svg"));
  const Figure1Map map = figure1_map(3, 8, 3, 160, 60);
  EXPECT_LE(figure1_boundary_error(map), 1.0);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  setenv("PFRONT_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  std::vector<std::atomic<int>> hits(500);
  parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  setenv("PFRONT_THREADS", "junk", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("PFRONT_THREADS");
}

TEST(Figure1, ThreadCountDoesNotChangeTheMap) {
  setenv("PFRONT_THREADS", "1", 1);
  const auto serial = figure1_map(3, 8, 3, 40, 20).regions;
  setenv("PFRONT_THREADS", "4", 1);
  const auto threaded = figure1_map(3, 8, 3, 40, 20).regions;
  unsetenv("PFRONT_THREADS");
  EXPECT_EQ(serial, threaded);
}

TEST(BoundsFor, EnvelopeContainsTheAmplitude) {
  const ProblemParams pr{3, 0, 1, 3, 1.0 / 36};
  const BoundPair pair = bounds_for(pr, 0.05, 0.5);
  EXPECT_TRUE(pair.barriers.empty());
  EXPECT_LT(pair.lower.value(-1.0, 0.1), pair.upper.value(-1.0, 0.1));
}

TEST(ExactFamily, KnownCases) {
  EXPECT_EQ(exact_family({3, 0, 1, 2, 1}), SolutionFamily::TravelingWave);
  EXPECT_EQ(exact_family({3, 1, 0.5, 2, 0.5}), SolutionFamily::BorderlineExplicit);
  EXPECT_EQ(exact_family({3, 1, 0.5, 2, 0.25}), SolutionFamily::StationaryCritical);
  EXPECT_FALSE(exact_family({3, 0, 1, 1, 1}).has_value());
}

}  // namespace
}  // namespace pfront::cli
