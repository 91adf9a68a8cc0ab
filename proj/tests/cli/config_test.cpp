#include <gtest/gtest.h>

#include "pfront/cli/config.hpp"

namespace pfront::cli {
namespace {

TEST(ParseConfig, MinimalFileGetsDefaults) {
  const ExperimentConfig cfg = parse_config("p = 3\nb = 0\nbeta = 1\nalpha = 2\nC = 1\n");
  EXPECT_EQ(cfg.params.p, 3.0);
  EXPECT_EQ(cfg.params.alpha, 2.0);
  EXPECT_EQ(cfg.grid.n_cells, 4800);
  EXPECT_EQ(cfg.t_end, 1.0);
  EXPECT_EQ(cfg.tolerances.exponent, 0.02);
  EXPECT_EQ(cfg.tolerances.coefficient, 0.05);
  EXPECT_EQ(cfg.snapshot_times.size(), 20u);
  EXPECT_DOUBLE_EQ(cfg.snapshot_times.back(), 1.0);
}

TEST(ParseConfig, MissingPIsAParseError) {
  try {
    parse_config("alpha = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "p required");
    EXPECT_EQ(e.line(), 0);
  }
}

TEST(ParseConfig, PEqualTwoIsAValidationError) {
  try {
    parse_config("p = 2\nb = 1\nbeta = 0.5\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RejectedP2);
  }
}

TEST(ParseConfig, CommentsFractionsAndRepeatedSnapshots) {
  const ExperimentConfig cfg = parse_config(
      "# waiting case\n"
      "p = 3   # slow diffusion\n"
      "alpha = 3\n"
      "C = 1/36\n"
      "t_end = 0.5\n"
      "snapshot = 0.4\n"
      "snapshot = 0.1\n"
      "check = waiting\n");
  EXPECT_DOUBLE_EQ(cfg.params.C, 1.0 / 36);
  ASSERT_EQ(cfg.snapshot_times.size(), 2u);
  EXPECT_EQ(cfg.snapshot_times[0], 0.1);
  EXPECT_EQ(cfg.checks, std::vector<std::string>{"waiting"});
}

TEST(ParseConfig, LineNumbersInErrors) {
  auto line_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("p = 3\nalpha 2\n"), 2);
  EXPECT_EQ(line_of("p = 3\n\nalpha = two\n"), 3);
  EXPECT_EQ(line_of("p = 3\np = 4\n"), 2);
  EXPECT_EQ(line_of("p = 3\ncolour = red\n"), 2);
  EXPECT_EQ(line_of("p = 3\ncheck = everything\n"), 2);
}

TEST(ParseConfig, SnapshotsMustLieInsideTheRun) {
  EXPECT_THROW(parse_config("p = 3\nt_end = 0.5\nsnapshot = 0.6\n"), ParseError);
  EXPECT_THROW(parse_config("p = 3\nx_left = 1\n"), ParseError);
}

TEST(ParseConfig, ProbeNeedsBothKeys) {
  EXPECT_THROW(parse_config("p = 3\nprobe = rho\n"), ParseError);
  const auto cfg = parse_config("p = 3\nprobe = ell\nprobe_speed = 1\n");
  ASSERT_TRUE(cfg.probe.has_value());
  EXPECT_EQ(cfg.probe->kind, CurveKind::EllCurve);
}

}  // namespace
}  // namespace pfront::cli
