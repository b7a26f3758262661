#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("disqaam_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int invoke(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " \"" DISQAAM_CLI_PATH "\" " + args + " > \"" + (dir_ / "stdout.txt").string() +
                            "\" 2> \"" + (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path write(const std::string& name, const std::string& text) const {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path;
  }

  std::string stderr_text() const {
    std::ifstream in(dir_ / "stderr.txt");
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(CliTest, PresetWritesTracesAndReport) {
  const auto out = dir_ / "out";
  EXPECT_EQ(invoke("preset fig2b --seeds 2 --out \"" + out.string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out / "fig2b_seed0.csv"));
  EXPECT_TRUE(fs::exists(out / "fig2b_seed1.csv"));
  EXPECT_FALSE(fs::exists(out / "fig2b_seed2.csv"));
  EXPECT_TRUE(fs::exists(out / "fig2b_bounds.json"));
}

TEST_F(CliTest, EnvironmentOverridesOutputDirectory) {
  const auto out = dir_ / "env_out";
  const auto config = write("tiny.json", R"({"name": "tiny", "n": 2, "roles": ["honest", "honest"],
    "objective": {"name": "quadratic"}, "quantizer": {"bits": 4, "interval_length": 1}, "alpha": 0.7,
    "iterations": 5, "output": {"dir": "ignored"}})");
  EXPECT_EQ(invoke("run \"" + config.string() + "\"", "DISQAAM_OUT_DIR=\"" + out.string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out / "tiny_seed0.csv"));
  EXPECT_TRUE(fs::exists(out / "tiny_bounds.json"));
}

TEST_F(CliTest, InvalidConfigExitsTwoWithFieldPath) {
  const auto config = write("bad.json", R"({"n": 2, "roles": ["honest"], "alpha": 0.5, "iterations": 3})");
  EXPECT_EQ(invoke("run \"" + config.string() + "\""), 2);
  EXPECT_NE(stderr_text().find("roles"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke(""), 2);
  EXPECT_EQ(invoke("preset fig9"), 2);
  EXPECT_EQ(invoke("run \"" + (dir_ / "missing.json").string() + "\""), 2);
  EXPECT_EQ(invoke("preset fig2a --seeds 0"), 2);
}

TEST_F(CliTest, SweepWritesSummary) {
  const auto grid = write("grid.json", R"({"preset": "fig2a", "grid": {"bits": [1, 3], "seeds": [0, 1]}})");
  const auto out = dir_ / "sweep";
  EXPECT_EQ(invoke("sweep \"" + grid.string() + "\" --out \"" + out.string() + "\""), 0);
  std::ifstream in(out / "fig2a_sweep.csv");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 3);
}

TEST_F(CliTest, EmptySweepExitsTwo) {
  const auto grid = write("grid.json", R"({"preset": "fig2a", "grid": {}})");
  EXPECT_EQ(invoke("sweep \"" + grid.string() + "\""), 2);
}

TEST_F(CliTest, StrictPresetsPass) {
  const auto out = dir_ / "strict";
  EXPECT_EQ(invoke("preset fig2c --seeds 3 --strict --out \"" + out.string() + "\""), 0);
}

}  // namespace
