#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "radcal/io.hpp"

namespace radcal {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radcal_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI with stdout/stderr captured to files in the test directory.
  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + RADCAL_CLI_PATH + "\" " + args + " >\"" +
                            path("stdout.txt") + "\" 2>\"" + path("stderr.txt") + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return read_text_file(path("stdout.txt")); }
  std::string err() const { return read_text_file(path("stderr.txt")); }

  fs::path dir_;
};

TEST_F(Cli, SynthCalibrateAndCurve) {
  ASSERT_EQ(run("synth --out " + path("data.json") + " --seed 3"), 0) << err();
  ASSERT_EQ(run("calibrate --data " + path("data.json") + " --model piecewise --out " +
                path("result.json")),
            0)
      << err();
  EXPECT_NE(out().find("piecewise  J="), std::string::npos) << out();
  const CalibrationResult r = load_result(path("result.json"));
  EXPECT_EQ(r.family, ModelFamily::Piecewise);
  EXPECT_EQ(r.coefficients.size(), 3u);
  EXPECT_LT(r.objective.J, r.objective.initial_J);

  ASSERT_EQ(run("curve --result " + path("result.json") + " --samples 11"), 0) << err();
  std::istringstream lines(out());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "r,f");
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
  }
  EXPECT_EQ(count, 11);
}

TEST_F(Cli, CalibrateIsDeterministic) {
  ASSERT_EQ(run("synth --out " + path("data.json") + " --seed 5"), 0) << err();
  ASSERT_EQ(run("calibrate --data " + path("data.json") + " --out " + path("a.json")), 0);
  ASSERT_EQ(run("calibrate --data " + path("data.json") + " --out " + path("b.json")), 0);
  EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("b.json")));
  ASSERT_EQ(run("synth --out " + path("data2.json") + " --seed 5"), 0);
  EXPECT_EQ(read_text_file(path("data.json")), read_text_file(path("data2.json")));
}

TEST_F(Cli, CompareWritesCsv) {
  ASSERT_EQ(run("synth --out " + path("data.json")), 0) << err();
  ASSERT_EQ(run("compare --data " + path("data.json") + " --out " + path("table.csv")), 0) << err();
  const std::string csv = read_text_file(path("table.csv"));
  EXPECT_EQ(csv.rfind("model,J,c1,c2,c3,alpha,gamma,u0,beta,v0,iterations,status\n", 0), 0u);
  EXPECT_NE(csv.find("\npoly-even2,"), std::string::npos);
  EXPECT_NE(csv.find("\npoly-quad,"), std::string::npos);
  EXPECT_NE(csv.find("\npiecewise,"), std::string::npos);
  EXPECT_NE(out().find("alpha"), std::string::npos);
}

TEST_F(Cli, UndistortPoints) {
  ASSERT_EQ(run("synth --out " + path("data.json") + " --model poly-even2"), 0) << err();
  ASSERT_EQ(run("calibrate --data " + path("data.json") + " --model poly-even2 --out " +
                path("even.json")),
            0);
  write_text_file(path("points.json"), R"({"points": [[100, 100], [303.9, 206.6]]})");
  EXPECT_EQ(run("undistort-points --result " + path("even.json") + " --points " +
                path("points.json") + " --out " + path("fixed.json")),
            2);
  EXPECT_NE(err().find("UnsupportedModel"), std::string::npos) << err();
  EXPECT_EQ(run("undistort-points --approx --result " + path("even.json") + " --points " +
                path("points.json") + " --out " + path("fixed.json")),
            0);
  EXPECT_EQ(load_points(path("fixed.json")).size(), 2u);

  ASSERT_EQ(run("calibrate --data " + path("data.json") + " --model poly-quad --out " +
                path("quad.json")),
            0);
  EXPECT_EQ(run("undistort-points --result " + path("quad.json") + " --points " +
                path("points.json") + " --out " + path("fixed.json")),
            0)
      << err();
}

TEST_F(Cli, InputErrorsExitWithTwo) {
  ASSERT_EQ(run("synth --out " + path("two.json") + " --views 2"), 2);
  ASSERT_EQ(run("synth --out " + path("data.json")), 0);
  CalibrationDataset d = load_dataset(path("data.json"));
  d.images.resize(2);
  save_dataset(path("two.json"), d);
  EXPECT_EQ(run("calibrate --data " + path("two.json")), 2);
  EXPECT_NE(err().find("InsufficientViews"), std::string::npos) << err();

  write_text_file(path("broken.json"), "{ \"model_points\": [[0, 0]],\n");
  EXPECT_EQ(run("calibrate --data " + path("broken.json")), 2);
  EXPECT_NE(err().find("line"), std::string::npos) << err();

  EXPECT_EQ(run("calibrate --data " + path("missing.json")), 2);
  EXPECT_EQ(run("calibrate --data " + path("data.json") + " --model poly-cubic"), 2);
  EXPECT_EQ(run("calibrate"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("curve --result " + path("data.json")), 2);
}

TEST_F(Cli, HelpExitsCleanly) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_NE(out().find("calibrate"), std::string::npos);
}

}  // namespace
}  // namespace radcal
