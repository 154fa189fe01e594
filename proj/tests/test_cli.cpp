#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status;
  std::string output;
};

CliRun run(const std::string& args) {
  static int counter = 0;
  const fs::path log = fs::temp_directory_path() /
                       ("sectorlab_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".log");
  const std::string cmd = std::string(SECTORLAB_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::stringstream ss;
  {
    std::ifstream in(log);
    ss << in.rdbuf();
  }
  fs::remove(log);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("sectorlab_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, VerifyIsDeterministic) {
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  ASSERT_EQ(run("verify --checks F1 --trials 10 --seed 7 --out " + a.string()).status, 0);
  ASSERT_EQ(run("verify --checks F1 --trials 10 --seed 7 --out " + b.string()).status, 0);
  const std::string csv = slurp(a / "slack.csv");
  EXPECT_EQ(csv, slurp(b / "slack.csv"));
  EXPECT_EQ(csv.rfind("check,seed,n,theta,m,M,params,slack,ratio\n", 0), 0u);
  const auto report = nlohmann::json::parse(slurp(a / "report.json"));
  EXPECT_EQ(report["schema"], "sectorlab.report/1");
  EXPECT_EQ(report["checks"][0]["check"], "F1");
  EXPECT_EQ(report["checks"][0]["trials"], 360);
  EXPECT_EQ(report["checks"][0]["failures"], 0);
}

TEST(Cli, UnknownCheckIsAConfigurationError) {
  const fs::path d = fresh_dir("bogus");
  const CliRun r = run("verify --checks BOGUS --seed 1 --out " + d.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("BOGUS"), std::string::npos);
  EXPECT_FALSE(fs::exists(d));
}

TEST(Cli, SeedIsRequired) {
  const fs::path d = fresh_dir("noseed");
  EXPECT_EQ(run("verify --checks F1 --out " + d.string()).status, 2);
  EXPECT_FALSE(fs::exists(d));
}

TEST(Cli, FailuresExitOneAndWriteReplayableWitnesses) {
  const fs::path d = fresh_dir("fail");
  const CliRun r = run("verify --checks F1 --dims 3 --thetas 1.2 --bounds 1:2 --trials 20 --drop-sec --seed 3 --out " +
                    d.string());
  EXPECT_EQ(r.status, 1);
  int witnesses = 0;
  fs::path one;
  for (const auto& e : fs::directory_iterator(d)) {
    if (e.path().filename().string().rfind("witness-F1-", 0) == 0) {
      ++witnesses;
      one = e.path();
    }
  }
  ASSERT_GT(witnesses, 0);
  // Replayed without the dropped factors the same inputs pass.
  const CliRun replay = run("replay " + one.string());
  EXPECT_EQ(replay.status, 0) << replay.output;
}

TEST(Cli, RangeOfDiagonalMatrix) {
  const fs::path d = fresh_dir("range");
  fs::create_directories(d);
  std::ofstream(d / "m.txt") << "2\n1 0\n0 2\n";
  const CliRun r = run("range " + (d / "m.txt").string() + " --resolution 64 --out " + (d / "b.csv").string());
  ASSERT_EQ(r.status, 0) << r.output;
  std::istringstream csv(slurp(d / "b.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "phi,re,im");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    double phi, re, im;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &phi, &re, &im), 3);
    EXPECT_LE(std::abs(im), 1e-12);
    EXPECT_GE(re, 1 - 1e-12);
    EXPECT_LE(re, 2 + 1e-12);
  }
  EXPECT_EQ(rows, 64);
}

TEST(Cli, RangeReportsParseErrorPosition) {
  const fs::path d = fresh_dir("range_bad");
  fs::create_directories(d);
  std::ofstream(d / "m.txt") << "2\n1+1j 0\n0 abc\n";
  const CliRun r = run("range " + (d / "m.txt").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("line 3, column 3"), std::string::npos) << r.output;
}

TEST(Cli, MutateWithUnitFactorFindsNothing) {
  const fs::path d = fresh_dir("mutate");
  ASSERT_EQ(run("mutate --checks F1,M2 --trials 3 --seed 5 --factor 1 --out " + d.string()).status, 0);
  const auto j = nlohmann::json::parse(slurp(d / "mutation.json"));
  EXPECT_EQ(j["rows"][0]["violations"], 0);
}

TEST(Cli, TightnessOnScalarEqualityConfiguration) {
  const fs::path d = fresh_dir("tight");
  ASSERT_EQ(run("tightness --checks M2 --dims 1 --thetas 0 --bounds 1:4 --p 1 --trials 80 --seed 1 --out " +
                d.string())
                .status,
            0);
  const auto j = nlohmann::json::parse(slurp(d / "tightness.json"));
  ASSERT_EQ(j["rows"].size(), 1u);
  EXPECT_NEAR(j["rows"][0]["empirical_max_ratio"].get<double>(), 1.5625, 1e-12);
}
