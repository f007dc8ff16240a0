#include <gtest/gtest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "citgen/cli.hpp"
#include "test_support.hpp"

namespace citgen {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun runCli(std::vector<std::string> args) {
  args.insert(args.begin(), "citgen");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("citgen_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, SampleModelVerifiedJson) {
  const auto path = write("sample.cit", testing::kSampleModelText);
  const auto run = runCli({path, "-t", "2", "--seed", "42", "--rounds", "20", "--verify"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_NE(run.err.find("missing: 0, invalid: 0"), std::string::npos) << run.err;
  const auto doc = nlohmann::json::parse(run.out);
  EXPECT_EQ(doc["parameters"], nlohmann::json({"color", "shape", "state", "material", "coating"}));
  EXPECT_EQ(doc["strength"], 2);
  EXPECT_EQ(doc["seed"], 42u);
  EXPECT_EQ(doc["size"], doc["tests"].size());
  EXPECT_EQ(doc["stats"]["coverableTuples"], 65);
  EXPECT_EQ(doc["stats"]["improveIterations"], 20);
  EXPECT_LE(doc["size"].get<int>(), doc["stats"]["initialSize"].get<int>());
  EXPECT_TRUE(doc["verification"]["passed"].get<bool>());
  for (const auto& row : doc["tests"]) {
    EXPECT_NE(row[0], "black");
  }
  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(run.out);
  for (const auto& [key, value] : ordered.items()) {
    keys.push_back(key);
  }
  EXPECT_EQ(keys, (std::vector<std::string>{"parameters", "strength", "seed", "size", "tests", "stats", "verification"}));
}

TEST_F(CliTest, DeterministicOutput) {
  const auto path = write("sample.cit", testing::kSampleModelText);
  const auto a = runCli({path, "--seed", "7", "--rounds", "50", "-m", "600"});
  const auto b = runCli({path, "--seed", "7", "--rounds", "50", "-m", "600"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CsvAndTextFormats) {
  const auto path = write("m.cit", "PARAMETERS\nos[linux, \"bsd\"]\narch[x86, arm]\n");
  const auto csv = runCli({path, "--seed", "1", "--rounds", "5", "-f", "csv"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, 9), "os,arch\r\n");
  EXPECT_NE(csv.out.find("\"\"\"bsd\"\"\""), std::string::npos) << csv.out;
  EXPECT_NE(csv.err.find("seed: 1"), std::string::npos);
  const auto text = runCli({path, "--seed", "1", "--rounds", "5", "-f", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("seed: 1"), std::string::npos);
  EXPECT_NE(text.out.find("tests: 4"), std::string::npos) << text.out;
}

TEST_F(CliTest, SeedIsEchoedWhenDrawn) {
  const auto path = write("m.cit", "PARAMETERS\np[a, b]\nq[x, y]\n");
  const auto run = runCli({path, "--rounds", "2"});
  ASSERT_EQ(run.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(run.out)["seed"].is_number_unsigned());
}

TEST_F(CliTest, OutputFileAndDebugDumps) {
  const auto path = write("sample.cit", testing::kSampleModelText);
  const auto out = (dir_ / "suite.json").string();
  const auto run = runCli({path, "--seed", "3", "--rounds", "3", "-o", out, "--dump-tuples", "--dump-matrix"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(run.out.empty());
  EXPECT_EQ(nlohmann::json::parse(testing::readFile(out))["seed"], 3);
  EXPECT_NE(run.err.find("{{color=black},"), std::string::npos);
  EXPECT_NE(run.err.find("(0,4)    -1    -1    -1     0    -1    -1     0     0    -1"), std::string::npos) << run.err;
}

TEST_F(CliTest, ParseErrorsExitOne) {
  const auto bad = write("bad.cit", "PARAMETERS\ncolor[red, blue]\nCONSTRAINTS\ncolor != green\n");
  const auto run = runCli({bad, "--rounds", "1"});
  EXPECT_EQ(run.code, 1);
  EXPECT_NE(run.err.find(":4: error: unknown value green"), std::string::npos) << run.err;

  const auto five = write("sample.cit", testing::kSampleModelText);
  const auto strength = runCli({five, "-t", "6", "--rounds", "1"});
  EXPECT_EQ(strength.code, 1);
  EXPECT_NE(strength.err.find("strength exceeds parameter count"), std::string::npos) << strength.err;

  EXPECT_EQ(runCli({five, "--rounds", "1", "--time-ms", "10"}).code, 1);
  EXPECT_EQ(runCli({five, "-f", "xml"}).code, 1);
  EXPECT_EQ(runCli({}).code, 1);
}

TEST_F(CliTest, UnsatisfiableExitsTwo) {
  const auto path = write("unsat.cit", "PARAMETERS\nmode[fast, safe]\nlevel[1]\nCONSTRAINTS\nmode != fast\nmode != safe || level != 1\n");
  const auto run = runCli({path, "--rounds", "1"});
  EXPECT_EQ(run.code, 2);
  EXPECT_NE(run.err.find("unsatisfiable"), std::string::npos) << run.err;
  EXPECT_NE(run.err.find("'mode'"), std::string::npos) << run.err;
}

TEST_F(CliTest, IoFailuresExitThree) {
  EXPECT_EQ(runCli({(dir_ / "missing.cit").string(), "--rounds", "1"}).code, 3);
  const auto path = write("m.cit", "PARAMETERS\np[a]\n");
  EXPECT_EQ(runCli({path, "-t", "1", "--rounds", "1", "-o", (dir_ / "no" / "such" / "dir.json").string()}).code, 3);
}

TEST_F(CliTest, VerifyFallsBackToRowsWhenTooLarge) {
  const auto path = write("sample.cit", testing::kSampleModelText);
  const auto run = runCli({path, "--seed", "1", "--rounds", "1", "--verify", "--enumeration-cap", "10"});
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.err.find("warning:"), std::string::npos);
  EXPECT_NE(run.err.find("coverage: not checked"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto run = runCli({"--help"});
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.out.find("--rounds"), std::string::npos);
}

}  // namespace
}  // namespace citgen
