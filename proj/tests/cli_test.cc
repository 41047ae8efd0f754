// Copyright 2026 The VAW2 Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the vaw2_bench binary as a subprocess.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "vaw2/data.h"
#include "vaw2/experiment.h"

namespace vaw2 {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result Bench(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " VAW2_BENCH_PATH " " + args + " 2>&1";
  Result result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  while (size_t n = fread(buffer, 1, sizeof(buffer), pipe)) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "vaw2_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }

  fs::path dir_;
};

TEST_F(CliTest, DictionaryPrint) {
  const auto r = Bench("dictionary --print");
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  EXPECT_EQ(line, "kernel_index,family,bandwidth");
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 76);
  EXPECT_NE(r.out.find("\n0,gaussian,0.01\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n75,laplacian,"), std::string::npos);
}

TEST_F(CliTest, Ar4WritesCsv) {
  const auto path = dir_ / "ar4.csv";
  const auto r = Bench("ar4 --horizon 50 --seed 3 --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto data = LoadCsv(path);
  Ar4Config config;
  config.horizon = 50;
  config.seed = 3;
  const auto expected = GenerateAr4(config);
  EXPECT_EQ(data.features, expected.features);
  EXPECT_EQ(data.labels, expected.labels);
}

TEST_F(CliTest, RunWithOverridesAndEnvOutputDir) {
  Write("toy.csv", "1,2,3\n2,3,1\n0,1,2\n4,1,0\n3,3,3\n1,0,2\n");
  const auto config = Write("c.yaml",
                            "datasets: [{name: toy, path: toy.csv}]\n"
                            "algorithms: [{name: EWA, meta: ewa, truncate: true}]\n"
                            "m: 3\n"
                            "dictionary: {gaussian: {values: [1.0]}}\n");
  const auto env_dir = dir_ / "from_env";
  auto r = Bench("run " + config + " --num-runs 2 --no-weights", "VAW2_OUT_DIR=" + env_dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(env_dir / "results.csv"));
  EXPECT_FALSE(fs::exists(env_dir / "weights"));
  EXPECT_NE(r.out.find("EWA"), std::string::npos);

  const auto flag_dir = dir_ / "from_flag";
  r = Bench("run " + config + " --out-dir " + flag_dir.string(),
            "VAW2_OUT_DIR=" + env_dir.string() + "_unused");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(flag_dir / "weights" / "toy__ewa__run0.csv"));
  EXPECT_FALSE(fs::exists(env_dir.string() + "_unused"));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Bench("").code, 1);
  EXPECT_EQ(Bench("frobnicate").code, 1);
  EXPECT_EQ(Bench("run " + (dir_ / "missing.yaml").string()).code, 1);
  EXPECT_EQ(Bench("run " + Write("bad.yaml", "num_runs: 0\ndatasets: [{name: a, path: a.csv}]\n"))
                .code,
            1);
  EXPECT_EQ(Bench("run " + Write("unk.yaml", "colour: blue\n")).code, 1);
  const auto missing_data = Write("nodata.yaml",
                                  "datasets: [{name: a, path: nope.csv}]\n"
                                  "output_dir: out\n");
  const auto r = Bench("run " + missing_data);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("nope.csv"), std::string::npos);
  EXPECT_EQ(Bench("ar4 --horizon 2 --out " + (dir_ / "x.csv").string()).code, 1);
  EXPECT_EQ(Bench("--help").code, 0);
}

}  // namespace
}  // namespace vaw2
