// Copyright 2026 The scsearch Authors
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


#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace scsearch::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "scsearch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("scsearch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    spit(dir_ / "supercon.csv",
         "formula,tc_K,year\nNb,9.2,1930\nNbN,16,1941\nMgB2,39,2001\nNb3Sn,18,1954\nPb,7.2,1913\n"
         "V3Si,17,1953\nNb,9.3,1930\nXx2,5,1990\nLaFeAsO,26,2008\n");
    spit(dir_ / "cod.csv", "formula,year\nNaCl,1990\nKBr,1990\nSiO2,1990\nMgB2,2001\nCaF2,1990\n");
    spit(dir_ / "small.json",
         R"({"model": {"conv_layers": 1, "channels": 2, "dense_hidden": 0},
             "train": {"epochs": 3, "batch_size": 2, "learning_rate": 0.01}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(CliTest, ParsePrintsFractions) {
  Result r = invoke({"parse", "--formula", "H2He3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "H:0.4 He:0.6\n");
  r = invoke({"parse", "--formula", "TiO2", "--digits", "6"});
  EXPECT_EQ(r.out, "O:0.666667 Ti:0.333333\n");
  r = invoke({"parse", "--formula", "CuSO4·5H2O", "--interpunct"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("H:"), std::string::npos);
}

TEST_F(CliTest, ParseErrorsAreDataErrors) {
  Result r = invoke({"parse", "--formula", "Xx2"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("UnknownElement"), std::string::npos);
  EXPECT_EQ(invoke({"parse", "--formula", "La2-xSrxCuO4"}).code, kExitData);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  const Result r = invoke({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("dataset-build"), std::string::npos);
  EXPECT_EQ(invoke({"parse"}).code, kExitUsage);
  EXPECT_EQ(invoke({"train", "--data", (dir_ / "supercon.csv").string()}).code, kExitUsage);
}

TEST_F(CliTest, EncodeWritesTensorAndGeometry) {
  Result r = invoke({"encode", "--formula", "Nb"});
  ASSERT_EQ(r.code, 0);
  std::size_t values = 0, nonzero = 0;
  std::stringstream s(r.out);
  for (std::string line; std::getline(s, line);) {
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      ++values;
      nonzero += std::stod(cell) != 0.0;
    }
  }
  EXPECT_EQ(values, 896u);
  EXPECT_EQ(nonzero, 1u);
  r = invoke({"--out", dir_.string(), "encode", "--geometry"});
  ASSERT_EQ(r.code, 0);
  const std::string geometry = slurp(dir_ / "geometry.csv");
  EXPECT_NE(geometry.find("Fe,26,D,4,22"), std::string::npos);
  EXPECT_NE(geometry.find("He,2,S,1,32"), std::string::npos);
  EXPECT_EQ(manifest(dir_)["status"], "completed");
}

TEST_F(CliTest, DatasetBuildCountsAndFingerprints) {
  const Result r = invoke({"--out", (dir_ / "built").string(), "dataset-build", "--supercon",
                           (dir_ / "supercon.csv").string(), "--cod", (dir_ / "cod.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = manifest(dir_ / "built");
  EXPECT_EQ(m["status"], "completed");
  EXPECT_EQ(m["command"], "dataset-build");
  EXPECT_EQ(m["datasets"]["supercon"]["fingerprint"].get<std::string>().rfind("fnv1a64:", 0), 0u);
  const std::string negatives = slurp(dir_ / "built" / "negatives.csv");
  EXPECT_EQ(negatives.find("MgB2"), std::string::npos);
  EXPECT_NE(negatives.find("NaCl"), std::string::npos);
  EXPECT_NE(slurp(dir_ / "built" / "flagged.csv").find("Xx2"), std::string::npos);
}

TEST_F(CliTest, TrainAndEvaluateAreReproducible) {
  const auto train_into = [&](const std::string& name) {
    return invoke({"--out", (dir_ / name).string(), "--config", (dir_ / "small.json").string(), "--seed", "4", "train",
                   "--data", (dir_ / "supercon.csv").string()});
  };
  ASSERT_EQ(train_into("a").code, 0) << train_into("a").err;
  ASSERT_EQ(train_into("b").code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "model.ckpt"), slurp(dir_ / "b" / "model.ckpt"));
  EXPECT_EQ(slurp(dir_ / "a" / "loss_trace.csv"), slurp(dir_ / "b" / "loss_trace.csv"));
  EXPECT_EQ(manifest(dir_ / "a")["seed"], 4);
  EXPECT_EQ(manifest(dir_ / "a")["outputs"]["model.ckpt"], manifest(dir_ / "b")["outputs"]["model.ckpt"]);

  const Result r = invoke({"--out", (dir_ / "eval").string(), "evaluate", "--model", (dir_ / "a" / "model.ckpt").string(),
                           "--data", (dir_ / "supercon.csv").string(), "--thresholds", "0,10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir_ / "eval" / "report.csv").rfind("label,threshold_K,tp,fp,tn,fn", 0), 0u);
  EXPECT_NE(slurp(dir_ / "eval" / "predictions.csv").find("MgB2"), std::string::npos);
}

TEST_F(CliTest, EnvironmentSuppliesGlobals) {
  ::setenv("SCSEARCH_OUT", (dir_ / "env").string().c_str(), 1);
  ::setenv("SCSEARCH_CONFIG", (dir_ / "small.json").string().c_str(), 1);
  const Result r = invoke({"train", "--data", (dir_ / "supercon.csv").string()});
  ::unsetenv("SCSEARCH_OUT");
  ::unsetenv("SCSEARCH_CONFIG");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "env" / "model.ckpt"));
}

TEST_F(CliTest, ManifestRecordsFailure) {
  spit(dir_ / "bad.csv", "formula,tc_K,year\nXx2,5,1990\nQq,3,1990\n");
  Result r = invoke({"--out", (dir_ / "fail").string(), "--config", (dir_ / "small.json").string(), "train", "--data",
                     (dir_ / "bad.csv").string()});
  EXPECT_EQ(r.code, kExitData);
  auto m = manifest(dir_ / "fail");
  EXPECT_EQ(m["status"], "failed");
  EXPECT_NE(m["error"].get<std::string>().find("EmptyDataset"), std::string::npos);

  spit(dir_ / "diverge.json",
       R"({"model": {"conv_layers": 1, "channels": 2}, "train": {"epochs": 5, "learning_rate": 1e300, "precision": "FLOAT64"}})");
  r = invoke({"--out", (dir_ / "nan").string(), "--config", (dir_ / "diverge.json").string(), "train", "--data",
              (dir_ / "supercon.csv").string()});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_EQ(manifest(dir_ / "nan")["status"], "failed");

  spit(dir_ / "typo.json", R"({"model": {"layers": 3}})");
  r = invoke({"--out", (dir_ / "typo").string(), "--config", (dir_ / "typo.json").string(), "train", "--data",
              (dir_ / "supercon.csv").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("UnknownField"), std::string::npos);
}

}  // namespace
}  // namespace scsearch::cli
