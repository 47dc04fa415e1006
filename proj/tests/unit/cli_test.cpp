// Copyright 2026 The ueks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the ueks executable as a subprocess.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct run_result {
  int code = -1;
  std::string out;
};

run_result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + UEKS_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  run_result r;
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ueks_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  fs::path dir_;
};

std::string exp_data(int n) {
  // Deterministic, tie-free, roughly exponential.
  std::ostringstream s;
  s.precision(17);
  for (int i = 1; i <= n; ++i) s << -std::log(1.0 - (i - 0.5) / n) * (1 + 1e-3 * (i % 7)) << "\n";
  return s.str();
}

TEST_F(CliTest, TestReportFields) {
  const auto data = write("x.txt", exp_data(60));
  const auto r = run("test --data " + data + " --test desu --reps 500 --seed 3");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  for (auto key : {"statistic", "argmax_t", "p_value", "critical_values", "n", "reps", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["n"], 60);
  EXPECT_EQ(j["critical_values"].size(), 3u);
  EXPECT_GT(j["p_value"].get<double>(), 0.0);
}

TEST_F(CliTest, SidesCombine) {
  const auto data = write("x.txt", exp_data(40));
  auto stat = [&](const char* side) {
    const auto r = run("test --data " + data + " --test angus --reps 200 --side " + side);
    EXPECT_EQ(r.code, 0);
    return json::parse(r.out)["statistic"].get<double>();
  };
  EXPECT_EQ(std::max(stat("plus"), stat("minus")), stat("two-sided"));
}

TEST_F(CliTest, CsvColumnByName) {
  const auto data = write("d.csv", "id,x\n1,0.5\n2,1.5\n3,0.25\n");
  const auto a = run("--format csv test --data " + data + " --column x --test desu --reps 200");
  const auto b = run("--format csv test --data " + data + " --column 1 --test desu --reps 200");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("test --data " + write("bad.txt", "1\n2\nx\n") + " --test desu").code, 2);
  const auto tie = write("tie.txt", "1\n2\n2\n3\n");
  EXPECT_EQ(run("test --data " + tie + " --test desu --reps 200").code, 3);
  EXPECT_EQ(run("test --data " + tie + " --test desu --reps 200 --jitter").code, 0);
  EXPECT_EQ(run("test --data " + tie + " --test nope --reps 200 --jitter").code, 2);
  EXPECT_EQ(run("f0 --a 1.5").code, 2);
  EXPECT_EQ(run("critvals --test desu --n 30 --reps 100 --alpha 0.05").code, 2);
  EXPECT_EQ(run("varfun").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST_F(CliTest, F0Table) {
  const auto r = run("--format csv f0 --a 0.01 --a 0.999");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string header, l1, l2;
  std::getline(in, header);
  std::getline(in, l1);
  std::getline(in, l2);
  EXPECT_EQ(header, "a,f0,ratio_to_2a2");
  const double ratio = std::stod(l1.substr(l1.rfind(',') + 1));
  EXPECT_GE(ratio, 0.99);
  EXPECT_LE(ratio, 1.01);
  const auto f = l2.substr(l2.find(',') + 1);
  EXPECT_TRUE(std::isfinite(std::stod(f.substr(0, f.find(',')))));

  const auto g = json::parse(run("f0 --grid 99").out);
  ASSERT_EQ(g.size(), 99u);
  for (std::size_t i = 1; i < g.size(); ++i)
    EXPECT_GT(g[i]["f0"].get<double>(), g[i - 1]["f0"].get<double>());
}

TEST_F(CliTest, PolyaVarianceFunction) {
  const auto j = json::parse(run("varfun --test polya --lo -3 --hi 3 --points 601").out);
  ASSERT_EQ(j["grid"].size(), 601u);
  double best = -1, at = 0;
  for (const auto& p : j["grid"]) {
    if (p["sigma_sq"].get<double>() > best) {
      best = p["sigma_sq"];
      at = p["t"];
    }
  }
  EXPECT_NEAR(at, 0.0, 0.01);
  EXPECT_NEAR(best, 1.0 / 48, 1e-6);
}

TEST_F(CliTest, DesuWeibullEfficiency) {
  const auto j = json::parse(run("efficiency --test desu --alt weibull").out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["efficiency"].get<double>(), 0.1581, 0.003);
}

TEST_F(CliTest, CritvalsByteIdentical) {
  const std::string args = "critvals --test bh --n 100 --reps 10000 --seed 1 --alpha 0.05 --alpha 0.01";
  const auto a = run(args);
  const auto b = run(args);
  const auto c = run("--threads 3 " + args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(a.out, run(args, "UEKS_THREADS=2").out);
}

TEST_F(CliTest, CacheDirReusesSimulations) {
  const std::string args = "critvals --test desu --n 30 --reps 2000 --seed 4 --cache-dir " + dir_.string();
  const auto a = run(args);
  ASSERT_EQ(a.code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_)) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(run(args).out, a.out);
}

TEST_F(CliTest, FormatsAreAccepted) {
  for (auto f : {"json", "csv", "pretty"}) {
    EXPECT_EQ(run(std::string("--format ") + f + " ldrate --test desu --a 0.3 --n-grid 20,30 --reps 500").code, 0) << f;
  }
  EXPECT_EQ(run("--format xml f0 --a 0.5").code, 2);
}

}  // namespace
