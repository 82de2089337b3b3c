// Copyright 2026 The Gaitsense Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "gaitsense/config.h"
#include "gaitsense/csv.h"
#include "gaitsense/errors.h"
#include "gaitsense/log_io.h"
#include "gaitsense/report.h"
#include "gaitsense/simulator.h"

namespace gaitsense {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("gaitsense_io_" + std::to_string(::testing::UnitTest::GetInstance()
                                                   ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(CsvTest, NumbersRoundTrip) {
  std::string s;
  AppendNumber(s, 0.1);
  EXPECT_EQ(s, "0.1");
  s.clear();
  AppendNumber(s, 1.0 / 3.0, 9);
  EXPECT_EQ(s, "0.333333333");
  s.clear();
  AppendNumber(s, std::nan(""));
  EXPECT_EQ(s, "nan");
  double v = 0;
  EXPECT_TRUE(ParseNumber("2.5e-3", v));
  EXPECT_DOUBLE_EQ(v, 2.5e-3);
  EXPECT_FALSE(ParseNumber("2.5x", v));
  int i = 0;
  EXPECT_FALSE(ParseNumber("3.5", i));
  const auto f = SplitCsv("a,,b");
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[1], "");
}

TEST(ConfigTest, RoundTripKeepsHash) {
  Config c = DefaultConfig();
  c.scenario.seed = 42;
  c.scenario.crawl.penetration_speed = 0.07;
  c.analysis.rupture.prominence = 6.0;
  const Config back = ConfigFromJson(ConfigToJson(c));
  EXPECT_EQ(ConfigHash(back), ConfigHash(c));
  EXPECT_EQ(back.scenario.seed, 42u);
  EXPECT_DOUBLE_EQ(back.scenario.crawl.penetration_speed, 0.07);
  EXPECT_NE(ConfigHash(back), ConfigHash(DefaultConfig()));
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  nlohmann::json j = ConfigToJson(DefaultConfig());
  j["crawl"]["penetration_sped"] = 0.08;
  EXPECT_THROW(ConfigFromJson(j), ConfigError);
  j = ConfigToJson(DefaultConfig());
  j["trot"]["stride_frequency"] = 9.0;
  EXPECT_THROW(ConfigFromJson(j), ConfigError);
  j = ConfigToJson(DefaultConfig());
  j["strides"] = "many";
  EXPECT_THROW(ConfigFromJson(j), ConfigError);
}

TEST(ConfigTest, PresetNameExpandsUnits) {
  nlohmann::json j = {{"transect", {{"preset", "exp2-crust"}}}};
  const Config c = ConfigFromJson(j);
  EXPECT_EQ(c.scenario.transect.units.size(), 5u);
  Config d = DefaultConfig();
  EXPECT_THROW(SetPreset(d, "atlantis"), ConfigError);
}

TEST(ConfigTest, MissingFileThrows) {
  EXPECT_THROW(LoadConfig("/nonexistent/config.json"), ConfigError);
}

TEST(ConfigTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

class LogIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Scenario s;
    s.gait = GaitKind::kTrot;
    s.strides = 3;
    log_ = RunTrial(s, 0);
    std::ofstream t(dir_.path() / "t.csv"), st(dir_.path() / "s.csv");
    WriteTickLog(log_, t);
    WriteStepLog(log_, st);
  }
  TempDir dir_;
  TrialLog log_;
};

TEST_F(LogIoTest, RoundTripPreservesStructure) {
  const TrialLog back = ReadTrialLog(dir_.path() / "t.csv",
                                     dir_.path() / "s.csv", GaitKind::kTrot,
                                     log_.seed, 0);
  ASSERT_EQ(back.num_ticks(), log_.num_ticks());
  ASSERT_EQ(back.steps.size(), log_.steps.size());
  EXPECT_EQ(back.steps[3].begin, log_.steps[3].begin);
  const auto& a = log_.leg(Leg::kRR)[321];
  const auto& b = back.leg(Leg::kRR)[321];
  EXPECT_NEAR(b.fz_est, a.fz_est, 1e-7 * std::max(1.0, std::abs(a.fz_est)));
  EXPECT_EQ(b.phase, a.phase);
}

TEST_F(LogIoTest, TruncatedLogThrows) {
  const fs::path t = dir_.path() / "t.csv";
  fs::resize_file(t, fs::file_size(t) - 7);
  EXPECT_THROW(ReadTrialLog(t, dir_.path() / "s.csv", GaitKind::kTrot,
                            log_.seed, 0),
               LogFormatError);
}

TEST_F(LogIoTest, BadHeaderThrows) {
  std::ofstream(dir_.path() / "bad.csv") << "t_ms,leg\n0,LF\n";
  EXPECT_THROW(ReadTrialLog(dir_.path() / "bad.csv", dir_.path() / "s.csv",
                            GaitKind::kTrot, log_.seed, 0),
               LogFormatError);
}

TEST(ReportTest, EmptyInputThrows) {
  EXPECT_THROW(BuildReport({}), EmptyReport);
}

TEST(EstimatesIoTest, RoundTrip) {
  TempDir dir;
  EstimateRow row;
  row.trial = 1;
  row.step = 7;
  row.gait = GaitKind::kCrawl;
  row.tu_id = 2;
  row.k = 340.0;
  row.status = "ok";
  row.n_samples = 200;
  row.contact_tick = 1234;
  const EstimateRow rows[] = {row};
  {
    std::ofstream out(dir.path() / "e.csv");
    WriteEstimates(out, "abc123", rows);
  }
  const EstimatesFile f = ReadEstimates(dir.path() / "e.csv");
  EXPECT_EQ(f.config_hash, "abc123");
  ASSERT_EQ(f.rows.size(), 1u);
  EXPECT_EQ(f.rows[0].step, 7);
  EXPECT_DOUBLE_EQ(f.rows[0].k, 340.0);
  EXPECT_TRUE(f.rows[0].has_estimate());
  std::ofstream(dir.path() / "junk.csv") << "not,an,estimates,file\n";
  EXPECT_THROW(ReadEstimates(dir.path() / "junk.csv"), LogFormatError);
}

}  // namespace
}  // namespace gaitsense
