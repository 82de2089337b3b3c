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

#include "gaitsense/rupture.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gaitsense/errors.h"
#include "gaitsense/rng.h"

namespace gaitsense {
namespace {

// 20 N/s ramp from 5 N with an instantaneous loss of `drop` at 0.75 s.
std::vector<double> RampWithDrop(double drop) {
  std::vector<double> f(1500);
  for (int i = 0; i < 1500; ++i) {
    f[i] = 5.0 + 0.02 * i - (i >= 750 ? drop : 0.0);
  }
  return f;
}

std::vector<RuptureEvent> Detect(const std::vector<double>& f) {
  const DetectorConfig cfg;
  return DetectRuptures(SmoothForce(f, cfg), {}, cfg);
}

TEST(SavitzkyGolayTest, ExactOnCubicIncludingEdges) {
  const SavitzkyGolay sg(4, 61);
  std::vector<double> y(200);
  for (int i = 0; i < 200; ++i) {
    const double t = i / 100.0;
    y[i] = 1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t * t * t;
  }
  const auto s = sg.Smooth(y);
  for (int i = 0; i < 200; ++i) EXPECT_NEAR(s[i], y[i], 1e-10) << i;
}

TEST(SavitzkyGolayTest, ConstantUnchanged) {
  const std::vector<double> y(300, 12.5);
  for (double v : SmoothForce(y, DetectorConfig{})) EXPECT_NEAR(v, 12.5, 1e-12);
}

TEST(SavitzkyGolayTest, ReducesWhiteNoise) {
  RandomStream rng(9);
  std::vector<double> y(4000);
  for (double& v : y) v = rng.Gaussian(1.0);
  const auto s = SmoothForce(y, DetectorConfig{});
  double raw = 0, smooth = 0;
  for (int i = 100; i < 3900; ++i) {
    raw += y[i] * y[i];
    smooth += s[i] * s[i];
  }
  EXPECT_GT(std::sqrt(raw / smooth), 3.0);
}

TEST(SavitzkyGolayTest, RejectsBadConfiguration) {
  DetectorConfig cfg;
  cfg.window = 60;
  EXPECT_THROW(ValidateDetectorConfig(cfg), InvalidParameter);
  cfg.window = 3;
  EXPECT_THROW(ValidateDetectorConfig(cfg), InvalidParameter);
  std::vector<double> short_series(10, 1.0);
  EXPECT_THROW(SmoothForce(short_series, DetectorConfig{}), SeriesTooShort);
}

TEST(WindowSamplesTest, RoundsToOdd) {
  EXPECT_EQ(WindowSamples(0.061), 61);
  EXPECT_EQ(WindowSamples(0.060) % 2, 1);
}

TEST(DetectRupturesTest, MonotoneRampHasNoEvents) {
  EXPECT_TRUE(Detect(RampWithDrop(0.0)).empty());
}

TEST(DetectRupturesTest, SixNewtonDropDetected) {
  const auto events = Detect(RampWithDrop(6.0));
  ASSERT_EQ(events.size(), 1u);
  EXPECT_NEAR(events[0].magnitude, 6.0, 0.5);
  EXPECT_NEAR(events[0].index, 750, 40);
  EXPECT_LT(events[0].slope, 0.0);
}

TEST(DetectRupturesTest, FourNewtonDropRejected) {
  EXPECT_TRUE(Detect(RampWithDrop(4.0)).empty());
}

TEST(DetectRupturesTest, MonotoneInDropSize) {
  bool seen = false;
  for (double d = 0.5; d <= 15.0; d += 0.5) {
    const bool hit = !Detect(RampWithDrop(d)).empty();
    EXPECT_FALSE(seen && !hit) << d;
    seen = seen || hit;
  }
  EXPECT_TRUE(seen);
}

TEST(DetectRupturesTest, ReportsDepthAtPeak) {
  const auto f = RampWithDrop(8.0);
  std::vector<double> depth(f.size());
  for (int i = 0; i < static_cast<int>(depth.size()); ++i) depth[i] = i * 1e-4;
  const DetectorConfig cfg;
  const auto events = DetectRuptures(SmoothForce(f, cfg), depth, cfg);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_DOUBLE_EQ(events[0].depth, depth[events[0].peak_index]);
}

TEST(ClassifyStepTest, OnlyEventsInsideWindowCount) {
  const auto f = RampWithDrop(8.0);
  EXPECT_TRUE(ClassifyStep(f, {}, 600, 900, DetectorConfig{}).rupture);
  EXPECT_FALSE(ClassifyStep(f, {}, 900, 1400, DetectorConfig{}).rupture);
}

}  // namespace
}  // namespace gaitsense
