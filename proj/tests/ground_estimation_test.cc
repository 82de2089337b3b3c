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

#include "gaitsense/ground_estimation.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

TEST(DetectContactTest, NeedsDebouncedRun) {
  std::vector<double> f = {0, 6, 0, 6, 6, 6, 6, 6, 6, 6};
  EXPECT_EQ(DetectContact(f, {5.0, 5}), 3);
  EXPECT_EQ(DetectContact(f, {5.0, 1}), 1);
  EXPECT_THROW(DetectContact(f, {10.0, 5}), NoContact);
}

TEST(DetectContactTest, RampCrossingAndSilence) {
  std::vector<double> ramp(300);
  for (int i = 0; i < 300; ++i) ramp[i] = 0.05 * i;  // 5 N at 100 ms
  EXPECT_EQ(DetectContact(ramp, {5.0, 5}), 100);
  std::vector<double> zero(300, 0.0);
  EXPECT_THROW(DetectContact(zero, {5.0, 5}), NoContact);
}

TEST(DetectContactTest, SingleTickSpikeIsNotAContact) {
  std::vector<double> f(50, 0.0);
  f[10] = 40.0;
  EXPECT_THROW(DetectContact(f, {5.0, 5}), NoContact);
}

TEST(CrawlFrameTest, SlopedGroundDepthZeroAtContact) {
  // Ground z = 0.1 x; stance toes on it.
  const std::array<Point3, 3> stance = {
      Point3(0.2, 0.15, 0.02), Point3(-0.2, 0.15, -0.02),
      Point3(0.0, -0.15, 0.0)};
  const ContactEvent c{Leg::kRF, 10, Point3(0.2, -0.15, 0.02)};
  const GroundFrame f = EstimateFrameCrawl(stance, c);
  EXPECT_EQ(SignedDepth(f, c.toe), 0.0);
  // 1 cm straight down the normal is 1 cm of depth.
  EXPECT_NEAR(SignedDepth(f, c.toe - 0.01 * f.normal), 0.01, 1e-15);
  EXPECT_LT(AngleBetween(f.normal, Vec3(-0.1, 0, 1).normalized()), 1e-12);
}

TEST(CrawlFrameTest, SunkStanceDoesNotShiftDepthOrigin) {
  // Stance toes 2 cm into the sand; the probe touches the true surface.
  const std::array<Point3, 3> stance = {
      Point3(0.2, 0.15, -0.02), Point3(-0.2, 0.15, -0.02),
      Point3(0.0, -0.15, -0.02)};
  const ContactEvent c{Leg::kRF, 0, Point3(0.2, -0.15, 0.0)};
  const GroundFrame f = EstimateFrameCrawl(stance, c);
  EXPECT_EQ(SignedDepth(f, c.toe), 0.0);
  EXPECT_NEAR(SignedDepth(f, Point3(0.2, -0.15, -0.03)), 0.03, 1e-15);
}

TEST(CrawlFrameTest, FlatWorldIsGroundPlane) {
  const std::array<Point3, 3> stance = {
      Point3(0.2, 0.15, 0), Point3(-0.2, 0.15, 0), Point3(0.0, -0.15, 0)};
  const GroundFrame f =
      EstimateFrameCrawl(stance, {Leg::kRF, 0, Point3(0.2, -0.15, 0)});
  EXPECT_EQ(f.normal, kWorldUp);
  EXPECT_EQ(f.origin, Point3(0.2, -0.15, 0));
}

TEST(CrawlFrameTest, FiveDegreeTiltMeasuresAlongNormal) {
  const double a = 5.0 * M_PI / 180.0;
  auto on_plane = [&](double x, double y) {
    return Point3(x, y, std::tan(a) * x);
  };
  const std::array<Point3, 3> stance = {on_plane(0.2, 0.15),
                                        on_plane(-0.2, 0.15),
                                        on_plane(0.0, -0.15)};
  const Point3 touch = on_plane(0.2, -0.15);
  const GroundFrame f = EstimateFrameCrawl(stance, {Leg::kRF, 0, touch});
  // Straight down by 3 cm is 3 cm * cos(5 deg) along the tilted normal.
  EXPECT_NEAR(SignedDepth(f, touch - Vec3(0, 0, 0.03)), 0.03 * std::cos(a),
              1e-15);
}

TEST(ToeHistoryTest, KeepsNewestEntries) {
  ToeHistoryBuffer h(3);
  for (int i = 0; i < 5; ++i) h.Push(Point3(i, 0, 0), i);
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.entries().front().first, 2);
  EXPECT_THROW(ToeHistoryBuffer(2), InvalidParameter);
}

TEST(ToeHistoryTest, DriftMovesEntries) {
  ToeHistoryBuffer h(6);
  h.Push(Point3::Zero(), 0);
  RandomStream rng(4);
  h.Advance(0.002, rng);
  EXPECT_GT(h.positions()[0].norm(), 0.0);
  h.Advance(0.0, rng);
}

TEST(TrotFrameTest, NeedsThreeBufferedToes) {
  ToeHistoryBuffer h(6);
  h.Push(Point3(0, 0, 0), 0);
  h.Push(Point3(1, 0, 0), 1);
  const ContactEvent c{Leg::kLF, 2, Point3(0, 1, 0)};
  EXPECT_THROW(EstimateFrameTrot(h, c), InsufficientHistory);
  h.Push(Point3(1, 1, 0), 2);
  const GroundFrame f = EstimateFrameTrot(h, c);
  EXPECT_LT(AngleBetween(f.normal, kWorldUp), 1e-12);
  EXPECT_EQ(SignedDepth(f, c.toe), 0.0);
}

TEST(TrotFrameTest, CoplanarHistoryGivesExactNormal) {
  const Vec3 n = Vec3(0.05, 0.1, 1.0).normalized();
  auto on_plane = [&](double x, double y) {
    return Point3(x, y, -(n.x() * x + n.y() * y) / n.z());
  };
  ToeHistoryBuffer h(6);
  h.Push(on_plane(0.2, 0.1), 0);
  h.Push(on_plane(-0.2, -0.1), 1);
  h.Push(on_plane(0.3, -0.1), 2);
  h.Push(on_plane(-0.1, 0.1), 3);
  const GroundFrame f =
      EstimateFrameTrot(h, {Leg::kLF, 4, on_plane(0.1, 0.12)});
  EXPECT_LT(AngleBetween(f.normal, n), 1e-12);
}

TEST(TrotFrameTest, CentimetreDriftOnOnePointStaysUnderThreeDegrees) {
  ToeHistoryBuffer h(6);
  h.Push(Point3(0.15, 0.15, 0), 0);
  h.Push(Point3(-0.15, 0.15, 0.01), 1);  // 1 cm of drift
  h.Push(Point3(-0.15, -0.15, 0), 2);
  const GroundFrame f =
      EstimateFrameTrot(h, {Leg::kRF, 3, Point3(0.15, -0.15, 0)});
  EXPECT_LT(AngleBetween(f.normal, kWorldUp), 3.0 * M_PI / 180.0);
}

TEST(DepthSeriesTest, ProjectsOnNormal) {
  const GroundFrame f{kWorldUp, Point3(0, 0, 0.1)};
  const std::vector<Point3> toes = {Point3(0, 0, 0.1), Point3(0, 0, 0.08),
                                    Point3(1, 1, 0.05)};
  const auto d = PenetrationDepthSeries(toes, f);
  EXPECT_EQ(d[0], 0.0);
  EXPECT_NEAR(d[1], 0.02, 1e-15);
  EXPECT_NEAR(d[2], 0.05, 1e-15);
}

}  // namespace
}  // namespace gaitsense
