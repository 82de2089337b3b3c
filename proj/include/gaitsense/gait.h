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

#ifndef GAITSENSE_GAIT_H_
#define GAITSENSE_GAIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "gaitsense/geometry.h"
#include "gaitsense/rng.h"
#include "gaitsense/robot_model.h"
#include "gaitsense/types.h"

namespace gaitsense {

struct CrawlParams {
  double stride_frequency = 0.05;     // Hz
  double step_length = 0.105;         // m
  double penetration_speed = 0.08;    // m/s
  double body_height = 0.25;          // hip height above mean stance toe, m
  double max_penetration_force = 30;  // N, on the estimated force
  double max_penetration_depth = 0.12;
  double transition_duration = 1.5;     // s
  double recirculation_duration = 1.0;  // s
  double recirculation_apex = 0.06;     // m
  double hover_height = 0.01;  // recirculation ends this far above z = 0
  double stability_margin_min = 0.02;  // m
  // The transition shifts the CoM to the nearest point with this margin
  // inside the next support triangle.
  double transition_margin = 0.04;  // m
  double contact_force = 5.0;  // estimated force that marks touchdown, N
};

struct TrotParams {
  double stride_frequency = 2.0;  // Hz, must lie in [1, 4]
  double duty_factor = 0.5;
  double step_length = 0.12;  // m per stride
  double body_height = 0.28;
  double swing_apex = 0.06;
  double touchdown_speed = 0.55;         // m/s, downward
  double touchdown_speed_jitter = 0.05;  // uniform half-width
  // The toe keeps accelerating into the ground after touchdown.
  double impact_acceleration = 5.0;         // m/s^2
  double impact_acceleration_jitter = 0.6;  // relative, uniform
  double arrest_force = 40.0;     // N; toe stops once the ground pushes this
  double max_arrest_time = 0.07;  // s
  double max_depth = 0.10;
  // After the arrest the leg carries only the static ground reaction until
  // the body settles onto it, then loads up to half the weight.
  double settle_time = 0.05;     // s
  double load_rise_time = 0.04;  // s
  double unload_time = 0.03;     // s, ramp to zero before lift-off
  double bounce_amplitude = 6.0;     // N
  double bounce_jitter = 0.5;        // relative, uniform
  double bounce_frequency = 15.0;    // Hz
  double bounce_decay = 0.06;        // s
  double body_oscillation = 0.005;   // m, on the estimated toe height
};

// Throw InvalidParameter.
void ValidateCrawlParams(const CrawlParams& params);
void ValidateTrotParams(const TrotParams& params);

// Convex hull of the stance toes projected on the ground, counter-clockwise.
struct SupportPolygon {
  std::vector<Eigen::Vector2d> vertices;
};

// Throws TooFewContacts with fewer than three toes or when they are
// collinear.
SupportPolygon MakeSupportPolygon(std::span<const Point3> toes);

// Distance from the CoM's ground projection to the nearest polygon edge,
// positive inside, zero on an edge, negative outside.
double ComMargin(const Point3& com, const SupportPolygon& polygon);

// Incircle centre of a triangle (ground projection).
Eigen::Vector2d Incenter(const Point3& a, const Point3& b, const Point3& c);

// The point closest to `p` (ground projection) whose margin inside triangle
// abc is at least `margin`. Throws UnstablePlan when the inradius is not
// larger than `margin`.
Eigen::Vector2d ShiftTarget(const Point3& p, const Point3& a, const Point3& b,
                            const Point3& c, double margin);

// Minimum-norm vertical toe loads that carry `total` with the resultant
// through `com`. An optional probe pushing up with `probe_force` at
// `probe_toe` is subtracted first. Loads are clipped at zero and rescaled.
Eigen::VectorXd DistributeLoad(std::span<const Point3> toes, const Point3& com,
                               double total, const Point3* probe_toe = nullptr,
                               double probe_force = 0.0);

// How the simulator should treat a toe this tick.
enum class ContactMode : std::uint8_t {
  kFree,     // follows the commanded trajectory; terrain decides the force
  kLoaded,   // planted, carrying `force`; terrain decides the sinkage
  kImposed,  // held at `toe` while the ground pushes with `force`
};

struct LegCommand {
  Phase phase = Phase::kSupport;
  ContactMode mode = ContactMode::kLoaded;
  Point3 toe = Point3::Zero();  // world frame; z ignored for kLoaded
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  double force = 0.0;
  bool step_start = false;  // a new footstep begins on this tick
  double foothold_x = 0.0;  // planned touchdown x, set with step_start
};

struct GaitCommand {
  Point3 body = Point3::Zero();
  std::array<LegCommand, kNumLegs> legs;
  // Error of the body height estimate, added to logged toe heights.
  double estimate_offset_z = 0.0;
};

// What the simulator observed on the previous tick.
struct GaitFeedback {
  std::array<Point3, kNumLegs> toe;
  std::array<double, kNumLegs> force_est{};    // estimated vertical force
  std::array<double, kNumLegs> force_true{};   // terrain reaction
  std::array<double, kNumLegs> force_static{}; // reaction with the toe still
};

class Gait {
 public:
  virtual ~Gait() = default;
  virtual GaitKind kind() const = 0;
  virtual double StridePeriod() const = 0;
  // Body and toes before the first tick; toes rest on z = 0.
  virtual GaitCommand Initial() const = 0;
  // One 1 ms tick. `feedback` describes the previous tick.
  virtual GaitCommand Advance(const GaitFeedback& feedback) = 0;
};

// Statically stable crawl: one leg at a time is lifted, recirculated and
// pushed into the ground at constant speed as a penetrometer while the body
// rests on the other three. Order LF, RR, RF, LR.
class CrawlGait : public Gait {
 public:
  CrawlGait(const CrawlParams& params, const RobotGeometry& robot,
            double start_x);

  GaitKind kind() const override { return GaitKind::kCrawl; }
  double StridePeriod() const override { return 1.0 / params_.stride_frequency; }
  GaitCommand Initial() const override;
  GaitCommand Advance(const GaitFeedback& feedback) override;

  // Smallest CoM margin seen on a penetration tick so far.
  double min_penetration_margin() const { return min_margin_; }

  static constexpr std::array<Leg, kNumLegs> kOrder = {Leg::kLF, Leg::kRR,
                                                       Leg::kRF, Leg::kLR};

 private:
  void BeginSlot(Leg leg, const GaitFeedback& feedback);
  std::array<Point3, 3> SupportToes(const GaitFeedback& feedback) const;

  CrawlParams params_;
  RobotGeometry robot_;
  std::int64_t slot_ticks_;
  std::int64_t transition_ticks_;
  std::int64_t recirculation_ticks_;
  std::int64_t tick_ = 0;

  Point3 body_;
  std::array<Point3, kNumLegs> planted_;   // x, y of each planted toe
  std::array<Point3, kNumLegs> contacts_;  // last touchdown point per leg
  std::array<double, kNumLegs> loads_{};

  // Current slot.
  Leg leg_ = Leg::kLF;
  std::array<int, 3> support_{};
  Point3 body_start_, body_target_;
  std::array<double, kNumLegs> loads_start_{}, loads_target_{};
  Point3 lift_, hover_;
  Vec3 direction_;
  std::int64_t penetration_ticks_ = 0;
  bool penetration_done_ = false;
  bool contact_recorded_ = false;
  double held_force_ = 0.0;
  double min_margin_;
};

// Trot: diagonal pairs (LF, RR) and (RF, LR) alternate. The body moves at
// constant speed; touchdown impacts follow a phenomenological model (fast
// toe, accelerating into the ground until arrested, then a load rise with a
// decaying bounce).
class TrotGait : public Gait {
 public:
  TrotGait(const TrotParams& params, const RobotGeometry& robot,
           double start_x, RandomStream rng);

  GaitKind kind() const override { return GaitKind::kTrot; }
  double StridePeriod() const override { return 1.0 / params_.stride_frequency; }
  GaitCommand Initial() const override;
  GaitCommand Advance(const GaitFeedback& feedback) override;

 private:
  struct LegState {
    std::int64_t offset = 0;  // tick at which this leg's stance starts
    Point3 swing_start, touchdown;
    double touchdown_speed = 0.0;
    double acceleration = 0.0;
    double bounce = 0.0;
    bool arrested = false;
    std::int64_t arrest_tick = 0;
    Point3 held;
    double held_force = 0.0;
    Point3 last;
  };

  void DrawImpact(LegState& s);
  Point3 BodyAt(std::int64_t tick) const;
  Point3 Foothold(Leg leg, std::int64_t touchdown_tick) const;
  LegCommand Stance(Leg leg, LegState& s, std::int64_t local,
                    const GaitFeedback& feedback);
  LegCommand Swing(LegState& s, std::int64_t local);

  TrotParams params_;
  RobotGeometry robot_;
  RandomStream rng_;
  double start_x_;
  double phase_offset_;
  std::int64_t period_ticks_;
  std::int64_t stance_ticks_;
  std::int64_t tick_ = 0;
  std::array<LegState, kNumLegs> legs_;
};

}  // namespace gaitsense

#endif  // GAITSENSE_GAIT_H_
