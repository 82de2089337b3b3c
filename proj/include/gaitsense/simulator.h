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

#ifndef GAITSENSE_SIMULATOR_H_
#define GAITSENSE_SIMULATOR_H_

#include <array>
#include <cstdint>
#include <vector>

#include "gaitsense/gait.h"
#include "gaitsense/robot_model.h"
#include "gaitsense/terrain.h"
#include "gaitsense/types.h"

namespace gaitsense {

struct Scenario {
  TransectSpec transect = PresetSpec("exp1-compaction");
  GaitKind gait = GaitKind::kCrawl;
  CrawlParams crawl;
  TrotParams trot;
  ActuatorModel actuator;
  CrustVariability crust;
  RobotGeometry robot = DefaultRobotGeometry();
  int strides = 13;
  double start_x = 0.3;  // initial body x along the transect, m
  std::uint64_t seed = 1;
};

// Throws ScenarioError.
void ValidateScenario(const Scenario& scenario);

// One leg on one tick, as a robot would log it. `toe` is the estimated world
// position (forward kinematics on the estimated body pose), `fz_est` the
// vertical component of J^-T tau. `tu_id` and `rupture` are simulator truth.
struct TickSample {
  Phase phase = Phase::kSupport;
  JointVector q = JointVector::Zero();
  JointVector dq = JointVector::Zero();
  JointVector tau = JointVector::Zero();
  Point3 toe = Point3::Zero();
  double fz_est = 0.0;
  int tu_id = 0;  // 0 when the toe is outside the transect
  bool rupture = false;
};

// One footstep: ticks [begin, end) of one leg, from lift-off to the next
// lift-off. Truth fields come from the simulator.
struct StepRecord {
  Leg leg = Leg::kLF;
  int begin = 0;
  int end = 0;
  double foothold_x = 0.0;
  int tu_id = 0;
  SurfaceKind surface = SurfaceKind::kGranular;
  bool ruptured = false;
  int contact_tick = -1;  // first tick with ground reaction, -1 if none
};

struct TrialLog {
  GaitKind gait = GaitKind::kCrawl;
  std::uint64_t seed = 0;
  int trial = 0;
  std::array<std::vector<TickSample>, kNumLegs> legs;
  std::vector<StepRecord> steps;  // ordered by begin tick
  // Crawl only: smallest CoM margin over all penetration ticks (m).
  double min_com_margin = 0.0;

  int num_ticks() const { return static_cast<int>(legs[0].size()); }
  const std::vector<TickSample>& leg(Leg l) const { return legs[Index(l)]; }
};

// Runs `scenario.strides` strides at 1 kHz. The trial index selects
// independent random streams under the same seed. Throws ScenarioError for a
// malformed scenario and InstabilityError when the crawl loses static
// stability.
TrialLog RunTrial(const Scenario& scenario, int trial = 0);

}  // namespace gaitsense

#endif  // GAITSENSE_SIMULATOR_H_
