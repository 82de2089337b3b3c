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

#include "gaitsense/simulator.h"

#include <memory>
#include <optional>
#include <sstream>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

// Random stream tags. Each subsystem draws from its own stream.
enum StreamTag : std::uint64_t {
  kGaitStream = 1,
  kNoiseStream = 2,
  kBiasStream = 3,
  kTerrainStream = 4,
};

struct LegSim {
  SurfacePatch patch;
  ContactState contact;
  std::optional<std::size_t> step;  // index into log.steps
  JointVector q_prev = JointVector::Zero();
  double bias = 0.0;
};

const TerrainUnit& UnitAt(const Transect& transect, double x) {
  try {
    return transect.MaterialAt(x);
  } catch (const OutOfTransect& e) {
    throw ScenarioError(std::string("trial leaves the transect: ") + e.what());
  }
}

}  // namespace

void ValidateScenario(const Scenario& s) {
  if (s.strides < 1) throw ScenarioError("strides must be >= 1");
  if (!(s.crust.coverage >= 0.0 && s.crust.coverage <= 1.0)) {
    throw ScenarioError("crust coverage must lie in [0, 1]");
  }
  if (!(s.crust.rupture_force_std >= 0.0 && s.crust.drop_std >= 0.0)) {
    throw ScenarioError("crust variability must be non-negative");
  }
  const ActuatorModel& a = s.actuator;
  for (double g : a.gear_ratio) {
    if (!(g > 0.0)) throw ScenarioError("gear ratios must be positive");
  }
  if (!(a.torque_noise_std >= 0.0 && a.torque_constant_error >= 0.0 &&
        a.coulomb_friction >= 0.0 && a.leg_mass >= 0.0)) {
    throw ScenarioError("actuator noise parameters must be non-negative");
  }
  if (!(a.compensation_factor >= 0.0 && a.compensation_factor <= 1.0)) {
    throw ScenarioError("compensation_factor must lie in [0, 1]");
  }
  try {
    BuildTransect(s.transect);
    if (s.gait == GaitKind::kCrawl) {
      ValidateCrawlParams(s.crawl);
    } else {
      ValidateTrotParams(s.trot);
    }
  } catch (const MalformedSpec& e) {
    throw ScenarioError(e.what());
  } catch (const InvalidParameter& e) {
    throw ScenarioError(e.what());
  }
}

TrialLog RunTrial(const Scenario& scenario, int trial) {
  ValidateScenario(scenario);
  const Transect transect = BuildTransect(scenario.transect);
  const RobotGeometry& robot = scenario.robot;

  std::unique_ptr<Gait> gait;
  CrawlGait* crawl = nullptr;
  if (scenario.gait == GaitKind::kCrawl) {
    auto g = std::make_unique<CrawlGait>(scenario.crawl, robot,
                                         scenario.start_x);
    crawl = g.get();
    gait = std::move(g);
  } else {
    gait = std::make_unique<TrotGait>(
        scenario.trot, robot, scenario.start_x,
        RandomStream(scenario.seed, trial, kGaitStream));
  }

  RandomStream noise(scenario.seed, trial, kNoiseStream);
  RandomStream bias_rng(scenario.seed, trial, kBiasStream);
  RandomStream terrain_rng(scenario.seed, trial, kTerrainStream);

  TrialLog log;
  log.gait = scenario.gait;
  log.seed = scenario.seed;
  log.trial = trial;

  const GaitCommand initial = gait->Initial();
  GaitFeedback feedback;
  std::array<LegSim, kNumLegs> sim;
  for (int i = 0; i < kNumLegs; ++i) {
    const Point3& toe = initial.legs[i].toe;
    UnitAt(transect, toe.x());
    sim[i].patch = SamplePatch(transect.EffectiveMaterial(toe.x()),
                               scenario.crust, terrain_rng);
    sim[i].q_prev =
        InverseKinematics(robot.legs[i], toe - initial.body);
    const double e = scenario.actuator.torque_constant_error;
    sim[i].bias = e > 0.0 ? bias_rng.Uniform(-e, e) : 0.0;
    feedback.toe[i] = toe;
  }

  const std::int64_t total = static_cast<std::int64_t>(std::llround(
      scenario.strides * gait->StridePeriod() / kTickSeconds));
  for (auto& samples : log.legs) samples.reserve(total);

  for (std::int64_t n = 0; n < total; ++n) {
    const GaitCommand cmd = gait->Advance(feedback);
    for (int i = 0; i < kNumLegs; ++i) {
      const LegCommand& lc = cmd.legs[i];
      LegSim& ls = sim[i];

      if (lc.step_start) {
        if (ls.step) {
          StepRecord& prev = log.steps[*ls.step];
          prev.end = static_cast<int>(n);
          prev.ruptured = ls.contact.ruptured;
        }
        const TerrainUnit& unit = UnitAt(transect, lc.foothold_x);
        ls.patch = SamplePatch(transect.EffectiveMaterial(lc.foothold_x),
                               scenario.crust, terrain_rng);
        ls.contact = ContactState{};
        StepRecord rec;
        rec.leg = static_cast<Leg>(i);
        rec.begin = static_cast<int>(n);
        rec.foothold_x = lc.foothold_x;
        rec.tu_id = unit.id;
        rec.surface = ls.patch.kind;
        ls.step = log.steps.size();
        log.steps.push_back(rec);
      }

      // Terrain.
      Point3 toe = lc.toe;
      double force = 0.0;
      double force_static = 0.0;
      switch (lc.mode) {
        case ContactMode::kFree: {
          const double depth = -toe.z();
          const Reaction r = ReactionForce(ls.patch.material, depth,
                                           -lc.velocity.z(), ls.contact);
          ls.contact = r.state;
          force = r.force;
          force_static =
              ReactionForce(ls.patch.material, depth, 0.0, ls.contact).force;
          break;
        }
        case ContactMode::kLoaded: {
          const double depth =
              SinkUnderLoad(ls.patch.material, lc.force, ls.contact);
          toe.z() = -depth;
          force = lc.force;
          force_static = force;
          break;
        }
        case ContactMode::kImposed:
          ls.contact.solidified = true;
          force = lc.force;
          force_static = force;
          break;
      }
      if (ls.step && force > 0.0 && log.steps[*ls.step].contact_tick < 0) {
        log.steps[*ls.step].contact_tick = static_cast<int>(n);
      }

      // Kinematics and proprioception.
      const LegGeometry& geom = robot.legs[i];
      const JointVector q = InverseKinematics(geom, toe - cmd.body);
      const JointVector dq = (q - ls.q_prev) / kTickSeconds;
      ls.q_prev = q;
      const Mat3 jac = LegJacobian(geom, q);
      const JointVector tau_true =
          TorquesFromToeForce(jac, Vec3(0.0, 0.0, force));
      const Vec3 accel =
          lc.mode == ContactMode::kFree ? lc.acceleration : Vec3::Zero();
      const JointVector inertial =
          LegInertialTorque(jac, accel, scenario.actuator.leg_mass);
      const JointVector tau =
          ProprioceptiveTorque(tau_true, dq, inertial, scenario.gait, ls.bias,
                               scenario.actuator, noise);
      const Vec3 f_est = ToeForceFromTorques(jac, tau);

      TickSample sample;
      sample.phase = lc.phase;
      sample.q = q;
      sample.dq = dq;
      sample.tau = tau;
      sample.toe = cmd.body + ForwardKinematics(geom, q);
      sample.toe.z() += cmd.estimate_offset_z;
      sample.fz_est = f_est.z();
      sample.tu_id = (toe.x() >= 0.0 && toe.x() <= transect.length())
                         ? transect.MaterialAt(toe.x()).id
                         : 0;
      sample.rupture = ls.contact.ruptured;
      log.legs[i].push_back(sample);

      feedback.toe[i] = toe;
      feedback.force_est[i] = f_est.z();
      feedback.force_true[i] = force;
      feedback.force_static[i] = force_static;
    }
  }

  // Close the last step of each leg; drop it if it never touched ground.
  for (int i = 0; i < kNumLegs; ++i) {
    if (!sim[i].step) continue;
    StepRecord& last = log.steps[*sim[i].step];
    last.end = static_cast<int>(total);
    last.ruptured = sim[i].contact.ruptured;
  }
  std::erase_if(log.steps, [&](const StepRecord& s) {
    return s.end == static_cast<int>(total) && s.contact_tick < 0;
  });
  if (crawl != nullptr) log.min_com_margin = crawl->min_penetration_margin();
  return log;
}

}  // namespace gaitsense
