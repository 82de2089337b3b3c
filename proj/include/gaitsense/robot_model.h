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

#ifndef GAITSENSE_ROBOT_MODEL_H_
#define GAITSENSE_ROBOT_MODEL_H_

#include <array>
#include <numbers>

#include <Eigen/Geometry>

#include "gaitsense/geometry.h"
#include "gaitsense/rng.h"
#include "gaitsense/types.h"

namespace gaitsense {

// Joint order everywhere: 0 abduction, 1 hip pitch, 2 knee.
using JointVector = Eigen::Vector3d;

struct JointLimits {
  std::array<double, 3> lower = {-std::numbers::pi / 2, -std::numbers::pi, 0.0};
  std::array<double, 3> upper = {std::numbers::pi / 2, std::numbers::pi,
                                 std::numbers::pi};
};

// One 3-DOF leg. The hip offset locates the abduction axis in the body frame.
// The lower link ends at the toe contact point.
struct LegGeometry {
  double upper_link = 0.20;
  double lower_link = 0.20;
  double toe_radius = 0.02;
  Vec3 hip_offset = Vec3::Zero();
  JointLimits limits;

  double Reach() const { return upper_link + lower_link; }
};

struct RobotGeometry {
  std::array<LegGeometry, kNumLegs> legs;
  double mass = 12.0;
  double body_length = 0.55;

  const LegGeometry& leg(Leg l) const { return legs[Index(l)]; }
  double Weight() const { return mass * kGravity; }
};

// Hips at +-0.225 m fore/aft and +-0.11 m lateral.
RobotGeometry DefaultRobotGeometry();

struct JointState {
  JointVector angle = JointVector::Zero();
  JointVector velocity = JointVector::Zero();
  JointVector torque = JointVector::Zero();
};

struct BodyState {
  Point3 position = Point3::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
  Point3 com = Point3::Zero();
};

struct ActuatorModel {
  // Abduction, hip, knee reductions.
  std::array<double, 3> gear_ratio = {6.0, 6.0, 12.0};
  // Joint-level torque noise for a 6:1 joint; scaled by gear ratio / 6.
  double torque_noise_std = 0.05;
  // Per-leg torque-constant bias is drawn uniformly in +-this fraction.
  double torque_constant_error = 0.03;
  // Joint Coulomb friction for a 6:1 joint; scaled like the noise.
  double coulomb_friction = 0.1;
  // Fraction of leg inertial torque removed by the trot momentum observer.
  double compensation_factor = 0.7;
  // Effective moving mass lumped at the toe (kg).
  double leg_mass = 0.5;
};

// Toe position in the body frame. Abduction rotates the sagittal two-link
// chain about the body x axis; hip and knee angles are measured from straight
// down, positive swinging the toe forward.
Point3 ForwardKinematics(const LegGeometry& leg, const JointVector& q);

// d(toe)/dq, columns ordered as q.
Mat3 LegJacobian(const LegGeometry& leg, const JointVector& q);

// Frobenius condition number ||J|| * ||J^-1||; infinity when singular.
double ConditionNumber(const Mat3& jacobian);

inline constexpr double kMaxConditionNumber = 1e6;

// External toe force F with tau = J^T F. Throws SingularConfiguration when the
// Jacobian condition number exceeds kMaxConditionNumber.
Vec3 ToeForceFromTorques(const LegGeometry& leg, const JointVector& q,
                         const JointVector& torque);
Vec3 ToeForceFromTorques(const Mat3& jacobian, const JointVector& torque);

// Joint torques that balance an external toe force F (tau = J^T F).
JointVector TorquesFromToeForce(const Mat3& jacobian, const Vec3& force);

// Knee angle is always taken from [0, pi]. Throws Unreachable outside the
// workspace annulus.
JointVector InverseKinematics(const LegGeometry& leg, const Point3& toe);

bool WithinLimits(const LegGeometry& leg, const JointVector& q);

// Joint torque from the leg's own accelerating mass as seen by the torque
// estimate: tau = J^T (-m a_toe).
JointVector LegInertialTorque(const Mat3& jacobian, const Vec3& toe_accel,
                              double leg_mass);

// Corrupts the joint torque that balances the external load the way
// current-based sensing would:
//   measured = (1 + bias) tau + coulomb sign(dq) + N(0, std) + residual
// where the residual inertial term is the full leg inertial torque for the
// crawl and (1 - compensation_factor) of it for the trot.
JointVector ProprioceptiveTorque(const JointVector& true_torque,
                                 const JointVector& joint_velocity,
                                 const JointVector& inertial_torque,
                                 GaitKind gait, double torque_constant_bias,
                                 const ActuatorModel& model,
                                 RandomStream& rng);

}  // namespace gaitsense

#endif  // GAITSENSE_ROBOT_MODEL_H_
