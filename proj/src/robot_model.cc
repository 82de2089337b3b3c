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

#include "gaitsense/robot_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

constexpr double kReachTolerance = 1e-9;
// Joint speeds below this count as stationary for Coulomb friction (rad/s).
constexpr double kFrictionDeadband = 1e-4;

double Sign(double v) {
  if (std::abs(v) < kFrictionDeadband) return 0.0;
  return (v > 0.0) - (v < 0.0);
}

}  // namespace

RobotGeometry DefaultRobotGeometry() {
  RobotGeometry robot;
  constexpr double kHipX = 0.225;
  constexpr double kHipY = 0.11;
  robot.legs[Index(Leg::kLF)].hip_offset = Vec3(kHipX, kHipY, 0.0);
  robot.legs[Index(Leg::kRF)].hip_offset = Vec3(kHipX, -kHipY, 0.0);
  robot.legs[Index(Leg::kLR)].hip_offset = Vec3(-kHipX, kHipY, 0.0);
  robot.legs[Index(Leg::kRR)].hip_offset = Vec3(-kHipX, -kHipY, 0.0);
  return robot;
}

Point3 ForwardKinematics(const LegGeometry& leg, const JointVector& q) {
  const double s1 = std::sin(q(1)), c1 = std::cos(q(1));
  const double s12 = std::sin(q(1) + q(2)), c12 = std::cos(q(1) + q(2));
  const double x = leg.upper_link * s1 + leg.lower_link * s12;
  const double z = -leg.upper_link * c1 - leg.lower_link * c12;
  const double s0 = std::sin(q(0)), c0 = std::cos(q(0));
  return leg.hip_offset + Vec3(x, -s0 * z, c0 * z);
}

Mat3 LegJacobian(const LegGeometry& leg, const JointVector& q) {
  const double l1 = leg.upper_link, l2 = leg.lower_link;
  const double s1 = std::sin(q(1)), c1 = std::cos(q(1));
  const double s12 = std::sin(q(1) + q(2)), c12 = std::cos(q(1) + q(2));
  const double s0 = std::sin(q(0)), c0 = std::cos(q(0));
  const double z = -l1 * c1 - l2 * c12;

  const double dx1 = l1 * c1 + l2 * c12, dz1 = l1 * s1 + l2 * s12;
  const double dx2 = l2 * c12, dz2 = l2 * s12;

  Mat3 j;
  j << 0.0, dx1, dx2,
      -c0 * z, -s0 * dz1, -s0 * dz2,
      -s0 * z, c0 * dz1, c0 * dz2;
  return j;
}

double ConditionNumber(const Mat3& jacobian) {
  Mat3 inverse;
  bool invertible = false;
  jacobian.computeInverseWithCheck(inverse, invertible, 0.0);
  if (!invertible) return std::numeric_limits<double>::infinity();
  return jacobian.norm() * inverse.norm();
}

Vec3 ToeForceFromTorques(const Mat3& jacobian, const JointVector& torque) {
  Mat3 inverse;
  bool invertible = false;
  jacobian.computeInverseWithCheck(inverse, invertible, 0.0);
  const double cond = invertible
                          ? jacobian.norm() * inverse.norm()
                          : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "Jacobian condition number " << cond << " exceeds "
        << kMaxConditionNumber;
    throw SingularConfiguration(msg.str());
  }
  return inverse.transpose() * torque;
}

Vec3 ToeForceFromTorques(const LegGeometry& leg, const JointVector& q,
                         const JointVector& torque) {
  return ToeForceFromTorques(LegJacobian(leg, q), torque);
}

JointVector TorquesFromToeForce(const Mat3& jacobian, const Vec3& force) {
  return jacobian.transpose() * force;
}

JointVector InverseKinematics(const LegGeometry& leg, const Point3& toe) {
  const Vec3 d = toe - leg.hip_offset;
  const double l1 = leg.upper_link, l2 = leg.lower_link;
  const double r = std::hypot(d.y(), d.z());
  const double reach = std::hypot(d.x(), r);
  if (reach > l1 + l2 + kReachTolerance ||
      reach < std::abs(l1 - l2) - kReachTolerance) {
    std::ostringstream msg;
    msg << "toe at distance " << reach << " m from hip is outside ["
        << std::abs(l1 - l2) << ", " << l1 + l2 << "]";
    throw Unreachable(msg.str());
  }

  JointVector q;
  q(0) = r > 0.0 ? std::atan2(d.y(), -d.z()) : 0.0;
  const double cos_knee = std::clamp(
      (reach * reach - l1 * l1 - l2 * l2) / (2.0 * l1 * l2), -1.0, 1.0);
  q(2) = std::acos(cos_knee);
  q(1) = std::atan2(d.x(), r) -
         std::atan2(l2 * std::sin(q(2)), l1 + l2 * std::cos(q(2)));
  return q;
}

bool WithinLimits(const LegGeometry& leg, const JointVector& q) {
  for (int j = 0; j < 3; ++j) {
    if (q(j) < leg.limits.lower[j] || q(j) > leg.limits.upper[j]) return false;
  }
  return true;
}

JointVector LegInertialTorque(const Mat3& jacobian, const Vec3& toe_accel,
                              double leg_mass) {
  return jacobian.transpose() * (-leg_mass * toe_accel);
}

JointVector ProprioceptiveTorque(const JointVector& true_torque,
                                 const JointVector& joint_velocity,
                                 const JointVector& inertial_torque,
                                 GaitKind gait, double torque_constant_bias,
                                 const ActuatorModel& model,
                                 RandomStream& rng) {
  const double residual_fraction =
      gait == GaitKind::kTrot ? 1.0 - model.compensation_factor : 1.0;
  JointVector measured;
  for (int j = 0; j < 3; ++j) {
    const double scale = model.gear_ratio[j] / model.gear_ratio[0];
    measured(j) = (1.0 + torque_constant_bias) * true_torque(j) +
                  scale * model.coulomb_friction * Sign(joint_velocity(j)) +
                  rng.Gaussian(scale * model.torque_noise_std) +
                  residual_fraction * inertial_torque(j);
  }
  return measured;
}

}  // namespace gaitsense
