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

#include "gaitsense/geometry.h"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

Vec3 OrientUp(Vec3 n) {
  if (n.dot(kWorldUp) < 0.0) n = -n;
  return n;
}

}  // namespace

GroundFrame FitPlaneThreePoints(const Point3& c_i, const Point3& c_j,
                                const Point3& c_k) {
  const Vec3 v_ij = c_j - c_i;
  const Vec3 v_ik = c_k - c_i;
  const Vec3 cross = v_ij.cross(v_ik);
  const double norm = cross.norm();
  if (!(0.5 * norm > kMinTriangleArea)) {
    throw DegenerateContacts("triangle area " + std::to_string(0.5 * norm) +
                             " m^2 is below threshold");
  }
  GroundFrame frame;
  frame.normal = OrientUp(cross / norm);
  frame.origin = (c_i + c_j + c_k) / 3.0;
  return frame;
}

GroundFrame FitPlaneLeastSquares(std::span<const Point3> points) {
  if (points.size() < 3) {
    throw DegenerateContacts("need at least 3 points, got " +
                             std::to_string(points.size()));
  }
  if (points.size() == 3) {
    return FitPlaneThreePoints(points[0], points[1], points[2]);
  }

  Point3 centroid = Point3::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  Mat3 scatter = Mat3::Zero();
  for (const auto& p : points) {
    const Vec3 d = p - centroid;
    scatter += d * d.transpose();
  }

  // Eigenvalues ascend; the smallest belongs to the plane normal. The middle
  // one measures spread across the best-fit line: zero means collinear.
  Eigen::SelfAdjointEigenSolver<Mat3> solver(scatter);
  const Vec3 eigenvalues = solver.eigenvalues();
  const double spread_scale = std::max(eigenvalues(2), 1e-300);
  // Middle eigenvalue ~ (triangle area)^2 / (line length)^2 scale; compare the
  // implied area against the same threshold as the three-point fit.
  const double width = std::sqrt(std::max(eigenvalues(1), 0.0));
  const double length = std::sqrt(spread_scale);
  if (!(width * length > kMinTriangleArea)) {
    throw DegenerateContacts("points are collinear or coincident");
  }

  GroundFrame frame;
  frame.normal = OrientUp(solver.eigenvectors().col(0).normalized());
  frame.origin = centroid;
  return frame;
}

GroundFrame ApplyContactCorrection(const GroundFrame& frame,
                                   const Point3& contact) {
  return GroundFrame{frame.normal, contact};
}

double SignedDepth(const GroundFrame& frame, const Point3& p) {
  return -(p - frame.origin).dot(frame.normal);
}

double AngleBetween(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace gaitsense
