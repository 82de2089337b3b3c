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

#ifndef GAITSENSE_GEOMETRY_H_
#define GAITSENSE_GEOMETRY_H_

#include <span>

#include <Eigen/Core>

namespace gaitsense {

using Vec3 = Eigen::Vector3d;
using Point3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// World "up". Plane normals are oriented so that normal.dot(kWorldUp) > 0.
inline const Vec3 kWorldUp = Vec3::UnitZ();

// Triangles with area below this are treated as collinear/coincident (m^2).
inline constexpr double kMinTriangleArea = 1e-9;

// Estimated substrate surface: unit normal plus a point on the plane.
struct GroundFrame {
  Vec3 normal = Vec3::UnitZ();
  Point3 origin = Point3::Zero();
};

// Plane through three contact points. The normal is the normalized cross
// product of (c_j - c_i) and (c_k - c_i), flipped to point away from gravity.
// The origin is the centroid. Throws DegenerateContacts for collinear input.
GroundFrame FitPlaneThreePoints(const Point3& c_i, const Point3& c_j,
                                const Point3& c_k);

// Total-least-squares plane (minimum orthogonal distance) through >= 3
// points. Origin is the centroid.
GroundFrame FitPlaneLeastSquares(std::span<const Point3> points);

// Same normal, origin moved to the contact point.
GroundFrame ApplyContactCorrection(const GroundFrame& frame,
                                   const Point3& contact);

// Distance of p below the plane, measured along -normal (positive below).
double SignedDepth(const GroundFrame& frame, const Point3& p);

// Angle between two unit vectors (radians), robust near 0.
double AngleBetween(const Vec3& a, const Vec3& b);

}  // namespace gaitsense

#endif  // GAITSENSE_GEOMETRY_H_
