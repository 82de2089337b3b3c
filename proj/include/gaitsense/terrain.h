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

#ifndef GAITSENSE_TERRAIN_H_
#define GAITSENSE_TERRAIN_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gaitsense/rng.h"

namespace gaitsense {

// Penetration resistance is stored in N/m; reports use N/cm.
inline constexpr double NPerCmToNPerM(double k) { return k * 100.0; }
inline constexpr double NPerMToNPerCm(double k) { return k / 100.0; }

// Stiff spring proxy for wood or concrete.
struct RigidMaterial {
  double stiffness = 1e5;  // N/m
};

// Homogeneous granular medium: resistance linear in depth up to a plateau,
// plus a velocity-squared inertial drag while loading.
struct GranularMaterial {
  double penetration_resistance = 680.0;  // k, N/m
  double plateau_force = 36.0;            // N
  double inertial_coeff = 30.0;           // N s^2 / m^2
};

// Brittle layer over a granular substrate. The crust loads elastically until
// the applied force reaches rupture_force, then the force falls by
// post_rupture_drop and the substrate law takes over from the rupture depth.
struct CrustMaterial {
  double crust_stiffness = 600.0;  // N/m
  double rupture_force = 25.0;      // N
  double post_rupture_drop = 8.0;   // N
  GranularMaterial substrate;
};

using Material = std::variant<RigidMaterial, GranularMaterial, CrustMaterial>;

// Throws MalformedSpec when a material violates its parameter invariants.
void ValidateMaterial(const Material& material);

std::string_view MaterialKindName(const Material& material);

// History of one toe's interaction with the ground during one step.
struct ContactState {
  double max_depth_reached = 0.0;
  bool ruptured = false;
  bool solidified = false;
  double rupture_depth = 0.0;
};

struct Reaction {
  double force = 0.0;  // N, upward on the toe
  ContactState state;
};

// Vertical reaction on a toe driven kinematically to `depth` (m below the
// surface) with downward speed `velocity` (m/s, negative while withdrawing).
Reaction ReactionForce(const Material& material, double depth, double velocity,
                       const ContactState& state);

// Quasi-static inverse of the loading law: how deep a stationary toe sits
// under `load`. Sinkage never decreases within a step (granular media do not
// rebound), except for the elastic rigid proxy.
double SinkUnderLoad(const Material& material, double load,
                     ContactState& state);

struct TerrainUnit {
  int id = 0;  // 1-based
  double x_start = 0.0;
  double x_end = 0.0;
  Material material;
  std::string label;
};

struct TransectSpec {
  std::vector<TerrainUnit> units;
  // Width of the linear compaction ramp centred on each boundary between two
  // granular units. Zero keeps k piecewise constant.
  double blend_width = 0.0;
};

class Transect {
 public:
  const std::vector<TerrainUnit>& units() const { return units_; }
  double length() const { return units_.back().x_end; }
  double blend_width() const { return blend_width_; }
  const TerrainUnit& unit(int id) const { return units_.at(id - 1); }

  // Covering unit; a boundary point belongs to the unit on its right. Throws
  // OutOfTransect outside [0, length].
  const TerrainUnit& MaterialAt(double x) const;

  // Material felt at x, with granular parameters ramped across boundaries
  // when blending is enabled.
  Material EffectiveMaterial(double x) const;

 private:
  friend Transect BuildTransect(const TransectSpec& spec);
  std::vector<TerrainUnit> units_;
  double blend_width_ = 0.0;
};

// Validates contiguity (no gaps, no overlaps, starts at 0) and material
// invariants, assigns 1-based ids. Throws MalformedSpec.
Transect BuildTransect(const TransectSpec& spec);

// "exp1-compaction", "exp2-crust", "mt-hood-transect". Throws MalformedSpec
// for an unknown name.
TransectSpec PresetSpec(std::string_view name);
std::vector<std::string> PresetNames();

enum class SurfaceKind { kRigid, kGranular, kCrust, kCrustGap };

std::string_view SurfaceKindName(SurfaceKind kind);
std::optional<SurfaceKind> ParseSurfaceKind(std::string_view name);

// Per-step variability of crust tiles. Tiles do not cover the whole unit, and
// each tile breaks at a slightly different load.
struct CrustVariability {
  double coverage = 0.85;
  double rupture_force_std = 4.0;  // N
  double drop_std = 2.0;           // N
};

struct SurfacePatch {
  Material material;
  SurfaceKind kind = SurfaceKind::kGranular;
};

// The material under one footstep. Crust units draw a tile hit with
// probability `coverage` (a miss exposes the bare substrate) and jitter the
// tile's rupture force and drop; other materials pass through unchanged.
SurfacePatch SamplePatch(const Material& material,
                         const CrustVariability& variability,
                         RandomStream& rng);

}  // namespace gaitsense

#endif  // GAITSENSE_TERRAIN_H_
