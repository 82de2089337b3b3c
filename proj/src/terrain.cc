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

#include "gaitsense/terrain.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

constexpr double kContiguityTolerance = 1e-9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void ValidateGranular(const GranularMaterial& g) {
  if (!(g.penetration_resistance > 0.0)) {
    throw MalformedSpec("granular penetration resistance must be positive");
  }
  if (!(g.plateau_force > 0.0)) {
    throw MalformedSpec("granular plateau force must be positive");
  }
  if (!(g.inertial_coeff >= 0.0)) {
    throw MalformedSpec("granular inertial coefficient must be non-negative");
  }
}

double Drag(const GranularMaterial& g, double velocity) {
  return g.inertial_coeff * velocity * velocity;
}

// Quasi-static force of the substrate after the crust has failed.
// Quasi-static part only. The tile carried crust_stiffness * rupture_depth
// when it broke, whatever share of the total load was velocity drag.
double PostRuptureForce(const CrustMaterial& c, double depth,
                        double rupture_depth) {
  const double carried = c.crust_stiffness * rupture_depth;
  const double f = carried - c.post_rupture_drop +
                   c.substrate.penetration_resistance * (depth - rupture_depth);
  return std::clamp(f, 0.0, std::max(c.substrate.plateau_force,
                                     carried - c.post_rupture_drop));
}

}  // namespace

void ValidateMaterial(const Material& material) {
  std::visit(Overloaded{
                 [](const RigidMaterial& r) {
                   if (!(r.stiffness > 0.0)) {
                     throw MalformedSpec("rigid stiffness must be positive");
                   }
                 },
                 [](const GranularMaterial& g) { ValidateGranular(g); },
                 [](const CrustMaterial& c) {
                   if (!(c.crust_stiffness > 0.0)) {
                     throw MalformedSpec("crust stiffness must be positive");
                   }
                   if (!(c.rupture_force > c.post_rupture_drop &&
                         c.post_rupture_drop > 0.0)) {
                     throw MalformedSpec(
                         "crust needs rupture_force > post_rupture_drop > 0");
                   }
                   ValidateGranular(c.substrate);
                 },
             },
             material);
}

std::string_view MaterialKindName(const Material& material) {
  return std::visit(
      Overloaded{
          [](const RigidMaterial&) -> std::string_view { return "rigid"; },
          [](const GranularMaterial&) -> std::string_view {
            return "granular";
          },
          [](const CrustMaterial&) -> std::string_view {
            return "crust_on_granular";
          },
      },
      material);
}

Reaction ReactionForce(const Material& material, double depth, double velocity,
                       const ContactState& state) {
  Reaction out{0.0, state};
  if (depth <= 0.0) return out;
  if (velocity < 0.0) return out;  // withdrawing: sand does not pull
  out.state.max_depth_reached = std::max(state.max_depth_reached, depth);

  std::visit(
      Overloaded{
          [&](const RigidMaterial& r) { out.force = r.stiffness * depth; },
          [&](const GranularMaterial& g) {
            const double quasi_static = g.penetration_resistance * depth;
            if (quasi_static >= g.plateau_force) out.state.solidified = true;
            out.force = std::min(quasi_static, g.plateau_force) +
                        Drag(g, velocity);
          },
          [&](const CrustMaterial& c) {
            const double drag = Drag(c.substrate, velocity);
            if (!out.state.ruptured) {
              const double intact = c.crust_stiffness * depth + drag;
              if (intact < c.rupture_force) {
                out.force = intact;
                return;
              }
              out.state.ruptured = true;
              out.state.rupture_depth = depth;
            }
            out.force =
                PostRuptureForce(c, depth, out.state.rupture_depth) + drag;
          },
      },
      material);
  return out;
}

double SinkUnderLoad(const Material& material, double load,
                     ContactState& state) {
  load = std::max(load, 0.0);
  double depth = state.max_depth_reached;
  std::visit(
      Overloaded{
          [&](const RigidMaterial& r) { depth = load / r.stiffness; },
          [&](const GranularMaterial& g) {
            if (state.solidified) return;
            if (load >= g.plateau_force) state.solidified = true;
            depth = std::max(depth, std::min(load, g.plateau_force) /
                                        g.penetration_resistance);
          },
          [&](const CrustMaterial& c) {
            if (!state.ruptured) {
              if (load < c.rupture_force) {
                depth = std::max(depth, load / c.crust_stiffness);
                return;
              }
              state.ruptured = true;
              state.rupture_depth =
                  std::max(depth, c.rupture_force / c.crust_stiffness);
            }
            if (state.solidified) return;
            const GranularMaterial& g = c.substrate;
            if (load >= g.plateau_force) state.solidified = true;
            const double residual = std::max(
                0.0, c.crust_stiffness * state.rupture_depth -
                         c.post_rupture_drop);
            const double extra =
                std::max(0.0, std::min(load, g.plateau_force) - residual);
            depth = std::max(
                depth, state.rupture_depth + extra / g.penetration_resistance);
          },
      },
      material);
  if (!std::holds_alternative<RigidMaterial>(material)) {
    state.max_depth_reached = std::max(state.max_depth_reached, depth);
  } else {
    state.max_depth_reached = depth;
  }
  return depth;
}

const TerrainUnit& Transect::MaterialAt(double x) const {
  if (!(x >= 0.0 && x <= length())) {
    std::ostringstream msg;
    msg << "x = " << x << " m outside [0, " << length() << "]";
    throw OutOfTransect(msg.str());
  }
  auto it = std::upper_bound(
      units_.begin(), units_.end(), x,
      [](double v, const TerrainUnit& u) { return v < u.x_end; });
  if (it == units_.end()) return units_.back();
  return *it;
}

Material Transect::EffectiveMaterial(double x) const {
  const TerrainUnit& here = MaterialAt(x);
  if (blend_width_ <= 0.0) return here.material;

  const double half = 0.5 * blend_width_;
  for (std::size_t i = 0; i + 1 < units_.size(); ++i) {
    const double boundary = units_[i].x_end;
    if (std::abs(x - boundary) >= half) continue;
    const auto* left = std::get_if<GranularMaterial>(&units_[i].material);
    const auto* right = std::get_if<GranularMaterial>(&units_[i + 1].material);
    if (left == nullptr || right == nullptr) continue;
    const double s = (x - (boundary - half)) / blend_width_;
    GranularMaterial mixed;
    mixed.penetration_resistance =
        (1.0 - s) * left->penetration_resistance +
        s * right->penetration_resistance;
    mixed.plateau_force =
        (1.0 - s) * left->plateau_force + s * right->plateau_force;
    mixed.inertial_coeff =
        (1.0 - s) * left->inertial_coeff + s * right->inertial_coeff;
    return mixed;
  }
  return here.material;
}

Transect BuildTransect(const TransectSpec& spec) {
  if (spec.units.empty()) throw MalformedSpec("transect has no units");
  if (!(spec.blend_width >= 0.0)) {
    throw MalformedSpec("blend width must be non-negative");
  }
  Transect t;
  t.blend_width_ = spec.blend_width;
  t.units_ = spec.units;
  for (std::size_t i = 0; i < t.units_.size(); ++i) {
    TerrainUnit& u = t.units_[i];
    u.id = static_cast<int>(i) + 1;
    if (!(u.x_end > u.x_start)) {
      throw MalformedSpec("unit " + std::to_string(u.id) +
                          " has non-positive width");
    }
    ValidateMaterial(u.material);
    if (i == 0) {
      if (std::abs(u.x_start) > kContiguityTolerance) {
        throw MalformedSpec("transect must start at x = 0");
      }
      continue;
    }
    const double prev_end = t.units_[i - 1].x_end;
    if (u.x_start < prev_end - kContiguityTolerance) {
      throw MalformedSpec("units " + std::to_string(u.id - 1) + " and " +
                          std::to_string(u.id) + " overlap");
    }
    if (u.x_start > prev_end + kContiguityTolerance) {
      throw MalformedSpec("gap between units " + std::to_string(u.id - 1) +
                          " and " + std::to_string(u.id));
    }
    u.x_start = prev_end;
  }
  return t;
}

namespace {

GranularMaterial Sand(double k_n_per_cm) {
  GranularMaterial g;
  g.penetration_resistance = NPerCmToNPerM(k_n_per_cm);
  return g;
}

TerrainUnit Unit(double x0, double x1, Material m, std::string label) {
  TerrainUnit u;
  u.x_start = x0;
  u.x_end = x1;
  u.material = std::move(m);
  u.label = std::move(label);
  return u;
}

}  // namespace

TransectSpec PresetSpec(std::string_view name) {
  TransectSpec spec;
  if (name == "exp1-compaction") {
    spec.units = {
        Unit(0.0, 0.8, Sand(6.8), "medium compaction"),
        Unit(0.8, 1.3, Sand(3.4), "low compaction"),
        Unit(1.3, 2.3, Sand(21.3), "high compaction"),
    };
  } else if (name == "exp2-crust") {
    // Tile rupture force and drop are calibrated values chosen to sit well
    // above the 5 N detection threshold; they are not measurements. The
    // stiffness is that of a tile bedded on loose sand, not of plaster.
    CrustMaterial crust;
    crust.crust_stiffness = NPerCmToNPerM(6.0);
    crust.rupture_force = 25.0;
    crust.post_rupture_drop = 8.0;
    crust.substrate = Sand(3.0);
    spec.units = {
        Unit(0.0, 0.5, RigidMaterial{}, "rigid"),
        Unit(0.5, 0.9, RigidMaterial{}, "rigid"),
        Unit(0.9, 1.4, crust, "crust on loose sand"),
        Unit(1.4, 1.8, RigidMaterial{}, "rigid"),
        Unit(1.8, 2.3, RigidMaterial{}, "rigid"),
    };
  } else if (name == "mt-hood-transect") {
    CrustMaterial frozen;
    frozen.crust_stiffness = NPerCmToNPerM(150.0);
    frozen.rupture_force = 25.0;
    frozen.post_rupture_drop = 8.0;
    frozen.substrate = Sand(20.0);
    spec.units = {
        Unit(0.0, 1.7, Sand(5.0), "C.1 dry loose"),
        Unit(1.7, 3.4, Sand(8.0), "C.2 dry loose"),
        Unit(3.4, 5.0, Sand(45.0), "C.3 wet"),
        Unit(5.0, 6.7, Sand(110.0), "C.4 frozen"),
        Unit(6.7, 8.4, Sand(70.0), "C.5 wet"),
        Unit(8.4, 10.0, frozen, "C.6 ice crust"),
    };
  } else {
    throw MalformedSpec("unknown transect preset '" + std::string(name) + "'");
  }
  return spec;
}

std::vector<std::string> PresetNames() {
  return {"exp1-compaction", "exp2-crust", "mt-hood-transect"};
}

std::string_view SurfaceKindName(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::kRigid: return "rigid";
    case SurfaceKind::kGranular: return "granular";
    case SurfaceKind::kCrust: return "crust";
    case SurfaceKind::kCrustGap: return "crust_gap";
  }
  return "?";
}

std::optional<SurfaceKind> ParseSurfaceKind(std::string_view name) {
  for (SurfaceKind k : {SurfaceKind::kRigid, SurfaceKind::kGranular,
                        SurfaceKind::kCrust, SurfaceKind::kCrustGap}) {
    if (SurfaceKindName(k) == name) return k;
  }
  return std::nullopt;
}

SurfacePatch SamplePatch(const Material& material,
                         const CrustVariability& variability,
                         RandomStream& rng) {
  if (std::holds_alternative<RigidMaterial>(material)) {
    return {material, SurfaceKind::kRigid};
  }
  if (std::holds_alternative<GranularMaterial>(material)) {
    return {material, SurfaceKind::kGranular};
  }
  const auto& crust = std::get<CrustMaterial>(material);
  // Always draw all three values so the stream advances identically.
  const bool hit = rng.Uniform(0.0, 1.0) < variability.coverage;
  const double rupture_noise = rng.Gaussian(variability.rupture_force_std);
  const double drop_noise = rng.Gaussian(variability.drop_std);
  if (!hit) return {crust.substrate, SurfaceKind::kCrustGap};

  CrustMaterial tile = crust;
  tile.rupture_force = std::max(1.0, crust.rupture_force + rupture_noise);
  tile.post_rupture_drop =
      std::clamp(crust.post_rupture_drop + drop_noise, 0.1,
                 tile.rupture_force - 0.1);
  return {tile, SurfaceKind::kCrust};
}

}  // namespace gaitsense
