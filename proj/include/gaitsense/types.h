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

#ifndef GAITSENSE_TYPES_H_
#define GAITSENSE_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gaitsense {

inline constexpr int kNumLegs = 4;
inline constexpr double kGravity = 9.81;
// Simulation and logging tick.
inline constexpr double kTickSeconds = 1e-3;

enum class Leg : std::uint8_t { kLF = 0, kRF = 1, kLR = 2, kRR = 3 };

inline constexpr std::array<Leg, kNumLegs> kAllLegs = {Leg::kLF, Leg::kRF,
                                                      Leg::kLR, Leg::kRR};

constexpr int Index(Leg leg) { return static_cast<int>(leg); }

std::string_view LegName(Leg leg);
std::optional<Leg> ParseLeg(std::string_view name);

enum class GaitKind : std::uint8_t { kCrawl, kTrot };

std::string_view GaitName(GaitKind gait);
std::optional<GaitKind> ParseGait(std::string_view name);

// Per-leg phase label emitted every tick. Crawl uses Transition,
// Recirculation, Penetration and Support; trot uses Swing and Stance.
enum class Phase : std::uint8_t {
  kPenetration,
  kSupport,
  kTransition,
  kRecirculation,
  kStance,
  kSwing,
};

std::string_view PhaseName(Phase phase);
std::optional<Phase> ParsePhase(std::string_view name);

}  // namespace gaitsense

#endif  // GAITSENSE_TYPES_H_
