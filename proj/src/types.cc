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

#include "gaitsense/types.h"

namespace gaitsense {

std::string_view LegName(Leg leg) {
  switch (leg) {
    case Leg::kLF: return "LF";
    case Leg::kRF: return "RF";
    case Leg::kLR: return "LR";
    case Leg::kRR: return "RR";
  }
  return "?";
}

std::optional<Leg> ParseLeg(std::string_view name) {
  for (Leg leg : kAllLegs) {
    if (LegName(leg) == name) return leg;
  }
  return std::nullopt;
}

std::string_view GaitName(GaitKind gait) {
  return gait == GaitKind::kCrawl ? "crawl" : "trot";
}

std::optional<GaitKind> ParseGait(std::string_view name) {
  if (name == "crawl") return GaitKind::kCrawl;
  if (name == "trot") return GaitKind::kTrot;
  return std::nullopt;
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kPenetration: return "penetration";
    case Phase::kSupport: return "support";
    case Phase::kTransition: return "transition";
    case Phase::kRecirculation: return "recirculation";
    case Phase::kStance: return "stance";
    case Phase::kSwing: return "swing";
  }
  return "?";
}

std::optional<Phase> ParsePhase(std::string_view name) {
  for (Phase p : {Phase::kPenetration, Phase::kSupport, Phase::kTransition,
                  Phase::kRecirculation, Phase::kStance, Phase::kSwing}) {
    if (PhaseName(p) == name) return p;
  }
  return std::nullopt;
}

}  // namespace gaitsense
