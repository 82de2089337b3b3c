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

#ifndef GAITSENSE_EVALUATION_H_
#define GAITSENSE_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gaitsense/terrain.h"

namespace gaitsense {

enum class StepLabel : std::uint8_t {
  kRigid,
  kSand,
  kCrustIntact,
  kCrustRuptured,
};

std::string_view StepLabelName(StepLabel label);
std::optional<StepLabel> ParseStepLabel(std::string_view name);

// Truth label for one footstep. A crust-unit step whose toe lands in a gap
// between tiles counts as sand.
StepLabel LabelStep(SurfaceKind surface, bool ruptured);

struct ConfusionMatrix {
  int tp = 0;
  int tn = 0;
  int fp = 0;
  int fn = 0;

  int total() const { return tp + tn + fp + fn; }
  // NaN when the denominator is zero.
  double Sensitivity() const;
  double Specificity() const;
};

// A step is positive when its label is crust-ruptured. Throws LengthMismatch.
ConfusionMatrix Confusion(std::span<const bool> flags,
                          std::span<const StepLabel> labels);

// Builds the matrix for published counts: `negatives` rupture-free steps of
// which `fp` were flagged, `positives` ruptures of which `fn` were missed.
ConfusionMatrix ConfusionFromCounts(int positives, int fn, int negatives,
                                    int fp);

}  // namespace gaitsense

#endif  // GAITSENSE_EVALUATION_H_
