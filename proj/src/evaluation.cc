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

#include "gaitsense/evaluation.h"

#include <limits>
#include <string>

#include "gaitsense/errors.h"

namespace gaitsense {

std::string_view StepLabelName(StepLabel label) {
  switch (label) {
    case StepLabel::kRigid: return "rigid";
    case StepLabel::kSand: return "sand";
    case StepLabel::kCrustIntact: return "crust-intact";
    case StepLabel::kCrustRuptured: return "crust-ruptured";
  }
  return "?";
}

std::optional<StepLabel> ParseStepLabel(std::string_view name) {
  for (StepLabel l : {StepLabel::kRigid, StepLabel::kSand,
                      StepLabel::kCrustIntact, StepLabel::kCrustRuptured}) {
    if (StepLabelName(l) == name) return l;
  }
  return std::nullopt;
}

StepLabel LabelStep(SurfaceKind surface, bool ruptured) {
  switch (surface) {
    case SurfaceKind::kRigid: return StepLabel::kRigid;
    case SurfaceKind::kGranular:
    case SurfaceKind::kCrustGap: return StepLabel::kSand;
    case SurfaceKind::kCrust:
      return ruptured ? StepLabel::kCrustRuptured : StepLabel::kCrustIntact;
  }
  return StepLabel::kSand;
}

double ConfusionMatrix::Sensitivity() const {
  const int p = tp + fn;
  return p > 0 ? static_cast<double>(tp) / p
               : std::numeric_limits<double>::quiet_NaN();
}

double ConfusionMatrix::Specificity() const {
  const int n = tn + fp;
  return n > 0 ? static_cast<double>(tn) / n
               : std::numeric_limits<double>::quiet_NaN();
}

ConfusionMatrix Confusion(std::span<const bool> flags,
                          std::span<const StepLabel> labels) {
  if (flags.size() != labels.size()) {
    throw LengthMismatch(std::to_string(flags.size()) + " flags vs " +
                         std::to_string(labels.size()) + " labels");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const bool truth = labels[i] == StepLabel::kCrustRuptured;
    if (flags[i]) {
      ++(truth ? m.tp : m.fp);
    } else {
      ++(truth ? m.fn : m.tn);
    }
  }
  return m;
}

ConfusionMatrix ConfusionFromCounts(int positives, int fn, int negatives,
                                    int fp) {
  if (positives < 0 || negatives < 0 || fn < 0 || fp < 0 || fn > positives ||
      fp > negatives) {
    throw InvalidParameter("inconsistent confusion counts");
  }
  return {positives - fn, negatives - fp, fp, fn};
}

}  // namespace gaitsense
