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

#include "gaitsense/ground_estimation.h"

#include <algorithm>
#include <string>

#include "gaitsense/errors.h"

namespace gaitsense {

int DetectContact(std::span<const double> force,
                  const ContactDetectorConfig& config) {
  const int debounce = std::max(config.debounce_ticks, 1);
  int run = 0;
  for (std::size_t i = 0; i < force.size(); ++i) {
    run = force[i] >= config.threshold ? run + 1 : 0;
    if (run == debounce) return static_cast<int>(i) - debounce + 1;
  }
  throw NoContact("force never held >= " + std::to_string(config.threshold) +
                  " N for " + std::to_string(debounce) + " ticks");
}

GroundFrame EstimateFrameCrawl(const std::array<Point3, 3>& stance_contacts,
                               const ContactEvent& contact) {
  const GroundFrame plane = FitPlaneThreePoints(
      stance_contacts[0], stance_contacts[1], stance_contacts[2]);
  return ApplyContactCorrection(plane, contact.toe);
}

ToeHistoryBuffer::ToeHistoryBuffer(std::size_t capacity)
    : capacity_(capacity) {
  if (capacity_ < 3) {
    throw InvalidParameter("toe history capacity must be >= 3");
  }
}

void ToeHistoryBuffer::Push(const Point3& toe, int tick) {
  entries_.emplace_back(tick, toe);
  while (entries_.size() > capacity_) entries_.pop_front();
}

void ToeHistoryBuffer::Advance(double drift_std, RandomStream& rng) {
  for (auto& [tick, p] : entries_) {
    p += Vec3(rng.Gaussian(drift_std), rng.Gaussian(drift_std),
              rng.Gaussian(drift_std));
  }
}

std::vector<Point3> ToeHistoryBuffer::positions() const {
  std::vector<Point3> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

GroundFrame EstimateFrameTrot(const ToeHistoryBuffer& history,
                              const ContactEvent& contact) {
  if (history.size() < 3) {
    throw InsufficientHistory(std::to_string(history.size()) +
                              " buffered toe positions, need 3");
  }
  std::vector<Point3> pts = history.positions();
  pts.push_back(contact.toe);
  return ApplyContactCorrection(FitPlaneLeastSquares(pts), contact.toe);
}

std::vector<double> PenetrationDepthSeries(std::span<const Point3> toes,
                                           const GroundFrame& frame) {
  std::vector<double> d;
  d.reserve(toes.size());
  for (const Point3& p : toes) d.push_back(SignedDepth(frame, p));
  return d;
}

}  // namespace gaitsense
