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

#ifndef GAITSENSE_GROUND_ESTIMATION_H_
#define GAITSENSE_GROUND_ESTIMATION_H_

#include <array>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "gaitsense/geometry.h"
#include "gaitsense/rng.h"
#include "gaitsense/types.h"

namespace gaitsense {

struct ContactDetectorConfig {
  double threshold = 5.0;  // N
  int debounce_ticks = 5;
};

struct ContactEvent {
  Leg leg = Leg::kLF;
  int tick = 0;  // log tick index
  Point3 toe = Point3::Zero();
};

// Index of the first sample that starts a run of at least `debounce_ticks`
// samples with force >= threshold. Throws NoContact.
int DetectContact(std::span<const double> force,
                  const ContactDetectorConfig& config);

// Crawl frame: plane through the three stance contacts, origin moved to the
// penetrating toe's contact point. Throws DegenerateContacts.
GroundFrame EstimateFrameCrawl(const std::array<Point3, 3>& stance_contacts,
                               const ContactEvent& contact);

// Recent touchdown positions carried forward by integrating the body motion.
// The integration error is modelled as a random walk applied on every
// Advance().
class ToeHistoryBuffer {
 public:
  explicit ToeHistoryBuffer(std::size_t capacity = 6);

  // Oldest entries fall off once the buffer is full.
  void Push(const Point3& toe, int tick);
  // One step of integration drift: every entry moves by N(0, std) per axis.
  void Advance(double drift_std, RandomStream& rng);

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::vector<Point3> positions() const;
  const std::deque<std::pair<int, Point3>>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::deque<std::pair<int, Point3>> entries_;
};

// Trot frame: total-least-squares plane through the buffered positions and
// the new contact, origin moved to the contact. Throws InsufficientHistory
// with fewer than three buffered positions, DegenerateContacts when they are
// collinear.
GroundFrame EstimateFrameTrot(const ToeHistoryBuffer& history,
                              const ContactEvent& contact);

// Signed depth of every toe sample below the frame.
std::vector<double> PenetrationDepthSeries(std::span<const Point3> toes,
                                           const GroundFrame& frame);

}  // namespace gaitsense

#endif  // GAITSENSE_GROUND_ESTIMATION_H_
