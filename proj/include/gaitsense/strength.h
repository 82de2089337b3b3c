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

#ifndef GAITSENSE_STRENGTH_H_
#define GAITSENSE_STRENGTH_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaitsense/terrain.h"
#include "gaitsense/types.h"

namespace gaitsense {

struct IntervalConfig {
  double f_lo = 15.0;  // N
  double f_hi = 30.0;  // N
  // Out-of-band runs this short are bridged when the band is re-entered.
  int max_gap = 5;
  // Shorter in-band runs are skipped in favour of a later one.
  int min_run = 30;
};

// Sample range [begin, end) of the active penetration interval.
struct PenetrationInterval {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

// First contiguous run where f_lo <= F <= f_hi and depth does not decrease.
// Short excursions out of the band (noise) are bridged; the run ends at the
// last in-band sample. Throws IntervalNotFound.
PenetrationInterval FindPenetrationInterval(std::span<const double> force,
                                            std::span<const double> depth,
                                            const IntervalConfig& config = {});

struct PenetrationEstimate {
  double k_n_per_cm = 0.0;
  double intercept = 0.0;  // N
  double r_squared = 0.0;
  int n_samples = 0;
  double depth_span = 0.0;  // m
  Leg leg = Leg::kLF;
  double x = 0.0;  // transect position, m
  int tu_id = 0;
};

inline constexpr int kDefaultMinSamples = 10;

// Ordinary least squares of force on depth over the interval; the slope is
// reported in N/cm. Throws TooFewSamples.
PenetrationEstimate EstimatePenetrationResistance(
    std::span<const double> force, std::span<const double> depth,
    const PenetrationInterval& interval, int n_min = kDefaultMinSamples);

// First prominent local maximum: the largest sample within +-half_width that
// is followed by a fall of at least min_drop within drop_window samples.
// Falls back to the global maximum. Returns an index into `force`.
int FindFirstProminentPeak(std::span<const double> force, int half_width = 5,
                           double min_drop = 5.0, int drop_window = 10);

struct KStats {
  int n = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 when n == 1
  bool single = false;
};

KStats Summarize(std::span<const double> values);

struct TuAggregate {
  int tu_id = 0;
  std::string label;
  KStats pooled;
  std::array<KStats, kNumLegs> per_leg;
};

struct TransectProfile {
  std::vector<TuAggregate> units;  // only units with estimates, by id
  std::vector<PenetrationEstimate> by_position;
  std::vector<std::string> warnings;  // one per unit without estimates
};

TransectProfile ProfileTransect(std::span<const PenetrationEstimate> estimates,
                                const Transect& transect);

}  // namespace gaitsense

#endif  // GAITSENSE_STRENGTH_H_
