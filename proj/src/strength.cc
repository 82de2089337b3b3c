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

#include "gaitsense/strength.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "gaitsense/errors.h"

namespace gaitsense {

PenetrationInterval FindPenetrationInterval(std::span<const double> force,
                                            std::span<const double> depth,
                                            const IntervalConfig& config) {
  if (force.size() != depth.size()) {
    throw IntervalNotFound("force and depth series differ in length");
  }
  const int n = static_cast<int>(force.size());
  auto in_band = [&](int i) {
    return force[i] >= config.f_lo && force[i] <= config.f_hi;
  };
  // Runs shorter than min_run are noise excursions across f_lo; the first
  // run long enough to fit is the interval. Failing that, the first run.
  std::optional<PenetrationInterval> first;
  int start = 0;
  while (true) {
    while (start < n && !in_band(start)) ++start;
    if (start == n) break;
    int last_in_band = start;
    int gap = 0;
    int i = start + 1;
    for (; i < n; ++i) {
      if (depth[i] < depth[i - 1]) break;
      if (in_band(i)) {
        last_in_band = i;
        gap = 0;
      } else if (++gap > config.max_gap) {
        break;
      }
    }
    const PenetrationInterval run{start, last_in_band + 1};
    if (run.size() >= config.min_run) return run;
    if (!first) first = run;
    start = last_in_band + 1;
  }
  if (first) return *first;
  std::ostringstream msg;
  msg << "force never enters [" << config.f_lo << ", " << config.f_hi
      << "] N";
  throw IntervalNotFound(msg.str());
}

PenetrationEstimate EstimatePenetrationResistance(
    std::span<const double> force, std::span<const double> depth,
    const PenetrationInterval& interval, int n_min) {
  const int n = interval.size();
  if (n < n_min || n < 2) {
    throw TooFewSamples(std::to_string(n) + " samples in interval, need " +
                        std::to_string(n_min));
  }
  double mean_d = 0.0, mean_f = 0.0;
  for (int i = interval.begin; i < interval.end; ++i) {
    mean_d += depth[i];
    mean_f += force[i];
  }
  mean_d /= n;
  mean_f /= n;
  double sdd = 0.0, sdf = 0.0, sff = 0.0;
  for (int i = interval.begin; i < interval.end; ++i) {
    const double dd = depth[i] - mean_d, df = force[i] - mean_f;
    sdd += dd * dd;
    sdf += dd * df;
    sff += df * df;
  }
  if (sdd <= 0.0) throw TooFewSamples("depth does not vary over the interval");
  const double slope = sdf / sdd;
  PenetrationEstimate est;
  est.k_n_per_cm = NPerMToNPerCm(slope);
  est.intercept = mean_f - slope * mean_d;
  est.r_squared = sff > 0.0 ? (sdf * sdf) / (sdd * sff) : 1.0;
  est.n_samples = n;
  const auto [lo, hi] = std::minmax_element(depth.begin() + interval.begin,
                                            depth.begin() + interval.end);
  est.depth_span = *hi - *lo;
  return est;
}

int FindFirstProminentPeak(std::span<const double> force, int half_width,
                           double min_drop, int drop_window) {
  const int n = static_cast<int>(force.size());
  if (n == 0) return 0;
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half_width);
    const int hi = std::min(n - 1, i + half_width);
    bool is_max = true;
    for (int j = lo; j <= hi && is_max; ++j) {
      if (force[j] > force[i] || (force[j] == force[i] && j < i)) {
        is_max = false;
      }
    }
    if (!is_max) continue;
    const int end = std::min(n - 1, i + drop_window);
    for (int j = i + 1; j <= end; ++j) {
      if (force[i] - force[j] >= min_drop) return i;
    }
  }
  return static_cast<int>(std::max_element(force.begin(), force.end()) -
                          force.begin());
}

KStats Summarize(std::span<const double> values) {
  KStats s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  for (double v : values) s.mean += v;
  s.mean /= s.n;
  if (s.n == 1) {
    s.single = true;
    return s;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std = std::sqrt(ss / (s.n - 1));
  return s;
}

TransectProfile ProfileTransect(std::span<const PenetrationEstimate> estimates,
                                const Transect& transect) {
  TransectProfile profile;
  profile.by_position.assign(estimates.begin(), estimates.end());
  std::stable_sort(profile.by_position.begin(), profile.by_position.end(),
                   [](const auto& a, const auto& b) { return a.x < b.x; });
  for (const TerrainUnit& unit : transect.units()) {
    std::vector<double> pooled;
    std::array<std::vector<double>, kNumLegs> per_leg;
    for (const PenetrationEstimate& e : estimates) {
      if (e.tu_id != unit.id) continue;
      pooled.push_back(e.k_n_per_cm);
      per_leg[Index(e.leg)].push_back(e.k_n_per_cm);
    }
    if (pooled.empty()) {
      profile.warnings.push_back("TU " + std::to_string(unit.id) +
                                 " has no penetration estimates");
      continue;
    }
    TuAggregate agg;
    agg.tu_id = unit.id;
    agg.label = unit.label;
    agg.pooled = Summarize(pooled);
    for (int l = 0; l < kNumLegs; ++l) agg.per_leg[l] = Summarize(per_leg[l]);
    profile.units.push_back(std::move(agg));
  }
  return profile;
}

}  // namespace gaitsense
