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

#ifndef GAITSENSE_ANALYSIS_H_
#define GAITSENSE_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gaitsense/evaluation.h"
#include "gaitsense/ground_estimation.h"
#include "gaitsense/rupture.h"
#include "gaitsense/simulator.h"
#include "gaitsense/strength.h"

namespace gaitsense {

// Everything the per-step analysis needs besides the log itself.
struct AnalysisConfig {
  ContactDetectorConfig contact;
  IntervalConfig interval;
  int n_min = kDefaultMinSamples;
  DetectorConfig rupture;
  // Trot ground plane.
  int history_capacity = 6;
  double drift_std = 0.002;  // m per step
  std::uint64_t drift_seed = 7;
  // Trot rupture search stops this long before lift-off so the unloading
  // ramp is not read as a force drop.
  double unload_guard = 0.03;  // s
  // Trot contact-to-peak window.
  int peak_half_width = 5;
  double peak_min_drop = 5.0;
  int peak_drop_window = 10;
};

// Throws InvalidParameter.
void ValidateAnalysisConfig(const AnalysisConfig& config);

struct StepResult {
  int trial = 0;
  int step = 0;  // index in the trial's step list
  Leg leg = Leg::kLF;
  GaitKind gait = GaitKind::kCrawl;
  double foothold_x = 0.0;
  int tu_id = 0;
  SurfaceKind surface = SurfaceKind::kGranular;
  bool rupture_truth = false;
  StepLabel label = StepLabel::kSand;

  // Penetration window (crawl) or stance (trot), log ticks [begin, end).
  int window_begin = -1;
  int window_end = -1;
  int contact_tick = -1;
  Point3 contact_toe = Point3::Zero();
  GroundFrame frame;
  int peak_tick = -1;  // trot only

  // "ok" or the name of the failure that prevented an estimate.
  std::string status;
  std::optional<PenetrationEstimate> estimate;
  int interval_begin = -1;  // log ticks
  int interval_end = -1;

  bool rupture_flag = false;
  std::vector<RuptureEvent> events;  // indices are log ticks

  double ContactToPeakMs() const;
};

std::vector<StepLabel> LabelSteps(const TrialLog& log);

// Contact detection, ground frame, depth series, strength estimate and
// rupture classification for every step of a trial, in step order.
std::vector<StepResult> AnalyzeTrial(const TrialLog& log,
                                     const AnalysisConfig& config = {});

// Depth below the step's corrected frame for ticks [begin, end) of its leg.
std::vector<double> StepDepthSeries(const TrialLog& log,
                                    const StepResult& result, int begin,
                                    int end);

}  // namespace gaitsense

#endif  // GAITSENSE_ANALYSIS_H_
