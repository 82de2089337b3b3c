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

#ifndef GAITSENSE_REPORT_H_
#define GAITSENSE_REPORT_H_

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaitsense/analysis.h"
#include "gaitsense/evaluation.h"
#include "gaitsense/terrain.h"

namespace gaitsense {

// One row of the per-step estimates table. SI units; k in N/m.
struct EstimateRow {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  int trial = 0;
  int step = 0;
  Leg leg = Leg::kLF;
  GaitKind gait = GaitKind::kCrawl;
  double foothold_x = 0.0;
  int tu_id = 0;
  SurfaceKind surface = SurfaceKind::kGranular;
  StepLabel label = StepLabel::kSand;
  bool rupture_truth = false;
  int contact_tick = -1;
  int peak_tick = -1;
  std::string status;
  double k = kNaN;
  double intercept = kNaN;
  double r_squared = kNaN;
  int n_samples = 0;
  double depth_span = kNaN;
  int interval_begin = -1;
  int interval_end = -1;
  bool rupture_flag = false;
  int n_events = 0;
  double max_drop = kNaN;        // N, largest event prominence
  double max_drop_slope = kNaN;  // N/s, of that event
  double rupture_depth = kNaN;   // m, of that event

  bool has_estimate() const { return status == "ok"; }
  bool scored() const { return contact_tick >= 0; }
  double ContactToPeakMs() const;
};

EstimateRow MakeEstimateRow(const StepResult& result);

// Analysed trials of one configuration.
struct Batch {
  std::string experiment;  // transect name
  TransectSpec transect;
  GaitKind gait = GaitKind::kCrawl;
  std::string config_hash;
  nlohmann::json config;  // echoed into the report
  int trials = 0;
  std::vector<EstimateRow> rows;
};

// Steps with a detected contact only.
ConfusionMatrix BatchConfusion(std::span<const EstimateRow> rows);

// Per-TU strength aggregates from the rows that carry an estimate.
TransectProfile BatchProfile(std::span<const EstimateRow> rows,
                             const TransectSpec& transect);

// Experiments sorted by name, gaits in crawl, trot order; batches sharing
// both are pooled. Throws EmptyReport when no batch has any rows.
nlohmann::json BuildReport(std::span<const Batch> batches);

// Plot-ready CSV tables derived from the same data as the report.
struct ReportTables {
  std::string k_vs_position;
  std::string tu_summary;
  std::string confusion;
};
ReportTables BuildTables(std::span<const Batch> batches);

}  // namespace gaitsense

#endif  // GAITSENSE_REPORT_H_
