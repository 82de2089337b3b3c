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

#ifndef GAITSENSE_LOG_IO_H_
#define GAITSENSE_LOG_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaitsense/report.h"
#include "gaitsense/simulator.h"

namespace gaitsense {

inline constexpr std::string_view kTickLogHeader =
    "t_ms,leg,phase,q0,q1,q2,dq0,dq1,dq2,tau0,tau1,tau2,toe_x,toe_y,toe_z,"
    "fz_est,tu_id,rupture_truth";
inline constexpr std::string_view kStepLogHeader =
    "leg,begin_ms,end_ms,foothold_x,tu_id,surface,ruptured,contact_ms";
inline constexpr std::string_view kEstimatesHeader =
    "trial,step,leg,gait,foothold_x,tu_id,surface,label,rupture_truth,"
    "contact_ms,peak_ms,status,k_n_per_m,k_n_per_cm,intercept_n,r_squared,"
    "n_samples,depth_span_m,interval_begin_ms,interval_end_ms,rupture_flag,"
    "n_events,max_drop_n,max_drop_slope_n_per_s,rupture_depth_m";

// One row per tick and leg, legs in LF, RF, LR, RR order within a tick.
// Values carry nine significant digits.
void WriteTickLog(const TrialLog& log, std::ostream& out);
// Footstep truth sidecar.
void WriteStepLog(const TrialLog& log, std::ostream& out);

// Throws LogFormatError on a bad header, a short or malformed row, or ticks
// out of order.
TrialLog ReadTrialLog(const std::filesystem::path& ticks,
                      const std::filesystem::path& steps, GaitKind gait,
                      std::uint64_t seed, int trial);

// First line "# config_hash=<hex>", then the header and one row per step.
void WriteEstimates(std::ostream& out, std::string_view config_hash,
                    std::span<const EstimateRow> rows);

struct EstimatesFile {
  std::string config_hash;
  std::vector<EstimateRow> rows;
};

// Throws LogFormatError.
EstimatesFile ReadEstimates(const std::filesystem::path& path);

// Hex SHA-256 of a file's bytes. Throws LogFormatError when unreadable.
std::string Sha256File(const std::filesystem::path& path);

}  // namespace gaitsense

#endif  // GAITSENSE_LOG_IO_H_
