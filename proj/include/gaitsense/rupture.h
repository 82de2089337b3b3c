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

#ifndef GAITSENSE_RUPTURE_H_
#define GAITSENSE_RUPTURE_H_

#include <span>
#include <vector>

namespace gaitsense {

struct DetectorConfig {
  int order = 4;
  int window = 61;          // samples, odd
  double prominence = 5.0;  // N
  double sample_period = 1e-3;  // s
};

// Window length for a duration, rounded to the nearest odd sample count
// (60 ms at 1 kHz gives 61).
int WindowSamples(double duration_s, double sample_period_s = 1e-3);

// Throws InvalidParameter unless the window is odd and longer than the
// polynomial order.
void ValidateDetectorConfig(const DetectorConfig& config);

// Savitzky-Golay smoother. Interior samples use the centred least-squares
// polynomial; the first and last window/2 samples use one-sided windows that
// shrink towards the edge, so polynomials up to `order` pass unchanged.
class SavitzkyGolay {
 public:
  SavitzkyGolay(int order, int window);

  int order() const { return order_; }
  int window() const { return window_; }

  // Throws SeriesTooShort when the series is shorter than the window.
  std::vector<double> Smooth(std::span<const double> series) const;

 private:
  int order_;
  int window_;
  std::vector<double> centre_;
  // left_[i]: weights over samples [0, i + half] evaluated at sample i.
  std::vector<std::vector<double>> left_;
};

std::vector<double> SmoothForce(std::span<const double> series,
                                const DetectorConfig& config);

struct RuptureEvent {
  int index = 0;           // trough sample
  int peak_index = 0;      // preceding peak
  double time_ms = 0.0;    // of the trough, relative to the series start
  double magnitude = 0.0;  // N, peak minus trough
  double slope = 0.0;      // N/s, steepest fall between peak and trough
  double depth = 0.0;      // m, at the peak
};

// Every interior local minimum whose prominence (highest sample since the
// last sample lower than the trough, minus the trough) reaches the
// threshold. `depth` may be empty; otherwise it is aligned with `smoothed`.
std::vector<RuptureEvent> DetectRuptures(std::span<const double> smoothed,
                                         std::span<const double> depth,
                                         const DetectorConfig& config);

struct StepClassification {
  bool rupture = false;
  std::vector<RuptureEvent> events;  // indices relative to the full series
};

// Smooths force[begin - pad, end + pad) (clipped to the series) with
// pad = window / 2 and keeps events whose trough lies in [begin, end).
StepClassification ClassifyStep(std::span<const double> force,
                                std::span<const double> depth, int begin,
                                int end, const DetectorConfig& config);

}  // namespace gaitsense

#endif  // GAITSENSE_RUPTURE_H_
