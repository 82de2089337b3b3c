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

#include "gaitsense/rupture.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

// Least-squares weights that evaluate a degree-`order` fit over sample
// offsets [lo, hi] at offset 0. Offsets are scaled to [-1, 1] for
// conditioning.
std::vector<double> FitWeights(int order, int lo, int hi) {
  const int n = hi - lo + 1;
  const double scale = std::max(std::abs(lo), std::abs(hi));
  Eigen::MatrixXd v(n, order + 1);
  for (int r = 0; r < n; ++r) {
    const double x = (lo + r) / scale;
    double p = 1.0;
    for (int c = 0; c <= order; ++c, p *= x) v(r, c) = p;
  }
  const Eigen::MatrixXd pinv = v.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<double> w(n);
  for (int r = 0; r < n; ++r) w[r] = pinv(0, r);
  return w;
}

}  // namespace

int WindowSamples(double duration_s, double sample_period_s) {
  int n = static_cast<int>(std::lround(duration_s / sample_period_s));
  if (n % 2 == 0) ++n;
  return n;
}

void ValidateDetectorConfig(const DetectorConfig& config) {
  if (config.order < 0) throw InvalidParameter("filter order must be >= 0");
  if (config.window % 2 == 0 || config.window <= config.order) {
    throw InvalidParameter("filter window " + std::to_string(config.window) +
                           " must be odd and larger than order " +
                           std::to_string(config.order));
  }
  if (!(config.prominence > 0.0) || !(config.sample_period > 0.0)) {
    throw InvalidParameter("prominence and sample period must be positive");
  }
}

SavitzkyGolay::SavitzkyGolay(int order, int window)
    : order_(order), window_(window) {
  ValidateDetectorConfig({order, window, 1.0, 1e-3});
  const int half = window / 2;
  centre_ = FitWeights(order, -half, half);
  left_.resize(half);
  for (int i = 0; i < half; ++i) {
    // Sample i sees i samples to its left and `half` to its right.
    left_[i] = FitWeights(order, -i, half);
  }
}

std::vector<double> SavitzkyGolay::Smooth(std::span<const double> x) const {
  const int n = static_cast<int>(x.size());
  if (n < window_) {
    throw SeriesTooShort(std::to_string(n) + " samples, window is " +
                         std::to_string(window_));
  }
  const int half = window_ / 2;
  std::vector<double> y(n);
  for (int i = half; i < n - half; ++i) {
    double acc = 0.0;
    const double* base = x.data() + i - half;
    for (int k = 0; k < window_; ++k) acc += centre_[k] * base[k];
    y[i] = acc;
  }
  for (int i = 0; i < half; ++i) {
    const std::vector<double>& w = left_[i];
    double head = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      head += w[k] * x[k];
      // Mirror image for the right edge.
      tail += w[k] * x[n - 1 - k];
    }
    y[i] = head;
    y[n - 1 - i] = tail;
  }
  return y;
}

std::vector<double> SmoothForce(std::span<const double> series,
                                const DetectorConfig& config) {
  return SavitzkyGolay(config.order, config.window).Smooth(series);
}

std::vector<RuptureEvent> DetectRuptures(std::span<const double> y,
                                         std::span<const double> depth,
                                         const DetectorConfig& config) {
  std::vector<RuptureEvent> events;
  const int n = static_cast<int>(y.size());
  for (int i = 1; i + 1 < n; ++i) {
    if (!(y[i] < y[i - 1] && y[i] <= y[i + 1])) continue;
    // Walk back to the last sample lower than the trough.
    int j = i - 1;
    int peak = j;
    while (j >= 0 && y[j] >= y[i]) {
      if (y[j] > y[peak]) peak = j;
      --j;
    }
    const double prominence = y[peak] - y[i];
    if (prominence < config.prominence) continue;
    double slope = 0.0;
    for (int k = peak; k < i; ++k) {
      slope = std::min(slope, (y[k + 1] - y[k]) / config.sample_period);
    }
    RuptureEvent e;
    e.index = i;
    e.peak_index = peak;
    e.time_ms = i * config.sample_period * 1e3;
    e.magnitude = prominence;
    e.slope = slope;
    e.depth = depth.empty() ? 0.0 : depth[peak];
    events.push_back(e);
  }
  return events;
}

StepClassification ClassifyStep(std::span<const double> force,
                                std::span<const double> depth, int begin,
                                int end, const DetectorConfig& config) {
  const int n = static_cast<int>(force.size());
  const int pad = config.window / 2;
  const int lo = std::max(0, begin - pad);
  const int hi = std::min(n, end + pad);
  const std::vector<double> smoothed =
      SmoothForce(force.subspan(lo, hi - lo), config);
  std::span<const double> d;
  if (!depth.empty()) d = depth.subspan(lo, hi - lo);
  StepClassification out;
  for (RuptureEvent e : DetectRuptures(smoothed, d, config)) {
    e.index += lo;
    e.peak_index += lo;
    e.time_ms = e.index * config.sample_period * 1e3;
    if (e.index >= begin && e.index < end) out.events.push_back(e);
  }
  out.rupture = !out.events.empty();
  return out;
}

}  // namespace gaitsense
