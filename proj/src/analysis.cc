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

#include "gaitsense/analysis.h"

#include <array>
#include <cmath>
#include <limits>

#include "gaitsense/errors.h"

namespace gaitsense {
namespace {

constexpr std::uint64_t kDriftStream = 11;

// [first, last + 1) of the ticks in [begin, end) carrying `phase`; empty
// range when absent.
std::pair<int, int> PhaseRange(const std::vector<TickSample>& samples,
                               int begin, int end, Phase phase) {
  int first = -1, last = -1;
  for (int t = begin; t < end; ++t) {
    if (samples[t].phase != phase) continue;
    if (first < 0) first = t;
    last = t;
  }
  if (first < 0) return {end, end};
  return {first, last + 1};
}

std::vector<Point3> Toes(const std::vector<TickSample>& samples, int begin,
                         int end) {
  std::vector<Point3> out;
  out.reserve(end - begin);
  for (int t = begin; t < end; ++t) out.push_back(samples[t].toe);
  return out;
}

void Estimate(const std::vector<double>& force, const std::vector<double>& depth,
              int offset, int begin, int end, const AnalysisConfig& config,
              StepResult& r) {
  try {
    std::span<const double> f(force.data() + begin, end - begin);
    std::span<const double> d(depth.data() + (begin - offset), end - begin);
    const PenetrationInterval iv =
        FindPenetrationInterval(f, d, config.interval);
    PenetrationEstimate est =
        EstimatePenetrationResistance(f, d, iv, config.n_min);
    est.leg = r.leg;
    est.x = r.foothold_x;
    est.tu_id = r.tu_id;
    r.estimate = est;
    r.interval_begin = begin + iv.begin;
    r.interval_end = begin + iv.end;
    r.status = "ok";
  } catch (const IntervalNotFound&) {
    r.status = "IntervalNotFound";
  } catch (const TooFewSamples&) {
    r.status = "TooFewSamples";
  }
}

}  // namespace

void ValidateAnalysisConfig(const AnalysisConfig& c) {
  ValidateDetectorConfig(c.rupture);
  if (!(c.contact.threshold > 0.0) || c.contact.debounce_ticks < 1) {
    throw InvalidParameter("contact threshold and debounce must be positive");
  }
  if (!(c.interval.f_lo < c.interval.f_hi) || c.interval.max_gap < 0) {
    throw InvalidParameter("force band must satisfy f_lo < f_hi");
  }
  if (c.n_min < 2) throw InvalidParameter("n_min must be >= 2");
  if (c.history_capacity < 3) {
    throw InvalidParameter("history capacity must be >= 3");
  }
  if (!(c.drift_std >= 0.0) || !(c.unload_guard >= 0.0)) {
    throw InvalidParameter("drift and unload guard must be non-negative");
  }
}

double StepResult::ContactToPeakMs() const {
  if (contact_tick < 0 || peak_tick < 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return (peak_tick - contact_tick) * kTickSeconds * 1e3;
}

std::vector<StepLabel> LabelSteps(const TrialLog& log) {
  std::vector<StepLabel> labels;
  labels.reserve(log.steps.size());
  for (const StepRecord& s : log.steps) {
    labels.push_back(LabelStep(s.surface, s.ruptured));
  }
  return labels;
}

std::vector<double> StepDepthSeries(const TrialLog& log,
                                    const StepResult& result, int begin,
                                    int end) {
  const std::vector<Point3> toes = Toes(log.leg(result.leg), begin, end);
  return PenetrationDepthSeries(toes, result.frame);
}

std::vector<StepResult> AnalyzeTrial(const TrialLog& log,
                                     const AnalysisConfig& config) {
  ValidateAnalysisConfig(config);
  std::vector<StepResult> results;
  if (log.num_ticks() == 0) return results;

  std::array<std::vector<double>, kNumLegs> force;
  for (int l = 0; l < kNumLegs; ++l) {
    force[l].reserve(log.legs[l].size());
    for (const TickSample& s : log.legs[l]) force[l].push_back(s.fz_est);
  }

  // Last known touchdown point per leg; the first logged toe stands in until
  // the leg has stepped.
  std::array<Point3, kNumLegs> last_contact;
  ToeHistoryBuffer history(config.history_capacity);
  for (int l = 0; l < kNumLegs; ++l) {
    last_contact[l] = log.legs[l].front().toe;
    history.Push(last_contact[l], 0);
  }
  RandomStream drift(config.drift_seed, log.trial, kDriftStream);
  const int guard = static_cast<int>(std::lround(config.unload_guard /
                                                 kTickSeconds));

  for (std::size_t si = 0; si < log.steps.size(); ++si) {
    const StepRecord& step = log.steps[si];
    const std::vector<TickSample>& samples = log.leg(step.leg);
    const std::vector<double>& f = force[Index(step.leg)];

    StepResult r;
    r.trial = log.trial;
    r.step = static_cast<int>(si);
    r.leg = step.leg;
    r.gait = log.gait;
    r.foothold_x = step.foothold_x;
    r.tu_id = step.tu_id;
    r.surface = step.surface;
    r.rupture_truth = step.ruptured;
    r.label = LabelStep(step.surface, step.ruptured);

    const Phase phase =
        log.gait == GaitKind::kCrawl ? Phase::kPenetration : Phase::kStance;
    const auto [wb, we] = PhaseRange(samples, step.begin, step.end, phase);
    r.window_begin = wb;
    r.window_end = we;
    if (wb >= we) {
      r.status = "NoWindow";
      results.push_back(std::move(r));
      continue;
    }

    // On stiff ground the crawl probe can reach its force limit within the
    // debounce time, so the crawl contact search runs on to the step's end.
    const int search_end = log.gait == GaitKind::kCrawl ? step.end : we;
    try {
      r.contact_tick =
          wb + DetectContact(
                   std::span<const double>(f.data() + wb, search_end - wb),
                   config.contact);
    } catch (const NoContact&) {
      r.status = "NoContact";
      results.push_back(std::move(r));
      continue;
    }
    r.contact_toe = samples[r.contact_tick].toe;
    const ContactEvent contact{step.leg, r.contact_tick, r.contact_toe};

    try {
      if (log.gait == GaitKind::kCrawl) {
        std::array<Point3, 3> stance;
        int n = 0;
        for (Leg other : kAllLegs) {
          if (other != step.leg) stance[n++] = last_contact[Index(other)];
        }
        r.frame = EstimateFrameCrawl(stance, contact);
      } else {
        history.Advance(config.drift_std, drift);
        r.frame = EstimateFrameTrot(history, contact);
      }
    } catch (const DegenerateContacts&) {
      r.status = "DegenerateContacts";
      results.push_back(std::move(r));
      continue;
    }
    last_contact[Index(step.leg)] = r.contact_toe;
    if (log.gait == GaitKind::kTrot) {
      history.Push(r.contact_toe, r.contact_tick);
    }

    const std::vector<double> depth =
        StepDepthSeries(log, r, step.begin, step.end);

    // Strength.
    int fit_end = we;
    if (log.gait == GaitKind::kTrot) {
      const int peak = FindFirstProminentPeak(
          std::span<const double>(f.data() + r.contact_tick,
                                  we - r.contact_tick),
          config.peak_half_width, config.peak_min_drop,
          config.peak_drop_window);
      r.peak_tick = r.contact_tick + peak;
      fit_end = r.peak_tick + 1;
    }
    fit_end = std::max(fit_end, r.contact_tick);
    Estimate(f, depth, step.begin, r.contact_tick, fit_end, config, r);

    // Ruptures.
    int rupture_end = std::max(r.contact_tick, we);
    if (log.gait == GaitKind::kTrot) {
      rupture_end = std::max(r.contact_tick + 1, we - guard);
    }
    try {
      StepClassification c = ClassifyStep(
          std::span<const double>(f.data() + step.begin,
                                  step.end - step.begin),
          depth, r.contact_tick - step.begin, rupture_end - step.begin,
          config.rupture);
      for (RuptureEvent& e : c.events) {
        e.index += step.begin;
        e.peak_index += step.begin;
        e.time_ms = e.index * kTickSeconds * 1e3;
      }
      r.rupture_flag = c.rupture;
      r.events = std::move(c.events);
    } catch (const SeriesTooShort&) {
      r.rupture_flag = false;
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace gaitsense
